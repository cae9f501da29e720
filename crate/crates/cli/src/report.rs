//! Shared report pieces: input digests, budget echoes, and value rendering
//! helpers used by every subcommand's JSON output.

use serde::Serialize;
use sha2::{Digest, Sha256};

use convcode::distances::DistanceProfile;
use convcode::io::MatrixFile;
use convcode::pmat::PolyMatrix;
use convcode::wam::{index_state, Wam};
use convcode::{Budget, InfInt};

/// Hex SHA-256 of raw file bytes, recorded in reports so an output can be
/// tied to the exact inputs that produced it.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct InputReport {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BudgetReport {
    pub states: u64,
    pub gl: u64,
    pub messages: u64,
    pub orbit: u64,
    pub free_distance_terms: u64,
}

impl From<&Budget> for BudgetReport {
    fn from(b: &Budget) -> BudgetReport {
        BudgetReport {
            states: b.states,
            gl: b.gl,
            messages: b.messages,
            orbit: b.orbit,
            free_distance_terms: b.free_distance_terms,
        }
    }
}

/// A matrix in report form: both the human-readable text and the JSON rows
/// that can be fed back into the tool.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixReport {
    pub text: String,
    pub rows: Vec<Vec<Vec<u64>>>,
}

impl MatrixReport {
    pub fn new(m: &PolyMatrix) -> MatrixReport {
        MatrixReport {
            text: m.to_string().trim_end().to_string(),
            rows: MatrixFile::from_matrix(m).rows,
        }
    }
}

/// `InfInt` as a JSON value: a number, or the string `"inf"`.
pub fn infinity_aware(v: InfInt) -> serde_json::Value {
    match v {
        InfInt::Finite(x) => serde_json::Value::from(x),
        InfInt::Inf => serde_json::Value::from("inf"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileReport {
    pub family: String,
    pub j_min: usize,
    pub values: Vec<serde_json::Value>,
}

impl ProfileReport {
    pub fn new(p: &DistanceProfile) -> ProfileReport {
        ProfileReport {
            family: p.family.to_string(),
            j_min: p.j_min,
            values: p.values.iter().map(|&v| infinity_aware(v)).collect(),
        }
    }
}

/// State labels of a WAM in row order, rendered as digit tuples `(x1,..,xd)`.
pub fn state_labels(w: &Wam) -> Vec<String> {
    (0..w.states())
        .map(|i| {
            let digits = index_state(w.field(), w.delta(), i);
            let inner: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
            format!("({})", inner.join(","))
        })
        .collect()
}

/// The WAM entries as display strings, row by row.
pub fn wam_entries(w: &Wam) -> Vec<Vec<String>> {
    (0..w.states())
        .map(|x| w.row(x).iter().map(|p| p.to_string()).collect())
        .collect()
}
