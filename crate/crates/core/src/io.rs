//! JSON serialization of polynomial matrices.
//!
//! File format:
//!
//! ```json
//! {
//!   "field": { "p": 2, "m": 1 },
//!   "rows": [
//!     [[1], [0, 1], [0, 1], [1, 1]]
//!   ]
//! }
//! ```
//!
//! Each matrix entry is its ascending coefficient list; coefficients are
//! integer element encodings (see [`crate::gf`]). The example above is the
//! single row (1, z, z, 1+z) over GF(2).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::pmat::{PolyMatrix, PolyVector};
use crate::poly::Poly;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub field: FieldSpec,
    pub rows: Vec<Vec<Vec<u64>>>,
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<PolyMatrix> {
        let field =
            Field::new(self.field.p, self.field.m).map_err(|e| Error::Parse(e.to_string()))?;
        if self.rows.is_empty() || self.rows.iter().any(|r| r.is_empty()) {
            return Err(Error::Parse("matrix must have at least one row and one column".into()));
        }
        let width = self.rows[0].len();
        let mut rows = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            if row.len() != width {
                return Err(Error::Parse("ragged rows".into()));
            }
            let entries = row
                .iter()
                .map(|coeffs| Poly::from_encodings(&field, coeffs))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Parse(e.to_string()))?;
            rows.push(PolyVector::from_polys(&field, entries)?);
        }
        PolyMatrix::from_rows(&field, rows)
    }

    pub fn from_matrix(m: &PolyMatrix) -> MatrixFile {
        let rows = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        m.entry(i, j)
                            .raw_coeffs()
                            .iter()
                            .map(|&c| c as u64)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MatrixFile {
            field: FieldSpec {
                p: m.field().p(),
                m: m.field().m(),
            },
            rows,
        }
    }
}

/// Parse a matrix from its JSON text.
pub fn matrix_from_json(s: &str) -> Result<PolyMatrix> {
    let file: MatrixFile =
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_matrix()
}

/// Render a matrix as pretty JSON (stable field order, trailing newline).
pub fn matrix_to_json(m: &PolyMatrix) -> String {
    let mut s = serde_json::to_string_pretty(&MatrixFile::from_matrix(m)).expect("serialization");
    s.push('\n');
    s
}
