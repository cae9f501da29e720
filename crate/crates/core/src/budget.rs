//! Search budgets for the enumerative procedures.
//!
//! Every potentially expensive search checks its cost against a budget
//! before starting and reports [`crate::error::Error::BudgetExceeded`]
//! instead of running away.

/// Caps for the various exhaustive searches.
#[derive(Clone, Debug)]
pub struct Budget {
    /// Cap on the number of states q^δ of a weight adjacency matrix.
    pub states: u64,
    /// Cap on |GL(δ, q)| in the WAM equivalence search.
    pub gl: u64,
    /// Cap on message enumerations (sliding-matrix isometry tests and
    /// brute-force distance minimizations).
    pub messages: u64,
    /// Cap on the size of a reduced-encoder orbit enumeration.
    pub orbit: u64,
    /// Cap on the series index explored by the free-distance certificate.
    pub free_distance_terms: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            states: 4096,
            gl: 10_000_000,
            messages: 10_000_000,
            orbit: 1_000_000,
            free_distance_terms: 256,
        }
    }
}

impl Budget {
    /// A budget with every cap set to `n` (the CLI `--budget` override).
    pub fn uniform(n: u64) -> Budget {
        Budget {
            states: n,
            gl: n,
            messages: n,
            orbit: n,
            free_distance_terms: n,
        }
    }
}
