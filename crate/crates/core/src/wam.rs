//! Weight adjacency matrices of controller-canonical-form realizations.
//!
//! For a reduced basic encoder with total memory `δ` over GF(q), the weight
//! adjacency matrix is the `q^δ × q^δ` matrix over weight polynomials whose
//! `(X, Y)` entry enumerates, by Hamming weight, the branch outputs of all
//! inputs that drive the realization from state `X` to state `Y` in one
//! step.  States are indexed with the leftmost component most significant,
//! so over GF(2) with `δ = 2` the order is `(0,0), (0,1), (1,0), (1,1)`.

use std::fmt;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fmat::FMatrix;
use crate::gf::Field;
use crate::pmat::PolyMatrix;
use crate::poly::InfInt;
use crate::realization::ccf;
use crate::wenum::WPoly;

/// Index of a state vector, leftmost component most significant.
pub fn state_index(field: &Field, state: &[u16]) -> usize {
    let q = field.q() as usize;
    state.iter().fold(0usize, |acc, &c| acc * q + c as usize)
}

/// State vector of an index, leftmost component most significant.
pub fn index_state(field: &Field, delta: usize, mut idx: usize) -> Vec<u16> {
    let q = field.q() as usize;
    let mut state = vec![0u16; delta];
    for c in state.iter_mut().rev() {
        *c = (idx % q) as u16;
        idx /= q;
    }
    debug_assert_eq!(idx, 0, "index out of range for state space");
    state
}

/// Weight adjacency matrix of a reduced basic encoder, or a product of such
/// matrices over the same state space.
#[derive(Clone, Debug, PartialEq)]
pub struct Wam {
    field: Field,
    delta: usize,
    nu: Vec<usize>,
    states: usize,
    entries: Vec<WPoly>,
}

/// Computes the weight adjacency matrix of a reduced basic encoder by
/// enumerating every branch `(X, u)` of its controller canonical form.
pub fn wam(g: &PolyMatrix, budget: &Budget) -> Result<Wam> {
    let r = ccf(g)?;
    let field = r.field().clone();
    let q = field.q();
    let delta = r.delta();
    let k = g.rows();
    let states = q
        .checked_pow(delta as u32)
        .filter(|&s| s <= budget.states)
        .ok_or(Error::BudgetExceeded {
            what: "states",
            needed: q.checked_pow(delta as u32).unwrap_or(u64::MAX),
            budget: budget.states,
        })? as usize;
    let inputs = q
        .checked_pow(k as u32)
        .filter(|&i| i <= budget.messages)
        .ok_or(Error::BudgetExceeded {
            what: "messages",
            needed: q.checked_pow(k as u32).unwrap_or(u64::MAX),
            budget: budget.messages,
        })? as usize;

    let mut entries = vec![WPoly::zero(); states * states];
    for x_idx in 0..states {
        let x = index_state(&field, delta, x_idx);
        let xa = r.a().row_mul(&x);
        let xc = r.c().row_mul(&x);
        for u_idx in 0..inputs {
            let u = index_state(&field, k, u_idx);
            let ub = r.b().row_mul(&u);
            let ud = r.d().row_mul(&u);
            let y: Vec<u16> = xa.iter().zip(&ub).map(|(&a, &b)| field.add_raw(a, b)).collect();
            let weight = xc
                .iter()
                .zip(&ud)
                .filter(|(&a, &b)| field.add_raw(a, b) != 0)
                .count();
            let y_idx = state_index(&field, &y);
            let cell = &mut entries[x_idx * states + y_idx];
            *cell = cell.add(&WPoly::monomial(weight));
        }
    }
    Ok(Wam {
        field,
        delta,
        nu: g.row_degrees().map_err(|_| Error::Internal("row degrees of reduced encoder"))?,
        states,
        entries,
    })
}

impl Wam {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    /// Row degrees of the encoder the matrix was computed from.
    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// Number of states `q^δ`; the matrix is `states × states`.
    pub fn states(&self) -> usize {
        self.states
    }

    pub fn entry(&self, x: usize, y: usize) -> &WPoly {
        &self.entries[x * self.states + y]
    }

    pub fn row(&self, x: usize) -> &[WPoly] {
        &self.entries[x * self.states..(x + 1) * self.states]
    }

    /// Copy with the `(0, 0)` entry replaced by zero: only paths that leave
    /// the zero state or stay outside of it contribute to its powers.
    pub fn tilde(&self) -> Wam {
        let mut out = self.clone();
        out.entries[0] = WPoly::zero();
        out
    }

    /// Copy with the idle loop removed from the `(0, 0)` entry: subtracts
    /// the constant term 1 contributed by the all-zero input at state zero.
    pub fn hat(&self) -> Result<Wam> {
        let mut out = self.clone();
        let head = out.entries[0].coeff(0);
        if head < 1.into() {
            return Err(Error::CorruptWam);
        }
        out.entries[0] = out.entries[0].sub(&WPoly::one());
        Ok(out)
    }

    /// Identity matrix over the same state space.
    pub fn identity_like(&self) -> Wam {
        let mut entries = vec![WPoly::zero(); self.states * self.states];
        for x in 0..self.states {
            entries[x * self.states + x] = WPoly::one();
        }
        Wam {
            field: self.field.clone(),
            delta: self.delta,
            nu: self.nu.clone(),
            states: self.states,
            entries,
        }
    }

    pub fn mul(&self, rhs: &Wam) -> Wam {
        assert_eq!(self.field, rhs.field, "mixed fields in matrix product");
        assert_eq!(self.states, rhs.states, "mixed state spaces in matrix product");
        let s = self.states;
        let mut entries = vec![WPoly::zero(); s * s];
        for x in 0..s {
            for y in 0..s {
                let p = self.entry(x, y);
                if p.is_zero() {
                    continue;
                }
                for z in 0..s {
                    let r = rhs.entry(y, z);
                    if r.is_zero() {
                        continue;
                    }
                    let cell = &mut entries[x * s + z];
                    *cell = cell.add(&p.mul(r));
                }
            }
        }
        Wam {
            field: self.field.clone(),
            delta: self.delta,
            nu: self.nu.clone(),
            states: s,
            entries,
        }
    }

    pub fn pow(&self, e: usize) -> Wam {
        let mut out = self.identity_like();
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Delays of all entries; `Inf` marks an unreachable transition.
    pub fn delay_matrix(&self) -> Vec<Vec<InfInt>> {
        (0..self.states)
            .map(|x| self.row(x).iter().map(|p| p.del()).collect())
            .collect()
    }

    /// Does the state space isomorphism `t` carry `self` onto `other`, in
    /// the sense that `self[X, Y] = other[XT, YT]` for all states?
    pub fn is_witness(&self, other: &Wam, t: &FMatrix) -> bool {
        if self.field != other.field || self.states != other.states {
            return false;
        }
        if t.rows() != self.delta || t.cols() != self.delta || !t.is_invertible() {
            return false;
        }
        let map: Vec<usize> = (0..self.states)
            .map(|x| {
                let xv = index_state(&self.field, self.delta, x);
                state_index(&self.field, &t.row_mul(&xv))
            })
            .collect();
        (0..self.states)
            .all(|x| (0..self.states).all(|y| self.entry(x, y) == other.entry(map[x], map[y])))
    }

    /// Searches `GL_δ` for a state space isomorphism `T` with
    /// `self[X, Y] = other[XT, YT]`; the identity is tried first, then
    /// candidates in a fixed canonical order, so the returned witness is
    /// deterministic.
    pub fn equivalent(&self, other: &Wam, budget: &Budget) -> Result<Option<FMatrix>> {
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        if self.delta != other.delta {
            return Ok(None);
        }
        if self.delta == 0 {
            let ok = self.entries == other.entries;
            return Ok(ok.then(|| FMatrix::identity(&self.field, 0)));
        }
        let order = FMatrix::gl_order(&self.field, self.delta);
        if order > budget.gl as u128 {
            return Err(Error::BudgetExceeded {
                what: "gl",
                needed: order.min(u64::MAX as u128) as u64,
                budget: budget.gl,
            });
        }

        // A linear map fixes the zero state and permutes the rest, so the
        // sorted rows of both matrices must agree as multisets of rows.
        let sort_rows = |w: &Wam| -> Vec<Vec<WPoly>> {
            (0..w.states)
                .map(|x| {
                    let mut r = w.row(x).to_vec();
                    r.sort();
                    r
                })
                .collect()
        };
        let rows_a = sort_rows(self);
        let rows_b = sort_rows(other);
        let mut multiset_a = rows_a.clone();
        let mut multiset_b = rows_b.clone();
        multiset_a.sort();
        multiset_b.sort();
        if multiset_a != multiset_b {
            return Ok(None);
        }

        let check = |t: &FMatrix| -> bool {
            let map: Vec<usize> = (0..self.states)
                .map(|x| {
                    let xv = index_state(&self.field, self.delta, x);
                    state_index(&self.field, &t.row_mul(&xv))
                })
                .collect();
            if (0..self.states).any(|x| rows_a[x] != rows_b[map[x]]) {
                return false;
            }
            (0..self.states)
                .all(|x| (0..self.states).all(|y| self.entry(x, y) == other.entry(map[x], map[y])))
        };

        let identity = FMatrix::identity(&self.field, self.delta);
        if check(&identity) {
            return Ok(Some(identity));
        }
        let q = self.field.q();
        let total = q
            .checked_pow((self.delta * self.delta) as u32)
            .ok_or(Error::Internal("state space too large for witness search"))?;
        for id in 0..total {
            let t = FMatrix::from_id(&self.field, self.delta, self.delta, id);
            if t == identity || !t.is_invertible() {
                continue;
            }
            if check(&t) {
                return Ok(Some(t));
            }
        }
        Ok(None)
    }
}

impl fmt::Display for Wam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.states {
            let row: Vec<String> = self.row(x).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
