//! Convolutional codes as row modules of basic encoders.
//!
//! A code is im G ⊆ GF(q)[z]^n for a basic k×n encoder G. Construction
//! reduces the encoder (Forney), records the Forney indices, degree and
//! memory, and lazily caches the Hermite canonical form used for equality
//! and membership tests. Two `ConvCode`s are equal exactly when they are
//! the same row module.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::pmat::{PolyMatrix, PolyVector};

#[derive(Clone)]
pub struct ConvCode {
    field: Field,
    n: usize,
    k: usize,
    reduced: PolyMatrix,
    /// Row degrees of `reduced` in row order.
    row_degrees: Vec<usize>,
    /// Forney indices as a descending sorted multiset.
    indices: Vec<usize>,
    degree: usize,
    /// Hermite form of the reduced encoder with its transform U
    /// (U · reduced = hermite), computed on first use.
    canonical: OnceLock<(PolyMatrix, PolyMatrix)>,
}

impl ConvCode {
    /// Build the code generated by a basic encoder; errors on non-basic
    /// input (including rank-deficient or k > n shapes).
    pub fn from_encoder(g: &PolyMatrix) -> Result<ConvCode> {
        if g.rows() == 0 || g.rows() > g.cols() {
            return Err(Error::DimensionMismatch(format!(
                "encoder must be k×n with 1 ≤ k ≤ n, got {}×{}",
                g.rows(),
                g.cols()
            )));
        }
        if !g.is_basic() {
            return Err(Error::NonBasic);
        }
        let (_, reduced) = g.reduce()?;
        let row_degrees = reduced.row_degrees()?;
        let mut indices = row_degrees.clone();
        indices.sort_unstable_by(|a, b| b.cmp(a));
        let degree: usize = row_degrees.iter().sum();
        debug_assert_eq!(Some(degree), g.degree().ok());
        Ok(ConvCode {
            field: g.field().clone(),
            n: g.cols(),
            k: g.rows(),
            reduced,
            row_degrees,
            indices,
            degree,
            canonical: OnceLock::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The cached reduced encoder (row order as produced by reduction).
    pub fn reduced_encoder(&self) -> &PolyMatrix {
        &self.reduced
    }

    /// Row degrees of the reduced encoder, in row order.
    pub fn row_degrees(&self) -> &[usize] {
        &self.row_degrees
    }

    /// Forney indices as a descending multiset.
    pub fn forney_indices(&self) -> &[usize] {
        &self.indices
    }

    /// Code degree δ (sum of the Forney indices).
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Memory: the largest Forney index.
    pub fn memory(&self) -> usize {
        self.indices.first().copied().unwrap_or(0)
    }

    fn canonical_pair(&self) -> &(PolyMatrix, PolyMatrix) {
        self.canonical.get_or_init(|| {
            let (h, u) = self.reduced.hermite_with_transform();
            (h, u)
        })
    }

    /// Hermite canonical basis of the row module.
    pub fn canonical_form(&self) -> &PolyMatrix {
        &self.canonical_pair().0
    }

    /// v = u·G for the reduced encoder G.
    pub fn encode(&self, u: &PolyVector) -> Result<PolyVector> {
        self.reduced.left_mul_vec(u)
    }

    /// Membership test; on success returns the unique message u with
    /// u·G = v for the reduced encoder G.
    pub fn contains(&self, v: &PolyVector) -> Option<PolyVector> {
        if v.len() != self.n || v.field() != &self.field {
            return None;
        }
        let (h, u) = self.canonical_pair();
        let mut rest = v.clone();
        let mut wpolys = Vec::with_capacity(self.k);
        for i in 0..self.k {
            let pcol = (0..self.n)
                .find(|&j| !h.entry(i, j).is_zero())
                .expect("full-rank Hermite form");
            // Rows below i are zero in column pcol, so the residual entry
            // there must be w_i times the (monic) pivot, exactly.
            let (q, r) = rest.entry(pcol).div_rem(h.entry(i, pcol)).unwrap();
            if !r.is_zero() {
                return None;
            }
            rest = rest.sub(&h.row(i).scale_poly(&q));
            wpolys.push(q);
        }
        if !rest.is_zero() {
            return None;
        }
        let w = PolyVector::from_polys(&self.field, wpolys).unwrap();
        // v = w·H = w·U·G, so the message w.r.t. G is w·U.
        let msg = u.left_mul_vec(&w).unwrap();
        debug_assert_eq!(self.encode(&msg).unwrap(), *v);
        Some(msg)
    }

    /// The dual code {w : w·vᵀ = 0 for all v ∈ C}.
    pub fn dual(&self) -> Result<ConvCode> {
        let h = self.reduced.right_kernel_basis()?;
        ConvCode::from_encoder(&h)
    }
}

impl PartialEq for ConvCode {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.n == other.n
            && self.k == other.k
            && self.canonical_form() == other.canonical_form()
    }
}
impl Eq for ConvCode {}

impl fmt::Debug for ConvCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ConvCode(n={}, k={}, δ={}, indices={:?})",
            self.n, self.k, self.degree, self.indices
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn code(s: &str) -> ConvCode {
        ConvCode::from_encoder(&PolyMatrix::parse(&f2(), s).unwrap()).unwrap()
    }

    #[test]
    fn construction_records_invariants() {
        let c = code("1, z, z, 1+z");
        assert_eq!((c.n(), c.k()), (4, 1));
        assert_eq!(c.degree(), 1);
        assert_eq!(c.memory(), 1);
        assert_eq!(c.forney_indices(), &[1]);
    }

    #[test]
    fn non_basic_encoders_are_rejected() {
        let g = PolyMatrix::parse(&f2(), "z, z^2").unwrap();
        assert!(matches!(ConvCode::from_encoder(&g), Err(Error::NonBasic)));
        let wide = PolyMatrix::parse(&f2(), "1; z").unwrap(); // 2×1
        assert!(ConvCode::from_encoder(&wide).is_err());
    }

    #[test]
    fn non_reduced_encoder_is_reduced_on_construction() {
        let gbar = PolyMatrix::parse(&f2(), "z+z^2+z^3, 1, 0; z^3, z+1, 1").unwrap();
        assert!(!gbar.is_reduced().unwrap());
        let c = ConvCode::from_encoder(&gbar).unwrap();
        assert!(c.reduced_encoder().is_reduced().unwrap());
        assert_eq!(c.degree(), 4);
        assert_eq!(c.forney_indices(), &[2, 2]);
        // Same row module either way.
        assert_eq!(
            c.canonical_form(),
            &gbar.hermite_form().unwrap()
        );
    }

    #[test]
    fn encode_contains_round_trip() {
        let c = code("1, z, z, 1+z; 0, 1, 1, 0");
        let u = PolyVector::parse(&f2(), "1+z, z^2").unwrap();
        let v = c.encode(&u).unwrap();
        assert_eq!(c.contains(&v), Some(u));
    }

    #[test]
    fn contains_rejects_non_codewords() {
        let c = code("1, z, z, 1+z");
        let v = PolyVector::parse(&f2(), "1, 0, 0, 0").unwrap();
        assert_eq!(c.contains(&v), None);
        // Wrong length.
        let w = PolyVector::parse(&f2(), "1, 0").unwrap();
        assert_eq!(c.contains(&w), None);
        // The zero vector is always a codeword.
        let z = PolyVector::zero(&f2(), 4);
        assert_eq!(c.contains(&z), Some(PolyVector::zero(&f2(), 1)));
    }

    #[test]
    fn code_equality_is_module_equality() {
        let a = code("1, z, 1+z");
        assert_ne!(a, code("1, 1, 1+z"));
        // A unimodular row mix generates the same module.
        let b1 = code("1, z, z, 1+z; 0, 1, 1, 0");
        let b2 = code("1, 1+z, 1+z, 1+z; 0, 1, 1, 0"); // row1 += row2
        assert_eq!(b1, b2);
    }

    #[test]
    fn dual_of_known_code() {
        let c = code("1, z, 1+z");
        let d = c.dual().unwrap();
        assert_eq!(d.k(), 2);
        assert_eq!(d, code("1, 1, 1; z, 1, 0"));
        // Double dual returns the original code.
        assert_eq!(d.dual().unwrap(), c);
        // Degrees agree.
        assert_eq!(d.degree(), c.degree());
    }

    #[test]
    fn messages_with_delay_are_recovered() {
        let c = code("1, z, z, 1+z");
        let u = PolyVector::from_polys(&f2(), vec![Poly::parse(&f2(), "z^3+z^5").unwrap()])
            .unwrap();
        let v = c.encode(&u).unwrap();
        assert_eq!(c.contains(&v), Some(u));
    }
}
