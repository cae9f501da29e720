//! Arithmetic in GF(p^m) for small prime powers.
//!
//! A [`Field`] owns complete addition/multiplication/inverse tables, so
//! element operations are table lookups and everything downstream is exact.
//! Elements are encoded as integers: the element with coordinate vector
//! (c_0, ..., c_{m-1}) over GF(p), i.e. c_0 + c_1*α + ... w.r.t. the residue
//! class α of x modulo the field modulus, is encoded as Σ c_i p^i.
//!
//! The modulus is chosen deterministically: the lexicographically smallest
//! irreducible monic polynomial of degree m, comparing coefficient tuples
//! from the constant term up. Two fields created with the same (p, m) are
//! therefore identical.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order constructible by default.
pub const DEFAULT_ORDER_LIMIT: u64 = 256;

struct Repr {
    p: u64,
    m: u32,
    q: u64,
    /// Monic modulus, ascending coefficients in GF(p), length m+1.
    modulus: Vec<u16>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>, // inv[0] is a placeholder
}

/// A finite field GF(p^m), cheap to clone and shared behind an `Arc`.
#[derive(Clone)]
pub struct Field {
    repr: Arc<Repr>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.repr.p == other.repr.p && self.repr.m == other.repr.m
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.p.hash(state);
        self.repr.m.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.repr.q)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over GF(p) as ascending coefficient vectors (helpers for the
/// modulus search and the multiplication table).
mod pf {
    pub fn normalize(v: &mut Vec<u16>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub fn rem(a: &[u16], b: &[u16], p: u64) -> Vec<u16> {
        let p = p as u32;
        let mut r: Vec<u16> = a.to_vec();
        normalize(&mut r);
        let db = b.len() - 1; // b is normalized and nonzero
        let lead_inv = inv_mod(b[db] as u32, p);
        while r.len() > db {
            let dr = r.len() - 1;
            let c = (r[dr] as u32 * lead_inv) % p;
            for i in 0..=db {
                let idx = dr - db + i;
                let sub = (c * b[i] as u32) % p;
                r[idx] = (((r[idx] as u32) + p - sub) % p) as u16;
            }
            normalize(&mut r);
            if r.is_empty() {
                break;
            }
        }
        r
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is a small prime; brute force is plenty.
        (1..p).find(|&b| (a * b) % p == 1).expect("unit mod p")
    }
}

fn decode_base(mut v: u64, p: u64, len: usize) -> Vec<u16> {
    let mut out = vec![0u16; len];
    for slot in out.iter_mut() {
        *slot = (v % p) as u16;
        v /= p;
    }
    out
}

/// The lexicographically smallest irreducible monic polynomial of degree m
/// over GF(p), coefficient tuples compared from the constant term up.
fn smallest_irreducible(p: u64, m: u32) -> Vec<u16> {
    if m == 1 {
        return vec![0, 1]; // x
    }
    let count = p.pow(m);
    'cand: for id in 0..count {
        let mut cand = decode_base(id, p, m as usize);
        cand.push(1); // monic of degree m
        // Trial division by every monic polynomial of degree 1..=m/2.
        for d in 1..=(m / 2) {
            for div_id in 0..p.pow(d) {
                let mut div = decode_base(div_id, p, d as usize);
                div.push(1);
                if pf::rem(&cand, &div, p).is_empty() {
                    continue 'cand;
                }
            }
        }
        return cand;
    }
    unreachable!("irreducible polynomials of every degree exist")
}

impl Field {
    /// GF(p^m) with the default order limit.
    pub fn new(p: u64, m: u32) -> Result<Field> {
        Field::with_order_limit(p, m, DEFAULT_ORDER_LIMIT)
    }

    pub fn with_order_limit(p: u64, m: u32, limit: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidArgument(
                "extension degree m must be at least 1".into(),
            ));
        }
        let q = p
            .checked_pow(m)
            .ok_or(Error::FieldTooLarge { q: u64::MAX, limit })?;
        if q > limit {
            return Err(Error::FieldTooLarge { q, limit });
        }

        let modulus = smallest_irreducible(p, m);
        let qs = q as usize;
        let md = m as usize;

        // Element id <-> coordinate vector over GF(p).
        let coords: Vec<Vec<u16>> = (0..q).map(|id| decode_base(id, p, md)).collect();
        let encode = |c: &[u16]| -> u16 {
            let mut acc: u64 = 0;
            for &d in c.iter().rev() {
                acc = acc * p + d as u64;
            }
            acc as u16
        };

        let mut add = vec![0u16; qs * qs];
        let mut neg = vec![0u16; qs];
        for a in 0..qs {
            let mut nc = vec![0u16; md];
            for i in 0..md {
                nc[i] = ((p - coords[a][i] as u64) % p) as u16;
            }
            neg[a] = encode(&nc);
            for b in 0..qs {
                let mut c = vec![0u16; md];
                for i in 0..md {
                    c[i] = ((coords[a][i] as u64 + coords[b][i] as u64) % p) as u16;
                }
                add[a * qs + b] = encode(&c);
            }
        }

        let mut mul = vec![0u16; qs * qs];
        for a in 0..qs {
            for b in a..qs {
                // Convolve and reduce modulo the modulus.
                let mut prod = vec![0u16; 2 * md - 1];
                for i in 0..md {
                    if coords[a][i] == 0 {
                        continue;
                    }
                    for j in 0..md {
                        prod[i + j] =
                            ((prod[i + j] as u64 + coords[a][i] as u64 * coords[b][j] as u64) % p)
                                as u16;
                    }
                }
                let mut r = pf::rem(&prod, &modulus, p);
                r.resize(md, 0);
                let e = encode(&r);
                mul[a * qs + b] = e;
                mul[b * qs + a] = e;
            }
        }

        let mut inv = vec![0u16; qs];
        for a in 1..qs {
            inv[a] = (1..qs)
                .find(|&b| mul[a * qs + b] == 1)
                .expect("nonzero field element has an inverse") as u16;
        }

        Ok(Field {
            repr: Arc::new(Repr {
                p,
                m,
                q,
                modulus,
                add,
                mul,
                neg,
                inv,
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.repr.p
    }

    pub fn m(&self) -> u32 {
        self.repr.m
    }

    /// Field order q = p^m.
    pub fn q(&self) -> u64 {
        self.repr.q
    }

    /// Monic modulus polynomial, ascending coefficients over GF(p).
    pub fn modulus(&self) -> &[u16] {
        &self.repr.modulus
    }

    /// The element with the given integer encoding.
    pub fn element(&self, v: u64) -> Result<FieldElement> {
        if v >= self.repr.q {
            return Err(Error::InvalidArgument(format!(
                "{} is not an element encoding of GF({})",
                v,
                self.repr.q
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            val: v as u16,
        })
    }

    /// Shorthand used pervasively in tests; panics on an invalid encoding.
    pub fn el(&self, v: u64) -> FieldElement {
        self.element(v).expect("valid element encoding")
    }

    pub fn zero(&self) -> FieldElement {
        self.el(0)
    }

    pub fn one(&self) -> FieldElement {
        self.el(1)
    }

    /// All elements in encoding order 0, 1, ..., q-1.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.repr.q).map(move |v| self.el(v))
    }

    // ---- raw operations on encodings (used by the polynomial layer) ----

    #[inline]
    pub(crate) fn add_raw(&self, a: u16, b: u16) -> u16 {
        self.repr.add[a as usize * self.repr.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn sub_raw(&self, a: u16, b: u16) -> u16 {
        self.add_raw(a, self.repr.neg[b as usize])
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: u16, b: u16) -> u16 {
        self.repr.mul[a as usize * self.repr.q as usize + b as usize]
    }

    #[inline]
    pub(crate) fn neg_raw(&self, a: u16) -> u16 {
        self.repr.neg[a as usize]
    }

    #[inline]
    pub(crate) fn inv_raw(&self, a: u16) -> Option<u16> {
        if a == 0 {
            None
        } else {
            Some(self.repr.inv[a as usize])
        }
    }

    pub(crate) fn pow_raw(&self, a: u16, e: u32) -> u16 {
        let mut acc = 1u16;
        for _ in 0..e {
            acc = self.mul_raw(acc, a);
        }
        acc
    }

    /// Residue class of x modulo the field modulus (only meaningful for m > 1).
    pub(crate) fn alpha_raw(&self) -> u16 {
        self.repr.p as u16
    }

    /// Render an element encoding: `0`, `1`, `a`, `a2`, ... when the element
    /// is a power of α, otherwise the plain integer encoding.
    pub(crate) fn format_raw(&self, v: u16) -> String {
        if v == 0 || v == 1 || self.repr.m == 1 {
            return v.to_string();
        }
        let alpha = self.alpha_raw();
        let mut pow = alpha;
        let mut e = 1u32;
        loop {
            if pow == v {
                return if e == 1 {
                    "a".to_string()
                } else {
                    format!("a{}", e)
                };
            }
            if pow == 1 {
                break; // cycled without hitting v
            }
            pow = self.mul_raw(pow, alpha);
            e += 1;
        }
        v.to_string()
    }
}

/// An element of a [`Field`], carrying a handle to it.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    val: u16,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Integer encoding of the element.
    pub fn value(&self) -> u64 {
        self.val as u64
    }

    pub(crate) fn raw(&self) -> u16 {
        self.val
    }

    pub fn is_zero(&self) -> bool {
        self.val == 0
    }

    pub fn inv(&self) -> Result<FieldElement> {
        match self.field.inv_raw(self.val) {
            Some(v) => Ok(FieldElement {
                field: self.field.clone(),
                val: v,
            }),
            None => Err(Error::DivisionByZero),
        }
    }

    pub fn try_div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        let inv = rhs.inv()?;
        Ok(self.clone() * inv)
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            val: self.field.pow_raw(self.val, e),
        }
    }

    fn check_same(&self, rhs: &FieldElement) {
        assert!(
            self.field == rhs.field,
            "operands belong to different fields"
        );
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.val == other.val
    }
}
impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.val.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∈{:?}", self.field.format_raw(self.val), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format_raw(self.val))
    }
}

impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.check_same(&rhs);
        FieldElement {
            val: self.field.add_raw(self.val, rhs.val),
            field: self.field,
        }
    }
}

impl std::ops::Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.check_same(&rhs);
        FieldElement {
            val: self.field.sub_raw(self.val, rhs.val),
            field: self.field,
        }
    }
}

impl std::ops::Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.check_same(&rhs);
        FieldElement {
            val: self.field.mul_raw(self.val, rhs.val),
            field: self.field,
        }
    }
}

impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            val: self.field.neg_raw(self.val),
            field: self.field,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_arithmetic() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.q(), 2);
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!((f.one() + f.one()).value(), 0);
        assert_eq!((f.one() * f.one()).value(), 1);
        assert_eq!(f.one().inv().unwrap().value(), 1);
    }

    #[test]
    fn gf4_matches_hand_table() {
        // GF(4) with modulus x^2 + x + 1: α^2 = α + 1, 1/α = α + 1.
        let f = Field::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let a = f.el(2); // α
        let a1 = f.el(3); // α + 1
        assert_eq!(a.clone() * a.clone(), a1);
        assert_eq!(a.inv().unwrap(), f.el(3));
        assert_eq!(a.clone() + a, f.zero());
        // α generates the multiplicative group of order 3.
        assert_eq!(f.el(2).pow(3), f.one());
        assert_eq!(f.format_raw(2), "a");
        assert_eq!(f.format_raw(3), "a2");
    }

    #[test]
    fn gf9_modulus_is_first_irreducible() {
        // Independent scan: among monic degree-2 candidates over GF(3),
        // ordered by (c0, c1), the first with no root is x^2 + 1.
        let mut expect = None;
        'outer: for id in 0..9u16 {
            let c0 = id % 3;
            let c1 = id / 3;
            for x in 0..3u16 {
                if (x * x + c1 * x + c0) % 3 == 0 {
                    continue 'outer; // has a root => reducible
                }
            }
            expect = Some(vec![c0, c1, 1]);
            break;
        }
        let f = Field::new(3, 2).unwrap();
        assert_eq!(f.modulus(), expect.unwrap().as_slice());
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn every_field_satisfies_axioms_exhaustively() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1)] {
            let f = Field::with_order_limit(p, m, 256).unwrap();
            let q = f.q() as u16;
            for a in 0..q {
                // additive inverse
                assert_eq!(f.add_raw(a, f.neg_raw(a)), 0);
                // multiplicative inverse
                if a != 0 {
                    assert_eq!(f.mul_raw(a, f.inv_raw(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add_raw(a, b), f.add_raw(b, a));
                    assert_eq!(f.mul_raw(a, b), f.mul_raw(b, a));
                    for c in 0..q {
                        assert_eq!(
                            f.mul_raw(a, f.add_raw(b, c)),
                            f.add_raw(f.mul_raw(a, b), f.mul_raw(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(Field::new(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(Field::new(6, 2), Err(Error::NotPrime(6))));
        assert!(matches!(
            Field::new(2, 9),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(Field::new(257, 1), Err(Error::FieldTooLarge { .. })));
        assert!(Field::with_order_limit(2, 9, 1024).is_ok());
    }

    #[test]
    fn mixed_field_operations_are_rejected() {
        let f2 = Field::new(2, 1).unwrap();
        let f4 = Field::new(2, 2).unwrap();
        assert!(f2.one().try_div(&f4.one()).is_err());
        let r = std::panic::catch_unwind(|| f2.one() + f4.one());
        assert!(r.is_err());
    }

    #[test]
    fn element_encoding_bounds() {
        let f = Field::new(2, 2).unwrap();
        assert!(f.element(3).is_ok());
        assert!(f.element(4).is_err());
    }
}
