//! Univariate polynomials over GF(q) and the ℕ ∪ {∞} value type.
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial has an empty coefficient vector and degree `None`.
//!
//! Text syntax (used by `parse` and `Display`): a sum of terms like
//! `1 + z + z^2` or `a*z + a2*z^3`, where plain integers are element
//! encodings and `a`, `a2`, ... denote powers of the canonical generator α
//! in extension fields.

use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElement};

/// A nonnegative integer extended with +∞, ordered with ∞ greatest.
///
/// Delays of polynomials and all distance parameters take values here; a
/// minimum over an empty set is `Inf`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum InfInt {
    Finite(u64),
    Inf,
}

impl InfInt {
    pub fn is_finite(self) -> bool {
        matches!(self, InfInt::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            InfInt::Finite(v) => Some(v),
            InfInt::Inf => None,
        }
    }
}

impl From<u64> for InfInt {
    fn from(v: u64) -> Self {
        InfInt::Finite(v)
    }
}

impl std::ops::Add for InfInt {
    type Output = InfInt;
    fn add(self, rhs: InfInt) -> InfInt {
        match (self, rhs) {
            (InfInt::Finite(a), InfInt::Finite(b)) => InfInt::Finite(a + b),
            _ => InfInt::Inf,
        }
    }
}

impl fmt::Display for InfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InfInt::Finite(v) => write!(f, "{}", v),
            InfInt::Inf => write!(f, "inf"),
        }
    }
}

/// A polynomial in z over a [`Field`].
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u16>,
}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    /// The variable z.
    pub fn var(field: &Field) -> Poly {
        Poly::from_raw(field.clone(), vec![0, 1])
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        Poly::from_raw(field, vec![c.raw()])
    }

    /// c · z^k.
    pub fn monomial(c: FieldElement, k: usize) -> Poly {
        let field = c.field().clone();
        let mut coeffs = vec![0u16; k + 1];
        coeffs[k] = c.raw();
        Poly::from_raw(field, coeffs)
    }

    pub(crate) fn from_raw(field: Field, mut coeffs: Vec<u16>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> Result<Poly> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            if c.field() != field {
                return Err(Error::MixedFields);
            }
            raw.push(c.raw());
        }
        Ok(Poly::from_raw(field.clone(), raw))
    }

    /// Build from integer encodings, validating them against the field.
    pub fn from_encodings(field: &Field, coeffs: &[u64]) -> Result<Poly> {
        let mut raw = Vec::with_capacity(coeffs.len());
        for &c in coeffs {
            raw.push(field.element(c)?.raw());
        }
        Ok(Poly::from_raw(field.clone(), raw))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub(crate) fn raw_coeffs(&self) -> &[u16] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest exponent with a nonzero coefficient; ∞ for zero.
    pub fn delay(&self) -> InfInt {
        match self.coeffs.iter().position(|&c| c != 0) {
            Some(i) => InfInt::Finite(i as u64),
            None => InfInt::Inf,
        }
    }

    /// Number of nonzero coefficients (Hamming weight of the coefficient
    /// sequence).
    pub fn weight(&self) -> u64 {
        self.coeffs.iter().filter(|&&c| c != 0).count() as u64
    }

    /// Coefficient of z^i as a field element (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.field.el(*self.coeffs.get(i).unwrap_or(&0) as u64)
    }

    pub(crate) fn coeff_raw(&self, i: usize) -> u16 {
        *self.coeffs.get(i).unwrap_or(&0)
    }

    pub fn leading_coeff(&self) -> FieldElement {
        match self.coeffs.last() {
            Some(&c) => self.field.el(c as u64),
            None => self.field.zero(),
        }
    }

    fn check_same(&self, rhs: &Poly) {
        assert!(
            self.field == rhs.field,
            "operands belong to different fields"
        );
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u16; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.field.add_raw(self.coeff_raw(i), rhs.coeff_raw(i));
        }
        Poly::from_raw(self.field.clone(), out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u16; n];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.field.sub_raw(self.coeff_raw(i), rhs.coeff_raw(i));
        }
        Poly::from_raw(self.field.clone(), out)
    }

    pub fn neg(&self) -> Poly {
        let out = self.coeffs.iter().map(|&c| self.field.neg_raw(c)).collect();
        Poly::from_raw(self.field.clone(), out)
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let mut out = vec![0u16; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = self.field.add_raw(out[i + j], self.field.mul_raw(a, b));
            }
        }
        Poly::from_raw(self.field.clone(), out)
    }

    pub fn scale(&self, c: &FieldElement) -> Poly {
        assert!(c.field() == &self.field, "operands belong to different fields");
        let out = self
            .coeffs
            .iter()
            .map(|&x| self.field.mul_raw(x, c.raw()))
            .collect();
        Poly::from_raw(self.field.clone(), out)
    }

    /// Multiply by z^k.
    pub fn mul_z_pow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![0u16; k];
        out.extend_from_slice(&self.coeffs);
        Poly::from_raw(self.field.clone(), out)
    }

    /// Exact division by z^k; errors when the delay is smaller than k.
    pub fn div_z_pow(&self, k: usize) -> Result<Poly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if self.coeffs.iter().take(k).any(|&c| c != 0) {
            return Err(Error::NonPolynomialImage(0));
        }
        Ok(Poly::from_raw(self.field.clone(), self.coeffs[k..].to_vec()))
    }

    /// Euclidean division: self = q·d + r with deg r < deg d.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.deg().unwrap();
        let lead_inv = self.field.inv_raw(*d.coeffs.last().unwrap()).unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u16; self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let dr = r.len() - 1;
            let c = self.field.mul_raw(r[dr], lead_inv);
            if c != 0 {
                q[dr - dd] = c;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[dr - dd + i] = self
                        .field
                        .sub_raw(r[dr - dd + i], self.field.mul_raw(c, dc));
                }
            }
            while r.last() == Some(&0) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        Ok((
            Poly::from_raw(self.field.clone(), q),
            Poly::from_raw(self.field.clone(), r),
        ))
    }

    /// Monic scalar multiple (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.field.inv_raw(*self.coeffs.last().unwrap_or(&0)) {
            Some(inv) => self.scale(&self.field.el(inv as u64)),
            None => self.clone(),
        }
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).unwrap();
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, at: &FieldElement) -> FieldElement {
        let mut acc = 0u16;
        for &c in self.coeffs.iter().rev() {
            acc = self.field.add_raw(self.field.mul_raw(acc, at.raw()), c);
        }
        self.field.el(acc as u64)
    }

    /// Parse the textual syntax, e.g. `1+z+z^2`, `a*z`, `a2*z^3`, `0`.
    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut acc = Poly::zero(field);
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling '+' in {:?}", s)));
            }
            acc = acc.add(&parse_term(field, term, s)?);
        }
        Ok(acc)
    }
}

fn parse_term(field: &Field, term: &str, whole: &str) -> Result<Poly> {
    let bad = || Error::Parse(format!("bad term {:?} in {:?}", term, whole));

    let (coeff_str, z_str) = match term.find('z') {
        Some(pos) => {
            let before = &term[..pos];
            let before = before.strip_suffix('*').unwrap_or(before);
            (before, Some(&term[pos..]))
        }
        None => (term, None),
    };

    let coeff = if coeff_str.is_empty() {
        field.one()
    } else if let Some(rest) = coeff_str.strip_prefix('a') {
        if field.m() == 1 {
            return Err(bad());
        }
        let e: u32 = if rest.is_empty() {
            1
        } else {
            rest.parse().map_err(|_| bad())?
        };
        field.el(field.alpha_raw() as u64).pow(e)
    } else {
        let v: u64 = coeff_str.parse().map_err(|_| bad())?;
        field.element(v).map_err(|_| bad())?
    };

    let exp = match z_str {
        None => 0,
        Some("z") => 1,
        Some(zs) => {
            let rest = zs.strip_prefix("z^").ok_or_else(bad)?;
            rest.parse().map_err(|_| bad())?
        }
    };

    Ok(Poly::monomial(coeff, exp))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Hash for Poly {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            let cs = self.field.format_raw(c);
            match (i, c) {
                (0, _) => write!(f, "{}", cs)?,
                (_, 1) => {}
                _ => write!(f, "{}*", cs)?,
            }
            match i {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{}", i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
