//! Weight enumerators and formal power series over them.
//!
//! A [`WPoly`] is a polynomial in the weight variable W with
//! arbitrary-precision integer coefficients. Weight enumerators proper have
//! nonnegative coefficients (they count vectors); the signed representation
//! exists because series inversion produces intermediate alternating signs.
//!
//! A [`WSeries`] is a power series in a second variable L, truncated at a
//! configurable order, with `WPoly` coefficients. Its multiplicative
//! inverse exists exactly when the constant term is 1.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::InfInt;

/// Default truncation order for series computations.
pub const DEFAULT_SERIES_ORDER: usize = 12;

/// A polynomial in W with `BigInt` coefficients, ascending, no trailing
/// zeros.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WPoly {
    coeffs: Vec<BigInt>,
}

impl WPoly {
    pub fn zero() -> WPoly {
        WPoly { coeffs: Vec::new() }
    }

    pub fn one() -> WPoly {
        WPoly::monomial(0)
    }

    /// W^k.
    pub fn monomial(k: usize) -> WPoly {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        WPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> WPoly {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        WPoly { coeffs }
    }

    pub fn from_u64_coeffs(coeffs: &[u64]) -> WPoly {
        WPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Weight enumerator of a multiset of weights: Σ W^{w_i}.
    pub fn from_weights(weights: impl IntoIterator<Item = u64>) -> WPoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for w in weights {
            let w = w as usize;
            if coeffs.len() <= w {
                coeffs.resize(w + 1, BigInt::zero());
            }
            coeffs[w] += 1;
        }
        WPoly::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Smallest exponent with a nonzero coefficient; ∞ for zero. For a
    /// weight enumerator this is the minimum weight counted.
    pub fn del(&self) -> InfInt {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(i) => InfInt::Finite(i as u64),
            None => InfInt::Inf,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Value at W = 1 (total count for an enumerator).
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, rhs: &WPoly) -> WPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        WPoly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &WPoly) -> WPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - rhs.coeff(i));
        }
        WPoly::from_coeffs(out)
    }

    pub fn neg(&self) -> WPoly {
        WPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, rhs: &WPoly) -> WPoly {
        if self.is_zero() || rhs.is_zero() {
            return WPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        WPoly::from_coeffs(out)
    }
}

/// Weight enumerator of a set of vectors over a field (raw encodings);
/// duplicates are collapsed because the argument is a set.
pub fn we_of_set(vectors: &[Vec<u16>]) -> WPoly {
    let set: BTreeSet<&Vec<u16>> = vectors.iter().collect();
    WPoly::from_weights(
        set.into_iter()
            .map(|v| v.iter().filter(|&&c| c != 0).count() as u64),
    )
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{}", mag)?;
            }
            match i {
                0 => {}
                1 => write!(f, "W")?,
                _ => write!(f, "W^{}", i)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A power series in L with [`WPoly`] coefficients, truncated at `order`
/// (coefficients for L^0 .. L^order inclusive).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WSeries {
    order: usize,
    coeffs: Vec<WPoly>,
}

impl WSeries {
    pub fn zero(order: usize) -> WSeries {
        WSeries {
            order,
            coeffs: vec![WPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> WSeries {
        let mut s = WSeries::zero(order);
        s.coeffs[0] = WPoly::one();
        s
    }

    pub fn from_coeffs(order: usize, mut coeffs: Vec<WPoly>) -> WSeries {
        coeffs.resize(order + 1, WPoly::zero());
        WSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, l: usize) -> &WPoly {
        &self.coeffs[l]
    }

    pub fn add(&self, rhs: &WSeries) -> WSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|l| self.coeffs[l].add(&rhs.coeffs[l]))
            .collect();
        WSeries { order, coeffs }
    }

    pub fn sub(&self, rhs: &WSeries) -> WSeries {
        let order = self.order.min(rhs.order);
        let coeffs = (0..=order)
            .map(|l| self.coeffs[l].sub(&rhs.coeffs[l]))
            .collect();
        WSeries { order, coeffs }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &WSeries) -> WSeries {
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![WPoly::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&rhs.coeffs[j]));
            }
        }
        WSeries { order, coeffs }
    }

    /// Multiplicative inverse; requires constant term exactly 1.
    /// Coefficients of the inverse may alternate in sign, e.g.
    /// (1 + W⁵L²)⁻¹ = 1 − W⁵L² + W¹⁰L⁴ − ...
    pub fn invert(&self) -> Result<WSeries> {
        if self.coeffs[0] != WPoly::one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let mut inv = vec![WPoly::zero(); self.order + 1];
        inv[0] = WPoly::one();
        for l in 1..=self.order {
            let mut acc = WPoly::zero();
            for i in 1..=l {
                acc = acc.add(&self.coeffs[i].mul(&inv[l - i]));
            }
            inv[l] = acc.neg();
        }
        Ok(WSeries {
            order: self.order,
            coeffs: inv,
        })
    }
}

impl fmt::Display for WSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match l {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "({})L", c)?,
                _ => write!(f, "({})L^{}", c, l)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(L^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerator_of_a_small_set() {
        // Branch outputs at the zero state of the encoder (1, z, z, 1+z):
        // {0000, 1001}.
        let vectors = vec![vec![0, 0, 0, 0], vec![1, 0, 0, 1]];
        let we = we_of_set(&vectors);
        assert_eq!(we, WPoly::from_u64_coeffs(&[1, 0, 1]));
        assert_eq!(we.to_string(), "1+W^2");
        // Duplicates collapse: the argument is a set.
        let with_dup = vec![vec![0, 0], vec![0, 0], vec![1, 1]];
        assert_eq!(we_of_set(&with_dup), WPoly::from_u64_coeffs(&[1, 0, 1]));
    }

    #[test]
    fn del_and_display() {
        let p = WPoly::from_u64_coeffs(&[0, 0, 3, 1]);
        assert_eq!(p.del(), InfInt::Finite(2));
        assert_eq!(p.to_string(), "3W^2+W^3");
        assert_eq!(WPoly::zero().del(), InfInt::Inf);
        assert_eq!(WPoly::one().to_string(), "1");
        assert_eq!(WPoly::one().sub(&WPoly::monomial(5)).to_string(), "1-W^5");
    }

    #[test]
    fn series_inverse_of_documented_example() {
        // (1 + W⁵L²)⁻¹ = 1 − W⁵L² + W¹⁰L⁴ − ...
        let mut phi = WSeries::one(6);
        phi.coeffs[2] = WPoly::monomial(5);
        let inv = phi.invert().unwrap();
        assert_eq!(inv.coeff(0), &WPoly::one());
        assert!(inv.coeff(1).is_zero());
        assert_eq!(inv.coeff(2), &WPoly::monomial(5).neg());
        assert!(inv.coeff(3).is_zero());
        assert_eq!(inv.coeff(4), &WPoly::monomial(10));
        assert_eq!(inv.coeff(6), &WPoly::monomial(15).neg());
        // Round trip.
        assert_eq!(phi.mul(&inv), WSeries::one(6));
    }

    #[test]
    fn inverse_requires_unit_constant_term() {
        let s = WSeries::zero(4);
        assert!(matches!(s.invert(), Err(Error::NonUnitConstantTerm)));
        let mut s2 = WSeries::one(4);
        s2.coeffs[0] = WPoly::from_u64_coeffs(&[2]);
        assert!(s2.invert().is_err());
    }

    #[test]
    fn random_round_trips() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..25 {
            let mut s = WSeries::one(8);
            for l in 1..=8 {
                let coeffs: Vec<u64> = (0..4).map(|_| rng.gen_range(0..5)).collect();
                s.coeffs[l] = WPoly::from_u64_coeffs(&coeffs);
            }
            let inv = s.invert().unwrap();
            assert_eq!(s.mul(&inv), WSeries::one(8));
            assert_eq!(inv.mul(&s), WSeries::one(8));
        }
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        // (Σ_{w<64} W^w)^12 counts 64^12 > 2^64 objects in total.
        let row = WPoly::from_weights(0..64u64);
        let mut acc = WPoly::one();
        for _ in 0..12 {
            acc = acc.mul(&row);
        }
        assert!(acc.eval_one() > BigInt::from(u64::MAX));
        assert!(acc.is_nonnegative());
    }
}
