//! Distance parameters of a convolutional code: column distances, extended
//! row distances, the active families, the weight enumerator and the free
//! distance.
//!
//! Every family is computed from transfer-matrix formulas on the weight
//! adjacency matrix; the [`brute`] submodule recomputes them by direct
//! message enumeration so the two routes can be cross-validated.

use std::fmt;

use crate::budget::Budget;
use crate::code::ConvCode;
use crate::error::{Error, Result};
use crate::pmat::PolyMatrix;
use crate::poly::InfInt;
use crate::realization::ccf;
use crate::wam::{wam, Wam};
use crate::wenum::{WPoly, WSeries};

/// The distance-parameter families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DistanceFamily {
    Column,
    ExtendedRow,
    ActiveColumn,
    ActiveRow,
    ActiveSegment,
    ActiveBurst,
}

impl fmt::Display for DistanceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DistanceFamily::Column => "column",
            DistanceFamily::ExtendedRow => "extended-row",
            DistanceFamily::ActiveColumn => "active-column",
            DistanceFamily::ActiveRow => "active-row",
            DistanceFamily::ActiveSegment => "active-segment",
            DistanceFamily::ActiveBurst => "active-burst",
        };
        f.write_str(name)
    }
}

/// One distance profile: `values[i]` is the parameter at `j = j_min + i`,
/// running inclusively up to the requested `jmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfile {
    pub family: DistanceFamily,
    pub j_min: usize,
    pub values: Vec<InfInt>,
}

impl DistanceProfile {
    pub fn value(&self, j: usize) -> Option<InfInt> {
        j.checked_sub(self.j_min)
            .and_then(|i| self.values.get(i))
            .copied()
    }
}

/// The enumerators `Ω_1, …, Ω_N` of atomic codewords: the coefficient of
/// `W^α` in `Ω_l` counts the atomic codewords of degree `l − 1` and weight
/// `α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSeries {
    omegas: Vec<WPoly>,
}

impl OmegaSeries {
    pub fn order(&self) -> usize {
        self.omegas.len()
    }

    /// `Ω_l` for `1 ≤ l ≤ order`.
    pub fn omega(&self, l: usize) -> &WPoly {
        assert!(l >= 1 && l <= self.omegas.len(), "Ω_{l} out of range");
        &self.omegas[l - 1]
    }

    /// The truncated weight enumerator `1 + Σ_{l≥1} Ω_l L^l`.
    pub fn we_series(&self) -> WSeries {
        let mut coeffs = Vec::with_capacity(self.omegas.len() + 1);
        coeffs.push(WPoly::one());
        coeffs.extend(self.omegas.iter().cloned());
        WSeries::from_coeffs(self.omegas.len(), coeffs)
    }
}

/// `Ω_1 … Ω_N` from the power series `Φ = Σ_j L^j (Λ̂^j)_{0,0}` via the
/// identity `we = 2 − Φ⁻¹`.
fn omega_from_wam(lambda: &Wam, order: usize) -> Result<OmegaSeries> {
    let hat = lambda.hat()?;
    let mut power = lambda.identity_like();
    let mut phis = Vec::with_capacity(order + 1);
    for _ in 0..=order {
        phis.push(power.entry(0, 0).clone());
        power = power.mul(&hat);
    }
    let phi = WSeries::from_coeffs(order, phis);
    let psi = phi.invert()?;
    let mut omegas = Vec::with_capacity(order);
    for l in 1..=order {
        let omega = psi.coeff(l).neg();
        if !omega.is_nonnegative() {
            return Err(Error::Internal("negative coefficient in weight enumerator"));
        }
        omegas.push(omega);
    }
    Ok(OmegaSeries { omegas })
}

/// Weight enumerator data of the code, truncated after `Ω_order`.
pub fn omega_series(c: &ConvCode, order: usize, budget: &Budget) -> Result<OmegaSeries> {
    let lambda = wam(c.reduced_encoder(), budget)?;
    omega_from_wam(&lambda, order)
}

/// Extended row distances `d̂ʳ_j = del(Ω_{j+1})` for `j = 0, …, jmax`; the
/// value is `∞` when no atomic codeword of degree `j` exists.
pub fn extended_row_distances(c: &ConvCode, jmax: usize, budget: &Budget) -> Result<DistanceProfile> {
    let omegas = omega_series(c, jmax + 1, budget)?;
    let values = (0..=jmax).map(|j| omegas.omega(j + 1).del()).collect();
    Ok(DistanceProfile {
        family: DistanceFamily::ExtendedRow,
        j_min: 0,
        values,
    })
}

/// Column distances `d^c_j = min_Y del((Λ̂ Λ^j)_{0,Y})` for `j = 0, …, jmax`.
pub fn column_distances(c: &ConvCode, jmax: usize, budget: &Budget) -> Result<DistanceProfile> {
    let lambda = wam(c.reduced_encoder(), budget)?;
    let mut acc = lambda.hat()?;
    let mut values = Vec::with_capacity(jmax + 1);
    for _ in 0..=jmax {
        let d = (0..acc.states())
            .map(|y| acc.entry(0, y).del())
            .min()
            .unwrap_or(InfInt::Inf);
        values.push(d);
        acc = acc.mul(&lambda);
    }
    Ok(DistanceProfile {
        family: DistanceFamily::Column,
        j_min: 0,
        values,
    })
}

/// First `j` for which the active burst distance is defined: the defining
/// set is empty below the smallest row degree, and at `j = 0` it is always
/// empty, so profiles start at `min(1, ν_1, …, ν_k)`.  (When a row degree
/// is 0 the `j = 0` entry is therefore reported as `∞`.)
pub fn burst_j_min(row_degrees: &[usize]) -> usize {
    row_degrees.iter().copied().min().unwrap_or(1).min(1)
}

/// Active column, segment or burst distances from powers of `Λ̃`:
/// `a^c_j = min_Y del(Λ̃^{j+1}_{0,Y})`, `a^s_j = min_{X,Y}`, and
/// `a^b_j = del(Λ̃^{j+1}_{0,0})`.  Burst values are additionally recomputed
/// from the composition formula `min Σ_l del(Ω_{M_l})` over all ways to
/// write `j + 1` as an ordered sum of parts `M_l ≥ 2`; the two routes must
/// agree.
pub fn active_distances(
    c: &ConvCode,
    family: DistanceFamily,
    jmax: usize,
    budget: &Budget,
) -> Result<DistanceProfile> {
    let j_min = match family {
        DistanceFamily::ActiveColumn | DistanceFamily::ActiveSegment => 0,
        DistanceFamily::ActiveBurst => burst_j_min(c.row_degrees()),
        other => {
            return Err(Error::InvalidArgument(format!(
                "active_distances computes active families, not {other}"
            )))
        }
    };
    if jmax < j_min {
        return Err(Error::InvalidArgument(format!(
            "jmax {jmax} below the first defined index {j_min}"
        )));
    }
    let lambda = wam(c.reduced_encoder(), budget)?;
    let tilde = lambda.tilde();
    let mut power = tilde.clone();
    let mut values = Vec::with_capacity(jmax + 1 - j_min);
    for j in 0..=jmax {
        // power = Λ̃^{j+1}
        let v = match family {
            DistanceFamily::ActiveColumn => (0..power.states())
                .map(|y| power.entry(0, y).del())
                .min()
                .unwrap_or(InfInt::Inf),
            DistanceFamily::ActiveSegment => (0..power.states())
                .flat_map(|x| (0..power.states()).map(move |y| (x, y)))
                .map(|(x, y)| power.entry(x, y).del())
                .min()
                .unwrap_or(InfInt::Inf),
            DistanceFamily::ActiveBurst => power.entry(0, 0).del(),
            _ => unreachable!(),
        };
        if j >= j_min {
            values.push(v);
        }
        if j < jmax {
            power = power.mul(&tilde);
        }
    }

    if family == DistanceFamily::ActiveBurst {
        let composed = burst_by_composition(&omega_from_wam(&lambda, jmax + 1)?, jmax);
        for (i, v) in values.iter().enumerate() {
            if composed[j_min + i] != *v {
                return Err(Error::Internal("active burst distance formulas disagree"));
            }
        }
    }

    Ok(DistanceProfile { family, j_min, values })
}

/// `min { Σ_l del(Ω_{M_l}) : M_l ≥ 2, Σ M_l = j + 1 }` for every `j ≤ jmax`.
fn burst_by_composition(omegas: &OmegaSeries, jmax: usize) -> Vec<InfInt> {
    let mut best = vec![InfInt::Inf; jmax + 2];
    best[0] = InfInt::Finite(0);
    for s in 2..=jmax + 1 {
        for m in 2..=s {
            let candidate = omegas.omega(m).del() + best[s - m];
            best[s] = best[s].min(candidate);
        }
    }
    (0..=jmax).map(|j| best[j + 1]).collect()
}

/// Active row distances of a reduced encoder: for each `j`, the minimal
/// weight of `(uG)_{[0, m+j]}` over messages of degree exactly `j` whose
/// codeword stays active through time `j`.  Unlike the other families this
/// depends on the encoder, not just on the code.
pub fn active_row_distances(g: &PolyMatrix, jmax: usize, budget: &Budget) -> Result<DistanceProfile> {
    if !g.is_reduced()? {
        return Err(Error::NotReduced);
    }
    let code = ConvCode::from_encoder(g)?;
    debug_assert_eq!(code.reduced_encoder(), g);
    let r = ccf(g)?;
    let field = g.field().clone();
    let q = field.q();
    let k = g.rows();
    let m = code.memory();
    let mut values = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let count = q
            .checked_pow((k * (j + 1)) as u32)
            .filter(|&c| c <= budget.messages)
            .ok_or(Error::BudgetExceeded {
                what: "messages",
                needed: q.checked_pow((k * (j + 1)) as u32).unwrap_or(u64::MAX),
                budget: budget.messages,
            })?;
        let mut best = InfInt::Inf;
        for id in 0..count {
            let u = brute::message(&field, k, j + 1, id);
            if u.deg() != Some(j) {
                continue;
            }
            let (v, x) = r.run(&u)?;
            if !brute::states_active(&x, 0, j) {
                continue;
            }
            best = best.min(InfInt::Finite(v.truncate(m + j).weight()));
        }
        values.push(best);
    }
    Ok(DistanceProfile {
        family: DistanceFamily::ActiveRow,
        j_min: 0,
        values,
    })
}

/// The free distance `min { wt(v) : v ∈ C, v ≠ 0 }`, computed as the
/// running minimum of `del(Ω_l)`.  The search stops once the smallest entry
/// delay of `Λ̃^l` exceeds the running minimum: entry delays of products of
/// nonnegative matrices add along paths, so no longer atomic codeword can
/// beat the minimum found so far.
pub fn free_distance(c: &ConvCode, budget: &Budget) -> Result<u64> {
    let lambda = wam(c.reduced_encoder(), budget)?;
    let hat = lambda.hat()?;
    let tilde = lambda.tilde();
    let mut hat_power = lambda.identity_like();
    let mut tilde_power = lambda.identity_like();
    let mut phis: Vec<WPoly> = vec![WPoly::one()];
    let mut psis: Vec<WPoly> = vec![WPoly::one()];
    let mut best = InfInt::Inf;
    for _ in 1..=budget.free_distance_terms {
        hat_power = hat_power.mul(&hat);
        tilde_power = tilde_power.mul(&tilde);
        phis.push(hat_power.entry(0, 0).clone());
        let psi_l = (1..phis.len())
            .fold(WPoly::zero(), |acc, i| {
                acc.add(&phis[i].mul(&psis[phis.len() - 1 - i]))
            })
            .neg();
        let omega_l = psi_l.neg();
        psis.push(psi_l);
        if !omega_l.is_nonnegative() {
            return Err(Error::Internal("negative coefficient in weight enumerator"));
        }
        best = best.min(omega_l.del());
        let floor = (0..tilde_power.states())
            .flat_map(|x| (0..tilde_power.states()).map(move |y| (x, y)))
            .map(|(x, y)| tilde_power.entry(x, y).del())
            .min()
            .unwrap_or(InfInt::Inf);
        if let InfInt::Finite(b) = best {
            if floor > best {
                return Ok(b);
            }
        }
    }
    Err(Error::BudgetExceeded {
        what: "free_distance_terms",
        needed: budget.free_distance_terms.saturating_add(1),
        budget: budget.free_distance_terms,
    })
}

/// Reference implementations that enumerate messages directly from the
/// definitions; they are exponential in `jmax` and exist to cross-validate
/// the transfer-matrix formulas.
pub mod brute {
    use super::*;
    use crate::gf::Field;
    use crate::pmat::PolyVector;
    use crate::poly::Poly;
    use crate::realization::is_atomic;

    /// The `id`-th message vector with `k` entries of `len` coefficients
    /// each, in base-`q` order.
    pub fn message(field: &Field, k: usize, len: usize, mut id: u64) -> PolyVector {
        let q = field.q();
        let mut polys = Vec::with_capacity(k);
        for _ in 0..k {
            let mut coeffs = vec![0u16; len];
            for c in coeffs.iter_mut() {
                *c = (id % q) as u16;
                id /= q;
            }
            polys.push(Poly::from_raw(field.clone(), coeffs));
        }
        PolyVector::from_polys(field, polys).unwrap()
    }

    fn message_count(field: &Field, k: usize, len: usize, budget: &Budget) -> Result<u64> {
        field
            .q()
            .checked_pow((k * len) as u32)
            .filter(|&c| c <= budget.messages)
            .ok_or(Error::BudgetExceeded {
                what: "messages",
                needed: field.q().checked_pow((k * len) as u32).unwrap_or(u64::MAX),
                budget: budget.messages,
            })
    }

    /// Are `(x_i, x_{i+1}) ≠ (0, 0)` for all `i = lo, …, hi`?
    pub fn states_active(x: &PolyVector, lo: usize, hi: usize) -> bool {
        (lo..=hi).all(|i| {
            x.coeff_vector(i).iter().any(|&c| c != 0)
                || x.coeff_vector(i + 1).iter().any(|&c| c != 0)
        })
    }

    /// Column distances by enumerating all messages of degree `≤ j` with a
    /// nonzero constant coefficient vector.
    pub fn column_distances(c: &ConvCode, jmax: usize, budget: &Budget) -> Result<DistanceProfile> {
        let field = c.field().clone();
        let k = c.k();
        let mut values = Vec::with_capacity(jmax + 1);
        for j in 0..=jmax {
            let count = message_count(&field, k, j + 1, budget)?;
            let mut best = InfInt::Inf;
            for id in 0..count {
                let u = message(&field, k, j + 1, id);
                if u.coeff_vector(0).iter().all(|&c| c == 0) {
                    continue;
                }
                let v = c.encode(&u)?;
                best = best.min(InfInt::Finite(v.truncate(j).weight()));
            }
            values.push(best);
        }
        Ok(DistanceProfile {
            family: DistanceFamily::Column,
            j_min: 0,
            values,
        })
    }

    /// Extended row distances as minima over atomic codewords of degree
    /// exactly `j`.
    pub fn extended_row_distances(
        c: &ConvCode,
        jmax: usize,
        budget: &Budget,
    ) -> Result<DistanceProfile> {
        let omegas = omega_series(c, jmax + 1, budget)?;
        let values = (0..=jmax).map(|j| omegas.omega(j + 1).del()).collect();
        Ok(DistanceProfile {
            family: DistanceFamily::ExtendedRow,
            j_min: 0,
            values,
        })
    }

    /// Atomic-codeword enumerators by exhaustive message enumeration.
    pub fn omega_series(c: &ConvCode, order: usize, budget: &Budget) -> Result<OmegaSeries> {
        let field = c.field().clone();
        let k = c.k();
        let count = message_count(&field, k, order, budget)?;
        let mut omegas = vec![WPoly::zero(); order];
        for id in 1..count {
            let u = message(&field, k, order, id);
            let v = c.encode(&u)?;
            let deg = match v.deg() {
                Some(d) if d < order => d,
                _ => continue,
            };
            if is_atomic(c, &v)? {
                omegas[deg] = omegas[deg].add(&WPoly::monomial(v.weight() as usize));
            }
        }
        Ok(OmegaSeries { omegas })
    }

    /// Active column, segment and burst distances straight from their
    /// definitions via state sequences of the controller canonical form.
    pub fn active_distances(
        c: &ConvCode,
        family: DistanceFamily,
        jmax: usize,
        budget: &Budget,
    ) -> Result<DistanceProfile> {
        let r = ccf(c.reduced_encoder())?;
        let field = c.field().clone();
        let k = c.k();
        let m = c.memory();
        let j_min = match family {
            DistanceFamily::ActiveColumn | DistanceFamily::ActiveSegment => 0,
            DistanceFamily::ActiveBurst => burst_j_min(c.row_degrees()),
            other => {
                return Err(Error::InvalidArgument(format!(
                    "active_distances computes active families, not {other}"
                )))
            }
        };
        let mut values = Vec::new();
        for j in j_min..=jmax {
            let len = match family {
                DistanceFamily::ActiveSegment => m + j + 1,
                _ => j + 1,
            };
            let count = message_count(&field, k, len, budget)?;
            let mut best = InfInt::Inf;
            for id in 0..count {
                let u = message(&field, k, len, id);
                let (v, x) = r.run(&u)?;
                let value = match family {
                    DistanceFamily::ActiveColumn => {
                        if !states_active(&x, 0, j) {
                            continue;
                        }
                        v.truncate(j).weight()
                    }
                    DistanceFamily::ActiveSegment => {
                        if !states_active(&x, m, m + j) {
                            continue;
                        }
                        (m..=m + j)
                            .map(|t| v.coeff_vector(t).iter().filter(|&&c| c != 0).count() as u64)
                            .sum()
                    }
                    DistanceFamily::ActiveBurst => {
                        if !states_active(&x, 0, j)
                            || x.coeff_vector(j + 1).iter().any(|&c| c != 0)
                        {
                            continue;
                        }
                        v.truncate(j).weight()
                    }
                    _ => unreachable!(),
                };
                best = best.min(InfInt::Finite(value));
            }
            values.push(best);
        }
        Ok(DistanceProfile { family, j_min, values })
    }

    /// Minimum codeword weight over all messages of degree `< deg_bound`;
    /// a lower-bound check for the free distance, exact once `deg_bound`
    /// is large enough.
    pub fn min_weight(c: &ConvCode, deg_bound: usize, budget: &Budget) -> Result<u64> {
        let field = c.field().clone();
        let count = message_count(&field, c.k(), deg_bound, budget)?;
        let mut best = u64::MAX;
        for id in 1..count {
            let u = message(&field, c.k(), deg_bound, id);
            best = best.min(c.encode(&u)?.weight());
        }
        Ok(best)
    }
}
