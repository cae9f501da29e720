//! Equivalence and isometry decision procedures.
//!
//! Two codes are *monomially equivalent* (ME) when one is obtained from the
//! other by permuting coordinates and scaling them by nonzero constants;
//! *z-monomially equivalent* (zME) when the scalings may also carry powers
//! of z; *isometric* when some module isomorphism between them preserves
//! weights; and *strongly isometric* when such an isomorphism also preserves
//! degrees.  Isometry coincides with zME, and strong isometry holds exactly
//! when reduced encoders with identical ordered row degrees are zME.
//!
//! The matrix-level searches ([`matrix_me`], [`matrix_zme`]) match normalized
//! columns directly.  The code-level searches enumerate the orbit of reduced
//! encoders ([`reduced_encoder_orbit`]) and return verified witnesses.

use crate::budget::Budget;
use crate::code::ConvCode;
use crate::error::{Error, Result};
use crate::fmat::FMatrix;
use crate::gf::{Field, FieldElement};
use crate::pmat::PolyMatrix;
use crate::poly::{InfInt, Poly};

/// A monomial transformation: column `j` of `G·M` is column `source[j]` of
/// `G` scaled by `scale[j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialMatrix {
    field: Field,
    source: Vec<usize>,
    scale: Vec<FieldElement>,
}

/// A z-monomial transformation: column `j` of `G·M` is column `source[j]`
/// of `G` scaled by `scale[j]·z^shift[j]`.  Negative shifts must divide the
/// source column exactly for the image to stay polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ZMonomialMatrix {
    field: Field,
    source: Vec<usize>,
    scale: Vec<FieldElement>,
    shift: Vec<i64>,
}

fn check_monomial_parts(field: &Field, source: &[usize], scale: &[FieldElement]) -> Result<()> {
    let n = source.len();
    if scale.len() != n {
        return Err(Error::DimensionMismatch(
            "source and scale lengths differ".into(),
        ));
    }
    let mut seen = vec![false; n];
    for &s in source {
        if s >= n || seen[s] {
            return Err(Error::InvalidArgument(
                "source is not a permutation".into(),
            ));
        }
        seen[s] = true;
    }
    for c in scale {
        if c.field() != field {
            return Err(Error::MixedFields);
        }
        if c.is_zero() {
            return Err(Error::InvalidArgument("zero scale factor".into()));
        }
    }
    Ok(())
}

fn apply_columns(
    g: &PolyMatrix,
    field: &Field,
    source: &[usize],
    scale: &[FieldElement],
    shift: &[i64],
) -> Result<PolyMatrix> {
    if g.field() != field {
        return Err(Error::MixedFields);
    }
    if g.cols() != source.len() {
        return Err(Error::DimensionMismatch(
            "matrix width does not match the transformation".into(),
        ));
    }
    let mut out = PolyMatrix::zero(field, g.rows(), g.cols());
    for j in 0..g.cols() {
        for i in 0..g.rows() {
            out.set(i, j, g.entry(i, source[j]).clone());
        }
        out.scale_col(j, &scale[j], shift[j])?;
    }
    Ok(out)
}

impl MonomialMatrix {
    pub fn new(field: &Field, source: Vec<usize>, scale: Vec<FieldElement>) -> Result<MonomialMatrix> {
        check_monomial_parts(field, &source, &scale)?;
        Ok(MonomialMatrix {
            field: field.clone(),
            source,
            scale,
        })
    }

    pub fn identity(field: &Field, n: usize) -> MonomialMatrix {
        MonomialMatrix {
            field: field.clone(),
            source: (0..n).collect(),
            scale: vec![field.one(); n],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn scale(&self) -> &[FieldElement] {
        &self.scale
    }

    pub fn apply(&self, g: &PolyMatrix) -> Result<PolyMatrix> {
        apply_columns(g, &self.field, &self.source, &self.scale, &vec![0; self.len()])
    }

    /// The matrix product M₁·M₂, so that `G·(M₁·M₂) = (G·M₁)·M₂`.
    pub fn mul(&self, rhs: &MonomialMatrix) -> Result<MonomialMatrix> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        if self.len() != rhs.len() {
            return Err(Error::DimensionMismatch("size mismatch".into()));
        }
        let source = rhs.source.iter().map(|&j| self.source[j]).collect();
        let scale = rhs
            .source
            .iter()
            .zip(&rhs.scale)
            .map(|(&j, c)| self.scale[j].clone() * c.clone())
            .collect();
        Ok(MonomialMatrix {
            field: self.field.clone(),
            source,
            scale,
        })
    }

    pub fn inverse(&self) -> MonomialMatrix {
        let n = self.len();
        let mut source = vec![0; n];
        let mut scale = vec![self.field.one(); n];
        for j in 0..n {
            source[self.source[j]] = j;
            scale[self.source[j]] = self.scale[j].inv().expect("nonzero scale");
        }
        MonomialMatrix {
            field: self.field.clone(),
            source,
            scale,
        }
    }

    /// The transformation as an explicit n×n polynomial matrix.
    pub fn as_poly_matrix(&self) -> PolyMatrix {
        let n = self.len();
        let mut m = PolyMatrix::zero(&self.field, n, n);
        for j in 0..n {
            m.set(self.source[j], j, Poly::constant(self.scale[j].clone()));
        }
        m
    }

    /// The same transformation with all shifts zero.
    pub fn with_shifts(&self, shift: Vec<i64>) -> Result<ZMonomialMatrix> {
        ZMonomialMatrix::new(
            &self.field,
            self.source.clone(),
            self.scale.clone(),
            shift,
        )
    }
}

impl ZMonomialMatrix {
    pub fn new(
        field: &Field,
        source: Vec<usize>,
        scale: Vec<FieldElement>,
        shift: Vec<i64>,
    ) -> Result<ZMonomialMatrix> {
        check_monomial_parts(field, &source, &scale)?;
        if shift.len() != source.len() {
            return Err(Error::DimensionMismatch(
                "source and shift lengths differ".into(),
            ));
        }
        Ok(ZMonomialMatrix {
            field: field.clone(),
            source,
            scale,
            shift,
        })
    }

    pub fn identity(field: &Field, n: usize) -> ZMonomialMatrix {
        ZMonomialMatrix {
            field: field.clone(),
            source: (0..n).collect(),
            scale: vec![field.one(); n],
            shift: vec![0; n],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn scale(&self) -> &[FieldElement] {
        &self.scale
    }

    pub fn shift(&self) -> &[i64] {
        &self.shift
    }

    pub fn apply(&self, g: &PolyMatrix) -> Result<PolyMatrix> {
        apply_columns(g, &self.field, &self.source, &self.scale, &self.shift)
    }

    /// The matrix product M₁·M₂, so that `G·(M₁·M₂) = (G·M₁)·M₂`.
    pub fn mul(&self, rhs: &ZMonomialMatrix) -> Result<ZMonomialMatrix> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        if self.len() != rhs.len() {
            return Err(Error::DimensionMismatch("size mismatch".into()));
        }
        let source = rhs.source.iter().map(|&j| self.source[j]).collect();
        let scale = rhs
            .source
            .iter()
            .zip(&rhs.scale)
            .map(|(&j, c)| self.scale[j].clone() * c.clone())
            .collect();
        let shift = rhs
            .source
            .iter()
            .zip(&rhs.shift)
            .map(|(&j, s)| self.shift[j] + s)
            .collect();
        Ok(ZMonomialMatrix {
            field: self.field.clone(),
            source,
            scale,
            shift,
        })
    }

    pub fn inverse(&self) -> ZMonomialMatrix {
        let n = self.len();
        let mut source = vec![0; n];
        let mut scale = vec![self.field.one(); n];
        let mut shift = vec![0; n];
        for j in 0..n {
            source[self.source[j]] = j;
            scale[self.source[j]] = self.scale[j].inv().expect("nonzero scale");
            shift[self.source[j]] = -self.shift[j];
        }
        ZMonomialMatrix {
            field: self.field.clone(),
            source,
            scale,
            shift,
        }
    }
}

/// First nonzero coefficient of a column, scanning entries in order and the
/// coefficients of each entry by ascending degree.
fn first_nonzero_coeff(col: &[Poly]) -> Option<FieldElement> {
    for p in col {
        if let InfInt::Finite(d) = p.delay() {
            return Some(p.coeff(d as usize));
        }
    }
    None
}

/// Scale a nonzero column so its first nonzero coefficient is 1; `None` for
/// a zero column.  Proportional columns share their normal form.
fn normalize_column(col: &[Poly]) -> Option<(FieldElement, Vec<Poly>)> {
    let c = first_nonzero_coeff(col)?;
    let inv = c.inv().expect("nonzero");
    Some((c, col.iter().map(|p| p.scale(&inv)).collect()))
}

/// Divide a nonzero column by z^(its delay), then scale as in
/// [`normalize_column`].  Columns equal up to a z-monomial factor share
/// their normal form.
fn normalize_column_z(col: &[Poly]) -> Option<(u64, FieldElement, Vec<Poly>)> {
    let delay = col
        .iter()
        .map(|p| p.delay())
        .min()
        .unwrap_or(InfInt::Inf);
    let InfInt::Finite(d) = delay else {
        return None;
    };
    let divided: Vec<Poly> = col
        .iter()
        .map(|p| p.div_z_pow(d as usize).expect("delay bound"))
        .collect();
    let (c, normalized) = normalize_column(&divided)?;
    Some((d, c, normalized))
}

/// Decide whether `gbar = g·M` for a monomial matrix M and return the first
/// such M in canonical column order.
pub fn matrix_me(g: &PolyMatrix, gbar: &PolyMatrix) -> Result<Option<MonomialMatrix>> {
    if g.field() != gbar.field() {
        return Err(Error::MixedFields);
    }
    if g.rows() != gbar.rows() || g.cols() != gbar.cols() {
        return Err(Error::DimensionMismatch(
            "matrices of different shapes".into(),
        ));
    }
    let field = g.field();
    let n = g.cols();
    let norms: Vec<_> = (0..n).map(|j| normalize_column(&g.col(j))).collect();
    let mut used = vec![false; n];
    let mut source = Vec::with_capacity(n);
    let mut scale = Vec::with_capacity(n);
    for j in 0..n {
        let target = normalize_column(&gbar.col(j));
        let mut found = None;
        for (i, norm) in norms.iter().enumerate() {
            if used[i] {
                continue;
            }
            match (norm, &target) {
                (None, None) => found = Some((i, field.one())),
                (Some((c, v)), Some((cb, vb))) if v == vb => {
                    found = Some((i, cb.try_div(c)?));
                }
                _ => {}
            }
            if found.is_some() {
                break;
            }
        }
        let Some((i, c)) = found else {
            return Ok(None);
        };
        used[i] = true;
        source.push(i);
        scale.push(c);
    }
    let m = MonomialMatrix::new(field, source, scale)?;
    debug_assert_eq!(m.apply(g).expect("dimensions verified"), *gbar);
    Ok(Some(m))
}

/// Decide whether `gbar = g·M` for a z-monomial matrix M and return the
/// first such M in canonical column order.
pub fn matrix_zme(g: &PolyMatrix, gbar: &PolyMatrix) -> Result<Option<ZMonomialMatrix>> {
    if g.field() != gbar.field() {
        return Err(Error::MixedFields);
    }
    if g.rows() != gbar.rows() || g.cols() != gbar.cols() {
        return Err(Error::DimensionMismatch(
            "matrices of different shapes".into(),
        ));
    }
    let field = g.field();
    let n = g.cols();
    let norms: Vec<_> = (0..n).map(|j| normalize_column_z(&g.col(j))).collect();
    let mut used = vec![false; n];
    let mut source = Vec::with_capacity(n);
    let mut scale = Vec::with_capacity(n);
    let mut shift = Vec::with_capacity(n);
    for j in 0..n {
        let target = normalize_column_z(&gbar.col(j));
        let mut found = None;
        for (i, norm) in norms.iter().enumerate() {
            if used[i] {
                continue;
            }
            match (norm, &target) {
                (None, None) => found = Some((i, field.one(), 0)),
                (Some((d, c, v)), Some((db, cb, vb))) if v == vb => {
                    found = Some((i, cb.try_div(c)?, *db as i64 - *d as i64));
                }
                _ => {}
            }
            if found.is_some() {
                break;
            }
        }
        let Some((i, c, s)) = found else {
            return Ok(None);
        };
        used[i] = true;
        source.push(i);
        scale.push(c);
        shift.push(s);
    }
    let m = ZMonomialMatrix::new(field, source, scale, shift)?;
    debug_assert_eq!(m.apply(g).expect("shifts are exact"), *gbar);
    Ok(Some(m))
}

/// The sliding matrix S_ν(G) over F: block row r holds the coefficient
/// matrices G_0..G_ν of z^0..z^ν shifted r block columns to the right, for
/// r = 0..ν.  It maps the stacked coefficients of a message of degree ≤ ν
/// to the coefficients of the codeword truncated at degree 2ν.
pub fn sliding_matrix(g: &PolyMatrix, nu: usize) -> Result<FMatrix> {
    if let Some(d) = g.max_entry_degree() {
        if nu < d {
            return Err(Error::InvalidArgument(format!(
                "window {} is below the matrix degree {}",
                nu, d
            )));
        }
    }
    let k = g.rows();
    let n = g.cols();
    let mut s = FMatrix::zero(g.field(), k * (nu + 1), n * (2 * nu + 1));
    for t in 0..=nu {
        for c in t..=(t + nu) {
            let coeff = g.coefficient_matrix(c - t);
            for i in 0..k {
                for j in 0..n {
                    s.set(t * k + i, c * n + j, coeff.get(i, j));
                }
            }
        }
    }
    Ok(s)
}

/// Decide whether `wt(u·g) = wt(u·gbar)` for every polynomial message u.
/// Checking all messages of degree at most ν = max(deg g, deg gbar) through
/// the sliding matrices is sufficient.
pub fn paired_isometry(g: &PolyMatrix, gbar: &PolyMatrix, budget: &Budget) -> Result<bool> {
    if g.field() != gbar.field() {
        return Err(Error::MixedFields);
    }
    if g.rows() != gbar.rows() || g.cols() != gbar.cols() {
        return Err(Error::DimensionMismatch(
            "matrices of different shapes".into(),
        ));
    }
    let nu = g
        .max_entry_degree()
        .unwrap_or(0)
        .max(gbar.max_entry_degree().unwrap_or(0));
    let s = sliding_matrix(g, nu)?;
    let sbar = sliding_matrix(gbar, nu)?;
    let q = g.field().q();
    let rows = g.rows() * (nu + 1);
    let count = q
        .checked_pow(rows as u32)
        .filter(|&c| c <= budget.messages)
        .ok_or(Error::BudgetExceeded {
            what: "messages",
            needed: q.checked_pow(rows as u32).unwrap_or(u64::MAX),
            budget: budget.messages,
        })?;
    let mut x = vec![0u16; rows];
    for mut id in 0..count {
        for slot in x.iter_mut() {
            *slot = (id % q) as u16;
            id /= q;
        }
        let wt = s.row_mul(&x).iter().filter(|&&v| v != 0).count();
        let wtbar = sbar.row_mul(&x).iter().filter(|&&v| v != 0).count();
        if wt != wtbar {
            return Ok(false);
        }
    }
    Ok(true)
}

enum Slot {
    /// All invertible constant blocks on an equal-degree class of rows.
    Class {
        indices: Vec<usize>,
        mats: Vec<FMatrix>,
    },
    /// A free polynomial entry of bounded degree.
    Free {
        row: usize,
        col: usize,
        coeffs: usize,
    },
}

impl Slot {
    fn count(&self, q: u64) -> u128 {
        match self {
            Slot::Class { mats, .. } => mats.len() as u128,
            Slot::Free { coeffs, .. } => (q as u128).pow(*coeffs as u32),
        }
    }
}

/// Iterator over all reduced encoders of `im G` whose ordered row degrees
/// equal those of the reduced matrix G, yielding `(U, U·G)` pairs.
///
/// The admissible transforms U have `deg u_ij ≤ ν_i − ν_j` (the entry is
/// zero when that bound is negative) and an invertible constant block on
/// every class of rows of equal degree; these are exactly the unimodular
/// matrices preserving reducedness and the ordered degree list.
pub struct ReducedOrbit {
    g: PolyMatrix,
    slots: Vec<Slot>,
    total: u64,
    next: u64,
}

pub fn reduced_encoder_orbit(g: &PolyMatrix, budget: &Budget) -> Result<ReducedOrbit> {
    if !g.is_reduced()? {
        return Err(Error::NotReduced);
    }
    let field = g.field().clone();
    let q = field.q();
    let degs = g.row_degrees()?;
    let mut classes: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, &d) in degs.iter().enumerate() {
        classes.entry(d).or_default().push(i);
    }
    let mut total: u128 = 1;
    for indices in classes.values() {
        total = total.saturating_mul(FMatrix::gl_order(&field, indices.len()));
    }
    for (i, &di) in degs.iter().enumerate() {
        for (j, &dj) in degs.iter().enumerate() {
            if i != j && di > dj {
                total = total.saturating_mul((q as u128).pow((di - dj + 1) as u32));
            }
        }
    }
    if total > budget.orbit as u128 {
        return Err(Error::BudgetExceeded {
            what: "orbit",
            needed: total.min(u64::MAX as u128) as u64,
            budget: budget.orbit,
        });
    }
    let mut slots = Vec::new();
    for indices in classes.values() {
        let s = indices.len();
        let mut mats = Vec::new();
        for id in 0..q.pow((s * s) as u32) {
            let m = FMatrix::from_id(&field, s, s, id);
            if m.is_invertible() {
                mats.push(m);
            }
        }
        slots.push(Slot::Class {
            indices: indices.clone(),
            mats,
        });
    }
    for (i, &di) in degs.iter().enumerate() {
        for (j, &dj) in degs.iter().enumerate() {
            if i != j && di > dj {
                slots.push(Slot::Free {
                    row: i,
                    col: j,
                    coeffs: di - dj + 1,
                });
            }
        }
    }
    Ok(ReducedOrbit {
        g: g.clone(),
        slots,
        total: total as u64,
        next: 0,
    })
}

impl ReducedOrbit {
    pub fn total(&self) -> u64 {
        self.total
    }

    fn decode(&self, idx: u64) -> (PolyMatrix, PolyMatrix) {
        let field = self.g.field();
        let q = field.q();
        let k = self.g.rows();
        let mut u = PolyMatrix::zero(field, k, k);
        let mut rem = idx as u128;
        for slot in &self.slots {
            let count = slot.count(q);
            let choice = (rem % count) as u64;
            rem /= count;
            match slot {
                Slot::Class { indices, mats } => {
                    let m = &mats[choice as usize];
                    for (a, &ia) in indices.iter().enumerate() {
                        for (b, &ib) in indices.iter().enumerate() {
                            u.set(ia, ib, Poly::constant(field.el(m.get(a, b) as u64)));
                        }
                    }
                }
                Slot::Free { row, col, coeffs } => {
                    let mut digits = vec![0u16; *coeffs];
                    let mut id = choice;
                    for d in digits.iter_mut() {
                        *d = (id % q) as u16;
                        id /= q;
                    }
                    u.set(*row, *col, Poly::from_raw(field.clone(), digits));
                }
            }
        }
        let ug = u.mul(&self.g);
        (u, ug)
    }
}

impl Iterator for ReducedOrbit {
    type Item = (PolyMatrix, PolyMatrix);

    fn next(&mut self) -> Option<(PolyMatrix, PolyMatrix)> {
        if self.next >= self.total {
            return None;
        }
        let item = self.decode(self.next);
        self.next += 1;
        Some(item)
    }
}

/// A permutation of `0..k` as a polynomial matrix P with row i of `P·G`
/// equal to row `perm[i]` of G.
fn permutation_matrix(field: &Field, perm: &[usize]) -> PolyMatrix {
    let k = perm.len();
    let mut p = PolyMatrix::zero(field, k, k);
    for (i, &j) in perm.iter().enumerate() {
        p.set(i, j, Poly::one(field));
    }
    p
}

/// A permutation with `from[perm[i]] == to[i]`, taking the first unused
/// match each time; `None` when the multisets differ.
fn degree_matching_permutation(from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
    let mut used = vec![false; from.len()];
    let mut perm = Vec::with_capacity(to.len());
    for &t in to {
        let i = (0..from.len()).find(|&i| !used[i] && from[i] == t)?;
        used[i] = true;
        perm.push(i);
    }
    Some(perm)
}

fn check_code_pair(c: &ConvCode, cbar: &ConvCode) -> Result<()> {
    if c.field() != cbar.field() {
        return Err(Error::MixedFields);
    }
    if c.n() != cbar.n() || c.k() != cbar.k() {
        return Err(Error::DimensionMismatch(
            "codes of different lengths or dimensions".into(),
        ));
    }
    Ok(())
}

/// Decide monomial equivalence of two codes.  On success the witness
/// `(U, M)` satisfies `U·G·M = Ḡ` for the stored reduced encoders G of `c`
/// and Ḡ of `cbar`.
pub fn code_me(
    c: &ConvCode,
    cbar: &ConvCode,
    budget: &Budget,
) -> Result<Option<(PolyMatrix, MonomialMatrix)>> {
    check_code_pair(c, cbar)?;
    if c.forney_indices() != cbar.forney_indices() {
        return Ok(None);
    }
    let g = c.reduced_encoder();
    let gbar = cbar.reduced_encoder();
    let perm = degree_matching_permutation(&g.row_degrees()?, &gbar.row_degrees()?)
        .expect("equal index multisets");
    let p = permutation_matrix(c.field(), &perm);
    let gp = p.mul(g);
    for (u, ug) in reduced_encoder_orbit(&gp, budget)? {
        if let Some(m) = matrix_me(&ug, gbar)? {
            let u_total = u.mul(&p);
            debug_assert_eq!(m.apply(&u_total.mul(g)).expect("verified"), *gbar);
            return Ok(Some((u_total, m)));
        }
    }
    Ok(None)
}

/// Decide whether two codes are isometric, equivalently z-monomially
/// equivalent.  On success the witness `(U, M)` satisfies `U·G·M = Ḡ` for
/// the stored reduced encoders G of `c` and Ḡ of `cbar`.
///
/// Column delays are invariants of a code, so dividing every column by
/// z^(its delay) normalizes each code to a delay-free-per-column one, and
/// the originals are zME exactly when the normalized codes are ME.  The
/// normalized generator stays basic: a nonconstant common minor factor
/// would lift to the original, and the constant coefficient matrix keeps
/// full rank because delay-free columns of the original are untouched.
pub fn code_isometric(
    c: &ConvCode,
    cbar: &ConvCode,
    budget: &Budget,
) -> Result<Option<(PolyMatrix, ZMonomialMatrix)>> {
    check_code_pair(c, cbar)?;
    let g = c.reduced_encoder();
    let gbar = cbar.reduced_encoder();
    let d = g.col_delays();
    let dbar = gbar.col_delays();
    let (v, r) = g.normalize_col_delays().reduce()?;
    let (vbar, rbar) = gbar.normalize_col_delays().reduce()?;
    let nc = ConvCode::from_encoder(&r)?;
    let ncbar = ConvCode::from_encoder(&rbar)?;
    let Some((u0, m0)) = code_me(&nc, &ncbar, budget)? else {
        return Ok(None);
    };
    // U₀·(V·G·Z)·M₀ = V̄·Ḡ·Z̄ with Z = diag(z^-d_j) rearranges to
    // (V̄⁻¹·U₀·V)·G·(Z·M₀·Z̄⁻¹) = Ḡ, and conjugating M₀ by the delay
    // normalizations adds d̄_j − d_source(j) to the shift of column j.
    let u = vbar.unimodular_inverse()?.mul(&u0).mul(&v);
    let mut shift = Vec::with_capacity(m0.len());
    for j in 0..m0.len() {
        let s = match (&d[m0.source()[j]], &dbar[j]) {
            (InfInt::Finite(ds), InfInt::Finite(dt)) => *dt as i64 - *ds as i64,
            _ => 0,
        };
        shift.push(s);
    }
    let m = m0.with_shifts(shift)?;
    if m.apply(&u.mul(g))? != *gbar {
        return Err(Error::Internal("isometry witness failed verification"));
    }
    Ok(Some((u, m)))
}

/// Decide whether two codes are strongly isometric: some weight- and
/// degree-preserving module isomorphism maps one onto the other.  This
/// holds exactly when reduced encoders with identical ordered row degrees
/// are zME; on success that witness pair of encoders is returned.
pub fn code_strongly_isometric(
    c: &ConvCode,
    cbar: &ConvCode,
    budget: &Budget,
) -> Result<Option<(PolyMatrix, PolyMatrix)>> {
    check_code_pair(c, cbar)?;
    if c.forney_indices() != cbar.forney_indices() {
        return Ok(None);
    }
    let ga = c.reduced_encoder();
    let gbar = cbar.reduced_encoder();
    let perm = degree_matching_permutation(&gbar.row_degrees()?, &ga.row_degrees()?)
        .expect("equal index multisets");
    let p = permutation_matrix(c.field(), &perm);
    let gbp = p.mul(gbar);
    for (_, ug) in reduced_encoder_orbit(&gbp, budget)? {
        if matrix_zme(ga, &ug)?.is_some() {
            return Ok(Some((ga.clone(), ug)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pmat::PolyVector;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn f3() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn pm(field: &Field, text: &str) -> PolyMatrix {
        PolyMatrix::parse(field, text).unwrap()
    }

    fn els(field: &Field, vals: &[u64]) -> Vec<FieldElement> {
        vals.iter().map(|&v| field.el(v)).collect()
    }

    #[test]
    fn monomial_apply_inverse_and_product() {
        let f = f3();
        let g = pm(&f, "1+z, 2, 1");
        let m = MonomialMatrix::new(&f, vec![2, 0, 1], els(&f, &[2, 1, 2])).unwrap();
        let gm = m.apply(&g).unwrap();
        assert_eq!(gm, pm(&f, "2, 1+z, 1"));
        assert_eq!(g.mul(&m.as_poly_matrix()), gm);
        assert_eq!(m.inverse().apply(&gm).unwrap(), g);

        let m2 = MonomialMatrix::new(&f, vec![1, 2, 0], els(&f, &[1, 2, 1])).unwrap();
        let product = m.mul(&m2).unwrap();
        assert_eq!(product.apply(&g).unwrap(), m2.apply(&gm).unwrap());
        let id = m.mul(&m.inverse()).unwrap();
        assert_eq!(id.apply(&g).unwrap(), g);

        assert!(MonomialMatrix::new(&f, vec![0, 0, 1], els(&f, &[1, 1, 1])).is_err());
        assert!(MonomialMatrix::new(&f, vec![0, 1, 2], els(&f, &[1, 0, 1])).is_err());
    }

    #[test]
    fn z_monomial_apply_shifts_and_inverse() {
        let f = f2();
        let g = pm(&f, "1, z, 1+z");
        let m = ZMonomialMatrix::new(&f, vec![0, 1, 2], els(&f, &[1, 1, 1]), vec![1, -1, 0]).unwrap();
        let gm = m.apply(&g).unwrap();
        assert_eq!(gm, pm(&f, "z, 1, 1+z"));
        assert_eq!(m.inverse().apply(&gm).unwrap(), g);

        let bad = ZMonomialMatrix::new(&f, vec![0, 1, 2], els(&f, &[1, 1, 1]), vec![-1, 0, 0]).unwrap();
        assert!(matches!(bad.apply(&g), Err(Error::NonPolynomialImage(0))));

        let m2 = ZMonomialMatrix::new(&f, vec![2, 0, 1], els(&f, &[1, 1, 1]), vec![0, 2, 0]).unwrap();
        let product = m.mul(&m2).unwrap();
        assert_eq!(product.apply(&g).unwrap(), m2.apply(&gm).unwrap());
    }

    #[test]
    fn matrix_me_matches_columns_up_to_scale() {
        let f = f3();
        let g = pm(&f, "1+z, 2, 1; z, 1, z");
        let m = MonomialMatrix::new(&f, vec![2, 0, 1], els(&f, &[1, 2, 1])).unwrap();
        let gbar = m.apply(&g).unwrap();
        let found = matrix_me(&g, &gbar).unwrap().unwrap();
        assert_eq!(found.source(), &[2, 0, 1]);
        assert_eq!(found.scale(), els(&f, &[1, 2, 1]).as_slice());
        assert_eq!(found.apply(&g).unwrap(), gbar);

        // A column proportional to none of g's: no witness.
        let other = pm(&f, "1+z, 2, 1; z, 1, 1");
        assert!(matrix_me(&g, &other).unwrap().is_none());

        // Scaled duplicate of an existing column still matches.
        let scaled = pm(&f, "2+2*z, 2, 1; 2*z, 1, z");
        let w = matrix_me(&g, &scaled).unwrap().unwrap();
        assert_eq!(w.apply(&g).unwrap(), scaled);
    }

    #[test]
    fn matrix_zme_handles_shifted_pairs() {
        let f = f2();
        // Same code family, columns scaled by z, 1, z^-2.
        let g = pm(&f, "z^2+z+1, 1, 0; z^2, z+1, z^2");
        let gbar = pm(&f, "z^3+z^2+z, 1, 0; z^3, z+1, 1");
        let m = matrix_zme(&g, &gbar).unwrap().unwrap();
        assert_eq!(m.source(), &[0, 1, 2]);
        assert_eq!(m.shift(), &[1, 0, -2]);
        assert_eq!(m.apply(&g).unwrap(), gbar);
        assert!(matrix_me(&g, &gbar).unwrap().is_none());

        // Symmetry: the reverse direction inverts the shifts.
        let back = matrix_zme(&gbar, &g).unwrap().unwrap();
        assert_eq!(back.shift(), &[-1, 0, 2]);
    }

    #[test]
    fn matrix_zme_on_eight_column_pair() {
        let f = f2();
        let g = pm(&f, "1+z, 1, z, 0, 0, 0, 0, 1; 0, 0, 1, 1, 0, 0, z, 1; 1, 1, 1, 1, 1, 1, 0, 0");
        let gbar = pm(&f, "1+z, 1, z, 0, 0, 0, 0, z; 0, 0, 1, 1, 0, 0, 1, z; 1, 1, 1, 1, 1, 1, 0, 0");
        let m = matrix_zme(&g, &gbar).unwrap().unwrap();
        assert_eq!(m.source(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(m.shift(), &[0, 0, 0, 0, 0, 0, -1, 1]);
        assert_eq!(m.apply(&g).unwrap(), gbar);
        assert!(matrix_me(&g, &gbar).unwrap().is_none());
    }

    #[test]
    fn sliding_matrix_layout() {
        let f = f2();
        let g = pm(&f, "1, z, 1+z");
        let s = sliding_matrix(&g, 1).unwrap();
        let expected = FMatrix::from_rows(
            &f,
            &[
                vec![1, 0, 1, 0, 1, 1, 0, 0, 0],
                vec![0, 0, 0, 1, 0, 1, 0, 1, 1],
            ],
        )
        .unwrap();
        assert_eq!(s, expected);
        assert!(matches!(
            sliding_matrix(&g, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn paired_isometry_separates_encoders() {
        let f = f2();
        let b = Budget::default();
        let g = pm(&f, "z^2+z+1, 1, 0; z^2, z+1, z^2");
        let gp = pm(&f, "z^2+z, z, 1; z^2, z^2+z+1, z+1");
        let g1 = pm(&f, "z^2+z, z, 1; z, z^2+1, z");
        let g2 = pm(&f, "z, z^2+1, z; z^2+z, z, 1");
        assert!(paired_isometry(&g, &g, &b).unwrap());
        assert!(!paired_isometry(&g, &gp, &b).unwrap());
        assert!(!paired_isometry(&g, &g1, &b).unwrap());
        assert!(!paired_isometry(&g, &g2, &b).unwrap());

        // The separating message and its images.
        let u = PolyVector::parse(&f, "1+z, 0").unwrap();
        assert_eq!(g.left_mul_vec(&u).unwrap().weight(), 4);
        assert_eq!(g1.left_mul_vec(&u).unwrap().weight(), 6);
        assert_eq!(g2.left_mul_vec(&u).unwrap().weight(), 8);

        // Weight equality for every message matches the presence of a
        // z-monomial witness, here in the positive...
        let gbar = pm(&f, "z^3+z^2+z, 1, 0; z^3, z+1, 1");
        assert!(paired_isometry(&g, &gbar, &b).unwrap());
        assert!(matrix_zme(&g, &gbar).unwrap().is_some());

        // ...and in the negative direction.
        let h = pm(&f, "1, 1, z, z, 0, 0; 1, 1, 1, 1, 1, 1");
        let hbar = pm(&f, "z+1, 1, z, 0, 0, 0; 1, 1, 1, 1, 1, 1");
        assert!(!paired_isometry(&h, &hbar, &b).unwrap());
        assert!(matrix_zme(&h, &hbar).unwrap().is_none());
    }

    #[test]
    fn orbit_enumerates_reduced_encoders() {
        let b = Budget::default();

        // k = 1: only the nonzero scalar multiples.
        let g = pm(&f2(), "1, z, 1+z");
        assert_eq!(reduced_encoder_orbit(&g, &b).unwrap().total(), 1);
        let g3 = pm(&f3(), "1, z, 2+z");
        let members: Vec<_> = reduced_encoder_orbit(&g3, &b).unwrap().collect();
        assert_eq!(members.len(), 2);
        assert!(members.iter().any(|(_, ug)| *ug == g3));

        // Row degrees (1, 1, 0): |GL_2|·|GL_1|·q^2·q^2 options.
        let g33 = pm(
            &f2(),
            "1+z, 1, z, 0, 0, 0, 0, 1; 0, 0, 1, 1, 0, 0, z, 1; 1, 1, 1, 1, 1, 1, 0, 0",
        );
        let orbit = reduced_encoder_orbit(&g33, &b).unwrap();
        assert_eq!(orbit.total(), 96);
        let code = ConvCode::from_encoder(&g33).unwrap();
        for (u, ug) in orbit {
            assert!(u.is_unimodular());
            assert!(ug.is_reduced().unwrap());
            assert_eq!(ug.row_degrees().unwrap(), vec![1, 1, 0]);
            assert_eq!(ConvCode::from_encoder(&ug).unwrap(), code);
        }
    }

    #[test]
    fn orbit_agrees_with_exhaustive_filter() {
        let f = f2();
        let g = pm(&f, "1, z, 0; 1, 1, 1");
        let b = Budget::default();
        let orbit: Vec<_> = reduced_encoder_orbit(&g, &b)
            .unwrap()
            .map(|(_, ug)| ug)
            .collect();
        assert_eq!(orbit.len(), 4);

        // Oracle: all 2×2 transforms with entries of degree ≤ 1.
        let mut hits = 0;
        for id in 0..256u64 {
            let mut u = PolyMatrix::zero(&f, 2, 2);
            let mut rem = id;
            for i in 0..2 {
                for j in 0..2 {
                    let digits = vec![(rem % 2) as u16, ((rem / 2) % 2) as u16];
                    rem /= 4;
                    u.set(i, j, Poly::from_raw(f.clone(), digits));
                }
            }
            if !u.is_unimodular() {
                continue;
            }
            let ug = u.mul(&g);
            if ug.is_reduced().unwrap() && ug.row_degrees().unwrap() == vec![1, 0] {
                assert!(orbit.contains(&ug));
                hits += 1;
            }
        }
        assert_eq!(hits, 4);
    }

    #[test]
    fn orbit_preconditions_and_budget() {
        let f = f2();
        let unreduced = pm(&f, "z+z^2+z^3, 1, 0; z^3, 1+z, 1");
        let b = Budget::default();
        assert!(matches!(
            reduced_encoder_orbit(&unreduced, &b),
            Err(Error::NotReduced)
        ));

        let g33 = pm(
            &f,
            "1+z, 1, z, 0, 0, 0, 0, 1; 0, 0, 1, 1, 0, 0, z, 1; 1, 1, 1, 1, 1, 1, 0, 0",
        );
        let tight = Budget {
            orbit: 50,
            ..Budget::default()
        };
        assert!(matches!(
            reduced_encoder_orbit(&g33, &tight),
            Err(Error::BudgetExceeded {
                what: "orbit",
                needed: 96,
                budget: 50
            })
        ));
    }

    #[test]
    fn code_me_recovers_a_monomial_transform() {
        let f = f3();
        let g = pm(&f, "1+z, 2, 1; z, 1, z");
        let m = MonomialMatrix::new(&f, vec![2, 0, 1], els(&f, &[1, 2, 1])).unwrap();
        let gbar = m.apply(&g).unwrap();
        let c = ConvCode::from_encoder(&g).unwrap();
        let cbar = ConvCode::from_encoder(&gbar).unwrap();
        let b = Budget::default();

        let (u, w) = code_me(&c, &cbar, &b).unwrap().unwrap();
        assert_eq!(
            w.apply(&u.mul(c.reduced_encoder())).unwrap(),
            *cbar.reduced_encoder()
        );
        assert!(code_me(&cbar, &c, &b).unwrap().is_some());
        let (ui, wi) = code_me(&c, &c, &b).unwrap().unwrap();
        assert_eq!(
            wi.apply(&ui.mul(c.reduced_encoder())).unwrap(),
            *c.reduced_encoder()
        );
    }

    #[test]
    fn distance_twins_are_strongly_isometric_but_not_me() {
        let f = f2();
        let g = pm(&f, "1, 1, z, 1, 1, 1, 1; 1+z, z, 0, 0, 1, 1, 1; 1, 0, 0, 0, 0, 0, 0");
        let gp = pm(&f, "1, 1, 1, 1, 1, z, 1; 1+z, z, 0, 0, 1, z, 1; 1, 0, 0, 0, 0, 0, 0");
        let c = ConvCode::from_encoder(&g).unwrap();
        let cp = ConvCode::from_encoder(&gp).unwrap();
        let b = Budget::default();

        assert!(code_me(&c, &cp, &b).unwrap().is_none());
        let (ga, gb) = code_strongly_isometric(&c, &cp, &b).unwrap().unwrap();
        assert_eq!(ga.row_degrees().unwrap(), gb.row_degrees().unwrap());
        assert!(matrix_zme(&ga, &gb).unwrap().is_some());
        assert_eq!(ConvCode::from_encoder(&gb).unwrap(), cp);
    }

    #[test]
    fn shared_wam_pair_is_strongly_isometric_but_not_me() {
        let f = f2();
        let g = pm(&f, "1+z, 1, z, 0, 0, 0, 0, 1; 0, 0, 1, 1, 0, 0, z, 1; 1, 1, 1, 1, 1, 1, 0, 0");
        let gbar = pm(&f, "1+z, 1, z, 0, 0, 0, 0, z; 0, 0, 1, 1, 0, 0, 1, z; 1, 1, 1, 1, 1, 1, 0, 0");
        let c = ConvCode::from_encoder(&g).unwrap();
        let cbar = ConvCode::from_encoder(&gbar).unwrap();
        let b = Budget::default();

        assert!(code_me(&c, &cbar, &b).unwrap().is_none());
        assert!(code_strongly_isometric(&c, &cbar, &b).unwrap().is_some());
    }

    #[test]
    fn shifted_codes_are_isometric_but_not_strongly() {
        let f = f2();
        let g = pm(&f, "z^2+z+1, 1, 0; z^2, z+1, z^2");
        let gbar = pm(&f, "z^3+z^2+z, 1, 0; z^3, z+1, 1");
        let c = ConvCode::from_encoder(&g).unwrap();
        let cbar = ConvCode::from_encoder(&gbar).unwrap();
        let b = Budget::default();

        let (u, m) = code_isometric(&c, &cbar, &b).unwrap().unwrap();
        assert_eq!(
            m.apply(&u.mul(c.reduced_encoder())).unwrap(),
            *cbar.reduced_encoder()
        );
        assert!(code_strongly_isometric(&c, &cbar, &b).unwrap().is_none());
        assert!(code_me(&c, &cbar, &b).unwrap().is_none());
    }

    #[test]
    fn same_wam_codes_need_not_be_isometric() {
        let f = f2();
        let g = pm(&f, "1, 1, z, z, 0, 0; 1, 1, 1, 1, 1, 1");
        let gbar = pm(&f, "z+1, 1, z, 0, 0, 0; 1, 1, 1, 1, 1, 1");
        let c = ConvCode::from_encoder(&g).unwrap();
        let cbar = ConvCode::from_encoder(&gbar).unwrap();
        let b = Budget::default();

        assert!(code_isometric(&c, &cbar, &b).unwrap().is_none());
        assert!(code_me(&c, &cbar, &b).unwrap().is_none());
        assert!(code_strongly_isometric(&c, &cbar, &b).unwrap().is_none());
    }

    #[test]
    fn strong_isometry_does_not_survive_dualization() {
        let f = f2();
        let g = pm(&f, "1, z, 1+z");
        let gbar = pm(&f, "z, z, 1+z");
        let c = ConvCode::from_encoder(&g).unwrap();
        let cbar = ConvCode::from_encoder(&gbar).unwrap();
        let b = Budget::default();

        assert!(code_strongly_isometric(&c, &cbar, &b).unwrap().is_some());
        assert!(code_me(&c, &cbar, &b).unwrap().is_none());
        let (u, m) = code_isometric(&c, &cbar, &b).unwrap().unwrap();
        assert_eq!(
            m.apply(&u.mul(c.reduced_encoder())).unwrap(),
            *cbar.reduced_encoder()
        );

        let dual = c.dual().unwrap();
        let dualbar = cbar.dual().unwrap();
        assert!(code_isometric(&dual, &dualbar, &b).unwrap().is_none());
        assert!(code_strongly_isometric(&dual, &dualbar, &b).unwrap().is_none());
    }

    #[test]
    fn code_search_budget_errors() {
        let f = f2();
        let g = pm(&f, "1, 1, z, 1, 1, 1, 1; 1+z, z, 0, 0, 1, 1, 1; 1, 0, 0, 0, 0, 0, 0");
        let gp = pm(&f, "1, 1, 1, 1, 1, z, 1; 1+z, z, 0, 0, 1, z, 1; 1, 0, 0, 0, 0, 0, 0");
        let c = ConvCode::from_encoder(&g).unwrap();
        let cp = ConvCode::from_encoder(&gp).unwrap();
        let tight = Budget {
            orbit: 10,
            ..Budget::default()
        };
        assert!(matches!(
            code_me(&c, &cp, &tight),
            Err(Error::BudgetExceeded { what: "orbit", .. })
        ));

        let small = Budget {
            messages: 3,
            ..Budget::default()
        };
        assert!(matches!(
            paired_isometry(&g, &gp, &small),
            Err(Error::BudgetExceeded {
                what: "messages",
                ..
            })
        ));
    }
}
