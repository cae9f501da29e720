//! Vectors and matrices over GF(q)[z].
//!
//! This module carries the structural theory of encoders: the (internal)
//! degree as the maximum degree of the full-size minors, basicness as the
//! gcd of those minors being a nonzero constant, reducedness via the
//! leading-row-coefficient matrix, Forney's reduction procedure, the row
//! Hermite normal form (the canonical basis of a row module) and the right
//! kernel basis used to form dual codes.

use std::fmt;

use crate::error::{Error, Result};
use crate::fmat::FMatrix;
use crate::gf::{Field, FieldElement};
use crate::poly::{InfInt, Poly};

/// A row vector with polynomial entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyVector {
    field: Field,
    entries: Vec<Poly>,
}

impl PolyVector {
    pub fn zero(field: &Field, n: usize) -> PolyVector {
        PolyVector {
            field: field.clone(),
            entries: vec![Poly::zero(field); n],
        }
    }

    pub fn from_polys(field: &Field, entries: Vec<Poly>) -> Result<PolyVector> {
        if entries.iter().any(|p| p.field() != field) {
            return Err(Error::MixedFields);
        }
        Ok(PolyVector {
            field: field.clone(),
            entries,
        })
    }

    /// Parse a comma-separated list of polynomial terms, e.g. `1, z, 1+z`.
    pub fn parse(field: &Field, s: &str) -> Result<PolyVector> {
        let entries = s
            .split(',')
            .map(|t| Poly::parse(field, t))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::Parse("empty vector".into()));
        }
        Ok(PolyVector {
            field: field.clone(),
            entries,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, i: usize) -> &Poly {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Total Hamming weight: number of nonzero coefficients over all entries.
    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|p| p.weight()).sum()
    }

    /// Minimum delay over the entries (∞ for the zero vector).
    pub fn delay(&self) -> InfInt {
        self.entries
            .iter()
            .map(|p| p.delay())
            .min()
            .unwrap_or(InfInt::Inf)
    }

    /// Maximum entry degree, `None` for the zero vector.
    pub fn deg(&self) -> Option<usize> {
        self.entries.iter().filter_map(|p| p.deg()).max()
    }

    /// The coefficient vector at time t, as raw element encodings.
    pub fn coeff_vector(&self, t: usize) -> Vec<u16> {
        self.entries.iter().map(|p| p.coeff_raw(t)).collect()
    }

    /// Truncation to the coefficients of z^0..z^j.
    pub fn truncate(&self, j: usize) -> PolyVector {
        let entries = self
            .entries
            .iter()
            .map(|p| {
                let kept: Vec<u16> = p.raw_coeffs().iter().copied().take(j + 1).collect();
                Poly::from_raw(self.field.clone(), kept)
            })
            .collect();
        PolyVector {
            field: self.field.clone(),
            entries,
        }
    }

    pub fn add(&self, rhs: &PolyVector) -> PolyVector {
        assert_eq!(self.len(), rhs.len(), "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        PolyVector {
            field: self.field.clone(),
            entries,
        }
    }

    pub fn sub(&self, rhs: &PolyVector) -> PolyVector {
        assert_eq!(self.len(), rhs.len(), "dimension mismatch");
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        PolyVector {
            field: self.field.clone(),
            entries,
        }
    }

    pub fn scale_poly(&self, c: &Poly) -> PolyVector {
        let entries = self.entries.iter().map(|p| p.mul(c)).collect();
        PolyVector {
            field: self.field.clone(),
            entries,
        }
    }

    pub fn mul_z_pow(&self, k: usize) -> PolyVector {
        let entries = self.entries.iter().map(|p| p.mul_z_pow(k)).collect();
        PolyVector {
            field: self.field.clone(),
            entries,
        }
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", p)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A k×n matrix over GF(q)[z], stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![Poly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<PolyVector>) -> Result<PolyMatrix> {
        let r = rows.len();
        let c = rows.first().map(|v| v.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            if row.field() != field {
                return Err(Error::MixedFields);
            }
            entries.extend(row.entries.into_iter());
        }
        Ok(PolyMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            entries,
        })
    }

    /// Parse rows separated by `;`, entries by `,`: `1, z; 0, 1+z`.
    pub fn parse(field: &Field, s: &str) -> Result<PolyMatrix> {
        let rows = s
            .split(';')
            .map(|r| PolyVector::parse(field, r))
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::from_rows(field, rows)
    }

    /// A constant matrix viewed as a polynomial matrix.
    pub fn from_fmatrix(m: &FMatrix) -> PolyMatrix {
        let field = m.field().clone();
        let mut out = PolyMatrix::zero(&field, m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(i, j, Poly::constant(field.el(m.get(i, j) as u64)));
            }
        }
        out
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert!(p.field() == &self.field, "operands belong to different fields");
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> PolyVector {
        PolyVector {
            field: self.field.clone(),
            entries: self.entries[i * self.cols..(i + 1) * self.cols].to_vec(),
        }
    }

    pub fn set_row(&mut self, i: usize, v: PolyVector) {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        for (j, p) in v.entries.into_iter().enumerate() {
            self.entries[i * self.cols + j] = p;
        }
    }

    pub fn col(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.entry(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        assert!(self.field == rhs.field, "operands belong to different fields");
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = PolyMatrix::zero(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.entry(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.entry(l, j);
                    if b.is_zero() {
                        continue;
                    }
                    let acc = out.entry(i, j).add(&a.mul(b));
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    /// u·G for a row vector u of length `rows`.
    pub fn left_mul_vec(&self, u: &PolyVector) -> Result<PolyVector> {
        if u.field() != &self.field {
            return Err(Error::MixedFields);
        }
        if u.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} times {}×{} matrix",
                u.len(),
                self.rows,
                self.cols
            )));
        }
        let mut out = PolyVector::zero(&self.field, self.cols);
        for (i, ui) in u.entries.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            out = out.add(&self.row(i).scale_poly(ui));
        }
        Ok(out)
    }

    /// Coefficient matrix G_t of z^t.
    pub fn coefficient_matrix(&self, t: usize) -> FMatrix {
        let mut out = FMatrix::zero(&self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry(i, j).coeff_raw(t));
            }
        }
        out
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn max_entry_degree(&self) -> Option<usize> {
        self.entries.iter().filter_map(|p| p.deg()).max()
    }

    /// Row degrees; errors on a zero row.
    pub fn row_degrees(&self) -> Result<Vec<usize>> {
        (0..self.rows)
            .map(|i| self.row(i).deg().ok_or(Error::ZeroRow(i)))
            .collect()
    }

    /// The matrix of leading row coefficients: entry (i,j) is the
    /// coefficient of z^{ν_i} in g_ij where ν_i is the degree of row i.
    pub fn leading_row_matrix(&self) -> Result<FMatrix> {
        let degs = self.row_degrees()?;
        let mut out = FMatrix::zero(&self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.entry(i, j).coeff_raw(degs[i]));
            }
        }
        Ok(out)
    }

    /// Determinant of a square polynomial matrix (cofactor expansion; fine
    /// for the small sizes handled here).
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square".into()));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.det_of(&rows, &cols))
    }

    fn det_of(&self, rows: &[usize], cols: &[usize]) -> Poly {
        debug_assert_eq!(rows.len(), cols.len());
        match rows.len() {
            0 => Poly::one(&self.field),
            1 => self.entry(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = Poly::zero(&self.field);
                let rest_rows = &rows[1..];
                for (idx, &cj) in cols.iter().enumerate() {
                    let a = self.entry(rows[0], cj);
                    if a.is_zero() {
                        continue;
                    }
                    let rest_cols: Vec<usize> = cols
                        .iter()
                        .enumerate()
                        .filter(|&(l, _)| l != idx)
                        .map(|(_, &c)| c)
                        .collect();
                    let minor = self.det_of(rest_rows, &rest_cols);
                    let term = a.mul(&minor);
                    // sign (-1)^idx
                    acc = if idx % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                acc
            }
        }
    }

    /// All k×k minors (k = rows), one per size-k column subset, in
    /// lexicographic subset order.
    fn full_size_minors(&self) -> Result<Vec<Poly>> {
        if self.rows > self.cols {
            return Err(Error::DimensionMismatch(
                "more rows than columns".into(),
            ));
        }
        let rows: Vec<usize> = (0..self.rows).collect();
        let mut out = Vec::new();
        let mut subset: Vec<usize> = (0..self.rows).collect();
        loop {
            out.push(self.det_of(&rows, &subset));
            // next lexicographic k-subset of 0..cols
            let k = self.rows;
            let n = self.cols;
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if subset[i] != i + n - k {
                    subset[i] += 1;
                    for l in i + 1..k {
                        subset[l] = subset[l - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// The degree of the row module: max degree of the full-size minors.
    /// Errors when the matrix does not have full row rank over GF(q)(z).
    pub fn degree(&self) -> Result<usize> {
        let minors = self.full_size_minors()?;
        minors
            .iter()
            .filter_map(|m| m.deg())
            .max()
            .ok_or(Error::RankDeficient)
    }

    /// Basic means full row rank at every point of the projective line:
    /// equivalently the gcd of the full-size minors is a nonzero constant.
    pub fn is_basic(&self) -> bool {
        let Ok(minors) = self.full_size_minors() else {
            return false;
        };
        let mut g = Poly::zero(&self.field);
        for m in &minors {
            g = Poly::gcd(&g, m);
            if g.deg() == Some(0) {
                return true;
            }
        }
        g.deg() == Some(0)
    }

    /// Reduced means the leading-row-coefficient matrix has full row rank;
    /// errors on a zero row.
    pub fn is_reduced(&self) -> Result<bool> {
        Ok(self.leading_row_matrix()?.rank() == self.rows)
    }

    /// Forney's reduction: returns (U, R) with U unimodular, R = U·G reduced.
    /// Requires a basic input. When the input is already reduced it is
    /// returned unchanged with U = I.
    pub fn reduce(&self) -> Result<(PolyMatrix, PolyMatrix)> {
        if !self.is_basic() {
            return Err(Error::NonBasic);
        }
        let mut u = PolyMatrix::identity(&self.field, self.rows);
        let mut h = self.clone();
        loop {
            let degs = h.row_degrees()?; // basic => no zero rows, ever
            let lead = h.leading_row_matrix()?;
            if lead.rank() == self.rows {
                return Ok((u, h));
            }
            let w = lead.left_kernel().into_iter().next().expect("rank defect");
            let participants: Vec<usize> = (0..self.rows).filter(|&i| w[i] != 0).collect();
            let numax = participants.iter().map(|&i| degs[i]).max().unwrap();
            // Pivot: the largest row index among participants of maximal degree.
            let r = *participants
                .iter()
                .filter(|&&i| degs[i] == numax)
                .last()
                .unwrap();
            let mut new_row = PolyVector::zero(&self.field, self.cols);
            let mut new_urow = PolyVector::zero(&self.field, self.rows);
            for &i in &participants {
                let c = Poly::monomial(self.field.el(w[i] as u64), numax - degs[i]);
                new_row = new_row.add(&h.row(i).scale_poly(&c));
                new_urow = new_urow.add(&u.row(i).scale_poly(&c));
            }
            debug_assert!(new_row.deg().map(|d| d < numax).unwrap_or(false));
            h.set_row(r, new_row);
            u.set_row(r, new_urow);
        }
    }

    /// Row Hermite normal form with its transform: returns (H, U) with
    /// U unimodular, U·self = H, pivots monic, entries above a pivot of
    /// strictly smaller degree, zero rows at the bottom. Canonical for
    /// matrices of full row rank.
    pub fn hermite_with_transform(&self) -> (PolyMatrix, PolyMatrix) {
        let mut h = self.clone();
        let mut u = PolyMatrix::identity(&self.field, self.rows);
        let mut r = 0;
        for col in 0..self.cols {
            // Euclidean elimination below row r in this column.
            loop {
                let nz: Vec<usize> = (r..self.rows)
                    .filter(|&i| !h.entry(i, col).is_zero())
                    .collect();
                if nz.len() <= 1 {
                    break;
                }
                let &imin = nz
                    .iter()
                    .min_by_key(|&&i| h.entry(i, col).deg().unwrap())
                    .unwrap();
                for &i in &nz {
                    if i == imin {
                        continue;
                    }
                    let (q, _) = h.entry(i, col).div_rem(h.entry(imin, col)).unwrap();
                    let hr = h.row(i).sub(&h.row(imin).scale_poly(&q));
                    let ur = u.row(i).sub(&u.row(imin).scale_poly(&q));
                    h.set_row(i, hr);
                    u.set_row(i, ur);
                }
            }
            let Some(ip) = (r..self.rows).find(|&i| !h.entry(i, col).is_zero()) else {
                continue;
            };
            h.swap_rows(r, ip);
            u.swap_rows(r, ip);
            // monic pivot
            let inv = h.entry(r, col).leading_coeff().inv().unwrap();
            h.set_row(r, h.row(r).scale_poly(&Poly::constant(inv.clone())));
            u.set_row(r, u.row(r).scale_poly(&Poly::constant(inv)));
            // reduce entries above the pivot
            for i in 0..r {
                if h.entry(i, col).is_zero() {
                    continue;
                }
                let (q, _) = h.entry(i, col).div_rem(h.entry(r, col)).unwrap();
                if q.is_zero() {
                    continue;
                }
                let hr = h.row(i).sub(&h.row(r).scale_poly(&q));
                let ur = u.row(i).sub(&u.row(r).scale_poly(&q));
                h.set_row(i, hr);
                u.set_row(i, ur);
            }
            r += 1;
            if r == self.rows {
                break;
            }
        }
        (h, u)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let pa = self.entry(a, j).clone();
            let pb = self.entry(b, j).clone();
            self.set(a, j, pb);
            self.set(b, j, pa);
        }
    }

    /// Canonical Hermite form of a basic matrix.
    pub fn hermite_form(&self) -> Result<PolyMatrix> {
        if !self.is_basic() {
            return Err(Error::NonBasic);
        }
        Ok(self.hermite_with_transform().0)
    }

    /// A basic (n−k)×n matrix H with H·Gᵀ = 0 whose row module is the full
    /// right-kernel module: bring Gᵀ to column echelon form by row
    /// operations U·Gᵀ and read off the rows of U against the zero rows.
    pub fn right_kernel_basis(&self) -> Result<PolyMatrix> {
        if !self.is_basic() {
            return Err(Error::NonBasic);
        }
        let k = self.rows;
        let n = self.cols;
        if k == n {
            return Err(Error::DimensionMismatch(
                "kernel of a full-size matrix is trivial".into(),
            ));
        }
        let (echelon, u) = self.transpose().hermite_with_transform();
        // Gᵀ has full column rank k, so exactly the bottom n−k rows vanish.
        for i in k..n {
            debug_assert!(echelon.row(i).is_zero());
        }
        let rows: Vec<PolyVector> = (k..n).map(|i| u.row(i)).collect();
        let h = PolyMatrix::from_rows(&self.field, rows)?;
        if !h.mul(&self.transpose()).is_zero() || !h.is_basic() {
            return Err(Error::Internal("kernel basis verification"));
        }
        Ok(h)
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().map(|d| d.deg() == Some(0)).unwrap_or(false)
    }

    /// Inverse of a unimodular matrix via the adjugate (det is a constant).
    pub fn unimodular_inverse(&self) -> Result<PolyMatrix> {
        let d = self.det()?;
        if d.deg() != Some(0) {
            return Err(Error::InvalidArgument(
                "matrix is not unimodular".into(),
            ));
        }
        let dinv = d.leading_coeff().inv()?;
        let n = self.rows;
        let mut out = PolyMatrix::zero(&self.field, n, n);
        let all: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..n {
                let rrows: Vec<usize> = all.iter().copied().filter(|&r| r != j).collect();
                let rcols: Vec<usize> = all.iter().copied().filter(|&c| c != i).collect();
                let mut cof = self.det_of(&rrows, &rcols);
                if (i + j) % 2 == 1 {
                    cof = cof.neg();
                }
                out.set(i, j, cof.scale(&dinv));
            }
        }
        debug_assert_eq!(out.mul(self), PolyMatrix::identity(&self.field, n));
        Ok(out)
    }

    /// Delay of each column (∞ for zero columns).
    pub fn col_delays(&self) -> Vec<InfInt> {
        (0..self.cols)
            .map(|j| {
                (0..self.rows)
                    .map(|i| self.entry(i, j).delay())
                    .min()
                    .unwrap_or(InfInt::Inf)
            })
            .collect()
    }

    /// Divide each column by z^(its delay); zero columns are untouched.
    /// The result has every column with delay 0 (or zero).
    pub fn normalize_col_delays(&self) -> PolyMatrix {
        let delays = self.col_delays();
        let mut out = self.clone();
        for (j, d) in delays.iter().enumerate() {
            if let InfInt::Finite(d) = d {
                if *d == 0 {
                    continue;
                }
                for i in 0..self.rows {
                    let p = out.entry(i, j).div_z_pow(*d as usize).expect("delay bound");
                    out.set(i, j, p);
                }
            }
        }
        out
    }

    /// Scale column j by c·z^shift. Negative shifts must divide exactly.
    pub fn scale_col(&mut self, j: usize, c: &FieldElement, shift: i64) -> Result<()> {
        for i in 0..self.rows {
            let mut p = self.entry(i, j).scale(c);
            if shift >= 0 {
                p = p.mul_z_pow(shift as usize);
            } else {
                p = p
                    .div_z_pow((-shift) as usize)
                    .map_err(|_| Error::NonPolynomialImage(j))?;
            }
            self.set(i, j, p);
        }
        Ok(())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
