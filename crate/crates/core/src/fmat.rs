//! Constant matrices over GF(q): rank, kernels, inverses, enumeration.
//!
//! These are the state-space ingredients (A, B, C, D), leading-coefficient
//! matrices, sliding generator matrices and GL(δ, q) candidates. Entries are
//! raw element encodings; all arithmetic goes through the field tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u16>,
}

impl FMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> FMatrix {
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> FMatrix {
        let mut m = FMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u64>]) -> Result<FMatrix> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for &v in row {
                data.push(field.element(v)?.raw());
            }
        }
        Ok(FMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        })
    }

    /// Matrix with the given integer id: entries row-major, earlier entries
    /// more significant, each a base-q digit. Ids run in 0..q^(rows·cols).
    pub fn from_id(field: &Field, rows: usize, cols: usize, mut id: u64) -> FMatrix {
        let q = field.q();
        let mut data = vec![0u16; rows * cols];
        for slot in data.iter_mut().rev() {
            *slot = (id % q) as u16;
            id /= q;
        }
        FMatrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FMatrix {
        let mut out = FMatrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, rhs: &FMatrix) -> FMatrix {
        assert!(self.field == rhs.field && self.rows == rhs.rows && self.cols == rhs.cols);
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| self.field.add_raw(a, b))
            .collect();
        FMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, rhs: &FMatrix) -> FMatrix {
        assert!(self.field == rhs.field && self.cols == rhs.rows, "dimension mismatch");
        let mut out = FMatrix::zero(&self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = self.field.mul_raw(a, rhs.get(l, j));
                    out.set(i, j, self.field.add_raw(out.get(i, j), prod));
                }
            }
        }
        out
    }

    /// Row vector times matrix: x·M for x of length `rows`.
    pub fn row_mul(&self, x: &[u16]) -> Vec<u16> {
        assert_eq!(x.len(), self.rows, "dimension mismatch");
        let mut out = vec![0u16; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..self.cols {
                out[j] = self
                    .field
                    .add_raw(out[j], self.field.mul_raw(xi, self.get(i, j)));
            }
        }
        out
    }

    /// Reduced row echelon form together with the transform E (E·self = rref)
    /// and the list of pivot columns.
    fn rref_with_transform(&self) -> (FMatrix, FMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut e = FMatrix::identity(&self.field, self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, col) != 0) else {
                continue;
            };
            // swap
            for j in 0..m.cols {
                let (a, b) = (m.get(r, j), m.get(pr, j));
                m.set(r, j, b);
                m.set(pr, j, a);
            }
            for j in 0..e.cols {
                let (a, b) = (e.get(r, j), e.get(pr, j));
                e.set(r, j, b);
                e.set(pr, j, a);
            }
            // normalize pivot to 1
            let inv = self.field.inv_raw(m.get(r, col)).unwrap();
            for j in 0..m.cols {
                m.set(r, j, self.field.mul_raw(m.get(r, j), inv));
            }
            for j in 0..e.cols {
                e.set(r, j, self.field.mul_raw(e.get(r, j), inv));
            }
            // clear the column elsewhere
            for i in 0..m.rows {
                if i == r || m.get(i, col) == 0 {
                    continue;
                }
                let c = m.get(i, col);
                for j in 0..m.cols {
                    let sub = self.field.mul_raw(c, m.get(r, j));
                    m.set(i, j, self.field.sub_raw(m.get(i, j), sub));
                }
                for j in 0..e.cols {
                    let sub = self.field.mul_raw(c, e.get(r, j));
                    e.set(i, j, self.field.sub_raw(e.get(i, j), sub));
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, e, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref_with_transform().2.len()
    }

    /// Basis of the left kernel {w : w·M = 0}, deterministic.
    pub fn left_kernel(&self) -> Vec<Vec<u16>> {
        let (_, e, pivots) = self.rref_with_transform();
        (pivots.len()..self.rows)
            .map(|i| e.row(i).to_vec())
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<FMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let (rref, e, pivots) = self.rref_with_transform();
        if pivots.len() != self.rows {
            return None;
        }
        debug_assert_eq!(rref, FMatrix::identity(&self.field, self.rows));
        Some(e)
    }

    /// Count of invertible n×n matrices over the field.
    pub fn gl_order(field: &Field, n: usize) -> u128 {
        let q = field.q() as u128;
        let qn = q.pow(n as u32);
        (0..n as u32).map(|i| qn - q.pow(i)).product()
    }
}

impl fmt::Display for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.format_raw(self.get(i, j)))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
