//! Random generators for property tests: field elements, polynomials,
//! encoders, codes, and the transformation groups acting on them.
//!
//! Everything is generic over [`rand::Rng`], so callers control seeding and
//! reproducibility.  Constructors that need a structural property (basic,
//! reduced, unimodular) either build it directly or rejection-sample with a
//! generous attempt cap.

use rand::Rng;

use crate::code::ConvCode;
use crate::equivalence::{MonomialMatrix, ZMonomialMatrix};
use crate::gf::{Field, FieldElement};
use crate::pmat::PolyMatrix;
use crate::poly::Poly;

const ATTEMPTS: usize = 10_000;

pub fn random_element<R: Rng>(field: &Field, rng: &mut R) -> FieldElement {
    field.el(rng.gen_range(0..field.q()))
}

pub fn random_nonzero_element<R: Rng>(field: &Field, rng: &mut R) -> FieldElement {
    field.el(rng.gen_range(1..field.q()))
}

/// A polynomial with uniform coefficients of degree at most `max_deg`
/// (possibly zero).
pub fn random_poly<R: Rng>(field: &Field, max_deg: usize, rng: &mut R) -> Poly {
    let coeffs: Vec<u16> = (0..=max_deg)
        .map(|_| rng.gen_range(0..field.q()) as u16)
        .collect();
    Poly::from_raw(field.clone(), coeffs)
}

pub fn random_matrix<R: Rng>(
    field: &Field,
    rows: usize,
    cols: usize,
    max_deg: usize,
    rng: &mut R,
) -> PolyMatrix {
    let mut m = PolyMatrix::zero(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, random_poly(field, max_deg, rng));
        }
    }
    m
}

/// A unimodular matrix built as a product of elementary row operations:
/// row swaps, nonzero row scalings, and additions of polynomial multiples
/// of one row to another.
pub fn random_unimodular<R: Rng>(
    field: &Field,
    k: usize,
    max_deg: usize,
    rng: &mut R,
) -> PolyMatrix {
    let mut u = PolyMatrix::identity(field, k);
    if k < 2 {
        let c = random_nonzero_element(field, rng);
        let mut row = u.row(0);
        row = row.scale_poly(&Poly::constant(c));
        u.set_row(0, row);
        return u;
    }
    for _ in 0..(3 * k) {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..k);
                let j = rng.gen_range(0..k);
                if i != j {
                    let ri = u.row(i);
                    let rj = u.row(j);
                    u.set_row(i, rj);
                    u.set_row(j, ri);
                }
            }
            1 => {
                let i = rng.gen_range(0..k);
                let c = random_nonzero_element(field, rng);
                let row = u.row(i).scale_poly(&Poly::constant(c));
                u.set_row(i, row);
            }
            _ => {
                let i = rng.gen_range(0..k);
                let j = rng.gen_range(0..k);
                if i != j {
                    let p = random_poly(field, max_deg, rng);
                    let row = u.row(i).add(&u.row(j).scale_poly(&p));
                    u.set_row(i, row);
                }
            }
        }
    }
    debug_assert!(u.is_unimodular());
    u
}

pub fn random_monomial<R: Rng>(field: &Field, n: usize, rng: &mut R) -> MonomialMatrix {
    let mut source: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        source.swap(i, rng.gen_range(0..=i));
    }
    let scale = (0..n).map(|_| random_nonzero_element(field, rng)).collect();
    MonomialMatrix::new(field, source, scale).expect("valid by construction")
}

/// A z-monomial transformation with shifts drawn from `-max_shift..=max_shift`.
pub fn random_z_monomial<R: Rng>(
    field: &Field,
    n: usize,
    max_shift: i64,
    rng: &mut R,
) -> ZMonomialMatrix {
    let m = random_monomial(field, n, rng);
    let shift = (0..n)
        .map(|_| rng.gen_range(-max_shift..=max_shift))
        .collect();
    m.with_shifts(shift).expect("valid by construction")
}

/// A basic encoder sampled by rejection: uniform entries of degree at most
/// `max_deg`, kept when the matrix is basic.
pub fn random_basic_encoder<R: Rng>(
    field: &Field,
    k: usize,
    n: usize,
    max_deg: usize,
    rng: &mut R,
) -> PolyMatrix {
    assert!(k <= n, "wide matrices only");
    for _ in 0..ATTEMPTS {
        let g = random_matrix(field, k, n, max_deg, rng);
        if g.is_basic() {
            return g;
        }
    }
    panic!("no basic sample found");
}

/// A basic and reduced encoder whose ordered row degrees equal `degs`.
pub fn random_reduced_encoder<R: Rng>(
    field: &Field,
    n: usize,
    degs: &[usize],
    rng: &mut R,
) -> PolyMatrix {
    let k = degs.len();
    assert!(k <= n, "wide matrices only");
    for _ in 0..ATTEMPTS {
        let mut g = PolyMatrix::zero(field, k, n);
        for (i, &d) in degs.iter().enumerate() {
            for j in 0..n {
                g.set(i, j, random_poly(field, d, rng));
            }
            // Force row degree exactly d.
            let j = rng.gen_range(0..n);
            let mut coeffs = vec![0u16; d + 1];
            for (t, c) in coeffs.iter_mut().enumerate() {
                *c = if t < d {
                    g.entry(i, j).coeff(t).value() as u16
                } else {
                    random_nonzero_element(field, rng).value() as u16
                };
            }
            g.set(i, j, Poly::from_raw(field.clone(), coeffs));
        }
        if g.is_basic() && g.is_reduced().unwrap_or(false) && g.row_degrees().unwrap() == degs {
            return g;
        }
    }
    panic!("no reduced sample found");
}

/// A code with a random basic encoder of entry degree at most `max_deg`.
pub fn random_code<R: Rng>(
    field: &Field,
    k: usize,
    n: usize,
    max_deg: usize,
    rng: &mut R,
) -> ConvCode {
    let g = random_basic_encoder(field, k, n, max_deg, rng);
    ConvCode::from_encoder(&g).expect("basic by construction")
}
