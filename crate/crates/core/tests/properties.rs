//! Cross-module property tests: randomized invariants that tie encoders,
//! realizations, weight adjacency matrices, distances and the equivalence
//! procedures together.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use convcode::distances::{self, DistanceFamily};
use convcode::equivalence::{
    code_isometric, code_me, code_strongly_isometric, matrix_me, matrix_zme, paired_isometry,
    sliding_matrix,
};
use convcode::fmat::FMatrix;
use convcode::pmat::{PolyMatrix, PolyVector};
use convcode::realization::is_atomic;
use convcode::sampling::{
    random_basic_encoder, random_code, random_matrix, random_monomial, random_poly,
    random_reduced_encoder, random_unimodular, random_z_monomial,
};
use convcode::wam::wam;
use convcode::{Budget, ConvCode, Field, InfInt};

fn f2() -> Field {
    Field::new(2, 1).unwrap()
}

fn f3() -> Field {
    Field::new(3, 1).unwrap()
}

fn pm(field: &Field, text: &str) -> PolyMatrix {
    PolyMatrix::parse(field, text).unwrap()
}

/// Multiply a codeword by a polynomial column transformation.
fn apply_to_vector(m: &convcode::ZMonomialMatrix, v: &PolyVector) -> PolyVector {
    let row = PolyMatrix::from_rows(v.field(), vec![v.clone()]).unwrap();
    let image = m.apply(&row).unwrap();
    image.row(0)
}

#[test]
fn reduction_and_hermite_are_encoder_invariants() {
    let f = f2();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..100 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range(k..=(k + 2));
        let g = random_basic_encoder(&f, k, n, 2, &mut rng);
        let u = random_unimodular(&f, k, 3, &mut rng);
        let ug = u.mul(&g);

        assert_eq!(ug.hermite_form().unwrap(), g.hermite_form().unwrap());

        let c = ConvCode::from_encoder(&g).unwrap();
        let cu = ConvCode::from_encoder(&ug).unwrap();
        assert_eq!(c, cu);
        assert_eq!(c.forney_indices(), cu.forney_indices());

        let (_, r) = ug.reduce().unwrap();
        let mut degs = r.row_degrees().unwrap();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(degs, c.forney_indices());
    }
}

#[test]
fn reduced_encoders_predict_degree_and_preserve_delay() {
    let f = f3();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..20 {
        let degs: Vec<usize> = (0..2).map(|_| rng.gen_range(0..=2)).collect();
        let g = random_reduced_encoder(&f, 4, &degs, &mut rng);
        for _ in 0..10 {
            let u = PolyVector::from_polys(
                &f,
                vec![random_poly(&f, 3, &mut rng), random_poly(&f, 3, &mut rng)],
            )
            .unwrap();
            let v = g.left_mul_vec(&u).unwrap();
            let expected: Option<usize> = u
                .entries()
                .iter()
                .zip(&degs)
                .filter_map(|(p, &nu)| p.deg().map(|d| d + nu))
                .max();
            assert_eq!(v.deg(), expected);
            assert_eq!(v.delay(), u.delay());
        }
    }
}

#[test]
fn encode_contains_and_double_dual_round_trip() {
    let f = f2();
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    let mut checked = 0;
    while checked < 50 {
        let k = rng.gen_range(1..=3);
        let n = rng.gen_range((k + 1)..=5);
        let c = random_code(&f, k, n, 2, &mut rng);
        if c.degree() > 3 {
            continue;
        }
        checked += 1;

        let u = PolyVector::from_polys(
            &f,
            (0..k).map(|_| random_poly(&f, 3, &mut rng)).collect(),
        )
        .unwrap();
        let v = c.encode(&u).unwrap();
        assert_eq!(c.contains(&v), Some(u));

        assert_eq!(c.dual().unwrap().dual().unwrap(), c);
    }
}

#[test]
fn monomial_witnesses_are_recovered() {
    let f = f3();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..100 {
        let g = random_matrix(&f, 2, 4, 2, &mut rng);
        let m = random_monomial(&f, 4, &mut rng);
        let gm = m.apply(&g).unwrap();
        let w = matrix_me(&g, &gm).unwrap().expect("witness exists");
        assert_eq!(w.apply(&g).unwrap(), gm);

        let mz = random_z_monomial(&f, 4, 2, &mut rng);
        if let Ok(gmz) = mz.apply(&g) {
            let wz = matrix_zme(&g, &gmz).unwrap().expect("witness exists");
            assert_eq!(wz.apply(&g).unwrap(), gmz);
        }
    }
}

#[test]
fn sliding_matrix_weights_match_polynomial_encoding() {
    let f = f2();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    for _ in 0..200 {
        let k = rng.gen_range(1..=2);
        let g = random_matrix(&f, k, 3, 2, &mut rng);
        let nu = g.max_entry_degree().unwrap_or(0);
        let s = sliding_matrix(&g, nu).unwrap();
        let u = PolyVector::from_polys(
            &f,
            (0..k).map(|_| random_poly(&f, nu, &mut rng)).collect(),
        )
        .unwrap();
        // Stack the coefficients of u as the sliding input (u_0, ..., u_nu).
        let mut stacked = Vec::with_capacity(k * (nu + 1));
        for t in 0..=nu {
            stacked.extend(u.coeff_vector(t));
        }
        let wt = s
            .row_mul(&stacked)
            .iter()
            .filter(|&&v| v != 0)
            .count() as u64;
        assert_eq!(wt, g.left_mul_vec(&u).unwrap().weight());
    }
}

#[test]
fn code_me_recovers_transformed_codes() {
    let f = f2();
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for _ in 0..50 {
        let k = rng.gen_range(1..=2);
        let n = rng.gen_range((k + 1)..=4);
        let c = random_code(&f, k, n, 1, &mut rng);
        let m = random_monomial(&f, n, &mut rng);
        let gbar = m.apply(c.reduced_encoder()).unwrap();
        let cbar = ConvCode::from_encoder(&gbar).unwrap();
        let (u, w) = code_me(&c, &cbar, &Budget::default())
            .unwrap()
            .expect("witness exists");
        assert_eq!(
            w.apply(&u.mul(c.reduced_encoder())).unwrap(),
            *cbar.reduced_encoder()
        );
    }
}

#[test]
fn paired_isometry_agrees_with_z_monomial_witnesses() {
    let f = f2();
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(107);
    let mut positives = 0;
    for trial in 0..100 {
        let g = random_matrix(&f, 2, 3, 1, &mut rng);
        let gbar = if trial % 2 == 0 {
            // Construct an equivalent partner; retry shifts until polynomial.
            loop {
                let mz = random_z_monomial(&f, 3, 1, &mut rng);
                if let Ok(h) = mz.apply(&g) {
                    break h;
                }
            }
        } else {
            random_matrix(&f, 2, 3, 1, &mut rng)
        };
        let paired = paired_isometry(&g, &gbar, &b).unwrap();
        let witnessed = matrix_zme(&g, &gbar).unwrap().is_some();
        assert_eq!(paired, witnessed);
        if witnessed {
            positives += 1;
        }
    }
    assert!(positives >= 50);
}

/// Weight fingerprint of a constant matrix: wt(uG) over all messages u.
fn block_fingerprint(g: &FMatrix) -> Vec<u8> {
    let q = g.field().q();
    let k = g.rows();
    let count = q.pow(k as u32);
    let mut out = Vec::with_capacity(count as usize);
    let mut u = vec![0u16; k];
    for mut id in 0..count {
        for slot in u.iter_mut() {
            *slot = (id % q) as u16;
            id /= q;
        }
        out.push(g.row_mul(&u).iter().filter(|&&v| v != 0).count() as u8);
    }
    out
}

#[test]
fn block_macwilliams_equivalence_is_exhaustive_for_small_sizes() {
    let f = f2();
    let mut rng = ChaCha8Rng::seed_from_u64(108);
    for (k, n) in [(1, 4), (1, 5), (2, 4), (2, 5), (3, 3)] {
        let total = 1u64 << (k * n);
        let mut groups: HashMap<Vec<u8>, Vec<u64>> = HashMap::new();
        for id in 0..total {
            let g = FMatrix::from_id(&f, k, n, id);
            groups.entry(block_fingerprint(&g)).or_default().push(id);
        }
        // Same weight function <=> monomially equivalent: within a group
        // every member matches its representative...
        for ids in groups.values() {
            let rep = PolyMatrix::from_fmatrix(&FMatrix::from_id(&f, k, n, ids[0]));
            for &id in ids {
                let g = PolyMatrix::from_fmatrix(&FMatrix::from_id(&f, k, n, id));
                assert!(matrix_me(&rep, &g).unwrap().is_some());
            }
        }
        // ...and across groups sampled pairs never match.
        let keys: Vec<_> = groups.keys().cloned().collect();
        for _ in 0..50 {
            let a = rng.gen_range(0..keys.len());
            let b = rng.gen_range(0..keys.len());
            if a == b {
                continue;
            }
            let ga = PolyMatrix::from_fmatrix(&FMatrix::from_id(&f, k, n, groups[&keys[a]][0]));
            let gb = PolyMatrix::from_fmatrix(&FMatrix::from_id(&f, k, n, groups[&keys[b]][0]));
            assert!(matrix_me(&ga, &gb).unwrap().is_none());
        }
    }
}

#[test]
fn positive_index_encoders_are_me_iff_wams_match() {
    let b = Budget::default();
    for (field, seed) in [(f2(), 109u64), (f3(), 110u64)] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut positives = 0;
        for trial in 0..50 {
            let g = random_reduced_encoder(&field, 4, &[1], &mut rng);
            let gbar = if trial % 2 == 0 {
                let m = random_monomial(&field, 4, &mut rng);
                m.apply(&g).unwrap()
            } else {
                random_reduced_encoder(&field, 4, &[1], &mut rng)
            };
            let me = matrix_me(&g, &gbar).unwrap().is_some();
            let same_wam = wam(&g, &b).unwrap() == wam(&gbar, &b).unwrap();
            assert_eq!(me, same_wam);
            if me {
                positives += 1;
            }
        }
        assert!(positives >= 25);
    }
}

#[test]
fn strongly_isometric_encoders_with_equal_wams_are_me() {
    let f = f2();
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(111);

    // Monomial images of a reduced encoder share its WAM entrywise and the
    // matrix-level equivalence is always found.
    for _ in 0..25 {
        let degs: Vec<usize> = (0..2).map(|_| rng.gen_range(0..=1)).collect();
        let g = random_reduced_encoder(&f, 4, &degs, &mut rng);
        let m = random_monomial(&f, 4, &mut rng);
        let gm = m.apply(&g).unwrap();
        assert_eq!(wam(&g, &b).unwrap(), wam(&gm, &b).unwrap());
        assert!(matrix_me(&g, &gm).unwrap().is_some());
    }

    // Contrapositive on the eight-column pair: the codes are strongly
    // isometric but not ME, so no z-monomially matching reduced encoder of
    // the partner may share the WAM entrywise.
    let g = pm(&f, "1+z, 1, z, 0, 0, 0, 0, 1; 0, 0, 1, 1, 0, 0, z, 1; 1, 1, 1, 1, 1, 1, 0, 0");
    let gbar = pm(&f, "1+z, 1, z, 0, 0, 0, 0, z; 0, 0, 1, 1, 0, 0, 1, z; 1, 1, 1, 1, 1, 1, 0, 0");
    let lambda = wam(&g, &b).unwrap();
    let mut zme_partners = 0;
    for (_, ug) in convcode::equivalence::reduced_encoder_orbit(&gbar, &b).unwrap() {
        if matrix_zme(&g, &ug).unwrap().is_some() {
            zme_partners += 1;
            assert_ne!(wam(&ug, &b).unwrap(), lambda);
        }
    }
    assert!(zme_partners > 0);
}

#[test]
fn low_degree_codes_are_me_iff_strongly_isometric_with_equal_wam() {
    let f = f2();
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(112);
    let mut checked = 0;
    let mut positives = 0;
    while checked < 40 {
        let k = rng.gen_range(1..=2);
        let n = rng.gen_range((k + 1)..=4);
        let c = random_code(&f, k, n, 1, &mut rng);
        if c.degree() > 1 {
            continue;
        }
        let cbar = if checked % 2 == 0 {
            let m = random_monomial(&f, n, &mut rng);
            ConvCode::from_encoder(&m.apply(c.reduced_encoder()).unwrap()).unwrap()
        } else {
            let c2 = random_code(&f, k, n, 1, &mut rng);
            if c2.degree() > 1 {
                continue;
            }
            c2
        };
        checked += 1;

        let strong = code_strongly_isometric(&c, &cbar, &b).unwrap().is_some();
        let same_wam = strong
            && wam(c.reduced_encoder(), &b)
                .unwrap()
                .equivalent(&wam(cbar.reduced_encoder(), &b).unwrap(), &b)
                .unwrap()
                .is_some();
        let me = code_me(&c, &cbar, &b).unwrap().is_some();
        assert_eq!(strong && same_wam, me);
        if me {
            positives += 1;
        }
    }
    assert!(positives >= 15);
}

#[test]
fn delay_free_codes_are_isometric_iff_me() {
    let f = f2();
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(113);
    let mut checked = 0;
    while checked < 30 {
        let k = rng.gen_range(1..=2);
        let n = rng.gen_range((k + 1)..=4);
        let c = random_code(&f, k, n, 1, &mut rng);
        let delay_free = c
            .reduced_encoder()
            .col_delays()
            .iter()
            .all(|d| matches!(d, InfInt::Finite(0) | InfInt::Inf));
        if !delay_free || c.degree() > 2 {
            continue;
        }
        let cbar = if checked % 2 == 0 {
            let m = random_monomial(&f, n, &mut rng);
            ConvCode::from_encoder(&m.apply(c.reduced_encoder()).unwrap()).unwrap()
        } else {
            let c2 = random_code(&f, k, n, 1, &mut rng);
            let df2 = c2
                .reduced_encoder()
                .col_delays()
                .iter()
                .all(|d| matches!(d, InfInt::Finite(0) | InfInt::Inf));
            if !df2 || c2.degree() > 2 {
                continue;
            }
            c2
        };
        checked += 1;

        let iso = code_isometric(&c, &cbar, &b).unwrap().is_some();
        let me = code_me(&c, &cbar, &b).unwrap().is_some();
        assert_eq!(iso, me);
    }
}

#[test]
fn strong_isometries_preserve_atomicity_and_derived_data() {
    let f = f2();
    let b = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(114);
    for _ in 0..10 {
        let c = random_code(&f, 1, 3, 1, &mut rng);
        let m = random_monomial(&f, 3, &mut rng);
        let cbar =
            ConvCode::from_encoder(&m.apply(c.reduced_encoder()).unwrap()).unwrap();

        // Atomicity agrees message by message.
        for id in 0..(1 << 4) {
            let u = distances::brute::message(&f, 1, 4, id);
            let v = c.encode(&u).unwrap();
            let vbar = cbar.encode(&u).unwrap();
            assert_eq!(
                is_atomic(&c, &v).unwrap(),
                is_atomic(&cbar, &vbar).unwrap()
            );
        }

        // Weight enumerators, extended row distances and active bursts agree.
        assert_eq!(
            distances::omega_series(&c, 6, &b).unwrap(),
            distances::omega_series(&cbar, 6, &b).unwrap()
        );
        assert_eq!(
            distances::extended_row_distances(&c, 5, &b).unwrap().values,
            distances::extended_row_distances(&cbar, 5, &b).unwrap().values
        );
        assert_eq!(
            distances::active_distances(&c, DistanceFamily::ActiveBurst, 4, &b)
                .unwrap()
                .values,
            distances::active_distances(&cbar, DistanceFamily::ActiveBurst, 4, &b)
                .unwrap()
                .values
        );
        assert_eq!(
            distances::active_row_distances(c.reduced_encoder(), 4, &b)
                .unwrap()
                .values,
            distances::active_row_distances(cbar.reduced_encoder(), 4, &b)
                .unwrap()
                .values
        );
    }

    // The seven-column pair shares enumerator and extended row distances.
    let g = pm(&f, "1, 1, z, 1, 1, 1, 1; 1+z, z, 0, 0, 1, 1, 1; 1, 0, 0, 0, 0, 0, 0");
    let gp = pm(&f, "1, 1, 1, 1, 1, z, 1; 1+z, z, 0, 0, 1, z, 1; 1, 0, 0, 0, 0, 0, 0");
    let c = ConvCode::from_encoder(&g).unwrap();
    let cp = ConvCode::from_encoder(&gp).unwrap();
    assert_eq!(
        distances::omega_series(&c, 8, &b).unwrap(),
        distances::omega_series(&cp, 8, &b).unwrap()
    );
    assert_eq!(
        distances::extended_row_distances(&c, 8, &b).unwrap().values,
        distances::extended_row_distances(&cp, 8, &b).unwrap().values
    );
}

#[test]
fn isometry_witnesses_preserve_delays() {
    let f = f2();
    let b = Budget::default();

    let g = pm(&f, "z^2+z+1, 1, 0; z^2, z+1, z^2");
    let gbar = pm(&f, "z^3+z^2+z, 1, 0; z^3, z+1, 1");
    let c = ConvCode::from_encoder(&g).unwrap();
    let cbar = ConvCode::from_encoder(&gbar).unwrap();
    let (_, m) = code_isometric(&c, &cbar, &b).unwrap().unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(115);
    for _ in 0..100 {
        let u = PolyVector::from_polys(
            &f,
            vec![random_poly(&f, 3, &mut rng), random_poly(&f, 3, &mut rng)],
        )
        .unwrap();
        let v = c.encode(&u).unwrap();
        let image = apply_to_vector(&m, &v);
        assert!(cbar.contains(&image).is_some());
        assert_eq!(image.delay(), v.delay());
        assert_eq!(image.weight(), v.weight());
    }
}

#[test]
fn wam_witnesses_compose_and_invert() {
    let f = f2();
    let b = Budget::default();
    let g = pm(&f, "1+z, 1, z, 0, 0, 0, 0, 1; 0, 0, 1, 1, 0, 0, z, 1; 1, 1, 1, 1, 1, 1, 0, 0");
    let gbar = pm(&f, "1+z, 1, z, 0, 0, 0, 0, z; 0, 0, 1, 1, 0, 0, 1, z; 1, 1, 1, 1, 1, 1, 0, 0");
    let a = wam(&g, &b).unwrap();
    let c = wam(&gbar, &b).unwrap();

    let t1 = a.equivalent(&c, &b).unwrap().expect("equivalent");
    let t2 = c.equivalent(&a, &b).unwrap().expect("equivalent");
    assert!(a.is_witness(&c, &t1));
    assert!(c.is_witness(&a, &t2));

    // Composition closes the loop, and the identity is always a self-witness.
    let composed = t1.mul(&t2);
    assert!(a.is_witness(&a, &composed));
    assert!(a.is_witness(&a, &FMatrix::identity(&f, 2)));
}
