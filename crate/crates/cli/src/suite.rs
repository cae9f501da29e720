//! The built-in example suite: named reference computations checked against
//! their published values. Each example loads its encoder matrices from the
//! repository's `data/` directory so the command line and the tests share one
//! source of truth.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::Serialize;

use convcode::distances::{self, DistanceFamily, DistanceProfile};
use convcode::equivalence::{
    code_isometric, code_me, code_strongly_isometric, matrix_zme, paired_isometry,
};
use convcode::fmat::FMatrix;
use convcode::io;
use convcode::pmat::{PolyMatrix, PolyVector};
use convcode::wam::{wam, Wam};
use convcode::wenum::WPoly;
use convcode::{Budget, ConvCode, Error, InfInt, Poly, Result};

/// Example names in running order.
pub const EXAMPLES: &[&str] = &[
    "exa3.1",
    "exa3.2",
    "exa3.3",
    "exa3.4/4.3",
    "exa4.2",
    "exa4.3'",
    "rem2.3",
    "appendix",
    "gf4-5.1",
];

/// One verified fact: its name, outcome, and a short diagnostic detail.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub example: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Run one named example against the data directory.
pub fn run(example: &str, data: &Path, budget: &Budget) -> Result<SuiteReport> {
    let mut rec = Rec::default();
    match example {
        "exa3.1" => exa3_1(&mut rec, data, budget)?,
        "exa3.2" => exa3_2(&mut rec, data, budget)?,
        "exa3.3" => exa3_3(&mut rec, data, budget)?,
        "exa3.4/4.3" => exa3_4(&mut rec, data, budget)?,
        "exa4.2" => exa4_2(&mut rec, data, budget)?,
        "exa4.3'" => exa4_3_prime(&mut rec, data, budget)?,
        "rem2.3" => rem2_3(&mut rec, data, budget)?,
        "appendix" => appendix(&mut rec, data, budget)?,
        "gf4-5.1" => gf4_5_1(&mut rec, data, budget)?,
        other => {
            return Err(Error::InvalidArgument(format!(
                "unknown example {other:?}; --list shows the available names"
            )))
        }
    }
    Ok(SuiteReport {
        example: example.to_string(),
        checks: rec.checks,
    })
}

/// Run every example in order.
pub fn run_all(data: &Path, budget: &Budget) -> Result<Vec<SuiteReport>> {
    EXAMPLES.iter().map(|e| run(e, data, budget)).collect()
}

#[derive(Default)]
struct Rec {
    checks: Vec<Check>,
}

impl Rec {
    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(Check {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    fn claim(&mut self, name: &str, pass: bool) {
        let detail = if pass { "holds" } else { "violated" };
        self.push(name, pass, detail.to_string());
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, name: &str, got: T, want: T) {
        let pass = got == want;
        let detail = if pass {
            format!("{want:?}")
        } else {
            format!("got {got:?}, want {want:?}")
        };
        self.push(name, pass, detail);
    }
}

fn load(dir: &Path, name: &str) -> Result<PolyMatrix> {
    let path = dir.join(name);
    let text = fs::read_to_string(&path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::matrix_from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

fn wp(weights: &[u64]) -> WPoly {
    WPoly::from_weights(weights.iter().copied())
}

/// Delay matrix literal; `-1` encodes infinity.
fn delay_grid(rows: &[&[i64]]) -> Vec<Vec<InfInt>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&v| {
                    if v < 0 {
                        InfInt::Inf
                    } else {
                        InfInt::Finite(v as u64)
                    }
                })
                .collect()
        })
        .collect()
}

fn wam_grid(rec: &mut Rec, name: &str, lam: &Wam, want: &[Vec<WPoly>]) {
    let mut bad = Vec::new();
    for (x, row) in want.iter().enumerate() {
        for (y, w) in row.iter().enumerate() {
            if lam.entry(x, y) != w {
                bad.push(format!("({x},{y}): got {}, want {}", lam.entry(x, y), w));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("all {} entries match", want.len() * want.len())
    } else {
        bad.join("; ")
    };
    rec.push(name, bad.is_empty(), detail);
}

fn all_equal(a: &DistanceProfile, b: &DistanceProfile) -> bool {
    a.j_min == b.j_min && a.values == b.values
}

fn exa3_1(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "exa3_1_g.json")?;
    let gbar = load(data, "exa3_1_gbar.json")?;
    let lam = wam(&g, b)?;
    let lam_bar = wam(&gbar, b)?;

    wam_grid(
        rec,
        "wam(G) = ((1, W^2), (W^3, W^3))",
        &lam,
        &[vec![wp(&[0]), wp(&[2])], vec![wp(&[3]), wp(&[3])]],
    );
    wam_grid(
        rec,
        "wam(G') = ((1, W^4), (W, W^3))",
        &lam_bar,
        &[vec![wp(&[0]), wp(&[4])], vec![wp(&[1]), wp(&[3])]],
    );
    rec.claim("WAM invariants differ", lam.equivalent(&lam_bar, b)?.is_none());

    let c = ConvCode::from_encoder(&g)?;
    let cbar = ConvCode::from_encoder(&gbar)?;
    let dc = distances::column_distances(&c, 6, b)?;
    let dc_bar = distances::column_distances(&cbar, 6, b)?;
    rec.eq("d^c_0 of C", dc.value(0), Some(InfInt::Finite(2)));
    rec.eq("d^c_0 of C'", dc_bar.value(0), Some(InfInt::Finite(4)));
    let five = Some(InfInt::Finite(5));
    rec.claim(
        "d^c_j = 5 for 1 <= j <= 6 in both codes",
        (1..=6).all(|j| dc.value(j) == five && dc_bar.value(j) == five),
    );
    rec.eq("free distance of C", distances::free_distance(&c, b)?, 5);
    rec.eq("free distance of C'", distances::free_distance(&cbar, b)?, 5);

    // Families preserved by the strong isometry between the codes.
    rec.claim(
        "weight enumerators agree to order 8",
        distances::omega_series(&c, 8, b)? == distances::omega_series(&cbar, 8, b)?,
    );
    rec.claim(
        "extended row distances agree (j <= 8)",
        all_equal(
            &distances::extended_row_distances(&c, 8, b)?,
            &distances::extended_row_distances(&cbar, 8, b)?,
        ),
    );
    rec.claim(
        "active burst distances agree (j <= 6)",
        all_equal(
            &distances::active_distances(&c, DistanceFamily::ActiveBurst, 6, b)?,
            &distances::active_distances(&cbar, DistanceFamily::ActiveBurst, 6, b)?,
        ),
    );
    rec.claim(
        "active row distances agree (j <= 6)",
        all_equal(
            &distances::active_row_distances(&g, 6, b)?,
            &distances::active_row_distances(&gbar, 6, b)?,
        ),
    );

    // Delay matrices of the powers of the reduced WAMs.
    let tl = lam.tilde();
    let tl_bar = lam_bar.tilde();
    rec.eq(
        "M_1",
        tl.delay_matrix(),
        delay_grid(&[&[-1, 2], &[3, 3]]),
    );
    rec.eq(
        "M'_1",
        tl_bar.delay_matrix(),
        delay_grid(&[&[-1, 4], &[1, 3]]),
    );
    let mut closed_ok = true;
    let mut closed_detail = String::from("exact");
    for j in 2..=10i64 {
        let (want, want_bar) = if j % 2 == 0 {
            let h = 5 * j / 2;
            (
                delay_grid(&[&[h, h], &[h + 1, h]]),
                delay_grid(&[&[h, h + 2], &[h - 1, h]]),
            )
        } else {
            let h = 5 * (j - 1) / 2;
            (
                delay_grid(&[&[h + 3, h + 2], &[h + 3, h + 3]]),
                delay_grid(&[&[h + 3, h + 4], &[h + 1, h + 3]]),
            )
        };
        if tl.pow(j as usize).delay_matrix() != want {
            closed_ok = false;
            closed_detail = format!("M_{j} deviates from its closed form");
            break;
        }
        if tl_bar.pow(j as usize).delay_matrix() != want_bar {
            closed_ok = false;
            closed_detail = format!("M'_{j} deviates from its closed form");
            break;
        }
    }
    rec.push(
        "closed forms of M_j and M'_j for 2 <= j <= 10",
        closed_ok,
        closed_detail,
    );

    // The families the codes do not share.
    let ac = distances::active_distances(&c, DistanceFamily::ActiveColumn, 6, b)?;
    let ac_bar = distances::active_distances(&cbar, DistanceFamily::ActiveColumn, 6, b)?;
    rec.claim(
        "active column distances differ at every even j <= 6",
        (0..=6).step_by(2).all(|j| ac.value(j) != ac_bar.value(j)),
    );
    let seg = distances::active_distances(&c, DistanceFamily::ActiveSegment, 6, b)?;
    let seg_bar = distances::active_distances(&cbar, DistanceFamily::ActiveSegment, 6, b)?;
    rec.claim(
        "active segment distances differ at every j <= 6",
        (0..=6).all(|j| seg.value(j) != seg_bar.value(j)),
    );
    Ok(())
}

fn exa3_2(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "exa3_2_g.json")?;
    let gp = load(data, "exa3_2_gprime.json")?;
    let lam = wam(&g, b)?;
    let lam_p = wam(&gp, b)?;

    wam_grid(
        rec,
        "wam(G) matches its published 4x4 matrix",
        &lam,
        &[
            vec![wp(&[0, 1]), wp(&[3, 4]), wp(&[5, 6]), wp(&[2, 3])],
            vec![wp(&[1, 2]), wp(&[4, 5]), wp(&[4, 5]), wp(&[1, 2])],
            vec![wp(&[1, 2]), wp(&[4, 5]), wp(&[6, 7]), wp(&[3, 4])],
            vec![wp(&[2, 3]), wp(&[5, 6]), wp(&[5, 6]), wp(&[2, 3])],
        ],
    );
    wam_grid(
        rec,
        "wam(G') matches its published 4x4 matrix",
        &lam_p,
        &[
            vec![wp(&[0, 1]), wp(&[2, 3]), wp(&[5, 6]), wp(&[3, 4])],
            vec![wp(&[2, 3]), wp(&[4, 5]), wp(&[5, 6]), wp(&[3, 4])],
            vec![wp(&[1, 2]), wp(&[3, 4]), wp(&[6, 7]), wp(&[4, 5])],
            vec![wp(&[1, 2]), wp(&[3, 4]), wp(&[4, 5]), wp(&[2, 3])],
        ],
    );
    rec.claim("WAM invariants differ", lam.equivalent(&lam_p, b)?.is_none());
    rec.claim("encoder matrices are zME", matrix_zme(&g, &gp)?.is_some());

    let c = ConvCode::from_encoder(&g)?;
    let cp = ConvCode::from_encoder(&gp)?;
    rec.claim(
        "codes are strongly isometric",
        code_strongly_isometric(&c, &cp, b)?.is_some(),
    );
    rec.claim("codes are not ME", code_me(&c, &cp, b)?.is_none());

    let one = Some(InfInt::Finite(1));
    let dc = distances::column_distances(&c, 6, b)?;
    let dc_p = distances::column_distances(&cp, 6, b)?;
    rec.claim(
        "all column distances equal 1 in both codes",
        (0..=6).all(|j| dc.value(j) == one && dc_p.value(j) == one),
    );
    rec.eq("free distance of C", distances::free_distance(&c, b)?, 1);
    rec.eq("free distance of C'", distances::free_distance(&cp, b)?, 1);

    rec.claim(
        "weight enumerators agree to order 8",
        distances::omega_series(&c, 8, b)? == distances::omega_series(&cp, 8, b)?,
    );
    rec.claim(
        "extended row distances agree (j <= 8)",
        all_equal(
            &distances::extended_row_distances(&c, 8, b)?,
            &distances::extended_row_distances(&cp, 8, b)?,
        ),
    );
    rec.claim(
        "active burst distances agree (j <= 6)",
        all_equal(
            &distances::active_distances(&c, DistanceFamily::ActiveBurst, 6, b)?,
            &distances::active_distances(&cp, DistanceFamily::ActiveBurst, 6, b)?,
        ),
    );
    rec.claim(
        "active row distances agree (j <= 6)",
        all_equal(
            &distances::active_row_distances(&g, 6, b)?,
            &distances::active_row_distances(&gp, 6, b)?,
        ),
    );
    Ok(())
}

fn exa3_3(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "exa3_3_g.json")?;
    let gbar = load(data, "exa3_3_gbar.json")?;
    let lam = wam(&g, b)?;
    let lam_bar = wam(&gbar, b)?;

    wam_grid(
        rec,
        "wam(G) matches its published 4x4 matrix",
        &lam,
        &[
            vec![wp(&[0, 6]), wp(&[3, 5]), wp(&[3, 5]), wp(&[2, 4])],
            vec![wp(&[1, 7]), wp(&[4, 6]), wp(&[4, 6]), wp(&[3, 5])],
            vec![wp(&[2, 4]), wp(&[3, 5]), wp(&[3, 5]), wp(&[2, 4])],
            vec![wp(&[3, 5]), wp(&[4, 6]), wp(&[4, 6]), wp(&[3, 5])],
        ],
    );
    wam_grid(
        rec,
        "wam(G') matches its published 4x4 matrix",
        &lam_bar,
        &[
            vec![wp(&[0, 6]), wp(&[3, 5]), wp(&[2, 4]), wp(&[3, 5])],
            vec![wp(&[1, 7]), wp(&[4, 6]), wp(&[3, 5]), wp(&[4, 6])],
            vec![wp(&[3, 5]), wp(&[4, 6]), wp(&[3, 5]), wp(&[4, 6])],
            vec![wp(&[2, 4]), wp(&[3, 5]), wp(&[2, 4]), wp(&[3, 5])],
        ],
    );

    let t = FMatrix::from_rows(g.field(), &[vec![1, 1], vec![0, 1]])?;
    rec.claim(
        "T = ((1,1),(0,1)) carries wam(G') onto wam(G)",
        lam_bar.is_witness(&lam, &t),
    );
    rec.claim(
        "witness search succeeds in both directions",
        lam_bar.equivalent(&lam, b)?.is_some() && lam.equivalent(&lam_bar, b)?.is_some(),
    );

    let c = ConvCode::from_encoder(&g)?;
    let cbar = ConvCode::from_encoder(&gbar)?;
    rec.claim(
        "codes are strongly isometric",
        code_strongly_isometric(&c, &cbar, b)?.is_some(),
    );
    rec.claim("codes are not ME", code_me(&c, &cbar, b)?.is_none());
    Ok(())
}

fn exa3_4(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "exa3_4_g.json")?;
    let gbar = load(data, "exa3_4_gbar.json")?;
    let gp = load(data, "exa3_4_gprime.json")?;
    let g1 = load(data, "exa3_4_g1.json")?;
    let g2 = load(data, "exa3_4_g2.json")?;
    let field = g.field().clone();

    rec.claim("G is basic and reduced", g.is_basic() && g.is_reduced()?);
    rec.claim("G' is basic but not reduced", gbar.is_basic() && !gbar.is_reduced()?);

    let c = ConvCode::from_encoder(&g)?;
    let cbar = ConvCode::from_encoder(&gbar)?;
    rec.eq("degrees", (c.degree(), cbar.degree()), (4, 4));
    rec.eq(
        "Forney indices",
        (c.forney_indices().to_vec(), cbar.forney_indices().to_vec()),
        (vec![2, 2], vec![2, 2]),
    );
    rec.claim(
        "G'' is a reduced encoder of the second code",
        gp.is_reduced()? && ConvCode::from_encoder(&gp)? == cbar,
    );
    let u1 = PolyMatrix::parse(&field, "1, 0; 1, 1")?;
    let u2 = PolyMatrix::parse(&field, "1, 1; 1, 0")?;
    rec.claim(
        "G~1 = ((1,0),(1,1)) G'' and G~2 = ((1,1),(1,0)) G''",
        u1.mul(&gp) == g1 && u2.mul(&gp) == g2,
    );
    rec.claim(
        "G~1 and G~2 generate the second code",
        ConvCode::from_encoder(&g1)? == cbar && ConvCode::from_encoder(&g2)? == cbar,
    );

    rec.claim("encoder matrices are zME", matrix_zme(&g, &gbar)?.is_some());
    rec.claim(
        "uG -> uG' preserves weights for all deg(u) <= nu",
        paired_isometry(&g, &gbar, b)?,
    );

    let u = PolyVector::parse(&field, "1+z, 0")?;
    rec.eq("wt(uG) for u = (1+z, 0)", g.left_mul_vec(&u)?.weight(), 4);
    rec.eq("wt(u G~1)", g1.left_mul_vec(&u)?.weight(), 6);
    rec.eq("wt(u G~2)", g2.left_mul_vec(&u)?.weight(), 8);

    rec.claim("codes are isometric", code_isometric(&c, &cbar, b)?.is_some());
    rec.claim(
        "codes are not strongly isometric",
        code_strongly_isometric(&c, &cbar, b)?.is_none(),
    );
    rec.claim("codes are not ME", code_me(&c, &cbar, b)?.is_none());
    Ok(())
}

fn exa4_2(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "exa4_2_g.json")?;
    let gbar = load(data, "exa4_2_gbar.json")?;
    let lam = wam(&g, b)?;
    let lam_bar = wam(&gbar, b)?;
    rec.claim("the encoders share one WAM entrywise", lam == lam_bar);
    rec.claim("WAM invariants agree", lam.equivalent(&lam_bar, b)?.is_some());

    let c = ConvCode::from_encoder(&g)?;
    let cbar = ConvCode::from_encoder(&gbar)?;
    rec.claim("codes are not isometric", code_isometric(&c, &cbar, b)?.is_none());
    rec.claim(
        "codes are not strongly isometric",
        code_strongly_isometric(&c, &cbar, b)?.is_none(),
    );
    rec.claim("codes are not ME", code_me(&c, &cbar, b)?.is_none());
    Ok(())
}

fn exa4_3_prime(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "exa4_3p_g.json")?;
    let gbar = load(data, "exa4_3p_gbar.json")?;
    let h = load(data, "exa4_3p_h.json")?;
    let hbar = load(data, "exa4_3p_hbar.json")?;
    let ghat = load(data, "exa4_3p_ghat.json")?;

    let c = ConvCode::from_encoder(&g)?;
    let cbar = ConvCode::from_encoder(&gbar)?;
    rec.claim(
        "primal codes are strongly isometric",
        code_strongly_isometric(&c, &cbar, b)?.is_some(),
    );
    rec.claim("primal codes are not ME", code_me(&c, &cbar, b)?.is_none());

    let cd = c.dual()?;
    let cbar_d = cbar.dual()?;
    rec.claim("dual of C is im H", cd == ConvCode::from_encoder(&h)?);
    rec.claim("dual of C' is im H'", cbar_d == ConvCode::from_encoder(&hbar)?);

    let chat = ConvCode::from_encoder(&ghat)?;
    rec.claim(
        "delay-normalizing H' yields the comparison code",
        ConvCode::from_encoder(&hbar.normalize_col_delays())? == chat,
    );
    rec.claim(
        "dual of C and the comparison code are not ME",
        code_me(&cd, &chat, b)?.is_none(),
    );
    rec.claim(
        "dual codes are not isometric",
        code_isometric(&cd, &cbar_d, b)?.is_none(),
    );
    rec.claim(
        "dual codes are not strongly isometric",
        code_strongly_isometric(&cd, &cbar_d, b)?.is_none(),
    );
    Ok(())
}

fn rem2_3(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "rem2_3_g.json")?;
    let gp = load(data, "rem2_3_gprime.json")?;
    rec.claim(
        "both encoders generate one code",
        ConvCode::from_encoder(&g)? == ConvCode::from_encoder(&gp)?,
    );
    let p = distances::active_row_distances(&g, 1, b)?;
    let pp = distances::active_row_distances(&gp, 1, b)?;
    rec.eq("a^r_1 of G", p.value(1), Some(InfInt::Finite(3)));
    rec.eq("a^r_1 of G'", pp.value(1), Some(InfInt::Finite(2)));
    Ok(())
}

fn appendix(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "exa3_2_g.json")?;
    let gp = load(data, "exa3_2_gprime.json")?;
    let tl = wam(&g, b)?.tilde();
    let tl_p = wam(&gp, b)?.tilde();

    rec.eq(
        "M_1",
        tl.delay_matrix(),
        delay_grid(&[
            &[-1, 3, 5, 2],
            &[1, 4, 4, 1],
            &[1, 4, 6, 3],
            &[2, 5, 5, 2],
        ]),
    );
    rec.eq(
        "M_2",
        tl.pow(2).delay_matrix(),
        delay_grid(&[
            &[4, 7, 7, 4],
            &[3, 4, 6, 3],
            &[5, 4, 6, 3],
            &[4, 5, 7, 4],
        ]),
    );
    rec.eq(
        "M_3",
        tl.pow(3).delay_matrix(),
        delay_grid(&[
            &[6, 7, 9, 6],
            &[5, 6, 8, 5],
            &[5, 8, 8, 5],
            &[6, 7, 9, 6],
        ]),
    );
    rec.eq(
        "M'_1",
        tl_p.delay_matrix(),
        delay_grid(&[
            &[-1, 2, 5, 3],
            &[2, 4, 5, 3],
            &[1, 3, 6, 4],
            &[1, 3, 4, 2],
        ]),
    );
    rec.eq(
        "M'_2",
        tl_p.pow(2).delay_matrix(),
        delay_grid(&[
            &[4, 6, 7, 5],
            &[4, 4, 7, 5],
            &[5, 3, 6, 4],
            &[3, 3, 6, 4],
        ]),
    );
    rec.eq(
        "M'_3",
        tl_p.pow(3).delay_matrix(),
        delay_grid(&[
            &[6, 6, 9, 7],
            &[6, 6, 9, 7],
            &[5, 7, 8, 6],
            &[5, 5, 8, 6],
        ]),
    );

    let mut closed_ok = true;
    let mut closed_detail = String::from("exact");
    for j in 4..=6i64 {
        let want = delay_grid(&[
            &[2 * j, 2 * j + 1, 2 * j + 3, 2 * j],
            &[2 * j - 1, 2 * j, 2 * j + 2, 2 * j - 1],
            &[2 * j - 1, 2 * j, 2 * j + 2, 2 * j - 1],
            &[2 * j, 2 * j + 1, 2 * j + 3, 2 * j],
        ]);
        let want_p = delay_grid(&[
            &[2 * j, 2 * j, 2 * j + 3, 2 * j + 1],
            &[2 * j, 2 * j, 2 * j + 3, 2 * j + 1],
            &[2 * j - 1, 2 * j - 1, 2 * j + 2, 2 * j],
            &[2 * j - 1, 2 * j - 1, 2 * j + 2, 2 * j],
        ]);
        if tl.pow(j as usize).delay_matrix() != want {
            closed_ok = false;
            closed_detail = format!("M_{j} deviates from its closed form");
            break;
        }
        if tl_p.pow(j as usize).delay_matrix() != want_p {
            closed_ok = false;
            closed_detail = format!("M'_{j} deviates from its closed form");
            break;
        }
    }
    rec.push(
        "closed forms of M_j and M'_j for 4 <= j <= 6",
        closed_ok,
        closed_detail,
    );

    let c = ConvCode::from_encoder(&g)?;
    let cp = ConvCode::from_encoder(&gp)?;
    let ac = distances::active_distances(&c, DistanceFamily::ActiveColumn, 8, b)?;
    let ac_p = distances::active_distances(&cp, DistanceFamily::ActiveColumn, 8, b)?;
    rec.claim(
        "a^c_j = 2(j+1) for 0 <= j <= 8 in both codes",
        (0..=8).all(|j| {
            let want = Some(InfInt::Finite(2 * (j as u64 + 1)));
            ac.value(j) == want && ac_p.value(j) == want
        }),
    );
    let seg = distances::active_distances(&c, DistanceFamily::ActiveSegment, 8, b)?;
    let seg_p = distances::active_distances(&cp, DistanceFamily::ActiveSegment, 8, b)?;
    rec.claim(
        "a^s_j = 2j+1 for 0 <= j <= 8 in both codes",
        (0..=8).all(|j| {
            let want = Some(InfInt::Finite(2 * j as u64 + 1));
            seg.value(j) == want && seg_p.value(j) == want
        }),
    );
    Ok(())
}

fn gf4_5_1(rec: &mut Rec, data: &Path, b: &Budget) -> Result<()> {
    let g = load(data, "gf4_5_1_g.json")?;
    let gbar = load(data, "gf4_5_1_gbar.json")?;
    let f = g.field().clone();
    rec.claim("both matrices are basic", g.is_basic() && gbar.is_basic());

    // The time-dependent coordinate maps: identity, the square of the cyclic
    // shift, and a^2 times the shift, repeating with period three.
    let shifts = [
        FMatrix::identity(&f, 3),
        FMatrix::from_rows(&f, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])?,
        FMatrix::from_rows(&f, &[vec![0, 3, 0], vec![0, 0, 3], vec![3, 0, 0]])?,
    ];
    let phi = |v: &PolyVector| -> Result<PolyVector> {
        let mut polys = vec![Poly::zero(&f); 3];
        if let Some(deg) = v.deg() {
            for t in 0..=deg {
                let image = shifts[t % 3].row_mul(&v.coeff_vector(t));
                for (j, &val) in image.iter().enumerate() {
                    if val != 0 {
                        let c = f.element(val as u64)?;
                        polys[j] = polys[j].add(&Poly::monomial(c, t));
                    }
                }
            }
        }
        PolyVector::from_polys(&f, polys)
    };

    let grow = g.row(0);
    let gbar_row = gbar.row(0);
    let alpha_sq = Poly::constant(f.element(3)?);
    let mut ok = true;
    let mut detail = String::from("verified for t = 0..8");
    for t in 0..=8usize {
        let got = phi(&grow.mul_z_pow(t))?;
        let want = if t % 3 == 2 {
            gbar_row.mul_z_pow(t).scale_poly(&alpha_sq)
        } else {
            gbar_row.mul_z_pow(t)
        };
        if got != want {
            ok = false;
            detail = format!("fails at t = {t}");
            break;
        }
    }
    rec.push(
        "phi(z^t G) = a^2 z^t G' for t in 3Z+2 and z^t G' otherwise",
        ok,
        detail,
    );

    let c = ConvCode::from_encoder(&g)?;
    let cbar = ConvCode::from_encoder(&gbar)?;
    rec.claim(
        "weight enumerators agree to order 6",
        distances::omega_series(&c, 6, b)? == distances::omega_series(&cbar, 6, b)?,
    );
    rec.claim("encoder matrices are not zME", matrix_zme(&g, &gbar)?.is_none());
    rec.claim("codes are not isometric", code_isometric(&c, &cbar, b)?.is_none());
    rec.claim("codes are not ME", code_me(&c, &cbar, b)?.is_none());
    rec.claim(
        "WAM invariants differ",
        wam(&g, b)?.equivalent(&wam(&gbar, b)?, b)?.is_none(),
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn example_names_are_unique() {
        let mut names: Vec<&str> = EXAMPLES.to_vec();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), EXAMPLES.len());
    }

    #[test]
    fn unknown_example_is_an_argument_error() {
        let err = run("nope", std::path::Path::new("."), &Budget::default()).unwrap_err();
        assert!(matches!(err, Error::InvalidArgument(_)));
    }
}
