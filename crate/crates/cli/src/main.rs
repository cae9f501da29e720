//! `convcode`: exact analysis of convolutional codes over GF(q) from the
//! command line. Encoders are read from JSON matrix files; every subcommand
//! offers a deterministic `--json` report next to its text output.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use convcode::distances::{self, DistanceFamily};
use convcode::equivalence::{code_isometric, code_me, code_strongly_isometric, matrix_zme};
use convcode::fmat::FMatrix;
use convcode::io;
use convcode::pmat::PolyMatrix;
use convcode::realization::ccf;
use convcode::wam::wam;
use convcode::{Budget, ConvCode, Error, Result, Wam};

use convcode_cli::report::{
    sha256_hex, state_labels, wam_entries, BudgetReport, InputReport, MatrixReport,
    ProfileReport,
};
use convcode_cli::suite;

#[derive(Parser)]
#[command(
    name = "convcode",
    version,
    about = "Exact analysis of convolutional codes over GF(q)"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Uniform budget for all guarded searches (overrides CONVCODE_BUDGET).
    #[arg(long, global = true)]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Code parameters of an encoder file.
    Analyze { file: PathBuf },
    /// Controller canonical form (A, B, C, D) of a reduced encoder.
    Ccf { file: PathBuf },
    /// Weight adjacency matrix of a reduced encoder.
    Wam {
        file: PathBuf,
        /// Select a reduced variant of the matrix.
        #[arg(long, value_enum)]
        reduced: Option<ReducedKind>,
    },
    /// Weight enumerator of the code.
    Wenum {
        file: PathBuf,
        /// Truncation order.
        #[arg(long, default_value_t = 8)]
        lmax: usize,
    },
    /// One distance-parameter profile of the code.
    Distances {
        file: PathBuf,
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, default_value_t = 8)]
        jmax: usize,
    },
    /// Reduced encoder of the dual code.
    Dual { file: PathBuf },
    /// Equivalence and isometry decisions for a pair of encoder files.
    Equiv {
        #[arg(long, value_enum)]
        mode: Mode,
        a: PathBuf,
        b: PathBuf,
    },
    /// Run the built-in example suite.
    Examples {
        /// List the example names and exit.
        #[arg(long)]
        list: bool,
        /// Run a single named example.
        #[arg(long)]
        filter: Option<String>,
        /// Directory holding the example matrices (default: ./data).
        #[arg(long)]
        data: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ReducedKind {
    Tilde,
    Hat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Column,
    ExtendedRow,
    ActiveColumn,
    ActiveRow,
    ActiveSegment,
    ActiveBurst,
}

impl From<Family> for DistanceFamily {
    fn from(f: Family) -> DistanceFamily {
        match f {
            Family::Column => DistanceFamily::Column,
            Family::ExtendedRow => DistanceFamily::ExtendedRow,
            Family::ActiveColumn => DistanceFamily::ActiveColumn,
            Family::ActiveRow => DistanceFamily::ActiveRow,
            Family::ActiveSegment => DistanceFamily::ActiveSegment,
            Family::ActiveBurst => DistanceFamily::ActiveBurst,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Me,
    Zme,
    Iso,
    Strong,
}

fn main() -> ExitCode {
    // Die quietly when the consumer of a pipe goes away (e.g. `| head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 = parse/usage, 3 = precondition, 4 = budget.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidArgument(_) => 2,
        Error::BudgetExceeded { .. } => 4,
        _ => 3,
    }
}

fn resolve_budget(flag: Option<u64>) -> Result<Budget> {
    if let Some(n) = flag {
        return Ok(Budget::uniform(n));
    }
    match std::env::var("CONVCODE_BUDGET") {
        Ok(raw) => {
            let n: u64 = raw.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("CONVCODE_BUDGET must be an integer, got {raw:?}"))
            })?;
            Ok(Budget::uniform(n))
        }
        Err(_) => Ok(Budget::default()),
    }
}

fn read_input(path: &Path) -> Result<(PolyMatrix, InputReport)> {
    let bytes =
        fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Parse(format!("{}: not valid UTF-8", path.display())))?;
    let matrix = io::matrix_from_json(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })?;
    let input = InputReport {
        path: path.display().to_string(),
        sha256: sha256_hex(&bytes),
    };
    Ok((matrix, input))
}

fn print_json<T: Serialize>(report: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(report).expect("report serialization")
    );
}

fn field_name(m: &PolyMatrix) -> String {
    format!("GF({})", m.field().q())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let budget = resolve_budget(cli.budget)?;
    match cli.command {
        Command::Analyze { file } => cmd_analyze(&file, &budget, cli.json)?,
        Command::Ccf { file } => cmd_ccf(&file, &budget, cli.json)?,
        Command::Wam { file, reduced } => cmd_wam(&file, reduced, &budget, cli.json)?,
        Command::Wenum { file, lmax } => cmd_wenum(&file, lmax, &budget, cli.json)?,
        Command::Distances { file, family, jmax } => {
            cmd_distances(&file, family, jmax, &budget, cli.json)?
        }
        Command::Dual { file } => cmd_dual(&file, &budget, cli.json)?,
        Command::Equiv { mode, a, b } => cmd_equiv(mode, &a, &b, &budget, cli.json)?,
        Command::Examples { list, filter, data } => {
            return cmd_examples(list, filter, data, &budget, cli.json)
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct AnalyzeReport {
    command: &'static str,
    inputs: Vec<InputReport>,
    budget: BudgetReport,
    field: String,
    n: usize,
    k: usize,
    basic: bool,
    reduced: bool,
    degree: usize,
    forney_indices: Vec<usize>,
    memory: usize,
    free_distance: u64,
    reduced_encoder: MatrixReport,
}

fn cmd_analyze(file: &Path, budget: &Budget, json: bool) -> Result<()> {
    let (g, input) = read_input(file)?;
    let reduced = g.is_reduced()?;
    let code = ConvCode::from_encoder(&g)?;
    let report = AnalyzeReport {
        command: "analyze",
        inputs: vec![input],
        budget: budget.into(),
        field: field_name(&g),
        n: code.n(),
        k: code.k(),
        basic: true,
        reduced,
        degree: code.degree(),
        forney_indices: code.forney_indices().to_vec(),
        memory: code.memory(),
        free_distance: distances::free_distance(&code, budget)?,
        reduced_encoder: MatrixReport::new(code.reduced_encoder()),
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    println!("[{}, {}] code over {}", report.n, report.k, report.field);
    println!("basic: yes");
    println!("reduced: {}", if report.reduced { "yes" } else { "no" });
    println!("degree: {}", report.degree);
    println!(
        "Forney indices: {}",
        report
            .forney_indices
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    println!("memory: {}", report.memory);
    println!("free distance: {}", report.free_distance);
    if !report.reduced {
        print_labeled_text("reduced encoder: ", &report.reduced_encoder.text);
    }
    Ok(())
}

fn fmatrix_rows(m: &FMatrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j) as u64).collect())
        .collect()
}

fn print_labeled_text(label: &str, text: &str) {
    let mut lines = text.lines();
    if let Some(first) = lines.next() {
        println!("{label}{first}");
        let pad = " ".repeat(label.len());
        for line in lines {
            println!("{pad}{line}");
        }
    }
}

fn print_labeled(label: &str, m: &FMatrix) {
    print_labeled_text(&format!("{label} = "), m.to_string().trim_end());
}

#[derive(Serialize)]
struct CcfReport {
    command: &'static str,
    inputs: Vec<InputReport>,
    budget: BudgetReport,
    field: String,
    delta: usize,
    block_sizes: Vec<usize>,
    a: Vec<Vec<u64>>,
    b: Vec<Vec<u64>>,
    c: Vec<Vec<u64>>,
    d: Vec<Vec<u64>>,
}

fn cmd_ccf(file: &Path, budget: &Budget, json: bool) -> Result<()> {
    let (g, input) = read_input(file)?;
    let r = ccf(&g)?;
    let report = CcfReport {
        command: "ccf",
        inputs: vec![input],
        budget: budget.into(),
        field: field_name(&g),
        delta: r.delta(),
        block_sizes: r.block_sizes().to_vec(),
        a: fmatrix_rows(r.a()),
        b: fmatrix_rows(r.b()),
        c: fmatrix_rows(r.c()),
        d: fmatrix_rows(r.d()),
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    println!("delta: {}", report.delta);
    println!(
        "row-degree blocks: {}",
        report
            .block_sizes
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    print_labeled("A", r.a());
    print_labeled("B", r.b());
    print_labeled("C", r.c());
    print_labeled("D", r.d());
    Ok(())
}

#[derive(Serialize)]
struct WamReport {
    command: &'static str,
    inputs: Vec<InputReport>,
    budget: BudgetReport,
    field: String,
    variant: &'static str,
    states: Vec<String>,
    entries: Vec<Vec<String>>,
}

fn cmd_wam(
    file: &Path,
    reduced: Option<ReducedKind>,
    budget: &Budget,
    json: bool,
) -> Result<()> {
    let (g, input) = read_input(file)?;
    let full = wam(&g, budget)?;
    let (variant, lambda): (&'static str, Wam) = match reduced {
        None => ("full", full),
        Some(ReducedKind::Tilde) => ("tilde", full.tilde()),
        Some(ReducedKind::Hat) => ("hat", full.hat()?),
    };
    let report = WamReport {
        command: "wam",
        inputs: vec![input],
        budget: budget.into(),
        field: field_name(&g),
        variant,
        states: state_labels(&lambda),
        entries: wam_entries(&lambda),
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    println!("variant: {}", report.variant);
    let width = report
        .entries
        .iter()
        .flatten()
        .map(|s| s.len())
        .max()
        .unwrap_or(1);
    for (label, row) in report.states.iter().zip(&report.entries) {
        let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        println!("{label}  [ {} ]", cells.join("  "));
    }
    Ok(())
}

#[derive(Serialize)]
struct WenumReport {
    command: &'static str,
    inputs: Vec<InputReport>,
    budget: BudgetReport,
    field: String,
    omegas: Vec<OmegaReport>,
}

#[derive(Serialize)]
struct OmegaReport {
    l: usize,
    enumerator: String,
}

fn cmd_wenum(file: &Path, lmax: usize, budget: &Budget, json: bool) -> Result<()> {
    let (g, input) = read_input(file)?;
    let code = ConvCode::from_encoder(&g)?;
    let series = distances::omega_series(&code, lmax, budget)?;
    let omegas = (1..=series.order())
        .map(|l| OmegaReport {
            l,
            enumerator: series.omega(l).to_string(),
        })
        .collect();
    let report = WenumReport {
        command: "wenum",
        inputs: vec![input],
        budget: budget.into(),
        field: field_name(&g),
        omegas,
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    for o in &report.omegas {
        println!("Omega_{} = {}", o.l, o.enumerator);
    }
    Ok(())
}

#[derive(Serialize)]
struct DistancesReport {
    command: &'static str,
    inputs: Vec<InputReport>,
    budget: BudgetReport,
    field: String,
    profile: ProfileReport,
}

fn cmd_distances(
    file: &Path,
    family: Family,
    jmax: usize,
    budget: &Budget,
    json: bool,
) -> Result<()> {
    let (g, input) = read_input(file)?;
    let family = DistanceFamily::from(family);
    let profile = match family {
        DistanceFamily::Column => {
            let code = ConvCode::from_encoder(&g)?;
            distances::column_distances(&code, jmax, budget)?
        }
        DistanceFamily::ExtendedRow => {
            let code = ConvCode::from_encoder(&g)?;
            distances::extended_row_distances(&code, jmax, budget)?
        }
        DistanceFamily::ActiveRow => distances::active_row_distances(&g, jmax, budget)?,
        active => {
            let code = ConvCode::from_encoder(&g)?;
            distances::active_distances(&code, active, jmax, budget)?
        }
    };
    let report = DistancesReport {
        command: "distances",
        inputs: vec![input],
        budget: budget.into(),
        field: field_name(&g),
        profile: ProfileReport::new(&profile),
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    println!("family: {}", report.profile.family);
    for (i, v) in profile.values.iter().enumerate() {
        println!("j = {}: {}", profile.j_min + i, v);
    }
    Ok(())
}

#[derive(Serialize)]
struct DualReport {
    command: &'static str,
    inputs: Vec<InputReport>,
    budget: BudgetReport,
    field: String,
    n: usize,
    k: usize,
    degree: usize,
    forney_indices: Vec<usize>,
    reduced_encoder: MatrixReport,
}

fn cmd_dual(file: &Path, budget: &Budget, json: bool) -> Result<()> {
    let (g, input) = read_input(file)?;
    let code = ConvCode::from_encoder(&g)?;
    let dual = code.dual()?;
    let report = DualReport {
        command: "dual",
        inputs: vec![input],
        budget: budget.into(),
        field: field_name(&g),
        n: dual.n(),
        k: dual.k(),
        degree: dual.degree(),
        forney_indices: dual.forney_indices().to_vec(),
        reduced_encoder: MatrixReport::new(dual.reduced_encoder()),
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    println!("[{}, {}] dual code over {}", report.n, report.k, report.field);
    println!("degree: {}", report.degree);
    print_labeled_text("reduced encoder: ", &report.reduced_encoder.text);
    Ok(())
}

#[derive(Serialize)]
struct EquivReport {
    command: &'static str,
    mode: &'static str,
    inputs: Vec<InputReport>,
    budget: BudgetReport,
    equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Default, Serialize)]
struct WitnessReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    perm: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scalars: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exponents: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    encoder: Option<MatrixReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    partner: Option<MatrixReport>,
}

fn cmd_equiv(mode: Mode, a: &Path, b: &Path, budget: &Budget, json: bool) -> Result<()> {
    let (ga, input_a) = read_input(a)?;
    let (gb, input_b) = read_input(b)?;

    let (mode_name, witness, reason): (&'static str, Option<WitnessReport>, Option<String>) =
        match mode {
            Mode::Zme => match matrix_zme(&ga, &gb)? {
                Some(m) => (
                    "zme",
                    Some(WitnessReport {
                        perm: Some(m.source().to_vec()),
                        scalars: Some(m.scale().iter().map(|c| c.value()).collect()),
                        exponents: Some(m.shift().to_vec()),
                        ..WitnessReport::default()
                    }),
                    None,
                ),
                None => (
                    "zme",
                    None,
                    Some("columns do not match up to z-monomial scaling".to_string()),
                ),
            },
            Mode::Me => {
                let ca = ConvCode::from_encoder(&ga)?;
                let cb = ConvCode::from_encoder(&gb)?;
                match code_me(&ca, &cb, budget)? {
                    Some((u, m)) => (
                        "me",
                        Some(WitnessReport {
                            u: Some(MatrixReport::new(&u)),
                            perm: Some(m.source().to_vec()),
                            scalars: Some(m.scale().iter().map(|c| c.value()).collect()),
                            ..WitnessReport::default()
                        }),
                        None,
                    ),
                    None => ("me", None, Some(no_match_reason(&ca, &cb, "monomially"))),
                }
            }
            Mode::Iso => {
                let ca = ConvCode::from_encoder(&ga)?;
                let cb = ConvCode::from_encoder(&gb)?;
                match code_isometric(&ca, &cb, budget)? {
                    Some((u, m)) => (
                        "iso",
                        Some(WitnessReport {
                            u: Some(MatrixReport::new(&u)),
                            perm: Some(m.source().to_vec()),
                            scalars: Some(m.scale().iter().map(|c| c.value()).collect()),
                            exponents: Some(m.shift().to_vec()),
                            ..WitnessReport::default()
                        }),
                        None,
                    ),
                    None => ("iso", None, Some(no_match_reason(&ca, &cb, "z-monomially"))),
                }
            }
            Mode::Strong => {
                let ca = ConvCode::from_encoder(&ga)?;
                let cb = ConvCode::from_encoder(&gb)?;
                match code_strongly_isometric(&ca, &cb, budget)? {
                    Some((enc, partner)) => (
                        "strong",
                        Some(WitnessReport {
                            encoder: Some(MatrixReport::new(&enc)),
                            partner: Some(MatrixReport::new(&partner)),
                            ..WitnessReport::default()
                        }),
                        None,
                    ),
                    None => (
                        "strong",
                        None,
                        Some(if ca.forney_indices() != cb.forney_indices() {
                            "Forney indices differ".to_string()
                        } else {
                            "no reduced encoder pair preserves weights for all \
                             bounded-degree messages"
                                .to_string()
                        }),
                    ),
                }
            }
        };

    let report = EquivReport {
        command: "equiv",
        mode: mode_name,
        inputs: vec![input_a, input_b],
        budget: budget.into(),
        equivalent: witness.is_some(),
        witness,
        reason,
    };
    if json {
        print_json(&report);
        return Ok(());
    }
    println!("mode: {}", report.mode);
    if let Some(w) = &report.witness {
        println!("equivalent: yes");
        if let Some(perm) = &w.perm {
            println!("column sources: {perm:?}");
        }
        if let Some(scalars) = &w.scalars {
            println!("column scalars: {scalars:?}");
        }
        if let Some(exponents) = &w.exponents {
            println!("column z-exponents: {exponents:?}");
        }
        if let Some(u) = &w.u {
            print_labeled_text("left transform U: ", &u.text);
        }
        if let Some(enc) = &w.encoder {
            print_labeled_text("weight-matched encoder: ", &enc.text);
        }
        if let Some(partner) = &w.partner {
            print_labeled_text("weight-matched partner: ", &partner.text);
        }
    } else {
        println!(
            "equivalent: no ({})",
            report.reason.as_deref().unwrap_or("no witness")
        );
    }
    Ok(())
}

fn no_match_reason(ca: &ConvCode, cb: &ConvCode, how: &str) -> String {
    if ca.forney_indices() != cb.forney_indices() {
        "Forney indices differ".to_string()
    } else {
        format!("no reduced encoder in the orbit is {how} equivalent")
    }
}

#[derive(Serialize)]
struct ExamplesReport {
    command: &'static str,
    budget: BudgetReport,
    reports: Vec<suite::SuiteReport>,
    passed: bool,
}

fn cmd_examples(
    list: bool,
    filter: Option<String>,
    data: Option<PathBuf>,
    budget: &Budget,
    json: bool,
) -> Result<ExitCode> {
    if list {
        if json {
            print_json(&suite::EXAMPLES);
        } else {
            for name in suite::EXAMPLES {
                println!("{name}");
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let dir = data_dir(data);
    let reports = match filter {
        Some(name) => vec![suite::run(&name, &dir, budget)?],
        None => suite::run_all(&dir, budget)?,
    };
    let passed = reports.iter().all(|r| r.passed());
    let report = ExamplesReport {
        command: "examples",
        budget: budget.into(),
        reports,
        passed,
    };
    if json {
        print_json(&report);
    } else {
        let mut total = 0usize;
        let mut ok = 0usize;
        for suite_report in &report.reports {
            println!("{}", suite_report.example);
            for check in &suite_report.checks {
                total += 1;
                if check.pass {
                    ok += 1;
                }
                let mark = if check.pass { "ok " } else { "FAIL" };
                println!("  {mark} {} ({})", check.name, check.detail);
            }
        }
        println!("summary: {ok}/{total} checks passed");
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(5)
    })
}

/// The example data directory: `--data`, then `CONVCODE_DATA`, then `./data`,
/// then the repository copy next to this crate.
fn data_dir(flag: Option<PathBuf>) -> PathBuf {
    if let Some(dir) = flag {
        return dir;
    }
    if let Ok(dir) = std::env::var("CONVCODE_DATA") {
        return PathBuf::from(dir);
    }
    let local = PathBuf::from("data");
    if local.is_dir() {
        return local;
    }
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data"))
}
