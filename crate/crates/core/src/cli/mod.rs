//! The `birange` command line: `check`, `boundary`, `solve-b`, `reciprocal`
//! and `verify`.
//!
//! Exit codes: 0 positive verdict, 1 negative verdict, 2 input or usage
//! error, 3 oracle disagreement. A batch exits with the largest item code.

pub mod input;
pub mod render;
pub mod report;

use std::ffi::OsString;
use std::io::{Read as _, Write as _};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::construct::Disguise;
use crate::criteria::{check_general_with, check_real_with, ellipse_geometry, solve_b, Tolerances};
use crate::linalg::{hermitian_eig4, Complex};
use crate::nr::{boundary_support, flat_portions, generating_poly, DEFAULT_SAMPLES, FLAT_GAP_TOL};
use crate::structured::{Frame, ReciprocalForm, SpecialForm};
use crate::verify::charpoly::{char_poly4, match_multisets, poly_roots};
use crate::verify::{envelope_points, fit_ellipse, ENVELOPE_DELTA};
use input::{parse_complex, parse_document, MatrixSpec, Resolved};
use report::{build_check, render_text, CheckReport, Settings};

/// Smallest accepted `--samples`.
pub const MIN_SAMPLES: usize = 64;
/// Seed of randomized verification when `BIRANGE_SEED` is unset.
pub const DEFAULT_SEED: u64 = 42;
/// Disguises tried by `verify`.
const DISGUISES: usize = 16;

#[derive(Parser, Debug)]
#[command(
    name = "birange",
    version,
    about = "Decide whether a structured 4x4 matrix has a bi-elliptical numerical range"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Boundary support directions.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    /// Output format (check/verify/reciprocal: text|json; boundary: csv|svg|json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Tolerance of the criterion equalities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_criterion: f64,
    /// Tolerance of the normality tests.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol_normal: f64,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify a matrix (or a JSON array of matrices) and cross-check the verdict.
    Check {
        /// JSON input document, `-` for standard input.
        input: PathBuf,
    },
    /// Sample the boundary of the numerical range.
    Boundary { input: PathBuf },
    /// Find the unique b > 0 making the special form bi-elliptical.
    SolveB {
        #[arg(long, allow_hyphen_values = true)]
        u: f64,
        #[arg(long, allow_hyphen_values = true)]
        v: f64,
        /// `re,im` or a bare real.
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true)]
        b2: String,
    },
    /// Classify a reciprocal tridiagonal matrix.
    Reciprocal {
        #[arg(long)]
        a1: f64,
        #[arg(long)]
        a2: f64,
        #[arg(long)]
        a3: f64,
        /// Read the three values as `A_j = (a_j² + a_j⁻²)/2` instead of `a_j`.
        #[arg(long)]
        big_a: bool,
    },
    /// Run the full oracle suite on one matrix.
    Verify { input: PathBuf },
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            2
        }
    }
}

fn execute(cli: &Cli) -> Result<i32, String> {
    let o = &cli.opts;
    if o.samples < MIN_SAMPLES {
        return Err(format!("--samples must be at least {MIN_SAMPLES}, got {}", o.samples));
    }
    for (name, t) in [("--tol-criterion", o.tol_criterion), ("--tol-normal", o.tol_normal)] {
        if !(t.is_finite() && t > 0.0) {
            return Err(format!("{name} must be positive and finite, got {t}"));
        }
    }
    let settings = Settings {
        samples: o.samples,
        tol: Tolerances { criterion: o.tol_criterion, normal: o.tol_normal, ..Tolerances::default() },
        workers: 1,
    };
    match &cli.command {
        Command::Check { input } => cmd_check(input, o, &settings),
        Command::Boundary { input } => cmd_boundary(input, o),
        Command::SolveB { u, v, b1, b2 } => cmd_solve_b(*u, *v, b1, b2, o, &settings),
        Command::Reciprocal { a1, a2, a3, big_a } => {
            let r =
                if *big_a { ReciprocalForm::from_big_a([*a1, *a2, *a3]) } else { ReciprocalForm::new(*a1, *a2, *a3) }
                    .map_err(|e| e.to_string())?;
            let spec = MatrixSpec::Reciprocal { a1: r.a1, a2: r.a2, a3: r.a3 };
            let res = spec.resolve().map_err(|e| e.to_string())?;
            let rep = build_check(&res, &settings)?;
            emit_reports(&[Ok(rep.clone())], false, o)?;
            Ok(rep.exit_code())
        }
        Command::Verify { input } => cmd_verify(input, o, &settings),
    }
}

/// The parsed documents, and whether the input was a JSON array.
fn read_input(path: &Path) -> Result<(Vec<MatrixSpec>, bool), String> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    Ok((parse_document(&text)?, text.trim_start().starts_with('[')))
}

fn read_single(path: &Path) -> Result<Resolved, String> {
    let (specs, _) = read_input(path)?;
    match specs.as_slice() {
        [one] => one.resolve().map_err(|e| e.to_string()),
        _ => Err(format!("expected one matrix, got {}", specs.len())),
    }
}

fn write_out(o: &Opts, text: &str) -> Result<(), String> {
    match &o.output {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| format!("stdout: {e}"))
        }
    }
}

fn text_or_json(o: &Opts) -> Result<bool, String> {
    match o.format {
        None | Some(Format::Text) => Ok(false),
        Some(Format::Json) => Ok(true),
        Some(f) => Err(format!("format {f:?} applies to `boundary` only")),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Item<'a> {
    Report(&'a CheckReport),
    Error { error: &'a str },
}

fn emit_reports(items: &[Result<CheckReport, String>], batch: bool, o: &Opts) -> Result<(), String> {
    let json = text_or_json(o)?;
    let text = if json {
        let v: Vec<Item> = items
            .iter()
            .map(|r| match r {
                Ok(rep) => Item::Report(rep),
                Err(e) => Item::Error { error: e },
            })
            .collect();
        let s = if batch { serde_json::to_string_pretty(&v) } else { serde_json::to_string_pretty(&v[0]) };
        s.map_err(|e| e.to_string())? + "\n"
    } else {
        let mut s = String::new();
        for (k, r) in items.iter().enumerate() {
            if batch {
                s.push_str(&format!("# item {k}\n"));
            }
            match r {
                Ok(rep) => s.push_str(&render_text(rep)),
                Err(e) => s.push_str(&format!("error: {e}\n")),
            }
        }
        s
    };
    write_out(o, &text)
}

/// Runs `f` over `items` on all cores, preserving order.
fn par_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(items.len()).max(1);
    if workers == 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Vec<R>>())).collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    })
}

fn cmd_check(input: &Path, o: &Opts, settings: &Settings) -> Result<i32, String> {
    text_or_json(o)?;
    let (specs, batch) = read_input(input)?;
    if specs.is_empty() {
        return Err("empty batch".into());
    }
    let results = par_map(&specs, |s| s.resolve().map_err(|e| e.to_string()).and_then(|r| build_check(&r, settings)));
    emit_reports(&results, batch, o)?;
    if !batch {
        if let Err(e) = &results[0] {
            return Err(e.clone());
        }
    }
    Ok(results.iter().map(|r| r.as_ref().map_or(2, CheckReport::exit_code)).max().unwrap_or(2))
}

fn cmd_boundary(input: &Path, o: &Opts) -> Result<i32, String> {
    let res = read_single(input)?;
    let m = res.matrix;
    let samples = boundary_support(&m, o.samples).map_err(|e| e.to_string())?;
    let flats = flat_portions(&m, &samples, FLAT_GAP_TOL).map_err(|e| e.to_string())?;
    let eig = poly_roots(&char_poly4(&m));
    let tol = Tolerances { criterion: o.tol_criterion, normal: o.tol_normal, ..Tolerances::default() };
    let ellipses = res
        .block
        .and_then(|bf| match res.special {
            Some(sf) => Some(crate::criteria::check_special_with(&sf, &tol)),
            None => check_general_with(&bf, &tol).ok(),
        })
        .and_then(|v| v.ellipses)
        .map(|(a, b)| [a, b]);
    let text = match o.format.unwrap_or(Format::Csv) {
        Format::Csv => render::csv(&samples),
        Format::Svg => render::svg(&samples, ellipses, &eig, &flats),
        Format::Json => render::json(&samples, ellipses, &eig, &flats),
        Format::Text => return Err("boundary supports csv, svg or json".into()),
    };
    write_out(o, &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct SolveBReport {
    u: f64,
    v: f64,
    b1: Complex,
    b2: Complex,
    b: Option<f64>,
}

fn cmd_solve_b(u: f64, v: f64, b1: &str, b2: &str, o: &Opts, settings: &Settings) -> Result<i32, String> {
    let json = text_or_json(o)?;
    let (b1, b2) = (parse_complex(b1)?, parse_complex(b2)?);
    if ![u, v, b1.re, b1.im, b2.re, b2.im].iter().all(|x| x.is_finite()) {
        return Err("non-finite parameter".into());
    }
    if u == 0.0 && v == 0.0 {
        // With α = 0 the criterion does not involve b at all.
        let verdict =
            check_real_with(&SpecialForm::new(0.0, 0.0, b1, b2, 1.0), &settings.tol).map_err(|e| e.to_string())?;
        return Err(format!(
            "α = 0: b does not enter the criterion. The form is bi-elliptical for every b > 0 iff \
             (Im b1 = Im b2 and |b1| = |b2|) or Re b1 = Re b2 = 0; for these b1, b2 the verdict is {:?}",
            verdict.kind
        ));
    }
    let b = solve_b(u, v, b1, b2).map_err(|e| e.to_string())?;
    let text = if json {
        serde_json::to_string_pretty(&SolveBReport { u, v, b1, b2, b }).map_err(|e| e.to_string())? + "\n"
    } else {
        match b {
            Some(b) => format!("b = {b}\n"),
            None => "b: none\n".into(),
        }
    };
    write_out(o, &text)?;
    Ok(if b.is_some() { 0 } else { 1 })
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    seed: u64,
    report: &'a CheckReport,
    checks: &'a [Check],
}

fn seed_from_env() -> Result<u64, String> {
    match std::env::var("BIRANGE_SEED") {
        Ok(s) => s.trim().parse().map_err(|e| format!("BIRANGE_SEED=`{s}`: {e}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_SEED),
        Err(e) => Err(format!("BIRANGE_SEED: {e}")),
    }
}

fn cmd_verify(input: &Path, o: &Opts, settings: &Settings) -> Result<i32, String> {
    let json = text_or_json(o)?;
    let seed = seed_from_env()?;
    let res = read_single(input)?;
    let rep = build_check(&res, settings)?;
    let bf = res.block.expect("build_check rejects non-block input");
    let m = res.matrix;
    let scale = 1.0 + m.frobenius();
    let mut checks = Vec::new();

    let roots = poly_roots(&char_poly4(&m));
    let gap = match_multisets(&roots, &rep.eigenvalues) / scale;
    checks.push(Check {
        name: "spectrum",
        passed: gap <= 1e-8,
        detail: format!("closed-form eigenvalues vs characteristic-polynomial roots: {gap:.3e}"),
    });

    let gp = generating_poly(&bf);
    let centered = bf.centered();
    let mut worst = 0.0f64;
    for j in 0..64 {
        let theta = std::f64::consts::PI * j as f64 / 64.0;
        let e = hermitian_eig4(&centered.scale(Complex::cis(-theta)).im_part()).map_err(|e| e.to_string())?;
        let (l1, l2) = (e.values[3], e.values[2]);
        let (s1, s2) = (l1 * l1 + l2 * l2, l1 * l1 * l2 * l2);
        let n2 = bf.norm().powi(2);
        worst = worst.max((gp.xi1_at(theta) - s1).abs() / (1.0 + n2));
        worst = worst.max((gp.xi2_at(theta) - s2).abs() / (1.0 + n2 * n2));
    }
    checks.push(Check {
        name: "generating polynomial",
        passed: worst <= 1e-10,
        detail: format!("closed-form coefficients vs direct eigenvalues over 64 angles: {worst:.3e}"),
    });

    if let Some(params) = rep.params {
        let fr = rep.diagnostics.factorization_residual.unwrap_or(f64::NAN);
        checks.push(Check {
            name: "factorization",
            passed: fr <= 1e-8,
            detail: format!("generating polynomial vs product of the two quadratic factors: {fr:.3e}"),
        });
        let fit = fit_ellipse(&envelope_points(&params, 64, ENVELOPE_DELTA));
        let closed = ellipse_geometry(&params, &Frame::identity());
        let ok = match (&fit, &closed) {
            (Ok(f), Ok((e1, e2))) => f.approx_eq(e1, 1e-6) || f.approx_eq(e2, 1e-6),
            _ => false,
        };
        checks.push(Check {
            name: "ellipse geometry",
            passed: ok,
            detail: "closed-form center, semi-axes and tilt vs conic fit of the tangent envelope".into(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut disagree = 0;
    for _ in 0..DISGUISES {
        let d = Disguise::random(&mut rng).apply(&bf);
        match check_general_with(&d, &settings.tol) {
            Ok(v) if v.kind == rep.verdict => {}
            _ => disagree += 1,
        }
    }
    checks.push(Check {
        name: "frame invariance",
        passed: disagree == 0,
        detail: format!("{disagree} of {DISGUISES} unitary/scale/shift disguises change the verdict"),
    });

    checks.push(Check {
        name: "report oracles",
        passed: rep.failures.is_empty(),
        detail: if rep.failures.is_empty() {
            "hull, flat portions, commutant and route consistency agree".into()
        } else {
            rep.failures.join("; ")
        },
    });

    let text = if json {
        serde_json::to_string_pretty(&VerifyReport { seed, report: &rep, checks: &checks })
            .map_err(|e| e.to_string())?
            + "\n"
    } else {
        let mut s = render_text(&rep);
        s.push_str(&format!("seed: {seed}\n"));
        for c in &checks {
            s.push_str(&format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail));
        }
        s
    };
    write_out(o, &text)?;
    Ok(if checks.iter().any(|c| !c.passed) { 3 } else { rep.exit_code() })
}
