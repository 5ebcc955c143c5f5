//! `sixv`: partition function and boundary correlators of the six-vertex
//! model with domain-wall boundary conditions, plus the cross-check oracles.
//!
//! Output is JSON (one object per line) or CSV for sweeps; all numbers are
//! printed with 17 significant digits so identical runs are byte-identical.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use sixv_core::determinant::{g_det, g_reduction, h_det, h_reduction, z_det, z_perm};
use sixv_core::enumeration::{correlators_by_enumeration, z_by_enumeration};
use sixv_core::free_fermion::{g_ff, h_ff};
use sixv_core::homogeneous::{g_hom, h_hom, z_hom, HomValue, HomogeneousParams};
use sixv_core::qism::{g_via_monodromy, h_via_monodromy, z_via_monodromy};
use sixv_core::result::{CorrelatorResult, Method, Quantity};
use sixv_core::sample::sample_params;
use sixv_core::scalar::{c64, C64};
use sixv_core::selftest::run_selftest;
use sixv_core::{Error as CoreError, SpectralParams64};

#[derive(Parser)]
#[command(name = "sixv", version, about = "Six-vertex model DWBC evaluators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition function Z_N.
    Z(EvalArgs),
    /// Boundary polarization G_N^(M).
    G(EvalArgs),
    /// Boundary turn probability H_N^(M).
    H(EvalArgs),
    /// Enumeration oracle: weighted tallies over all configurations.
    Oracle(OracleArgs),
    /// Free-fermion point closed forms.
    Ff(FfArgs),
    /// Homogeneous-limit evaluators (equal lambdas, nu = 0).
    Hom(HomArgs),
    /// Grid sweeps over M, in CSV.
    Sweep(SweepArgs),
    /// Deterministic oracle-equivalence suite.
    Selftest,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodFlag {
    Det,
    Perm,
    Reduction,
    Qism,
    Enum,
}

#[derive(Args)]
struct EvalArgs {
    /// System size N.
    #[arg(long)]
    n: usize,
    /// Row index M (required for g and h).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "det")]
    method: MethodFlag,
    /// JSON parameter file {"lambdas": [[re,im],..], "nus": [[re,im],..], "eta": [re,im]}.
    #[arg(long)]
    params: Option<String>,
    /// Seed for pseudo-random parameter generation (ignored with --params).
    #[arg(long, default_value = "0")]
    seed: u64,
    /// Override the crossing parameter, as "RE" or "RE+IMj".
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    params: Option<String>,
    #[arg(long, default_value = "0")]
    seed: u64,
}

#[derive(Args)]
struct FfArgs {
    #[arg(long)]
    n: usize,
    /// Spectral parameter, real.
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long)]
    m: Option<usize>,
    /// Emit CSV rows for every M instead of a single JSON result.
    #[arg(long)]
    sweep_m: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum HomQuantity {
    Z,
    G,
    H,
}

#[derive(Args)]
struct HomArgs {
    #[arg(value_enum)]
    quantity: HomQuantity,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: Option<usize>,
    /// Spectral parameter, as "RE" or "RE+IMj".
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Crossing parameter, same grammar.
    #[arg(long, allow_hyphen_values = true)]
    eta: String,
    /// Working precision override in bits.
    #[arg(long)]
    bits: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepKind {
    Ff,
    Hom,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(value_enum)]
    kind: SweepKind,
    #[arg(long)]
    n: usize,
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// Crossing parameter (hom sweeps only).
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<String>,
    /// First row index of the grid (default 1).
    #[arg(long, default_value = "1")]
    m_start: usize,
    /// Last row index of the grid (default N); start > end gives an empty grid.
    #[arg(long)]
    m_end: Option<usize>,
    #[arg(long)]
    bits: Option<u32>,
}

enum CliError {
    Usage(String),
    Singular(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::SingularParameter(_)
            | CoreError::SingularJet
            | CoreError::DegenerateNormalization => CliError::Singular(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// "RE" or "RE+IMj" / "RE-IMj"; the exponent sign of a float does not split.
fn parse_complex(s: &str) -> Result<C64, CliError> {
    let bad = || CliError::Usage(format!("cannot parse complex value {s:?}; use RE or RE+IMj"));
    let s = s.trim();
    if let Some(body) = s.strip_suffix('j') {
        let mut split = None;
        for (i, ch) in body.char_indices().skip(1) {
            if (ch == '+' || ch == '-') && !matches!(&body[i - 1..i], "e" | "E") {
                split = Some(i);
            }
        }
        let i = split.ok_or_else(bad)?;
        let re: f64 = body[..i].parse().map_err(|_| bad())?;
        let im: f64 = body[i..].parse().map_err(|_| bad())?;
        Ok(c64(re, im))
    } else {
        let re: f64 = s.parse().map_err(|_| bad())?;
        Ok(c64(re, 0.0))
    }
}

#[derive(Deserialize)]
struct ParamFile {
    lambdas: Vec<[f64; 2]>,
    nus: Vec<[f64; 2]>,
    eta: [f64; 2],
}

fn load_params(
    n: usize,
    file: Option<&str>,
    seed: u64,
    eta_override: Option<&str>,
) -> Result<SpectralParams64, CliError> {
    let mut p = match file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            let pf: ParamFile = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("bad parameter file {path}: {e}")))?;
            if pf.lambdas.len() != n || pf.nus.len() != n {
                return Err(CliError::Usage(format!(
                    "--n {n} but the file holds {} lambdas and {} nus",
                    pf.lambdas.len(),
                    pf.nus.len()
                )));
            }
            SpectralParams64::new(
                pf.lambdas.iter().map(|v| c64(v[0], v[1])).collect(),
                pf.nus.iter().map(|v| c64(v[0], v[1])).collect(),
                c64(pf.eta[0], pf.eta[1]),
            )?
        }
        None => sample_params(n, seed)?,
    };
    if let Some(e) = eta_override {
        p.eta = parse_complex(e)?;
    }
    Ok(p)
}

/// 17 significant digits, the shortest form that round-trips any f64.
fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn print_result(r: &CorrelatorResult) {
    let m = match r.m {
        Some(m) => m.to_string(),
        None => "null".into(),
    };
    println!(
        "{{\"quantity\":\"{}\",\"n\":{},\"m\":{},\"method\":\"{}\",\"value_re\":{},\"value_im\":{},\"precision_bits\":{}}}",
        r.quantity.as_str(),
        r.n,
        m,
        r.method.as_str(),
        fmt17(r.value.re),
        fmt17(r.value.im),
        r.precision_bits
    );
}

fn need_m(n: usize, m: Option<usize>) -> Result<usize, CliError> {
    let m = m.ok_or_else(|| CliError::Usage("--m is required for this quantity".into()))?;
    if m == 0 || m > n {
        return Err(CliError::Usage(format!("--m {m} outside 1..={n}")));
    }
    Ok(m)
}

fn eval(quantity: Quantity, a: &EvalArgs) -> Result<(), CliError> {
    let p = load_params(a.n, a.params.as_deref(), a.seed, a.eta.as_deref())?;
    let (method, value) = match quantity {
        Quantity::Z => match a.method {
            MethodFlag::Det => (Method::Det, z_det(&p)?),
            MethodFlag::Perm => (Method::Perm, z_perm(&p)?),
            MethodFlag::Qism => (Method::Qism, z_via_monodromy(&p)?),
            MethodFlag::Enum => (Method::Enumeration, z_by_enumeration(&p)?),
            MethodFlag::Reduction => {
                return Err(CliError::Usage("method reduction applies to g and h only".into()))
            }
        },
        Quantity::G | Quantity::H => {
            let m = need_m(a.n, a.m)?;
            let is_g = quantity == Quantity::G;
            match a.method {
                MethodFlag::Det => (
                    Method::Det,
                    if is_g { g_det(&p, m)? } else { h_det(&p, m)? },
                ),
                MethodFlag::Reduction => (
                    Method::Reduction,
                    if is_g { g_reduction(&p, m)? } else { h_reduction(&p, m)? },
                ),
                MethodFlag::Qism => (
                    Method::Qism,
                    if is_g { g_via_monodromy(&p, m)? } else { h_via_monodromy(&p, m)? },
                ),
                MethodFlag::Enum => {
                    let t = correlators_by_enumeration(&p)?;
                    (Method::Enumeration, if is_g { t.g(m) } else { t.h(m) })
                }
                MethodFlag::Perm => {
                    return Err(CliError::Usage("method perm applies to z only".into()))
                }
            }
        }
    };
    print_result(&CorrelatorResult::new(quantity, a.n, a.m, method, value, 53));
    Ok(())
}

fn pair(z: C64) -> String {
    format!("[{},{}]", fmt17(z.re), fmt17(z.im))
}

fn oracle(a: &OracleArgs) -> Result<(), CliError> {
    let p = load_params(a.n, a.params.as_deref(), a.seed, None)?;
    let t = correlators_by_enumeration(&p)?;
    let list = |v: &[C64]| {
        v.iter().map(|z| pair(*z)).collect::<Vec<_>>().join(",")
    };
    println!(
        "{{\"n\":{},\"total\":{},\"per_row_turn\":[{}],\"per_row_down\":[{}],\"h\":[{}],\"g\":[{}]}}",
        a.n,
        pair(t.total),
        list(&t.per_row_turn),
        list(&t.per_row_down),
        list(&(1..=a.n).map(|m| t.h(m)).collect::<Vec<_>>()),
        list(&(1..=a.n).map(|m| t.g(m)).collect::<Vec<_>>()),
    );
    Ok(())
}

const CSV_HEADER: &str = "n,m,lambda_re,lambda_im,G,H";

fn csv_row(n: usize, m: usize, lambda: C64, g: f64, h: f64) {
    println!(
        "{n},{m},{},{},{},{}",
        fmt17(lambda.re),
        fmt17(lambda.im),
        fmt17(g),
        fmt17(h)
    );
}

fn ff(a: &FfArgs) -> Result<(), CliError> {
    if a.sweep_m {
        println!("{CSV_HEADER}");
        for m in 1..=a.n {
            csv_row(
                a.n,
                m,
                c64(a.lambda, 0.0),
                g_ff(a.n, m, a.lambda)?,
                h_ff(a.n, m, a.lambda)?,
            );
        }
        return Ok(());
    }
    let m = need_m(a.n, a.m)?;
    for (q, v) in [
        (Quantity::G, g_ff(a.n, m, a.lambda)?),
        (Quantity::H, h_ff(a.n, m, a.lambda)?),
    ] {
        print_result(&CorrelatorResult::new(
            q,
            a.n,
            Some(m),
            Method::FreeFermion,
            c64(v, 0.0),
            53,
        ));
    }
    Ok(())
}

fn hom(a: &HomArgs) -> Result<(), CliError> {
    let mut p = HomogeneousParams::new(parse_complex(&a.lambda)?, parse_complex(&a.eta)?, a.n);
    p.bits = a.bits;
    let (q, m, hv): (Quantity, Option<usize>, HomValue) = match a.quantity {
        HomQuantity::Z => (Quantity::Z, None, z_hom(&p)?),
        HomQuantity::G => {
            let m = need_m(a.n, a.m)?;
            (Quantity::G, Some(m), g_hom(&p, m)?)
        }
        HomQuantity::H => {
            let m = need_m(a.n, a.m)?;
            (Quantity::H, Some(m), h_hom(&p, m)?)
        }
    };
    print_result(&CorrelatorResult::new(
        q,
        a.n,
        m,
        Method::Homogeneous,
        hv.value,
        hv.precision_bits,
    ));
    Ok(())
}

fn sweep(a: &SweepArgs) -> Result<(), CliError> {
    let lambda = parse_complex(&a.lambda)?;
    let m_end = a.m_end.unwrap_or(a.n);
    if m_end > a.n {
        return Err(CliError::Usage(format!("--m-end {m_end} exceeds --n {}", a.n)));
    }
    println!("{CSV_HEADER}");
    match a.kind {
        SweepKind::Ff => {
            if lambda.im != 0.0 {
                return Err(CliError::Usage("ff sweeps take a real lambda".into()));
            }
            for m in a.m_start..=m_end {
                csv_row(a.n, m, lambda, g_ff(a.n, m, lambda.re)?, h_ff(a.n, m, lambda.re)?);
            }
        }
        SweepKind::Hom => {
            let eta = parse_complex(
                a.eta
                    .as_deref()
                    .ok_or_else(|| CliError::Usage("hom sweeps need --eta".into()))?,
            )?;
            let mut p = HomogeneousParams::new(lambda, eta, a.n);
            p.bits = a.bits;
            for m in a.m_start..=m_end {
                csv_row(a.n, m, lambda, g_hom(&p, m)?.value.re, h_hom(&p, m)?.value.re);
            }
        }
    }
    Ok(())
}

fn selftest() -> Result<bool, CliError> {
    let checks = run_selftest()?;
    let mut all = true;
    for c in &checks {
        let ok = c.passed();
        all &= ok;
        println!(
            "{} residual={} tol={:e} {}",
            c.name,
            fmt17(c.residual),
            c.tol,
            if ok { "ok" } else { "FAIL" }
        );
    }
    println!("selftest: {}/{} checks passed", checks.iter().filter(|c| c.passed()).count(), checks.len());
    Ok(all)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Z(a) => eval(Quantity::Z, a).map(|()| true),
        Command::G(a) => eval(Quantity::G, a).map(|()| true),
        Command::H(a) => eval(Quantity::H, a).map(|()| true),
        Command::Oracle(a) => oracle(a).map(|()| true),
        Command::Ff(a) => ff(a).map(|()| true),
        Command::Hom(a) => hom(a).map(|()| true),
        Command::Sweep(a) => sweep(a).map(|()| true),
        Command::Selftest => selftest(),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Singular(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
