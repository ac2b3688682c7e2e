//! qma: construct and verify symmetrizer idempotents of quantum matrix
//! algebras built from Hecke symmetries, in exact arithmetic.
//!
//! Exit codes: 0 all checks pass, 1 invariant or validation failure,
//! 2 configuration/parse error, 3 simple-root conjecture violation.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use qma_core::report::{
    effective_q, run_coeffs, run_oracle_compare, run_tower, run_validate, BackendSpec,
    RMatrixSpec, RunSpec,
};
use qma_core::scalar::{QValue, Rationals};
use qma_core::twist::TwistKind;
use qma_core::{Error, SymmetrizerTower, TowerOptions};

#[derive(Parser)]
#[command(name = "qma", version, about = "Symmetrizers of quantum matrix algebras, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the braid and Hecke relations of an R-matrix
    Validate(CommonArgs),
    /// Build the symmetrizer tower and verify its invariants
    Tower(CommonArgs),
    /// Solve for the three-term expansion coefficients of S(3)
    Coeffs(CommonArgs),
    /// Compare the q = 1 tower against the brute-force symmetrizer
    #[command(name = "oracle-compare")]
    OracleCompare(CommonArgs),
    /// Dump a twist operator matrix in the qma-matrix-v1 format
    Twist(CommonArgs),
    /// Dump the minimal polynomial attached to level n-max
    Minpoly(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// R-matrix source: flip | superflip | glq | file
    #[arg(long)]
    rmatrix: Option<String>,

    /// Dimension N of the base space V
    #[arg(long = "N")]
    big_n: Option<usize>,

    /// Even grading size for superflip
    #[arg(long = "m")]
    grading_even: Option<usize>,

    /// Odd grading size for superflip
    #[arg(long = "n")]
    grading_odd: Option<usize>,

    /// Path of the qma-matrix-v1 file when --rmatrix file
    #[arg(long)]
    file: Option<String>,

    /// Deformation parameter as an exact rational "num/den"
    #[arg(long)]
    q: Option<String>,

    /// Quadratic-relation flavour: rtt | re
    #[arg(long)]
    kind: Option<String>,

    /// Highest tower level to build
    #[arg(long = "n-max")]
    n_max: Option<usize>,

    /// Coefficient backend: rational | prime:p | multiprime:p1,p2
    #[arg(long)]
    backend: Option<String>,

    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,

    /// Report format: json | csv
    #[arg(long)]
    format: Option<String>,

    /// JSON config file; command-line flags override its values
    #[arg(long)]
    config: Option<String>,

    /// Run every cross-check regardless of matrix size
    #[arg(long, default_value_t = false)]
    full_checks: bool,

    /// Allow rational-backend towers beyond the desk-scale size guard
    #[arg(long, default_value_t = false)]
    allow_large: bool,
}

/// Config-file counterpart of the flags (all optional).
#[derive(Deserialize, Default)]
struct FileConfig {
    rmatrix: Option<String>,
    #[serde(rename = "N")]
    big_n: Option<usize>,
    m: Option<usize>,
    n: Option<usize>,
    file: Option<String>,
    q: Option<String>,
    kind: Option<String>,
    n_max: Option<usize>,
    backend: Option<String>,
    out: Option<String>,
    format: Option<String>,
    full_checks: Option<bool>,
    allow_large: Option<bool>,
}

struct Resolved {
    spec: RunSpec,
    out: Option<String>,
    allow_large: bool,
}

fn resolve(command: &str, args: &CommonArgs) -> Result<Resolved, Error> {
    let file_cfg: FileConfig = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::parse(format!("config file {path}: {e}")))?
        }
        None => FileConfig::default(),
    };

    let rmatrix_name = args
        .rmatrix
        .clone()
        .or(file_cfg.rmatrix)
        .unwrap_or_else(|| "glq".to_owned());
    let big_n = args.big_n.or(file_cfg.big_n).unwrap_or(2);
    let grading_even = args.grading_even.or(file_cfg.m).unwrap_or(1);
    let grading_odd = args.grading_odd.or(file_cfg.n).unwrap_or(1);
    let file_path = args.file.clone().or(file_cfg.file);
    let q_str = args.q.clone().or(file_cfg.q).unwrap_or_else(|| "1".to_owned());
    let kind_str = args.kind.clone().or(file_cfg.kind).unwrap_or_else(|| "rtt".to_owned());
    let backend_str = args
        .backend
        .clone()
        .or(file_cfg.backend)
        .unwrap_or_else(|| "rational".to_owned());
    let format = args.format.clone().or(file_cfg.format).unwrap_or_else(|| "json".to_owned());
    let out = args.out.clone().or(file_cfg.out);
    let full_checks = args.full_checks || file_cfg.full_checks.unwrap_or(false);
    let allow_large = args.allow_large || file_cfg.allow_large.unwrap_or(false);

    let rmatrix = match rmatrix_name.as_str() {
        "flip" => RMatrixSpec::Flip { n: big_n },
        "superflip" => RMatrixSpec::SuperFlip { even: grading_even, odd: grading_odd },
        "glq" => RMatrixSpec::Glq { n: big_n },
        "file" => RMatrixSpec::File {
            path: file_path
                .ok_or_else(|| Error::invalid("--rmatrix file requires --file <path>"))?,
        },
        other => {
            return Err(Error::invalid(format!(
                "unknown rmatrix {other:?}; expected flip, superflip, glq, or file"
            )))
        }
    };

    let kind = match kind_str.as_str() {
        "rtt" => TwistKind::Rtt,
        "re" => TwistKind::Re,
        other => return Err(Error::invalid(format!("unknown kind {other:?}; expected rtt or re"))),
    };

    if !matches!(format.as_str(), "json" | "csv") {
        return Err(Error::invalid(format!("unknown format {format:?}; expected json or csv")));
    }

    let backend = BackendSpec::parse(&backend_str)?;
    let q = QValue::parse(&q_str)?;

    // Default n_max keeps the exact backend at desk scale.
    let n_max = args.n_max.or(file_cfg.n_max).unwrap_or_else(|| {
        let n = rmatrix.n().unwrap_or(2);
        match n {
            0 | 1 => 5,
            2 => 5,
            3 => 3,
            _ => 2,
        }
    });
    if n_max < 2 {
        return Err(Error::invalid("n-max must be at least 2"));
    }

    Ok(Resolved {
        spec: RunSpec {
            command: command.to_owned(),
            rmatrix,
            q,
            kind,
            n_max,
            backend,
            format,
            full_checks,
        },
        out,
        allow_large,
    })
}

/// Rational towers above this dimension need either a prime backend or an
/// explicit override.
fn guard_size(resolved: &Resolved) -> Result<(), Error> {
    const DESK_SCALE_DIM: u128 = 1 << 10;
    if resolved.allow_large || resolved.spec.backend != BackendSpec::Rational {
        return Ok(());
    }
    let n = resolved.spec.rmatrix.n().unwrap_or(2) as u128;
    let w = n * n;
    let top = w.pow(resolved.spec.n_max as u32);
    if top > DESK_SCALE_DIM {
        return Err(Error::invalid(format!(
            "rational tower would reach dimension {top} (> {DESK_SCALE_DIM}); \
             use --backend prime:p or multiprime:p1,p2, or pass --allow-large"
        )));
    }
    Ok(())
}

fn emit(out: &Option<String>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            f.write_all(text.as_bytes())?;
            if !text.ends_with('\n') {
                f.write_all(b"\n")?;
            }
        }
        None => println!("{text}"),
    }
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::InvalidParameter(_)
        | Error::Io(_)
        | Error::BadPrime { .. }
        | Error::DimensionMismatch(_)
        | Error::FieldMismatch(_)
        | Error::DegenerateParameter(_) => 2,
        Error::ConjectureViolation { .. } => 3,
        Error::BraidValidation { .. }
        | Error::HeckeValidation { .. }
        | Error::ConstructionImpossible(_)
        | Error::RootNotPresent { .. }
        | Error::InternalInconsistency(_) => 1,
    }
}

fn init_thread_pool() {
    if let Ok(threads) = std::env::var("QMA_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Validate(args) => {
            let resolved = resolve("validate", &args)?;
            let report = run_validate(&resolved.spec)?;
            let text = match resolved.spec.format.as_str() {
                "csv" => report.to_csv(),
                _ => report.to_json(),
            };
            emit(&resolved.out, &text)?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Tower(args) => {
            let resolved = resolve("tower", &args)?;
            guard_size(&resolved)?;
            let report = run_tower(&resolved.spec)?;
            let text = match resolved.spec.format.as_str() {
                "csv" => report.to_csv(),
                _ => report.to_json(),
            };
            emit(&resolved.out, &text)?;
            Ok(if report.all_pass() { 0 } else { 1 })
        }
        Command::Coeffs(args) => {
            let resolved = resolve("coeffs", &args)?;
            let report = run_coeffs(&resolved.spec)?;
            let text = match resolved.spec.format.as_str() {
                "csv" => report.to_csv(),
                _ => report.to_json(),
            };
            emit(&resolved.out, &text)?;
            // The checksum α+β+γ = 1 is part of the published expansion.
            Ok(if report.sum == "1/1" || report.sum == "1" { 0 } else { 1 })
        }
        Command::OracleCompare(args) => {
            let resolved = resolve("oracle-compare", &args)?;
            guard_size(&resolved)?;
            let corrupt = std::env::var("QMA_TEST_CORRUPT")
                .ok()
                .and_then(|v| v.parse::<usize>().ok());
            let report = run_oracle_compare(&resolved.spec, corrupt)?;
            emit(&resolved.out, &report.to_json())?;
            Ok(if report.pass { 0 } else { 1 })
        }
        Command::Twist(args) => {
            let resolved = resolve("twist", &args)?;
            if resolved.spec.backend != BackendSpec::Rational {
                return Err(Error::invalid(
                    "twist dumps exact rational entries; use the rational backend",
                ));
            }
            let q = effective_q(&resolved.spec)?;
            let hecke = resolved.spec.rmatrix.build_validated(&Rationals, &q)?;
            let twist = match resolved.spec.kind {
                TwistKind::Rtt => qma_core::rtt_twist(&hecke)?,
                TwistKind::Re => qma_core::re_twist(&hecke)?,
            };
            let file = qma_core::matfile::MatrixFile::from_rational_matrix(twist.matrix(), &q);
            emit(&resolved.out, &file.to_json())?;
            Ok(0)
        }
        Command::Minpoly(args) => {
            let resolved = resolve("minpoly", &args)?;
            guard_size(&resolved)?;
            if resolved.spec.n_max < 3 {
                return Err(Error::invalid("minpoly requires --n-max >= 3"));
            }
            if resolved.spec.backend != BackendSpec::Rational {
                return Err(Error::invalid(
                    "minpoly dumps exact rational coefficients; use the rational backend",
                ));
            }
            let q = effective_q(&resolved.spec)?;
            let hecke = resolved.spec.rmatrix.build_validated(&Rationals, &q)?;
            let twist = match resolved.spec.kind {
                TwistKind::Rtt => qma_core::rtt_twist(&hecke)?,
                TwistKind::Re => qma_core::re_twist(&hecke)?,
            };
            let tower =
                SymmetrizerTower::build(twist, &TowerOptions::to_level(resolved.spec.n_max))?;
            let level = tower
                .level(resolved.spec.n_max)
                .expect("tower built to n_max");
            let m = level.m.as_ref().expect("levels above 2 carry m");
            let payload = serde_json::json!({
                "format": "qma-minpoly-v1",
                "level": resolved.spec.n_max,
                "q": q.to_string(),
                "kind": resolved.spec.kind.label(),
                "coefficients": m.as_poly().coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            });
            emit(&resolved.out, &serde_json::to_string_pretty(&payload).expect("serializable"))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    init_thread_pool();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
