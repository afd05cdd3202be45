//! The `apncert` command line. Every command prints one JSON document with a
//! `schema_version` field and maps its verdict to an exit code.

use std::path::PathBuf;

use apncert_core::io::{parse_poly, FieldSpec, SCHEMA_VERSION};
use apncert_core::{FieldCtx, FieldElem, UPoly};
use clap::{Parser, Subcommand};
use serde::Serialize;

mod commands;
pub mod verify;

pub use verify::{run_suite, Claim, Status, Suite, Tier, VerifyReport};

#[derive(Debug, Parser)]
#[command(name = "apncert", version, about = "Certify maximal differential uniformity of polynomials over GF(2^n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Re-run the built-in checks of one area, or all of them.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Tier::Fast)]
        tier: Tier,
    },
    /// Find alpha, beta with m - 2 solutions of f(x + alpha) + f(x) = beta.
    Certify {
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        seed: u64,
        /// Polynomial file; a seeded random f with a1 != 0 when absent.
        #[arg(long)]
        poly: Option<PathBuf>,
        /// Number of beta trials.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Differential uniformity: exact for small fields, a sampled lower bound otherwise.
    Du {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Morse verdicts over all alpha or a seeded sample.
    MorseScan {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, conflicts_with_all = ["samples", "seed"])]
        exhaustive: bool,
        #[arg(long, requires = "seed")]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// D_a f, L_a f and its coefficients b0..b_d.
    Lalpha {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        field: Option<String>,
        /// Hex encoding, e.g. 0x1b.
        #[arg(long)]
        alpha: String,
    },
    /// Degree shape and the thresholds N1, N2.
    Bounds {
        #[arg(long, required_unless_present = "list")]
        m: Option<u64>,
        #[arg(long, requires = "max")]
        list: bool,
        #[arg(long)]
        max: Option<u64>,
    },
    /// Root-structure checks for m = 2^r (2^l + 1).
    Structure {
        #[arg(long, required_unless_present = "grid")]
        r: Option<u32>,
        #[arg(long, required_unless_present = "grid")]
        ell: Option<u32>,
        /// Every (r, l) with 2 <= r <= RMAX, 1 <= l <= LMAX.
        #[arg(long, num_args = 2, value_names = ["RMAX", "LMAX"], conflicts_with_all = ["r", "ell"])]
        grid: Option<Vec<u32>>,
    },
    /// Export difference distribution table entries as CSV (alpha_hex, beta_hex, count).
    Ddt {
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        field: Option<String>,
        /// A single row; every nonzero alpha when absent.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const VIOLATION: u8 = 1;
    pub const INVALID: u8 = 2;
    pub const INCONCLUSIVE: u8 = 3;
}

/// What a command prints and how it exits.
#[derive(Debug)]
pub struct Output {
    pub json: String,
    pub code: u8,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or input files.
    Invalid(String),
    /// An internal consistency check failed.
    Violation(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => exit::INVALID,
            CliError::Violation(_) => exit::VIOLATION,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Invalid(s) | CliError::Violation(s) => s,
        }
    }
}

impl From<apncert_core::Error> for CliError {
    fn from(e: apncert_core::Error) -> Self {
        match e {
            apncert_core::Error::Invariant(_) => CliError::Violation(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(flatten)]
    body: T,
}

/// Pretty JSON with the schema version and command name up front.
pub fn document<T: Serialize>(command: &str, body: T) -> String {
    let env = Envelope { schema_version: SCHEMA_VERSION, command, body };
    serde_json::to_string_pretty(&env).expect("reports serialize")
}

/// `N` or `N:0xMODULUS`.
pub fn parse_field(s: &str) -> CliResult<FieldCtx> {
    let (n, modulus) = match s.split_once(':') {
        Some((n, m)) => (n, Some(m.to_string())),
        None => (s, None),
    };
    let n = n.trim().parse::<u32>().map_err(|e| CliError::Invalid(format!("field {s:?}: {e}")))?;
    Ok(FieldSpec { n, modulus }.to_ctx()?)
}

pub fn parse_elem(ctx: &FieldCtx, s: &str) -> CliResult<FieldElem> {
    let e = FieldElem::from_hex(s)?;
    Ok(ctx.elem(e.bits())?)
}

/// Read a polynomial file; `field`, when given, must describe the file's field.
pub fn read_poly(path: &PathBuf, field: Option<&str>) -> CliResult<UPoly> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let p = parse_poly(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    if let Some(f) = field {
        let ctx = parse_field(f)?;
        if ctx != *p.ctx() {
            return Err(CliError::Invalid(format!(
                "--field {f} does not match the field GF(2^{}) with modulus {:#x} in {}",
                p.ctx().n(),
                p.ctx().modulus(),
                path.display()
            )));
        }
    }
    Ok(p)
}

pub fn run(cli: Cli) -> CliResult<Output> {
    use Command::*;
    match cli.command {
        Verify { suite, seed, tier } => {
            let report = run_suite(suite, seed, tier);
            let code = if report.status == Status::Fail { exit::VIOLATION } else { exit::OK };
            Ok(Output { json: document("verify", &report), code })
        }
        Certify { m, n, seed, poly, budget } => commands::certify(m, n, seed, poly.as_ref(), budget),
        Du { poly, field, exhaustive, samples, seed } => {
            commands::du(&read_poly(&poly, field.as_deref())?, exhaustive, samples, seed)
        }
        MorseScan { poly, field, exhaustive, samples, seed } => {
            commands::morse_scan(&read_poly(&poly, field.as_deref())?, exhaustive, samples, seed)
        }
        Lalpha { poly, field, alpha } => commands::lalpha(&read_poly(&poly, field.as_deref())?, &alpha),
        Bounds { m, list, max } => commands::bounds(m, list, max),
        Structure { r, ell, grid } => commands::structure(r, ell, grid),
        Ddt { poly, field, alpha, out } => commands::ddt(&read_poly(&poly, field.as_deref())?, alpha.as_deref(), &out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_flags() {
        assert_eq!(parse_field("8").unwrap().modulus(), 0x11b);
        assert_eq!(parse_field("3:0xb").unwrap().modulus(), 0xb);
        assert!(matches!(parse_field("3:0x9"), Err(CliError::Invalid(_))));
        assert!(matches!(parse_field("x"), Err(CliError::Invalid(_))));
    }

    #[test]
    fn documents_carry_the_schema_version() {
        let v: serde_json::Value = serde_json::from_str(&document("t", serde_json::json!({"a": 1}))).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["command"], "t");
        assert_eq!(v["a"], 1);
    }

    #[test]
    fn suites_are_deterministic_and_pass() {
        for suite in [Suite::Bounds, Suite::Structure, Suite::Lalpha] {
            let a = document("verify", run_suite(suite, 11, Tier::Fast));
            let b = document("verify", run_suite(suite, 11, Tier::Fast));
            assert_eq!(a, b);
            assert!(!a.contains("\"fail\""), "{a}");
        }
    }

    #[test]
    fn core_errors_map_to_exit_codes() {
        assert_eq!(CliError::from(apncert_core::Error::ZeroAlpha).code(), exit::INVALID);
        assert_eq!(CliError::from(apncert_core::Error::Invariant("x".into())).code(), exit::VIOLATION);
    }
}
