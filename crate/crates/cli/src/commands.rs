use std::path::{Path, PathBuf};

use apncert_core::bounds::{admissible_degrees, bounds_report, degree_profile, BoundsReport, DegreeProfile};
use apncert_core::lalpha::l_alpha;
use apncert_core::morse::{alpha_scan, ScanMode};
use apncert_core::sample::{random_poly_a1_nonzero, trial_rng, Purpose};
use apncert_core::structure::{structure_report, StructureReport};
use apncert_core::uniformity::{certify_max, ddt_row, delta_exhaustive, solutions_count, CertOutcome, DDTRow};
use apncert_core::{FieldCtx, FieldElem, UPoly};
use rayon::prelude::*;
use serde::Serialize;

use crate::{document, exit, parse_elem, read_poly, CliError, CliResult, Output};

fn ok(command: &str, body: impl Serialize) -> CliResult<Output> {
    Ok(Output { json: document(command, body), code: exit::OK })
}

pub fn certify(m: Option<usize>, n: Option<u32>, seed: u64, poly: Option<&PathBuf>, budget: u64) -> CliResult<Output> {
    let f = match poly {
        Some(path) => {
            let f = read_poly(path, None)?;
            if m.is_some_and(|m| Some(m) != f.degree()) || n.is_some_and(|n| n != f.ctx().n()) {
                return Err(CliError::Invalid(format!("--m/--n disagree with {}", path.display())));
            }
            f
        }
        None => {
            let (Some(m), Some(n)) = (m, n) else {
                return Err(CliError::Invalid("--m and --n are required without --poly".into()));
            };
            let p = degree_profile(m as u64)?;
            if !p.admissible {
                return Err(apncert_core::Error::Inadmissible(m as u64).into());
            }
            random_poly_a1_nonzero(&FieldCtx::default_for(n)?, m, seed, 0)
        }
    };
    let out = certify_max(&f, budget, seed)?;
    let code = match out {
        CertOutcome::Certified(_) => exit::OK,
        CertOutcome::Inconclusive { .. } => exit::INCONCLUSIVE,
    };
    Ok(Output { json: document("certify", &out), code })
}

#[derive(Serialize)]
struct DuReport {
    n: u32,
    m: Option<usize>,
    mode: &'static str,
    /// Exact in exhaustive mode, a lower bound when sampled.
    delta: u64,
    exact: bool,
    /// `m - 2` for even `m`, `m - 1` for odd `m`.
    degree_ceiling: Option<u64>,
    within_degree_ceiling: bool,
    witness_count: usize,
    /// At most 64 of the attaining `(alpha, beta)`, in order.
    witnesses: Vec<(FieldElem, FieldElem)>,
    samples: Option<u64>,
    seed: Option<u64>,
}

/// `deg D_a f <= m - 2` (even `m`) or `m - 1` (odd `m`) unless `D_a f` is constant.
fn degree_ceiling(f: &UPoly) -> Option<u64> {
    f.degree().filter(|&m| m >= 2).map(|m| if m % 2 == 0 { m as u64 - 2 } else { m as u64 - 1 })
}

pub fn du(f: &UPoly, exhaustive: bool, samples: Option<u64>, seed: Option<u64>) -> CliResult<Output> {
    let ctx = f.ctx();
    let (delta, witnesses, exact) = if exhaustive {
        let r = delta_exhaustive(f)?;
        (r.delta, r.witnesses, true)
    } else {
        let (Some(samples), Some(seed)) = (samples, seed) else {
            return Err(CliError::Invalid("use --exhaustive, or --samples K --seed S".into()));
        };
        // beta = D_a f(x0) so every sample has at least one solution
        let hits = (0..samples)
            .into_par_iter()
            .map(|i| {
                let mut rng = trial_rng(seed, Purpose::Verify, i);
                let a = ctx.random_nonzero(&mut rng);
                let x0 = ctx.random(&mut rng);
                let b = f.evaluate(x0 + a) + f.evaluate(x0);
                solutions_count(f, a, b).map(|c| (c, a, b))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let best = hits.iter().map(|h| h.0).max().unwrap_or(0);
        let mut w: Vec<_> = hits.into_iter().filter(|h| h.0 == best).map(|h| (h.1, h.2)).collect();
        w.sort_unstable();
        w.dedup();
        (best, w, false)
    };
    let ceiling = degree_ceiling(f);
    let q = ctx.order() as u64;
    // exceeding the ceiling is only possible when D_a f is constant, i.e. delta = q
    let within = ceiling.is_none_or(|c| delta <= c || delta == q);
    let report = DuReport {
        n: ctx.n(),
        m: f.degree(),
        mode: if exhaustive { "exhaustive" } else { "sampled" },
        delta,
        exact,
        degree_ceiling: ceiling,
        within_degree_ceiling: within,
        witness_count: witnesses.len(),
        witnesses: witnesses.into_iter().take(64).collect(),
        samples,
        seed,
    };
    let code = if within { exit::OK } else { exit::VIOLATION };
    Ok(Output { json: document("du", &report), code })
}

pub fn morse_scan(f: &UPoly, exhaustive: bool, samples: Option<u64>, seed: Option<u64>) -> CliResult<Output> {
    let mode = match (exhaustive, samples, seed) {
        (true, _, _) => ScanMode::Exhaustive,
        (false, Some(samples), Some(seed)) => ScanMode::Sampled { samples, seed },
        _ => return Err(CliError::Invalid("use --exhaustive, or --samples K --seed S".into())),
    };
    let s = alpha_scan(f, mode)?;
    let code = if s.violations.is_empty() { exit::OK } else { exit::VIOLATION };
    Ok(Output { json: document("morse-scan", &s), code })
}

pub fn lalpha(f: &UPoly, alpha: &str) -> CliResult<Output> {
    let a = parse_elem(f.ctx(), alpha)?;
    ok("lalpha", l_alpha(f, a)?)
}

#[derive(Serialize)]
struct ShapeOnly {
    m: u64,
    profile: DegreeProfile,
    admissible: bool,
}

#[derive(Serialize)]
struct BoundsList {
    max: u64,
    degrees: Vec<BoundsReport>,
}

pub fn bounds(m: Option<u64>, list: bool, max: Option<u64>) -> CliResult<Output> {
    if list {
        let max = max.ok_or_else(|| CliError::Invalid("--list needs --max".into()))?;
        let degrees = admissible_degrees(max).iter().map(|p| bounds_report(p.m)).collect::<Result<Vec<_>, _>>()?;
        return ok("bounds", BoundsList { max, degrees });
    }
    let m = m.ok_or_else(|| CliError::Invalid("--m is required".into()))?;
    let profile = degree_profile(m)?;
    if profile.admissible {
        #[derive(Serialize)]
        struct Full {
            admissible: bool,
            #[serde(flatten)]
            report: BoundsReport,
        }
        ok("bounds", Full { admissible: true, report: bounds_report(m)? })
    } else {
        ok("bounds", ShapeOnly { m, admissible: false, profile })
    }
}

#[derive(Serialize)]
struct StructureGrid {
    rmax: u32,
    lmax: u32,
    all_ok: bool,
    reports: Vec<StructureReport>,
}

pub fn structure(r: Option<u32>, ell: Option<u32>, grid: Option<Vec<u32>>) -> CliResult<Output> {
    if let Some(g) = grid {
        let (rmax, lmax) = (g[0], g[1]);
        let pairs: Vec<(u32, u32)> = (2..=rmax).flat_map(|r| (1..=lmax).map(move |l| (r, l))).collect();
        let reports = pairs.par_iter().map(|&(r, l)| structure_report(r, l)).collect::<Result<Vec<_>, _>>()?;
        let all_ok = reports.iter().all(StructureReport::ok);
        let code = if all_ok { exit::OK } else { exit::VIOLATION };
        return Ok(Output { json: document("structure", StructureGrid { rmax, lmax, all_ok, reports }), code });
    }
    let (Some(r), Some(ell)) = (r, ell) else {
        return Err(CliError::Invalid("--r and --ell, or --grid RMAX LMAX".into()));
    };
    let rep = structure_report(r, ell)?;
    let code = if rep.ok() { exit::OK } else { exit::VIOLATION };
    Ok(Output { json: document("structure", &rep), code })
}

#[derive(Serialize)]
struct DdtSummary {
    n: u32,
    out: String,
    columns: [&'static str; 3],
    rows: usize,
    /// Entries written; zero counts are omitted.
    entries: u64,
    max_count: u32,
}

fn write_rows(path: &Path, rows: &[DDTRow]) -> CliResult<u64> {
    let io = |e: csv::Error| CliError::Invalid(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["alpha_hex", "beta_hex", "count"]).map_err(io)?;
    let mut entries = 0;
    for row in rows {
        for (b, &c) in row.counts.iter().enumerate() {
            if c > 0 {
                let beta = FieldElem::from_bits(b as u64);
                w.write_record([row.alpha.to_hex(), beta.to_hex(), c.to_string()]).map_err(io)?;
                entries += 1;
            }
        }
    }
    w.flush().map_err(|e| CliError::Invalid(format!("cannot write {}: {e}", path.display())))?;
    Ok(entries)
}

/// Largest field for which the full table is exported.
const FULL_TABLE_LIMIT: u32 = 12;

pub fn ddt(f: &UPoly, alpha: Option<&str>, out: &Path) -> CliResult<Output> {
    let ctx = f.ctx();
    let rows = match alpha {
        Some(a) => vec![ddt_row(f, parse_elem(ctx, a)?)?],
        None => {
            if ctx.n() > FULL_TABLE_LIMIT {
                return Err(CliError::Invalid(format!(
                    "full table export is limited to n <= {FULL_TABLE_LIMIT}; pass --alpha for one row"
                )));
            }
            ctx.elements().skip(1).map(|a| ddt_row(f, a)).collect::<Result<Vec<_>, _>>()?
        }
    };
    let entries = write_rows(out, &rows)?;
    ok(
        "ddt",
        DdtSummary {
            n: ctx.n(),
            out: out.display().to_string(),
            columns: ["alpha_hex", "beta_hex", "count"],
            rows: rows.len(),
            entries,
            max_count: rows.iter().map(|r| r.max_count).max().unwrap_or(0),
        },
    )
}
