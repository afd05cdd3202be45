//! Differential uniformity: exhaustive DDT rows, `delta(f)` for small
//! fields, and the constructive certificate that `delta(f) = m - 2`.

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{degree_profile, n2};
use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::lalpha::d_alpha;
use crate::morse::{report_for, MorseReport};
use crate::poly::UPoly;
use crate::sample::{trial_rng, Purpose};

/// Largest field for which [`ddt_row`] tabulates a row.
pub const DDT_ROW_LIMIT: u32 = 24;
/// Largest field for which [`delta_exhaustive`] scans every `(alpha, beta)`.
pub const DELTA_LIMIT: u32 = 14;
/// Fields up to this size are scanned for `alpha` in order rather than sampled.
const ALPHA_EXHAUSTIVE: u32 = 12;
/// Sampled `alpha` candidates before giving up.
const ALPHA_TRIES: u64 = 256;

/// One row `beta -> #{x : D_a f(x) = beta}` of the difference distribution table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DDTRow {
    pub alpha: FieldElem,
    /// Indexed by the encoding of `beta`.
    pub counts: Vec<u32>,
    pub max_count: u32,
}

impl DDTRow {
    pub fn count(&self, beta: FieldElem) -> u32 {
        self.counts[beta.bits() as usize]
    }

    /// The `beta` attaining `max_count`, in increasing order.
    pub fn argmax(&self) -> Vec<FieldElem> {
        (0..self.counts.len())
            .filter(|&b| self.counts[b] == self.max_count)
            .map(|b| FieldElem::from_bits(b as u64))
            .collect()
    }
}

fn value_table(f: &UPoly, limit: u32, what: &'static str) -> Result<Vec<u64>> {
    let ctx = f.ctx();
    if ctx.n() > limit {
        return Err(Error::FieldTooLarge { n: ctx.n(), what });
    }
    Ok(ctx.elements().map(|x| f.evaluate(x).bits()).collect())
}

fn tally(values: &[u64], alpha: u64, counts: &mut [u32]) -> u32 {
    counts.iter_mut().for_each(|c| *c = 0);
    for (x, &v) in values.iter().enumerate() {
        counts[(v ^ values[x ^ alpha as usize]) as usize] += 1;
    }
    counts.iter().copied().max().unwrap_or(0)
}

/// Evaluates `D_a f` on the whole field and tallies.
pub fn ddt_row(f: &UPoly, alpha: FieldElem) -> Result<DDTRow> {
    f.ctx().elem(alpha.bits())?;
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let values = value_table(f, DDT_ROW_LIMIT, "exhaustive DDT row")?;
    let mut counts = vec![0u32; values.len()];
    let max_count = tally(&values, alpha.bits(), &mut counts);
    Ok(DDTRow { alpha, counts, max_count })
}

/// `delta(f)` over the coefficient field, with every `(alpha, beta)` attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    pub delta: u64,
    pub witnesses: Vec<(FieldElem, FieldElem)>,
}

pub fn delta_exhaustive(f: &UPoly) -> Result<DeltaReport> {
    let values = value_table(f, DELTA_LIMIT, "exhaustive differential uniformity")?;
    let q = values.len();
    let rows: Vec<(u32, Vec<(FieldElem, FieldElem)>)> = (1..q)
        .into_par_iter()
        .map_init(
            || vec![0u32; q],
            |counts, a| {
                let max = tally(&values, a as u64, counts);
                let at = (0..q)
                    .filter(|&b| counts[b] == max)
                    .map(|b| (FieldElem::from_bits(a as u64), FieldElem::from_bits(b as u64)))
                    .collect();
                (max, at)
            },
        )
        .collect();
    let delta = rows.iter().map(|r| r.0).max().unwrap_or(0);
    let witnesses = rows.into_iter().filter(|r| r.0 == delta).flat_map(|r| r.1).collect();
    Ok(DeltaReport { delta: delta as u64, witnesses })
}

/// Number of distinct `x` in the field with `D_a f(x) = beta`, by root
/// counting, so usable in large fields.
pub fn solutions_count(f: &UPoly, alpha: FieldElem, beta: FieldElem) -> Result<u64> {
    let d = d_alpha(f, alpha)?;
    count_with_derivative(&d, beta)
}

fn count_with_derivative(d: &UPoly, beta: FieldElem) -> Result<u64> {
    let p = d.add_constant(beta);
    match p.degree() {
        None => Ok(d.ctx().order() as u64),
        Some(0) => Ok(0),
        Some(_) => Ok(p.count_roots_in_field()? as u64),
    }
}

/// A checked certificate that `delta(f) = m - 2`: `D_a f(x) = beta` has
/// `m - 2` distinct solutions.
#[derive(Clone, Debug, Serialize)]
pub struct CertWitness {
    pub n: u32,
    pub f: UPoly,
    pub alpha: FieldElem,
    pub beta: FieldElem,
    pub root_count: u64,
    pub morse_report: MorseReport,
    /// The `x0` with `beta = D_a f(x0)`.
    pub x0: FieldElem,
    /// Index of the successful trial in the `beta` stream.
    pub beta_trial: u64,
    pub alpha_tries: u64,
    /// Below the sufficient threshold `N2(m)`; success is then empirical.
    pub exploratory: bool,
    pub n_threshold: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CertOutcome {
    Certified(Box<CertWitness>),
    /// The budget ran out. Not a refutation.
    Inconclusive {
        n: u32,
        alpha: Option<FieldElem>,
        alpha_tries: u64,
        beta_trials: u64,
        reason: String,
    },
}

impl CertOutcome {
    pub fn witness(&self) -> Option<&CertWitness> {
        match self {
            CertOutcome::Certified(w) => Some(w),
            CertOutcome::Inconclusive { .. } => None,
        }
    }
}

/// First `alpha` whose Morse report certifies, with the number of candidates tried.
fn find_alpha(f: &UPoly, seed: u64) -> Result<(Option<MorseReport>, u64)> {
    let ctx = f.ctx();
    let candidates: Vec<FieldElem> = if ctx.n() <= ALPHA_EXHAUSTIVE {
        ctx.elements().skip(1).collect()
    } else {
        (0..ALPHA_TRIES).map(|i| ctx.random_nonzero(&mut trial_rng(seed, Purpose::Alpha, i))).collect()
    };
    let mut tries = 0;
    for a in candidates {
        tries += 1;
        let r = report_for(f, a)?;
        if r.certified() {
            return Ok((Some(r), tries));
        }
    }
    Ok((None, tries))
}

/// Search for `alpha` and `beta` with `m - 2` solutions. `alpha` comes from
/// Morse certification, `beta = D_a f(x0)` for `x0` drawn from trial
/// stream `i`, `i < budget`; the lowest successful `i` is returned, so the
/// result does not depend on thread count.
pub fn certify_max(f: &UPoly, budget: u64, seed: u64) -> Result<CertOutcome> {
    let ctx = f.ctx();
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let profile = degree_profile(m as u64)?;
    if !profile.admissible {
        return Err(Error::Inadmissible(m as u64));
    }
    if f.a(1).is_zero() {
        return Err(Error::VanishingSecondCoefficient);
    }
    let n = ctx.n();
    let (report, alpha_tries) = find_alpha(f, seed)?;
    let Some(report) = report else {
        return Ok(CertOutcome::Inconclusive {
            n,
            alpha: None,
            alpha_tries,
            beta_trials: 0,
            reason: "no alpha passed Morse certification".into(),
        });
    };
    let alpha = report.alpha;
    let d = d_alpha(f, alpha)?;
    let target = (m - 2) as u64;
    let trial = |i: u64| -> Option<Result<(u64, FieldElem, FieldElem)>> {
        let x0 = ctx.random(&mut trial_rng(seed, Purpose::Beta, i));
        let beta = d.evaluate(x0);
        match count_with_derivative(&d, beta) {
            Ok(c) if c == target => Some(Ok((i, x0, beta))),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        }
    };
    let hit = (0..budget).into_par_iter().find_map_first(trial).transpose()?;
    let Some((i, x0, beta)) = hit else {
        return Ok(CertOutcome::Inconclusive {
            n,
            alpha: Some(alpha),
            alpha_tries,
            beta_trials: budget,
            reason: format!("no beta with {target} solutions within {budget} trials"),
        });
    };
    // revalidate from scratch
    let p = d.add_constant(beta);
    let root_count = solutions_count(f, alpha, beta)?;
    if root_count != target || !p.is_squarefree() || p.degree() != Some(m - 2) {
        return Err(Error::Invariant(format!("witness for alpha={alpha} beta={beta} does not revalidate")));
    }
    let n_threshold = n2(m as u64)?;
    Ok(CertOutcome::Certified(Box::new(CertWitness {
        n,
        f: f.clone(),
        alpha,
        beta,
        root_count,
        morse_report: report,
        x0,
        beta_trial: i,
        alpha_tries,
        exploratory: (n as u64) < n_threshold,
        n_threshold,
    })))
}

/// Whether `f` is APN (`delta(f) = 2`) over a field small enough to scan.
pub fn is_apn(f: &UPoly) -> Result<bool> {
    Ok(delta_exhaustive(f)?.delta == 2)
}
