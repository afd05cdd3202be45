//! Per-`alpha` certification that `L_a f` is a Morse polynomial, the trace
//! condition, and scans over `alpha`.

mod critical;
mod interp;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{degree_profile, pi_degree_bound, resultant_degree_bound};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::lalpha::{l_alpha, DerivativeBundle};
use crate::poly::UPoly;
use crate::sample::{trial_rng, Purpose};

pub use critical::{critical_value_poly, has_nondegenerate_critical_points, pi_d};
pub use interp::{interp_pi_degree, interp_resultant_degree, DegreeInterpolation};

/// Largest field scanned exhaustively by [`alpha_scan`].
pub const EXHAUSTIVE_LIMIT: u32 = 20;

/// Verdicts for one `alpha`.
///
/// `morse` is the conjunction of the first three conditions; the trace
/// condition is reported separately.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseReport {
    pub alpha: FieldElem,
    /// Critical points of `L_a f` are nondegenerate.
    pub nondegenerate: bool,
    /// Critical values of `L_a f` are pairwise distinct (certified by `pi_value != 0`).
    pub distinct_critical_values: bool,
    /// `deg L_a f` is odd.
    pub odd_degree: bool,
    /// `x^2 + a x = b1 / b0` has a solution in the field.
    pub trace_condition: bool,
    /// `Res((D_a f)', (D_a f)^[2])`.
    pub resultant_value: FieldElem,
    /// `b0^(de) Pi_d(L_a f)`; absent when the critical points are degenerate.
    pub pi_value: Option<FieldElem>,
    pub witness_x: Option<FieldElem>,
    pub morse: bool,
}

impl MorseReport {
    /// Morse and trace condition together: the `alpha` is usable for certification.
    pub fn certified(&self) -> bool {
        self.morse && self.trace_condition
    }
}

fn require_a1(bundle: &DerivativeBundle) -> Result<()> {
    if bundle.f.a(1).is_zero() {
        Err(Error::VanishingSecondCoefficient)
    } else {
        Ok(())
    }
}

/// `Res((D_a f)', (D_a f)^[2])` and whether it is nonzero.
pub fn check_nondegenerate(bundle: &DerivativeBundle) -> Result<(bool, FieldElem)> {
    require_a1(bundle)?;
    let dp = &bundle.d_alpha_f;
    let res = dp.derivative().resultant(&dp.hasse2())?;
    Ok((!res.is_zero(), res))
}

/// The same verdict computed on `g = L_a f` as `gcd(g', g^[2]) = 1`.
pub fn check_nondegenerate_on_l(bundle: &DerivativeBundle) -> Result<bool> {
    require_a1(bundle)?;
    has_nondegenerate_critical_points(&bundle.l_alpha_f)
}

/// `Tr(b1 / (b0 a^2)) = 0`, with a solution of `x^2 + a x = b1 / b0` as witness.
pub fn check_trace_condition(bundle: &DerivativeBundle) -> Result<(bool, Option<FieldElem>)> {
    let k = bundle.ctx();
    if bundle.b0().is_zero() {
        return Err(Error::VanishingSecondCoefficient);
    }
    let c = k.div(bundle.b1(), bundle.b0())?;
    let x = k.solve_artin_schreier(bundle.alpha, c)?;
    if let Some(x) = x {
        if k.sqr(x) + k.mul(bundle.alpha, x) != c {
            return Err(Error::Invariant("Artin-Schreier witness does not solve its equation".into()));
        }
    }
    Ok((x.is_some(), x))
}

/// `e = C((d - 1) / 2, 2)`.
fn pair_count(d: usize) -> u64 {
    let k = ((d - 1) / 2) as u64;
    k * k.saturating_sub(1) / 2
}

/// `b0^(de) Pi_d(L_a f)`, without checking nondegeneracy first.
pub fn pi_value(bundle: &DerivativeBundle) -> Result<FieldElem> {
    require_a1(bundle)?;
    let k = bundle.ctx();
    let d = bundle.d;
    let pi = critical::pi_d_unchecked(&bundle.l_alpha_f)?;
    Ok(k.mul(k.pow(bundle.b0(), (d as u64 * pair_count(d)) as u128), pi))
}

pub fn morse_report(bundle: &DerivativeBundle) -> Result<MorseReport> {
    let (nondegenerate, resultant_value) = check_nondegenerate(bundle)?;
    let pi = if nondegenerate { Some(pi_value(bundle)?) } else { None };
    let distinct = pi.is_some_and(|v| !v.is_zero());
    let odd_degree = bundle.l_alpha_f.degree().is_some_and(|dl| dl % 2 == 1);
    let (trace_condition, witness_x) = check_trace_condition(bundle)?;
    Ok(MorseReport {
        alpha: bundle.alpha,
        nondegenerate,
        distinct_critical_values: distinct,
        odd_degree,
        trace_condition,
        resultant_value,
        pi_value: pi,
        witness_x,
        morse: nondegenerate && distinct && odd_degree,
    })
}

/// Shorthand for `morse_report(&l_alpha(f, alpha)?)`.
pub fn report_for(f: &UPoly, alpha: FieldElem) -> Result<MorseReport> {
    morse_report(&l_alpha(f, alpha)?)
}

/// `a2^2 + a1 a3`, whose vanishing decides the trace-condition count.
pub fn trace_discriminant(f: &UPoly) -> FieldElem {
    let k = f.ctx();
    k.sqr(f.a(2)) + k.mul(f.a(1), f.a(3))
}

/// What the number of `alpha` satisfying the trace condition should be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TracePrediction {
    /// `m ≡ 0 (mod 8)`: `2^(n-1) - 1`, or `2^n - 1` when the discriminant vanishes.
    Exact { expected: u64 },
    /// `m ≡ 4 (mod 8)`, nonzero discriminant: `2 count >= 2^n - 2^(n/2+1) - 1`.
    AtLeastHalfOf { value_minus_sqrt_term: i128, sqrt_term_squared: u128 },
    /// `m ≡ 4 (mod 8)`, vanishing discriminant: two competing readings of the
    /// count, plus the value from the trace parity `Tr(1) = n mod 2`.
    Readings { all_nonzero: u64, half_minus_one: u64, trace_parity: u64 },
}

impl TracePrediction {
    pub fn for_poly(f: &UPoly) -> TracePrediction {
        let n = f.ctx().n();
        let q = 1u64 << n;
        let m = f.degree().unwrap_or(0);
        let disc_zero = trace_discriminant(f).is_zero();
        match (m % 8 == 0, disc_zero) {
            (true, false) => TracePrediction::Exact { expected: q / 2 - 1 },
            (true, true) => TracePrediction::Exact { expected: q - 1 },
            (false, false) => TracePrediction::AtLeastHalfOf {
                value_minus_sqrt_term: q as i128 - 1,
                // (2^(n/2 + 1))^2
                sqrt_term_squared: 1u128 << (n + 2),
            },
            (false, true) => {
                // Tr(b1/(b0 a^2)) = Tr(a0 a / a1) + n mod 2
                let parity = if n % 2 == 0 { q / 2 - 1 } else { q / 2 };
                TracePrediction::Readings { all_nonzero: q - 1, half_minus_one: q / 2 - 1, trace_parity: parity }
            }
        }
    }

    /// `Some(ok)` when the prediction makes a claim about `count`.
    pub fn check(&self, count: u64) -> Option<bool> {
        match *self {
            TracePrediction::Exact { expected } => Some(count == expected),
            TracePrediction::AtLeastHalfOf { value_minus_sqrt_term, sqrt_term_squared } => {
                // 2 count >= v - s  <=>  s >= v - 2 count
                let gap = value_minus_sqrt_term - 2 * count as i128;
                Some(gap <= 0 || (gap as u128) * (gap as u128) <= sqrt_term_squared)
            }
            TracePrediction::Readings { .. } => None,
        }
    }

    /// Names of the readings that `count` agrees with.
    pub fn matching_readings(&self, count: u64) -> Vec<&'static str> {
        match *self {
            TracePrediction::Readings { all_nonzero, half_minus_one, trace_parity } => [
                ("all_nonzero", all_nonzero),
                ("half_minus_one", half_minus_one),
                ("trace_parity", trace_parity),
            ]
            .into_iter()
            .filter(|&(_, v)| v == count)
            .map(|(name, _)| name)
            .collect(),
            _ => Vec::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanCounts {
    pub checked: u64,
    /// Degenerate critical points.
    pub fail_nondegenerate: u64,
    /// Nondegenerate but with coinciding critical values.
    pub fail_distinct_values: u64,
    pub trace_condition: u64,
    pub morse: u64,
    /// Morse and trace condition.
    pub certified: u64,
}

impl ScanCounts {
    fn of(r: &MorseReport) -> Self {
        ScanCounts {
            checked: 1,
            fail_nondegenerate: !r.nondegenerate as u64,
            fail_distinct_values: (r.nondegenerate && !r.distinct_critical_values) as u64,
            trace_condition: r.trace_condition as u64,
            morse: r.morse as u64,
            certified: r.certified() as u64,
        }
    }

    fn merge(self, o: Self) -> Self {
        ScanCounts {
            checked: self.checked + o.checked,
            fail_nondegenerate: self.fail_nondegenerate + o.fail_nondegenerate,
            fail_distinct_values: self.fail_distinct_values + o.fail_distinct_values,
            trace_condition: self.trace_condition + o.trace_condition,
            morse: self.morse + o.morse,
            certified: self.certified + o.certified,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanSummary {
    pub n: u32,
    pub m: usize,
    pub scan: ScanMode,
    pub counts: ScanCounts,
    /// `(m - 1)(m - 4)`.
    pub nondegenerate_failure_bound: u64,
    /// `(5d + 4) e`, for admissible `m` only.
    pub distinct_values_failure_bound: Option<u64>,
    pub trace_prediction: TracePrediction,
    /// Exhaustive scans only: whether the trace count meets its prediction.
    pub trace_prediction_holds: Option<bool>,
    pub trace_matching_readings: Vec<&'static str>,
    /// Bounds that were asserted and failed. Always empty for sampled scans.
    pub violations: Vec<String>,
}

/// Scan `alpha` over all of `GF(2^n)*` (for `n <= 20`) or over seeded samples.
pub fn alpha_scan(f: &UPoly, mode: ScanMode) -> Result<ScanSummary> {
    let ctx = f.ctx().clone();
    let m = f.degree().unwrap_or(0);
    if m % 4 != 0 || m == 0 {
        return Err(Error::DegreeNotMultipleOfFour(m));
    }
    if f.a(1).is_zero() {
        return Err(Error::VanishingSecondCoefficient);
    }
    let n = ctx.n();
    let one = |alpha: FieldElem| report_for(f, alpha).map(|r| ScanCounts::of(&r));
    let counts = match mode {
        ScanMode::Exhaustive => {
            if n > EXHAUSTIVE_LIMIT {
                return Err(Error::FieldTooLarge { n, what: "an exhaustive alpha scan" });
            }
            (1..=ctx.mask())
                .into_par_iter()
                .map(|a| one(FieldElem::from_bits(a)))
                .try_reduce(ScanCounts::default, |a, b| Ok(a.merge(b)))?
        }
        ScanMode::Sampled { samples, seed } => (0..samples)
            .into_par_iter()
            .map(|i| one(sample_alpha(&ctx, seed, i)))
            .try_reduce(ScanCounts::default, |a, b| Ok(a.merge(b)))?,
    };

    let profile = degree_profile(m as u64)?;
    let res_bound = resultant_degree_bound(m as u64);
    let pi_bound = profile.admissible.then(|| pi_degree_bound(&profile));
    let prediction = TracePrediction::for_poly(f);
    let mut violations = Vec::new();
    let (holds, readings) = if mode == ScanMode::Exhaustive {
        if counts.fail_nondegenerate > res_bound {
            violations.push(format!(
                "{} alphas with degenerate critical points exceeds (m-1)(m-4) = {res_bound}",
                counts.fail_nondegenerate
            ));
        }
        if let Some(b) = pi_bound {
            if counts.fail_distinct_values > b {
                violations.push(format!(
                    "{} alphas with coinciding critical values exceeds (5d+4)e = {b}",
                    counts.fail_distinct_values
                ));
            }
        }
        let holds = prediction.check(counts.trace_condition);
        if holds == Some(false) {
            violations.push(format!("trace-condition count {} contradicts {prediction:?}", counts.trace_condition));
        }
        (holds, prediction.matching_readings(counts.trace_condition))
    } else {
        (None, Vec::new())
    };
    Ok(ScanSummary {
        n,
        m,
        scan: mode,
        counts,
        nondegenerate_failure_bound: res_bound,
        distinct_values_failure_bound: pi_bound,
        trace_prediction: prediction,
        trace_prediction_holds: holds,
        trace_matching_readings: readings,
        violations,
    })
}

/// The `i`-th sampled nonzero `alpha` under `seed`.
pub fn sample_alpha(ctx: &FieldCtx, seed: u64, i: u64) -> FieldElem {
    ctx.random_nonzero(&mut trial_rng(seed, Purpose::Alpha, i))
}

/// Count `alpha` in `GF(2^n)*` satisfying the trace condition, using only `b0` and `b1`.
pub fn trace_condition_count(f: &UPoly) -> Result<u64> {
    let ctx = f.ctx();
    if ctx.n() > EXHAUSTIVE_LIMIT {
        return Err(Error::FieldTooLarge { n: ctx.n(), what: "an exhaustive trace count" });
    }
    (1..=ctx.mask())
        .into_par_iter()
        .map(|a| {
            let b = l_alpha(f, FieldElem::from_bits(a))?;
            Ok(check_trace_condition(&b)?.0 as u64)
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}
