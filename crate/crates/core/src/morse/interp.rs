use std::collections::HashSet;

use serde::Serialize;

use super::{check_nondegenerate, pi_value};
use crate::bounds::{degree_profile, pi_degree_bound, resultant_degree_bound};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::lalpha::{d_alpha, l_alpha};
use crate::poly::UPoly;
use crate::sample::{random_poly_a1_nonzero, trial_rng, Purpose};

/// Interpolation points beyond the expected degree.
const MARGIN: usize = 4;
/// Points kept back to confirm the interpolant.
const HELD_OUT: usize = 8;

/// The exact degree in `alpha` of a quantity, recovered by interpolation.
#[derive(Clone, Debug, Serialize)]
pub struct DegreeInterpolation {
    pub m: usize,
    pub n: u32,
    pub f: UPoly,
    pub degree: usize,
    pub leading: FieldElem,
    pub bound: u64,
    /// Predicted leading coefficient, where there is a formula for it.
    pub predicted_leading: Option<FieldElem>,
    pub points: usize,
    /// Nonzero `alpha` skipped because the quantity is undefined there.
    pub skipped: usize,
}

/// Interpolate `alpha -> value(alpha)` through `bound + 1 + MARGIN` nonzero
/// points and confirm the result on `HELD_OUT` further points. `value`
/// returns `None` where it is undefined.
fn interpolate_in_alpha(
    ctx: &FieldCtx,
    bound: u64,
    seed: u64,
    mut value: impl FnMut(FieldElem) -> Result<Option<FieldElem>>,
) -> Result<(UPoly, usize, usize)> {
    let fit = bound as usize + 1 + MARGIN;
    let needed = fit + HELD_OUT;
    if (needed as u128) > ctx.order() - 1 {
        return Err(Error::FieldTooSmall { n: ctx.n(), what: format!("{needed} nonzero points needed") });
    }
    let mut rng = trial_rng(seed, Purpose::Interpolation, 0);
    let mut tried = HashSet::new();
    let mut points = Vec::with_capacity(needed);
    let mut skipped = 0;
    while points.len() < needed {
        if tried.len() as u128 == ctx.order() - 1 {
            return Err(Error::FieldTooSmall { n: ctx.n(), what: "too few alphas where the value is defined".into() });
        }
        let a = ctx.random_nonzero(&mut rng);
        if !tried.insert(a) {
            continue;
        }
        match value(a)? {
            Some(v) => points.push((a, v)),
            None => skipped += 1,
        }
    }
    let p = UPoly::interpolate(ctx, &points[..fit])?;
    for &(a, v) in &points[fit..] {
        if p.evaluate(a) != v {
            return Err(Error::Invariant(format!(
                "interpolant misses a held-out point: degree in alpha exceeds {}",
                fit - 1
            )));
        }
    }
    Ok((p, fit, skipped))
}

/// Degree in `alpha` of `Res((D_a f)', (D_a f)^[2])` for a seeded random `f`
/// of degree `m` with `a0, a1 != 0`.
pub fn interp_resultant_degree(m: usize, ctx: &FieldCtx, seed: u64) -> Result<DegreeInterpolation> {
    if m % 4 != 0 || m < 8 {
        return Err(Error::DegreeNotMultipleOfFour(m));
    }
    let f = random_poly_a1_nonzero(ctx, m, seed, 0);
    let bound = resultant_degree_bound(m as u64);
    let (p, points, skipped) = interpolate_in_alpha(ctx, bound, seed, |a| {
        let dp = d_alpha(&f, a)?;
        Ok(Some(dp.derivative().resultant(&dp.hasse2())?))
    })?;
    Ok(DegreeInterpolation {
        m,
        n: ctx.n(),
        degree: p.degree().unwrap_or(0),
        leading: p.lc(),
        f,
        bound,
        predicted_leading: None,
        points,
        skipped,
    })
}

/// Degree in `alpha` of `b0^(de) Pi_d(L_a f)` and its leading coefficient,
/// against the prediction `a0^(2e) a1^(de)`. Alphas with degenerate critical
/// points are skipped.
pub fn interp_pi_degree(m: usize, ctx: &FieldCtx, seed: u64) -> Result<DegreeInterpolation> {
    let profile = degree_profile(m as u64)?;
    if !profile.admissible {
        return Err(Error::Inadmissible(m as u64));
    }
    let f = random_poly_a1_nonzero(ctx, m, seed, 0);
    let bound = pi_degree_bound(&profile);
    let (p, points, skipped) = interpolate_in_alpha(ctx, bound, seed, |a| {
        let b = l_alpha(&f, a)?;
        if !check_nondegenerate(&b)?.0 {
            return Ok(None);
        }
        Ok(Some(pi_value(&b)?))
    })?;
    let (d, e) = (profile.d as u128, profile.e as u128);
    let predicted = ctx.mul(ctx.pow(f.a(0), 2 * e), ctx.pow(f.a(1), d * e));
    Ok(DegreeInterpolation {
        m,
        n: ctx.n(),
        degree: p.degree().unwrap_or(0),
        leading: p.lc(),
        f,
        bound,
        predicted_leading: Some(predicted),
        points,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_degree_for_twelve() {
        let k = FieldCtx::default_for(8).unwrap();
        let r = interp_resultant_degree(12, &k, 1).unwrap();
        assert!(r.degree <= 88);
    }

    #[test]
    fn pi_degree_for_twelve() {
        let k = FieldCtx::default_for(8).unwrap();
        let r = interp_pi_degree(12, &k, 1).unwrap();
        assert_eq!(r.degree, 29);
        assert_eq!(Some(r.leading), r.predicted_leading);
    }

    #[test]
    fn small_field_is_rejected() {
        let k = FieldCtx::default_for(6).unwrap();
        assert!(matches!(interp_resultant_degree(12, &k, 1), Err(Error::FieldTooSmall { .. })));
    }
}
