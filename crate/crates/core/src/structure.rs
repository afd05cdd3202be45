//! Structure of `m = 2^r (2^l + 1)`: trace polynomials `P_k`, the gcd of `d`
//! with `2^(2l) - 1`, and the critical points of `L_1(x^(m-1))`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{dth_roots_of_unity, multiplicative_order_of_two, FieldCtx, FieldElem};
use crate::lalpha::lift_through_t;
use crate::poly::UPoly;

/// `m = 2^r (2^l + 1)`, rejecting `r < 2` or `l < 1` and overflow.
fn shape(r: u32, ell: u32) -> Result<(u64, u64)> {
    if r < 2 || ell < 1 || r + ell > 60 {
        return Err(Error::InvalidArgument(format!("need r >= 2, l >= 1, r + l <= 60 (got r={r}, l={ell})")));
    }
    let m = (1u64 << r) * ((1u64 << ell) + 1);
    Ok((m, (m - 2) / 2))
}

/// `P_k(x) = x + x^2 + ... + x^(2^(k-1))` over GF(2).
pub fn trace_poly(k: u32) -> Result<UPoly> {
    if k == 0 || k > 24 {
        return Err(Error::InvalidArgument(format!("trace polynomial index {k} outside 1..=24")));
    }
    let bits = (0..k).fold(0u128, |acc, i| acc | (1u128 << (1u32 << i)));
    Ok(UPoly::from_gf2_bits(&FieldCtx::gf2(), bits))
}

/// `P_k(x)` by `k - 1` squarings.
pub fn trace_poly_eval(ctx: &FieldCtx, k: u32, x: FieldElem) -> Result<FieldElem> {
    if k == 0 {
        return Err(Error::InvalidArgument("trace polynomial index 0".into()));
    }
    let (mut acc, mut t) = (x, x);
    for _ in 1..k {
        t = ctx.sqr(t);
        acc += t;
    }
    Ok(acc)
}

fn gf2_poly(exps: impl IntoIterator<Item = usize>) -> UPoly {
    let k = FieldCtx::gf2();
    let exps: Vec<usize> = exps.into_iter().collect();
    let len = exps.iter().max().map_or(0, |&e| e + 1);
    let mut coeffs = vec![FieldElem::ZERO; len];
    for e in exps {
        coeffs[e] += FieldElem::ONE;
    }
    UPoly::new(&k, coeffs)
}

/// `P_k` raised to `2^j`, i.e. `P_k(x^(2^j))`, over GF(2).
fn trace_poly_frobenius(k: u32, j: u32) -> UPoly {
    gf2_poly((0..k).map(|i| 1usize << (i + j)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdCheck {
    pub r: u32,
    pub ell: u32,
    pub d: u64,
    /// `gcd(d, 2^(2l) - 1)`.
    pub gcd: u64,
    /// Expected value: 1 when `gcd(r, l) = 1`, 3 when it is 2, else none.
    pub expected: Option<u64>,
    pub holds: bool,
}

pub fn gcd_check(r: u32, ell: u32) -> Result<GcdCheck> {
    let (_, d) = shape(r, ell)?;
    if 2 * ell >= 64 {
        return Err(Error::InvalidArgument(format!("l = {ell} too large")));
    }
    let g = d.gcd(&((1u64 << (2 * ell)) - 1));
    let expected = match r.gcd(&ell) {
        1 => Some(1),
        2 => Some(3),
        _ => None,
    };
    Ok(GcdCheck { r, ell, d, gcd: g, expected, holds: expected.map_or(true, |e| e == g) })
}

/// `x^(2^r - 1) + (1 + sum_{k=r}^{r+l-1} x^(2^k)) sum_{k=0}^{r-1} x^(2^k - 1)`.
pub fn monomial_l1_closed_form(r: u32, ell: u32) -> Result<UPoly> {
    shape(r, ell)?;
    let left = gf2_poly(std::iter::once(0).chain((r..r + ell).map(|k| 1usize << k)));
    let right = gf2_poly((0..r).map(|k| (1usize << k) - 1));
    Ok(&gf2_poly([(1usize << r) - 1]) + &(&left * &right))
}

/// `(x + 1)^(m-1) + x^(m-1)` over GF(2), coefficients by Lucas' theorem.
fn monomial_derivative_at_one(m: u64) -> UPoly {
    let e = (m - 1) as usize;
    gf2_poly((0..e).filter(|&k| k & !e == 0))
}

/// Composition check of the closed form: `L(x^2 + x) = (x + 1)^(m-1) + x^(m-1)`,
/// plus agreement with the triangular solve and the degree `d`.
pub fn monomial_l1_identity(r: u32, ell: u32) -> Result<bool> {
    let (m, d) = shape(r, ell)?;
    let l = monomial_l1_closed_form(r, ell)?;
    let k = FieldCtx::gf2();
    let t = UPoly::new(&k, vec![FieldElem::ZERO, FieldElem::ONE, FieldElem::ONE]);
    let target = monomial_derivative_at_one(m);
    let composed = l.compose(&t)?;
    let solved = lift_through_t(&target, FieldElem::ONE)?;
    Ok(composed == target && solved == l && l.degree() == Some(d as usize))
}

/// `x^2 L_1(x^(m-1))' = P_r^2 + P_l^(2^r) P_(r-1)^2`, both sides over GF(2).
pub fn derivative_identity_sides(r: u32, ell: u32) -> Result<(UPoly, UPoly)> {
    shape(r, ell)?;
    let l = monomial_l1_closed_form(r, ell)?;
    let lhs = &UPoly::monomial(&FieldCtx::gf2(), FieldElem::ONE, 2) * &l.derivative();
    let rhs = &trace_poly_frobenius(r, 1) + &(&trace_poly_frobenius(ell, r) * &trace_poly_frobenius(r - 1, 1));
    Ok((lhs, rhs))
}

pub fn derivative_identity_check(r: u32, ell: u32) -> Result<bool> {
    let (lhs, rhs) = derivative_identity_sides(r, ell)?;
    Ok(lhs == rhs)
}

/// The critical points of `L_1(x^(m-1))`, from the `d`-th roots of unity.
#[derive(Clone, Debug, Serialize)]
pub struct MonomialRootSystem {
    pub r: u32,
    pub ell: u32,
    pub m: u64,
    pub d: u64,
    /// Degree of the field holding the roots: the order of 2 modulo `d`.
    pub big_n: u32,
    #[serde(skip)]
    pub ctx: FieldCtx,
    /// `zeta^k` for `k = 1..=(d-1)/2`: one per inverse pair, none equal to 1.
    pub thetas: Vec<FieldElem>,
    /// `1/(1 + theta) + 1/(1 + theta^2)`.
    pub taus: Vec<FieldElem>,
}

/// Order of 2 modulo `d` for the shape `(r, l)`, without building anything.
pub fn splitting_order(r: u32, ell: u32) -> Result<u64> {
    let (_, d) = shape(r, ell)?;
    multiplicative_order_of_two(d)
}

pub fn monomial_root_system(r: u32, ell: u32) -> Result<MonomialRootSystem> {
    let (m, d) = shape(r, ell)?;
    let (ctx, roots) = dth_roots_of_unity(d)?;
    let half = ((d - 1) / 2) as usize;
    let thetas: Vec<FieldElem> = roots[1..=half].to_vec();
    let mut taus = Vec::with_capacity(half);
    for &th in &thetas {
        let a = ctx.inv(FieldElem::ONE + th)?;
        let b = ctx.inv(FieldElem::ONE + ctx.sqr(th))?;
        taus.push(a + b);
    }
    let mut sorted = taus.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != taus.len() || sorted.first().is_some_and(|t| t.is_zero()) {
        return Err(Error::Invariant("critical points from roots of unity are not distinct and nonzero".into()));
    }
    let dl = monomial_l1_closed_form(r, ell)?.derivative();
    let dl = over(&ctx, &dl);
    if let Some(t) = taus.iter().find(|&&t| !dl.evaluate(t).is_zero()) {
        return Err(Error::Invariant(format!("{t} is not a root of L_1(x^(m-1))'")));
    }
    Ok(MonomialRootSystem { r, ell, m, d, big_n: ctx.n(), ctx, thetas, taus })
}

/// Read a GF(2) polynomial in another field.
fn over(ctx: &FieldCtx, p: &UPoly) -> UPoly {
    UPoly::new(ctx, p.coeffs().to_vec())
}

#[derive(Clone, Debug, Serialize)]
pub struct VanishingPairs {
    pub r: u32,
    pub ell: u32,
    /// Index pairs `(i, j)`, `i < j`, with `P_l(t_i + t_j) = 0`.
    pub pairs: Vec<(usize, usize)>,
    /// `pairs` is empty.
    pub none_vanish: bool,
    pub gcd_r_ell: u32,
    /// `none_vanish == (gcd(r, l) <= 2)`.
    pub agrees_with_gcd: bool,
}

pub fn vanishing_pairs(sys: &MonomialRootSystem) -> Result<VanishingPairs> {
    let mut pairs = Vec::new();
    for i in 0..sys.taus.len() {
        for j in i + 1..sys.taus.len() {
            if trace_poly_eval(&sys.ctx, sys.ell, sys.taus[i] + sys.taus[j])?.is_zero() {
                pairs.push((i, j));
            }
        }
    }
    let g = sys.r.gcd(&sys.ell);
    let none = pairs.is_empty();
    Ok(VanishingPairs { r: sys.r, ell: sys.ell, pairs, none_vanish: none, gcd_r_ell: g, agrees_with_gcd: none == (g <= 2) })
}

/// `P_(r-1)(t_i) != 0` for every critical point.
pub fn trace_nonzero_at_taus(sys: &MonomialRootSystem) -> Result<bool> {
    for &t in &sys.taus {
        if trace_poly_eval(&sys.ctx, sys.r - 1, t)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// On every vanishing pair: `P_(r-1)(t_i + t_j) != 0` and
/// `P_l(t_i)^(2^(r-1)) = P_r(t_i)/P_(r-1)(t_i) = P_r(t_i + t_j)/P_(r-1)(t_i + t_j)
///  = P_r(t_j)/P_(r-1)(t_j) = P_l(t_j)^(2^(r-1))`.
pub fn ratio_chain_check(sys: &MonomialRootSystem, vp: &VanishingPairs) -> Result<bool> {
    let k = &sys.ctx;
    let p = |j: u32, x: FieldElem| trace_poly_eval(k, j, x);
    let ratio = |x: FieldElem| -> Result<Option<FieldElem>> {
        let den = p(sys.r - 1, x)?;
        if den.is_zero() {
            return Ok(None);
        }
        Ok(Some(k.div(p(sys.r, x)?, den)?))
    };
    for &(i, j) in &vp.pairs {
        let (ti, tj) = (sys.taus[i], sys.taus[j]);
        let chain = [
            Some(k.frobenius(p(sys.ell, ti)?, sys.r - 1)),
            ratio(ti)?,
            ratio(ti + tj)?,
            ratio(tj)?,
            Some(k.frobenius(p(sys.ell, tj)?, sys.r - 1)),
        ];
        if chain.iter().any(|c| c.is_none()) || chain.windows(2).any(|w| w[0] != w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Everything checked at one grid point.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub r: u32,
    pub ell: u32,
    pub m: u64,
    pub d: u64,
    pub gcd_check: GcdCheck,
    pub l1_closed_form_holds: bool,
    pub derivative_identity_holds: bool,
    /// Order of 2 modulo `d`.
    pub big_n: u64,
    /// Root-system checks need `big_n <= 64`.
    pub feasible: bool,
    pub tau_count: Option<usize>,
    pub trace_nonzero_at_taus: Option<bool>,
    pub vanishing_pairs: Option<VanishingPairs>,
    pub ratio_chain_holds: Option<bool>,
}

impl StructureReport {
    /// All checks that ran came out as expected.
    pub fn ok(&self) -> bool {
        self.gcd_check.holds
            && self.l1_closed_form_holds
            && self.derivative_identity_holds
            && self.tau_count.map_or(true, |c| c as u64 == (self.d - 1) / 2)
            && self.trace_nonzero_at_taus.unwrap_or(true)
            && self.vanishing_pairs.as_ref().map_or(true, |v| v.agrees_with_gcd)
            && self.ratio_chain_holds.unwrap_or(true)
    }
}

pub fn structure_report(r: u32, ell: u32) -> Result<StructureReport> {
    let (m, d) = shape(r, ell)?;
    let big_n = multiplicative_order_of_two(d)?;
    let feasible = big_n <= 64;
    let mut rep = StructureReport {
        r,
        ell,
        m,
        d,
        gcd_check: gcd_check(r, ell)?,
        l1_closed_form_holds: monomial_l1_identity(r, ell)?,
        derivative_identity_holds: derivative_identity_check(r, ell)?,
        big_n,
        feasible,
        tau_count: None,
        trace_nonzero_at_taus: None,
        vanishing_pairs: None,
        ratio_chain_holds: None,
    };
    if feasible {
        let sys = monomial_root_system(r, ell)?;
        let vp = vanishing_pairs(&sys)?;
        rep.tau_count = Some(sys.taus.len());
        rep.trace_nonzero_at_taus = Some(trace_nonzero_at_taus(&sys)?);
        rep.ratio_chain_holds = Some(ratio_chain_check(&sys, &vp)?);
        rep.vanishing_pairs = Some(vp);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_polys() {
        let k = FieldCtx::gf2();
        assert_eq!(trace_poly(1).unwrap(), UPoly::x(&k));
        assert_eq!(trace_poly(2).unwrap(), UPoly::from_gf2_bits(&k, 0b110));
        assert!(trace_poly(0).is_err());
        let f = FieldCtx::default_for(12).unwrap();
        for x in [3u64, 77, 4000] {
            let x = FieldElem::from_bits(x);
            let y = FieldElem::from_bits(1234);
            for j in 1..6 {
                let via_poly = over(&f, &trace_poly(j).unwrap()).evaluate(x);
                assert_eq!(trace_poly_eval(&f, j, x).unwrap(), via_poly);
                assert_eq!(
                    trace_poly_eval(&f, j, x + y).unwrap(),
                    trace_poly_eval(&f, j, x).unwrap() + trace_poly_eval(&f, j, y).unwrap()
                );
            }
        }
        // P_n is the absolute trace on GF(2^n)
        for x in f.elements().take(300) {
            assert_eq!(trace_poly_eval(&f, 12, x).unwrap().bits(), f.trace(x) as u64);
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_check(2, 1).unwrap().gcd, 1);
        let c = gcd_check(2, 2).unwrap();
        assert_eq!((c.d, c.gcd, c.holds), (9, 3, true));
        let c = gcd_check(3, 3).unwrap();
        assert_eq!((c.d, c.gcd, c.expected), (35, 7, None));
    }

    #[test]
    fn closed_form_for_twelve() {
        // (x+1)^11 + x^11
        assert!(monomial_l1_identity(2, 1).unwrap());
        assert_eq!(monomial_l1_closed_form(2, 1).unwrap().degree(), Some(5));
        assert!(derivative_identity_check(2, 1).unwrap());
    }

    #[test]
    fn perturbation_breaks_identity() {
        let (lhs, rhs) = derivative_identity_sides(3, 2).unwrap();
        assert_eq!(lhs, rhs);
        let bumped = lhs.add_constant(FieldElem::ONE);
        assert_ne!(bumped, rhs);
    }

    #[test]
    fn root_system_small() {
        let sys = monomial_root_system(2, 1).unwrap();
        assert_eq!((sys.d, sys.big_n, sys.taus.len()), (5, 4, 2));
        let vp = vanishing_pairs(&sys).unwrap();
        assert!(vp.none_vanish && vp.agrees_with_gcd);
        assert!(trace_nonzero_at_taus(&sys).unwrap());
        assert!(ratio_chain_check(&sys, &vp).unwrap());
    }

    #[test]
    fn taus_are_all_roots_of_the_square_root() {
        for (r, ell) in [(2, 1), (2, 2), (3, 1), (3, 3)] {
            let sys = monomial_root_system(r, ell).unwrap();
            let s = monomial_l1_closed_form(r, ell).unwrap().derivative().sqrt_even().unwrap();
            let s = over(&sys.ctx, &s);
            let scanned: Vec<FieldElem> = sys.ctx.elements().filter(|&x| s.evaluate(x).is_zero()).collect();
            let mut taus = sys.taus.clone();
            taus.sort_unstable();
            assert_eq!(scanned, taus, "r={r} l={ell}");
            // squaring permutes the critical points
            for &t in &sys.taus {
                assert!(taus.binary_search(&sys.ctx.sqr(t)).is_ok());
            }
        }
    }

    #[test]
    fn vanishing_pair_at_3_3() {
        let sys = monomial_root_system(3, 3).unwrap();
        let vp = vanishing_pairs(&sys).unwrap();
        assert!(!vp.none_vanish && vp.agrees_with_gcd);
        assert!(ratio_chain_check(&sys, &vp).unwrap());
    }
}
