//! The derivative `D_a f(x) = f(x + a) + f(x)` and the half-degree operator
//! `L_a f` defined by `L_a f(x(x + a)) = D_a f(x)`.

use serde::Serialize;

use crate::bounds::degree_profile;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};
use crate::poly::UPoly;

/// `f(x + alpha) + f(x)`.
pub fn d_alpha(f: &UPoly, alpha: FieldElem) -> Result<UPoly> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    Ok(&f.shift(alpha) + f)
}

/// `T_alpha(x) = x^2 + alpha x`.
pub fn t_alpha(ctx: &FieldCtx, alpha: FieldElem) -> UPoly {
    UPoly::new(ctx, vec![FieldElem::ZERO, alpha, FieldElem::ONE])
}

/// Find `g` with `g(x^2 + alpha x) = p`, or fail if no such `g` exists.
///
/// Works top-down: `T^k` is monic of degree `2k`, so the coefficient of
/// `x^(2k)` in the running residual fixes the coefficient of `y^k`. Whatever
/// is left at the end must be zero.
pub fn lift_through_t(p: &UPoly, alpha: FieldElem) -> Result<UPoly> {
    let ctx = p.ctx();
    let Some(deg) = p.degree() else {
        return Ok(UPoly::zero(ctx));
    };
    let top = deg / 2;
    let t = t_alpha(ctx, alpha);
    let mut powers = Vec::with_capacity(top + 1);
    powers.push(UPoly::one(ctx));
    for k in 1..=top {
        powers.push(&powers[k - 1] * &t);
    }
    let mut residual = p.coeffs().to_vec();
    let mut g = vec![FieldElem::ZERO; top + 1];
    for k in (0..=top).rev() {
        let c = residual.get(2 * k).copied().unwrap_or(FieldElem::ZERO);
        if c.is_zero() {
            continue;
        }
        g[k] = c;
        for (i, &tc) in powers[k].coeffs().iter().enumerate() {
            residual[i] += ctx.mul(c, tc);
        }
    }
    if let Some(i) = residual.iter().position(|c| !c.is_zero()) {
        return Err(Error::Invariant(format!(
            "no preimage under composition with x^2 + alpha x (residual at x^{i})"
        )));
    }
    Ok(UPoly::new(ctx, g))
}

/// `f`, `alpha`, `D_a f`, `L_a f` and the coefficients `b_i` of `x^(d-i)` in
/// `L_a f`, where `d = (m - 2) / 2`.
#[derive(Clone, Debug, Serialize)]
pub struct DerivativeBundle {
    pub f: UPoly,
    pub alpha: FieldElem,
    pub d_alpha_f: UPoly,
    pub l_alpha_f: UPoly,
    pub d: usize,
    pub b: Vec<FieldElem>,
}

impl DerivativeBundle {
    pub fn m(&self) -> usize {
        self.f.degree().unwrap_or(0)
    }

    pub fn b0(&self) -> FieldElem {
        self.b[0]
    }

    pub fn b1(&self) -> FieldElem {
        self.b.get(1).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.f.ctx()
    }
}

/// Compute `L_a f` for `deg f = m ≡ 0 (mod 4)`, with the defining identity
/// re-checked by composition before returning.
///
/// A constant `f` (degree 0) gives `L_a f = 0`.
pub fn l_alpha(f: &UPoly, alpha: FieldElem) -> Result<DerivativeBundle> {
    if alpha.is_zero() {
        return Err(Error::ZeroAlpha);
    }
    let m = f.degree().unwrap_or(0);
    if m % 4 != 0 {
        return Err(Error::DegreeNotMultipleOfFour(m));
    }
    let ctx = f.ctx();
    let dp = d_alpha(f, alpha)?;
    let l = lift_through_t(&dp, alpha)?;
    if l.compose(&t_alpha(ctx, alpha))? != dp {
        return Err(Error::Invariant("L(x(x+alpha)) != D f".into()));
    }
    let d = m.saturating_sub(2) / 2;
    if l.degree().is_some_and(|dl| dl > d) {
        return Err(Error::Invariant(format!("deg L = {:?} exceeds {d}", l.degree())));
    }
    let b = (0..=d).map(|i| l.coeff(d - i)).collect();
    Ok(DerivativeBundle {
        f: f.clone(),
        alpha,
        d_alpha_f: dp,
        l_alpha_f: l,
        d,
        b,
    })
}

/// `L_a(x^m) = a^m + sum_{k<l} a^(m - 2^(r+k+1)) x^(2^(r+k))` for `m = 2^r (2^l + 1)`.
pub fn l_alpha_monomial(ctx: &FieldCtx, m: u64, alpha: FieldElem) -> Result<UPoly> {
    let p = degree_profile(m)?;
    if !p.shape_ok || p.r < 2 || p.ell < 1 {
        return Err(Error::NotSpecialShape(m));
    }
    let mut coeffs = vec![FieldElem::ZERO; 1 + (1usize << (p.r + p.ell - 1))];
    coeffs[0] = ctx.pow(alpha, m as u128);
    for k in 0..p.ell {
        let e = m - (1u64 << (p.r + k + 1));
        coeffs[1 << (p.r + k)] = ctx.pow(alpha, e as u128);
    }
    UPoly::try_new(ctx, coeffs)
}

/// `b_1` from its closed form in `a_0..a_3` and `alpha`:
/// `a2 a^2 + a3 a` when `m ≡ 0 (mod 8)`, plus `a0 a^4 + a1 a^3` when `m ≡ 4 (mod 8)`.
pub fn b1_closed_form(f: &UPoly, alpha: FieldElem) -> Result<FieldElem> {
    let m = f.degree().unwrap_or(0);
    if m % 4 != 0 {
        return Err(Error::DegreeNotMultipleOfFour(m));
    }
    let k = f.ctx();
    let pw = |e: u128| k.pow(alpha, e);
    let mut b1 = k.mul(f.a(2), pw(2)) + k.mul(f.a(3), alpha);
    if m % 8 == 4 {
        b1 += k.mul(f.a(0), pw(4)) + k.mul(f.a(1), pw(3));
    }
    Ok(b1)
}

/// Apply `a_j -> lambda^j a_j` (top-down indexing) to `f`.
pub fn scale_weighted(f: &UPoly, lambda: FieldElem) -> UPoly {
    let k = f.ctx();
    let m = f.degree().unwrap_or(0);
    let coeffs = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| k.mul(c, k.pow(lambda, (m - i) as u128)))
        .collect();
    UPoly::new(k, coeffs)
}
