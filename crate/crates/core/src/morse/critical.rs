use crate::error::{Error, Result};
use crate::field::FieldElem;
use crate::poly::UPoly;

/// Whether `g'` and the second Hasse derivative of `g` are coprime.
pub fn has_nondegenerate_critical_points(g: &UPoly) -> Result<bool> {
    let dg = g.derivative();
    if dg.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(dg.gcd(&g.hasse2())?.degree() == Some(0))
}

/// Monic `c(y) = prod_i (y - g(t_i))` over the roots `t_i` of `s`, where
/// `s^2 = g'` and `deg g = d` is odd.
///
/// `c(y) = Res_x(s, g + y) / lc(s)^d`, evaluated at `deg s + 1` points and
/// interpolated. With `require_simple`, `s` must be squarefree.
pub fn critical_value_poly(g: &UPoly, require_simple: bool) -> Result<UPoly> {
    let ctx = g.ctx();
    let d = g.degree().ok_or(Error::ZeroPolynomial)?;
    if d % 2 == 0 {
        return Err(Error::EvenDegree(d));
    }
    let s = g.derivative().sqrt_even()?;
    let k = s.degree().ok_or(Error::ZeroPolynomial)?;
    if require_simple && !s.is_squarefree() {
        return Err(Error::DegenerateCriticalPoints);
    }
    if (k as u128) + 1 > ctx.order() {
        return Err(Error::FieldTooSmall { n: ctx.n(), what: format!("{} interpolation points needed", k + 1) });
    }
    let norm = ctx.inv(ctx.pow(s.lc(), d as u128))?;
    let points = (0..=k as u64)
        .map(|j| {
            let y = FieldElem::from_bits(j);
            Ok((y, ctx.mul(s.resultant(&g.add_constant(y))?, norm)))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = UPoly::interpolate(ctx, &points)?;
    if c.degree() != Some(k) || !c.is_monic() {
        return Err(Error::Invariant(format!("critical value polynomial {c:?} is not monic of degree {k}")));
    }
    Ok(c)
}

/// `prod_{i != j} (g(t_i) - g(t_j))` over the critical points `t_i`, as
/// `Res(c, c')` of the critical value polynomial. Requires nondegenerate
/// critical points.
pub fn pi_d(g: &UPoly) -> Result<FieldElem> {
    if !has_nondegenerate_critical_points(g)? {
        return Err(Error::DegenerateCriticalPoints);
    }
    pi_d_unchecked(g)
}

pub(crate) fn pi_d_unchecked(g: &UPoly) -> Result<FieldElem> {
    let c = critical_value_poly(g, false)?;
    c.resultant(&c.derivative())
}
