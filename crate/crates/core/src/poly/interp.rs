use std::collections::HashSet;

use super::UPoly;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElem};

impl UPoly {
    /// Lagrange interpolation through `(x_i, y_i)` with distinct abscissae.
    ///
    /// Uses `M(x) = prod (x - x_i)` and `M'(x_i)`, so only one inversion
    /// per point is needed.
    pub fn interpolate(ctx: &FieldCtx, points: &[(FieldElem, FieldElem)]) -> Result<UPoly> {
        let mut seen = HashSet::with_capacity(points.len());
        for &(x, y) in points {
            if !ctx.contains(x) || !ctx.contains(y) {
                return Err(Error::ElementOutOfRange { n: ctx.n(), bits: x.bits().max(y.bits()) });
            }
            if !seen.insert(x) {
                return Err(Error::RepeatedAbscissa(x.bits()));
            }
        }
        let m = points
            .iter()
            .fold(UPoly::one(ctx), |acc, &(x, _)| &acc * &UPoly::new(ctx, vec![x, FieldElem::ONE]));
        let dm = m.derivative();
        let mut acc = vec![FieldElem::ZERO; points.len()];
        for &(x, y) in points {
            if y.is_zero() {
                continue;
            }
            let w = ctx.div(y, dm.evaluate(x))?;
            // synthetic division of M by (x - x_i)
            let mut carry = FieldElem::ZERO;
            for k in (1..m.coeffs.len()).rev() {
                carry = m.coeffs[k] + ctx.mul(carry, x);
                acc[k - 1] += ctx.mul(w, carry);
            }
        }
        Ok(UPoly::from_raw(ctx, acc))
    }
}
