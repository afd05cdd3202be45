use super::UPoly;
use crate::error::{Error, Result};
use crate::field::FieldElem;

impl UPoly {
    /// Monic greatest common divisor. Errors if both inputs are zero.
    pub fn gcd(&self, other: &UPoly) -> Result<UPoly> {
        self.check_ctx(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Resultant `Res(self, other)`, computed by the Euclidean remainder
    /// sequence. Signs are irrelevant in characteristic 2.
    ///
    /// Conventions: the resultant with a zero polynomial is 0, and with a
    /// nonzero constant `c` it is `c^deg(other side)`.
    pub fn resultant(&self, other: &UPoly) -> Result<FieldElem> {
        self.check_ctx(other)?;
        let k = self.ctx.clone();
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.is_zero() || b.is_zero() {
            return Ok(FieldElem::ZERO);
        }
        let mut res = FieldElem::ONE;
        loop {
            let da = a.degree().unwrap() as u128;
            let db = b.degree().unwrap() as u128;
            if db == 0 {
                return Ok(k.mul(res, k.pow(b.lc(), da)));
            }
            if da == 0 {
                return Ok(k.mul(res, k.pow(a.lc(), db)));
            }
            let r = a.rem(&b)?;
            let Some(dr) = r.degree() else {
                return Ok(FieldElem::ZERO);
            };
            // Res(a, b) = lc(b)^(da - dr) Res(r, b) = lc(b)^(da - dr) Res(b, r)
            res = k.mul(res, k.pow(b.lc(), da - dr as u128));
            a = b;
            b = r;
        }
    }
}
