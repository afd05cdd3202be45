use super::UPoly;
use crate::error::{Error, Result};
use crate::field::FieldElem;

impl UPoly {
    /// Formal derivative. Only odd-exponent terms survive in characteristic 2.
    pub fn derivative(&self) -> UPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| if k % 2 == 1 { c } else { FieldElem::ZERO })
            .collect();
        UPoly::from_raw(&self.ctx, coeffs)
    }

    /// Second Hasse derivative: `x^k -> C(k,2) x^(k-2)`.
    ///
    /// `C(k,2)` is odd exactly when `k mod 4` is 2 or 3.
    pub fn hasse2(&self) -> UPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(2)
            .map(|(k, &c)| if k % 4 >= 2 { c } else { FieldElem::ZERO })
            .collect();
        UPoly::from_raw(&self.ctx, coeffs)
    }

    /// The unique `s` with `s^2 = self`, for a polynomial in even powers only.
    pub fn sqrt_even(&self) -> Result<UPoly> {
        if let Some((k, _)) = self.coeffs.iter().enumerate().find(|(k, c)| k % 2 == 1 && !c.is_zero()) {
            return Err(Error::OddExponent(k));
        }
        let coeffs = self.coeffs.iter().step_by(2).map(|&c| self.ctx.sqrt(c)).collect();
        Ok(UPoly::from_raw(&self.ctx, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn binom_parity(k: usize, j: usize) -> bool {
        // Lucas: C(k, j) odd iff j's bits are a subset of k's
        j & !k == 0
    }

    #[test]
    fn hasse2_matches_binomial_parity() {
        let k = FieldCtx::default_for(5).unwrap();
        for e in 0..40usize {
            let m = UPoly::monomial(&k, FieldElem::ONE, e);
            let expected = if e >= 2 && binom_parity(e, 2) {
                UPoly::monomial(&k, FieldElem::ONE, e - 2)
            } else {
                UPoly::zero(&k)
            };
            assert_eq!(m.hasse2(), expected, "x^{e}");
        }
    }

    #[test]
    fn hasse2_is_coefficient_of_h_squared_in_shift() {
        // f(x + h) = f(x) + f'(x) h + f^[2](x) h^2 + ...
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let k = FieldCtx::default_for(10).unwrap();
        for _ in 0..30 {
            let f = UPoly::random(&k, rng.random_range(2..25), &mut rng);
            let x0 = k.random(&mut rng);
            let shifted = f.shift(x0);
            assert_eq!(shifted.coeff(1), f.derivative().evaluate(x0));
            assert_eq!(shifted.coeff(2), f.hasse2().evaluate(x0));
        }
    }

    #[test]
    fn product_rule() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let k = FieldCtx::default_for(7).unwrap();
        for _ in 0..50 {
            let f = UPoly::random(&k, rng.random_range(0..12), &mut rng);
            let g = UPoly::random(&k, rng.random_range(0..12), &mut rng);
            let lhs = (&f * &g).derivative();
            let rhs = &(&f.derivative() * &g) + &(&f * &g.derivative());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn sqrt_even_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let k = FieldCtx::default_for(9).unwrap();
        for _ in 0..50 {
            let s = UPoly::random(&k, rng.random_range(0..10), &mut rng);
            assert_eq!(s.square().sqrt_even().unwrap(), s);
        }
        let odd = UPoly::x(&k);
        assert_eq!(odd.sqrt_even().unwrap_err(), Error::OddExponent(1));
    }
}
