use super::UPoly;
use crate::error::{Error, Result};
use crate::field::FieldElem;

impl UPoly {
    /// `self^(2^k) mod m`.
    fn frobenius_mod(&self, k: u32, m: &UPoly) -> Result<UPoly> {
        let mut h = self.rem(m)?;
        for _ in 0..k {
            h = h.square().rem(m)?;
        }
        Ok(h)
    }

    /// `gcd(self, x^q - x)`: the product of the distinct linear factors.
    fn linear_part(&self) -> Result<UPoly> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.ctx.n();
        let xq = UPoly::x(&self.ctx).frobenius_mod(n, self)?;
        self.gcd(&(&xq + &UPoly::x(&self.ctx)))
    }

    /// Number of distinct roots in the coefficient field: the degree of
    /// `gcd(f, x^q - x)`, with `x^q mod f` from `n` squarings.
    pub fn count_roots_in_field(&self) -> Result<usize> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if deg <= 1 {
            return Ok(deg);
        }
        let k = &self.ctx;
        let f = self.monic();
        let fc = f.coeffs();
        // h = x mod f, kept as exactly `deg` coefficients
        let mut h = vec![FieldElem::ZERO; deg];
        h[1] = FieldElem::ONE;
        let mut buf = vec![FieldElem::ZERO; 2 * deg - 1];
        for _ in 0..k.n() {
            buf.iter_mut().for_each(|c| *c = FieldElem::ZERO);
            for (i, &c) in h.iter().enumerate() {
                buf[2 * i] = k.sqr(c);
            }
            for i in (deg..buf.len()).rev() {
                let c = buf[i];
                if c.is_zero() {
                    continue;
                }
                for j in 0..deg {
                    buf[i - deg + j] += k.mul(c, fc[j]);
                }
            }
            h.copy_from_slice(&buf[..deg]);
        }
        h[1] += FieldElem::ONE;
        Ok(f.gcd(&UPoly::from_raw(k, h))?.degree().unwrap())
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).map(|g| g.degree() == Some(0)).unwrap_or(false),
        }
    }

    /// Degree over the coefficient field of the splitting field of a
    /// squarefree polynomial: the lcm of its irreducible factor degrees.
    pub fn splitting_degree(&self) -> Result<u64> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let n = self.ctx.n();
        let x = UPoly::x(&self.ctx);
        let mut f = self.monic();
        let mut h = x.rem(&f)?;
        let mut lcm = 1u64;
        let mut i = 0u64;
        while f.degree().unwrap() > 0 {
            i += 1;
            let df = f.degree().unwrap() as u64;
            if df < 2 * i {
                // what remains is irreducible
                lcm = num_integer::lcm(lcm, df);
                break;
            }
            h = h.frobenius_mod(n, &f)?;
            let g = f.gcd(&(&h + &x))?;
            if g.degree().unwrap() > 0 {
                lcm = num_integer::lcm(lcm, i);
                f = f.divrem(&g)?.0;
                h = h.rem(&f)?;
            }
        }
        Ok(lcm)
    }

    /// Distinct roots in the coefficient field, sorted by encoding.
    ///
    /// The linear part is split deterministically with the trace maps
    /// `x -> Tr(delta x)` for `delta` running over the polynomial basis.
    pub fn roots(&self) -> Result<Vec<FieldElem>> {
        let g = self.linear_part()?;
        let mut out = Vec::with_capacity(g.degree().unwrap());
        self.split_linear(g, 0, &mut out)?;
        out.sort_unstable();
        Ok(out)
    }

    fn split_linear(&self, g: UPoly, basis: u32, out: &mut Vec<FieldElem>) -> Result<()> {
        match g.degree().unwrap() {
            0 => return Ok(()),
            1 => {
                out.push(g.monic().coeff(0));
                return Ok(());
            }
            _ => {}
        }
        if basis >= self.ctx.n() {
            return Err(Error::Invariant("trace splitting did not separate roots".into()));
        }
        let delta = UPoly::monomial(&self.ctx, FieldElem::from_bits(1 << basis), 1).rem(&g)?;
        let mut t = delta.clone();
        let mut acc = delta;
        for _ in 1..self.ctx.n() {
            t = t.square().rem(&g)?;
            acc = &acc + &t;
        }
        let h = g.gcd(&acc)?;
        let dh = h.degree().unwrap();
        if dh == 0 || dh == g.degree().unwrap() {
            return self.split_linear(g, basis + 1, out);
        }
        let rest = g.divrem(&h)?.0;
        self.split_linear(h, basis + 1, out)?;
        self.split_linear(rest, basis + 1, out)
    }
}
