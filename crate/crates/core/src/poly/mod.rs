//! Dense univariate polynomials over a binary field.
//!
//! `coeffs[i]` is the coefficient of `x^i`. For a degree-m polynomial written
//! as `f = sum_k a_{m-k} x^k` (leading coefficient `a_0`, next `a_1`, ...),
//! `a_j` is `coeffs[m - j]`; see [`UPoly::a`].

mod deriv;
mod euclid;
mod interp;
mod roots;

use std::fmt;
use std::ops::{Add, Mul};

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Embedding, FieldCtx, FieldElem};

#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    ctx: FieldCtx,
    coeffs: Vec<FieldElem>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.bits()) {
                (0, _) => write!(f, "{c}")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl UPoly {
    /// Build and normalize. Panics if a coefficient lies outside `ctx`.
    pub fn new(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Self {
        assert!(coeffs.iter().all(|&c| ctx.contains(c)), "coefficient outside {ctx:?}");
        let mut p = UPoly { ctx: ctx.clone(), coeffs };
        p.normalize();
        p
    }

    pub fn try_new(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|&&c| !ctx.contains(c)) {
            return Err(Error::ElementOutOfRange { n: ctx.n(), bits: c.bits() });
        }
        Ok(Self::new(ctx, coeffs))
    }

    pub(crate) fn from_raw(ctx: &FieldCtx, coeffs: Vec<FieldElem>) -> Self {
        let mut p = UPoly { ctx: ctx.clone(), coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(ctx: &FieldCtx) -> Self {
        UPoly { ctx: ctx.clone(), coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldCtx) -> Self {
        Self::constant(ctx, FieldElem::ONE)
    }

    pub fn x(ctx: &FieldCtx) -> Self {
        Self::monomial(ctx, FieldElem::ONE, 1)
    }

    pub fn constant(ctx: &FieldCtx, c: FieldElem) -> Self {
        Self::new(ctx, vec![c])
    }

    pub fn monomial(ctx: &FieldCtx, c: FieldElem, k: usize) -> Self {
        let mut coeffs = vec![FieldElem::ZERO; k + 1];
        coeffs[k] = c;
        Self::new(ctx, coeffs)
    }

    /// A polynomial with GF(2) coefficients given by the bits of `p`, read in `ctx`.
    pub fn from_gf2_bits(ctx: &FieldCtx, p: u128) -> Self {
        let len = 128 - p.leading_zeros() as usize;
        Self::from_raw(
            ctx,
            (0..len).map(|i| FieldElem::from_bits(((p >> i) & 1) as u64)).collect(),
        )
    }

    /// Uniformly random coefficients with nonzero leading coefficient.
    pub fn random<R: Rng + ?Sized>(ctx: &FieldCtx, degree: usize, rng: &mut R) -> Self {
        let mut coeffs: Vec<FieldElem> = (0..degree).map(|_| ctx.random(rng)).collect();
        coeffs.push(ctx.random_nonzero(rng));
        Self::from_raw(ctx, coeffs)
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElem> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FieldElem {
        self.coeffs.last().copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    /// Coefficient `a_j` in top-down indexing, `a_j = coeffs[deg - j]`.
    pub fn a(&self, j: usize) -> FieldElem {
        match self.degree() {
            Some(m) if j <= m => self.coeffs[m - j],
            _ => FieldElem::ZERO,
        }
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == FieldElem::ONE
    }

    pub(crate) fn check_ctx(&self, other: &UPoly) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &UPoly) -> Result<UPoly> {
        self.check_ctx(other)?;
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Ok(UPoly::from_raw(&self.ctx, coeffs))
    }

    pub fn try_mul(&self, other: &UPoly) -> Result<UPoly> {
        self.check_ctx(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(UPoly::zero(&self.ctx));
        }
        let mut coeffs = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += self.ctx.mul(a, b);
            }
        }
        Ok(UPoly::from_raw(&self.ctx, coeffs))
    }

    /// `self + c` for a constant `c`.
    pub fn add_constant(&self, c: FieldElem) -> UPoly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push(c);
        } else {
            coeffs[0] += c;
        }
        UPoly::from_raw(&self.ctx, coeffs)
    }

    pub fn scale(&self, c: FieldElem) -> UPoly {
        UPoly::from_raw(&self.ctx, self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect())
    }

    /// Square, using `(sum c_i x^i)^2 = sum c_i^2 x^(2i)`.
    pub fn square(&self) -> UPoly {
        let mut coeffs = vec![FieldElem::ZERO; (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = self.ctx.sqr(c);
        }
        UPoly::from_raw(&self.ctx, coeffs)
    }

    pub fn pow(&self, mut k: u64) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = base.square();
            }
        }
        acc
    }

    /// Make monic; the zero polynomial stays zero.
    pub fn monic(&self) -> UPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.ctx.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, x: FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| self.ctx.mul(acc, x) + c)
    }

    /// `self(g(x))`.
    pub fn compose(&self, g: &UPoly) -> Result<UPoly> {
        self.check_ctx(g)?;
        let mut acc = UPoly::zero(&self.ctx);
        for &c in self.coeffs.iter().rev() {
            acc = (&acc * g).add_constant(c);
        }
        Ok(acc)
    }

    /// `self(x + a)`, a Taylor shift.
    pub fn shift(&self, a: FieldElem) -> UPoly {
        let lin = UPoly::new(&self.ctx, vec![a, FieldElem::ONE]);
        self.compose(&lin).expect("same context")
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, d: &UPoly) -> Result<(UPoly, UPoly)> {
        self.check_ctx(d)?;
        let dd = d.degree().ok_or(Error::ZeroPolynomial)?;
        let Some(ds) = self.degree() else {
            return Ok((UPoly::zero(&self.ctx), UPoly::zero(&self.ctx)));
        };
        if ds < dd {
            return Ok((UPoly::zero(&self.ctx), self.clone()));
        }
        let inv_lc = self.ctx.inv(d.lc())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![FieldElem::ZERO; ds - dd + 1];
        for i in (dd..=ds).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let t = self.ctx.mul(c, inv_lc);
            q[i - dd] = t;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                r[i - dd + j] += self.ctx.mul(t, dc);
            }
        }
        r.truncate(dd);
        Ok((UPoly::from_raw(&self.ctx, q), UPoly::from_raw(&self.ctx, r)))
    }

    pub fn rem(&self, d: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Map the coefficients through a field embedding.
    pub fn embed(&self, emb: &Embedding) -> Result<UPoly> {
        if &self.ctx != emb.base() {
            return Err(Error::ContextMismatch);
        }
        let coeffs = self.coeffs.iter().map(|&c| emb.embed(c)).collect::<Result<Vec<_>>>()?;
        Ok(UPoly::from_raw(emb.ext(), coeffs))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    /// Panics on a context mismatch; use [`UPoly::try_add`] to get an error instead.
    fn add(self, rhs: &UPoly) -> UPoly {
        self.try_add(rhs).expect("polynomials over different fields")
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    /// Panics on a context mismatch; use [`UPoly::try_mul`] to get an error instead.
    fn mul(self, rhs: &UPoly) -> UPoly {
        self.try_mul(rhs).expect("polynomials over different fields")
    }
}
