//! Arithmetic in GF(2^n) for n <= 64.
//!
//! A [`FieldCtx`] pins the field by an irreducible modulus; elements are
//! plain [`FieldElem`] words interpreted relative to a context. Addition needs
//! no context (it is XOR) and is available through `+`; everything else goes
//! through the context.

mod artin_schreier;
mod embedding;
pub mod gf2x;
mod unity;

use std::fmt;
use std::ops::{Add, AddAssign};
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use artin_schreier::AsSolver;
use gf2x::Reducer;

pub use embedding::Embedding;
pub use unity::{dth_roots_of_unity, factor_u64, multiplicative_order_of_two};

/// An element of a binary field, as its bit encoding in the polynomial basis.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElem(u64);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Wrap raw bits without checking them against any field.
    pub const fn from_bits(bits: u64) -> Self {
        FieldElem(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        parse_hex_u64(s).map(FieldElem)
    }
}

pub(crate) fn parse_hex_u64(s: &str) -> Result<u64> {
    let t = s.trim();
    let t = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u64::from_str_radix(t, 16).map_err(|e| Error::InvalidArgument(format!("bad hex {s:?}: {e}")))
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    #[inline]
    fn add(self, rhs: FieldElem) -> FieldElem {
        FieldElem(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElem {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElem) {
        self.0 ^= rhs.0;
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        FieldElem::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

struct Inner {
    n: u32,
    modulus: u128,
    red: Reducer,
    /// Trace is the parity of `bits & trace_mask`.
    trace_mask: u64,
    as_solver: AsSolver,
}

/// The field GF(2^n) = GF(2)[x] / (modulus). Cheap to clone and share.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.n == other.0.n && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})[{:#x}]", self.0.n, self.0.modulus)
    }
}

fn default_modulus(n: u32) -> u128 {
    static CACHE: OnceLock<Mutex<[u128; 65]>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new([0; 65]));
    let mut table = cache.lock().unwrap_or_else(|e| e.into_inner());
    if table[n as usize] == 0 {
        table[n as usize] = gf2x::least_irreducible(n);
    }
    table[n as usize]
}

impl FieldCtx {
    /// Build GF(2^n). Without an explicit modulus the least irreducible
    /// polynomial of degree n (by bit encoding, constant term set) is used.
    pub fn new(n: u32, modulus: Option<u128>) -> Result<Self> {
        if !(1..=64).contains(&n) {
            return Err(Error::DegreeOutOfRange(n));
        }
        let modulus = match modulus {
            None => default_modulus(n),
            Some(m) => {
                if m == 0 || gf2x::degree(m) != n {
                    return Err(Error::ModulusDegree { n, modulus: m });
                }
                if !gf2x::is_irreducible(m) {
                    return Err(Error::ReducibleModulus(m));
                }
                m
            }
        };
        let red = Reducer::new(modulus);
        let mut inner = Inner {
            n,
            modulus,
            red,
            trace_mask: 0,
            as_solver: AsSolver::default(),
        };
        inner.trace_mask = (0..n)
            .filter(|&i| trace_by_squaring(&inner.red, n, 1u64 << i) == 1)
            .fold(0u64, |m, i| m | (1u64 << i));
        inner.as_solver = AsSolver::build(&inner.red, n);
        Ok(FieldCtx(Arc::new(inner)))
    }

    /// GF(2^n) with its default modulus.
    pub fn default_for(n: u32) -> Result<Self> {
        Self::new(n, None)
    }

    pub fn gf2() -> Self {
        Self::new(1, None).expect("GF(2) is always constructible")
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn modulus(&self) -> u128 {
        self.0.modulus
    }

    /// Number of elements, 2^n.
    pub fn order(&self) -> u128 {
        1u128 << self.0.n
    }

    /// Mask of valid element bits.
    pub fn mask(&self) -> u64 {
        self.0.red.mask
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        a.0 & !self.0.red.mask == 0
    }

    pub fn elem(&self, bits: u64) -> Result<FieldElem> {
        let a = FieldElem(bits);
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { n: self.0.n, bits })
        }
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator(&self) -> FieldElem {
        FieldElem(self.0.red.reduce(2))
    }

    /// Iterate over all 2^n elements in bit order. Only sensible for small n.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        let top = self.0.red.mask;
        (0..=top).map(FieldElem)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        FieldElem(rng.random::<u64>() & self.0.red.mask)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElem {
        loop {
            let a = self.random(rng);
            if !a.is_zero() {
                return a;
            }
        }
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.0.red.mul(a.0, b.0))
    }

    #[inline]
    pub fn sqr(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.red.mul(a.0, a.0))
    }

    /// `a^(2^k)`.
    pub fn frobenius(&self, a: FieldElem, k: u32) -> FieldElem {
        let mut r = a;
        for _ in 0..k % self.0.n {
            r = self.sqr(r);
        }
        r
    }

    /// Square root, the inverse of the Frobenius: `a^(2^(n-1))`.
    pub fn sqrt(&self, a: FieldElem) -> FieldElem {
        self.frobenius(a, self.0.n - 1)
    }

    pub fn pow(&self, a: FieldElem, mut e: u128) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.sqr(base);
            e >>= 1;
        }
        acc
    }

    /// Inverse by the extended Euclidean algorithm over GF(2)[x].
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (mut u, mut v) = (a.0 as u128, self.0.modulus);
        let (mut g1, mut g2) = (1u128, 0u128);
        while u != 1 {
            let du = gf2x::degree(u);
            let dv = gf2x::degree(v);
            if du < dv {
                std::mem::swap(&mut u, &mut v);
                std::mem::swap(&mut g1, &mut g2);
                continue;
            }
            let j = du - dv;
            u ^= v << j;
            g1 ^= g2 << j;
        }
        Ok(FieldElem(gf2x::rem(g1, self.0.modulus) as u64))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    #[inline]
    pub fn trace(&self, a: FieldElem) -> u8 {
        ((a.0 & self.0.trace_mask).count_ones() & 1) as u8
    }

    /// Trace computed as `a + a^2 + ... + a^(2^(n-1))`.
    pub fn trace_by_squaring(&self, a: FieldElem) -> u8 {
        trace_by_squaring(&self.0.red, self.0.n, a.0)
    }

    /// Solve `x^2 + alpha x = c`.
    ///
    /// A solution exists iff `trace(c / alpha^2) = 0`; the two solutions are
    /// `x` and `x + alpha`, and the one with the smaller encoding is returned.
    pub fn solve_artin_schreier(&self, alpha: FieldElem, c: FieldElem) -> Result<Option<FieldElem>> {
        if alpha.is_zero() {
            return Err(Error::ZeroAlpha);
        }
        let a2 = self.sqr(alpha);
        let u = self.div(c, a2)?;
        if self.trace(u) != 0 {
            return Ok(None);
        }
        let y = if self.0.n % 2 == 1 {
            self.half_trace(u)
        } else {
            self.solve_y2_plus_y(u)
                .ok_or_else(|| Error::Invariant("trace-zero element without preimage".into()))?
        };
        let x = self.mul(alpha, y);
        Ok(Some(x.min(x + alpha)))
    }

    /// `sum_{i=0}^{(n-1)/2} u^(4^i)`; for odd n it solves `y^2 + y = u`
    /// whenever `trace(u) = 0`.
    pub fn half_trace(&self, u: FieldElem) -> FieldElem {
        let mut acc = u;
        let mut t = u;
        for _ in 0..(self.0.n - 1) / 2 {
            t = self.sqr(self.sqr(t));
            acc += t;
        }
        acc
    }

    /// Some `y` with `y^2 + y = u` via the cached linear-algebra preimage
    /// table, or `None` if `u` has nonzero trace.
    pub fn solve_y2_plus_y(&self, u: FieldElem) -> Option<FieldElem> {
        self.0.as_solver.solve(u.0).map(FieldElem)
    }

    /// Evaluate a GF(2)[x] bit polynomial at `a`.
    pub fn eval_gf2_poly(&self, p: u128, a: FieldElem) -> FieldElem {
        if p == 0 {
            return FieldElem::ZERO;
        }
        let mut acc = FieldElem::ZERO;
        for i in (0..=gf2x::degree(p)).rev() {
            acc = self.mul(acc, a);
            if (p >> i) & 1 == 1 {
                acc += FieldElem::ONE;
            }
        }
        acc
    }
}

fn trace_by_squaring(red: &Reducer, n: u32, a: u64) -> u8 {
    let mut acc = a;
    let mut t = a;
    for _ in 1..n {
        t = red.mul(t, t);
        acc ^= t;
    }
    debug_assert!(acc <= 1, "trace left GF(2)");
    acc as u8
}
