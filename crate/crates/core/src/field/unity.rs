use super::{FieldCtx, FieldElem};
use crate::error::{Error, Result};

/// Multiplicative order of 2 modulo odd `d` (1 for d = 1).
pub fn multiplicative_order_of_two(d: u64) -> Result<u64> {
    if d == 0 || d % 2 == 0 {
        return Err(Error::NotOdd(d));
    }
    if d == 1 {
        return Ok(1);
    }
    let mut v = 2 % d;
    let mut k = 1;
    while v != 1 {
        v = ((v as u128 * 2) % d as u128) as u64;
        k += 1;
    }
    Ok(k)
}

/// Prime factorization as sorted (prime, exponent) pairs.
///
/// Trial division by small primes, then Miller-Rabin and Pollard-Brent rho
/// on whatever cofactor remains.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    if n <= 1 {
        return Vec::new();
    }
    let mut p = 2u64;
    while p < 1 << 16 && p * p <= n {
        while n % p == 0 {
            primes.push(p);
            n /= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        split_large(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

fn split_large(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if primal_check::miller_rabin(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    loop {
        if let Some(f) = brent_rho(n, c) {
            split_large(f, out);
            split_large(n / f, out);
            return;
        }
        c += 1;
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn brent_rho(n: u64, c: u64) -> Option<u64> {
    use num_integer::Integer;
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..(r - k).min(128) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += 128;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

impl FieldCtx {
    /// The primitive element with the least encoding.
    pub fn primitive_element(&self) -> FieldElem {
        let group = (self.order() - 1) as u64;
        let primes: Vec<u64> = factor_u64(group).into_iter().map(|(p, _)| p).collect();
        (1..=self.mask())
            .map(FieldElem::from_bits)
            .find(|&g| primes.iter().all(|&p| self.pow(g, (group / p) as u128) != FieldElem::ONE))
            .expect("multiplicative group is cyclic")
    }
}

/// All d-th roots of unity, in GF(2^N) with N the order of 2 modulo d.
///
/// The list is `[zeta^0, zeta^1, ..., zeta^(d-1)]` with
/// `zeta = g^((2^N - 1)/d)` for the least primitive element `g`.
pub fn dth_roots_of_unity(d: u64) -> Result<(FieldCtx, Vec<FieldElem>)> {
    let order = multiplicative_order_of_two(d)?;
    if order > 64 {
        return Err(Error::OrderTooLarge { d, order });
    }
    let ctx = FieldCtx::default_for(order as u32)?;
    let g = ctx.primitive_element();
    let zeta = ctx.pow(g, (ctx.order() - 1) / d as u128);
    let mut roots = Vec::with_capacity(d as usize);
    let mut t = FieldElem::ONE;
    for _ in 0..d {
        roots.push(t);
        t = ctx.mul(t, zeta);
    }
    Ok((ctx, roots))
}
