//! Raw GF(2)[x] arithmetic on machine words.
//!
//! Polynomials are bit vectors: bit `i` is the coefficient of `x^i`. Field
//! elements of GF(2^n) with n <= 64 fit in a `u64`, products of two of them
//! in a `u128`.

/// Carry-less 64 x 64 -> 128 bit product.
#[inline]
pub fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul_pclmul(a, b) };
        }
    }
    clmul_portable(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq", enable = "sse2")]
unsafe fn clmul_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_set_epi64x, _mm_storeu_si128};
    let r = _mm_clmulepi64_si128(_mm_set_epi64x(0, a as i64), _mm_set_epi64x(0, b as i64), 0);
    let mut out = [0u8; 16];
    _mm_storeu_si128(out.as_mut_ptr().cast(), r);
    u128::from_le_bytes(out)
}

/// Windowed shift-and-add product, four bits of `b` per step.
pub fn clmul_portable(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut table = [0u128; 16];
    for i in 1..16 {
        table[i] = (table[i >> 1] << 1) ^ if i & 1 == 1 { a } else { 0 };
    }
    let mut r = 0u128;
    for i in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * i)) & 15) as usize];
    }
    r
}

/// Degree of a nonzero bit polynomial.
#[inline]
pub fn degree(p: u128) -> u32 {
    debug_assert!(p != 0);
    127 - p.leading_zeros()
}

/// Remainder of `a` modulo nonzero `b`.
pub fn rem(mut a: u128, b: u128) -> u128 {
    let db = degree(b);
    while a != 0 {
        let da = degree(a);
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Product of two bit polynomials whose degree sum stays below 128.
pub fn mul_small(a: u128, b: u128) -> u128 {
    let mut r = 0u128;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    r
}

/// Reduction modulo a degree-n polynomial `x^n + low`.
#[derive(Clone, Copy, Debug)]
pub struct Reducer {
    pub n: u32,
    pub low: u64,
    pub mask: u64,
}

impl Reducer {
    pub fn new(modulus: u128) -> Self {
        let n = degree(modulus);
        debug_assert!((1..=64).contains(&n));
        let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Reducer {
            n,
            low: (modulus & mask as u128) as u64,
            mask,
        }
    }

    /// Reduce a product of two reduced elements.
    #[inline]
    pub fn reduce(&self, mut p: u128) -> u64 {
        loop {
            let hi = p >> self.n;
            if hi == 0 {
                return p as u64;
            }
            p = (p & self.mask as u128) ^ clmul(hi as u64, self.low);
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(clmul(a, b))
    }
}

/// Distinct-degree irreducibility test: `p` of degree n is irreducible iff
/// `gcd(x^(2^i) - x, p) = 1` for every `1 <= i <= n/2`.
pub fn is_irreducible(p: u128) -> bool {
    if p < 2 {
        return false;
    }
    let n = degree(p);
    if n > 64 {
        return false;
    }
    if n == 1 {
        return true;
    }
    if p & 1 == 0 {
        return false;
    }
    let red = Reducer::new(p);
    let x = 2u64 & red.mask;
    let mut h = x;
    for _ in 1..=n / 2 {
        h = red.mul(h, h);
        let g = gcd(p, (h ^ x) as u128);
        if degree(g) > 0 {
            return false;
        }
    }
    true
}

/// The least irreducible polynomial of degree n with nonzero constant term.
pub fn least_irreducible(n: u32) -> u128 {
    assert!((1..=64).contains(&n));
    let mut p = (1u128 << n) | 1;
    loop {
        if is_irreducible(p) {
            return p;
        }
        p += 2;
    }
}
