//! Reproducible randomness: every trial draws from its own ChaCha stream,
//! addressed by (seed, purpose, index), so results do not depend on the
//! order or partitioning in which trials run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{FieldCtx, FieldElem};
use crate::poly::UPoly;

/// Purposes get disjoint ChaCha streams.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Polynomial = 1,
    Alpha = 2,
    Beta = 3,
    Interpolation = 4,
    Scaling = 5,
    Verify = 6,
}

/// The generator for trial `index` of `purpose` under `seed`.
pub fn trial_rng(seed: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose as u64);
    // 2^32 words per trial
    rng.set_word_pos((index as u128) << 32);
    rng
}

/// A random degree-`m` polynomial with `a_0 != 0` and `a_1 != 0`.
pub fn random_poly_a1_nonzero(ctx: &FieldCtx, m: usize, seed: u64, index: u64) -> UPoly {
    let mut rng = trial_rng(seed, Purpose::Polynomial, index);
    let mut coeffs: Vec<FieldElem> = (0..m.saturating_sub(1)).map(|_| ctx.random(&mut rng)).collect();
    coeffs.push(ctx.random_nonzero(&mut rng));
    coeffs.push(ctx.random_nonzero(&mut rng));
    UPoly::new(ctx, coeffs)
}
