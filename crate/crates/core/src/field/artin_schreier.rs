use super::gf2x::Reducer;

/// Preimage table for the GF(2)-linear map `y -> y^2 + y`.
///
/// Images of the basis vectors are kept in echelon form indexed by leading
/// bit, each paired with a preimage. The image is the trace-zero hyperplane.
#[derive(Default)]
pub(super) struct AsSolver {
    pivots: Vec<Option<(u64, u64)>>,
}

impl AsSolver {
    pub(super) fn build(red: &Reducer, n: u32) -> Self {
        let mut pivots: Vec<Option<(u64, u64)>> = vec![None; n as usize];
        for i in 0..n {
            let e = 1u64 << i;
            let mut img = red.mul(e, e) ^ e;
            let mut pre = e;
            while img != 0 {
                let top = 63 - img.leading_zeros();
                match pivots[top as usize] {
                    Some((pi, pp)) => {
                        img ^= pi;
                        pre ^= pp;
                    }
                    None => {
                        pivots[top as usize] = Some((img, pre));
                        break;
                    }
                }
            }
        }
        AsSolver { pivots }
    }

    pub(super) fn solve(&self, mut u: u64) -> Option<u64> {
        let mut pre = 0u64;
        while u != 0 {
            let top = 63 - u.leading_zeros();
            let (pi, pp) = self.pivots.get(top as usize).copied().flatten()?;
            u ^= pi;
            pre ^= pp;
        }
        Some(pre)
    }
}
