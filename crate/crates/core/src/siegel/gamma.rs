//! The explicit factor `γ_p(B, X)` of the local Siegel series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `γ_p(B, X)` as determined by `p`, the size `m` and, for even `m`, the
/// character value `ξ = χ_B(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub p: u64,
    pub m: usize,
    pub xi: i32,
}

impl GammaFactor {
    pub fn new(p: u64, m: usize, xi: i32) -> Self {
        assert!(m.is_multiple_of(2) || xi == 0, "ξ is only defined for even size");
        Self { p, m, xi }
    }

    /// Power-series coefficients of `γ_p` through `X^n`.
    pub fn series(&self, n: usize) -> Vec<BigInt> {
        let p = BigInt::from(self.p);
        let mut out = vec![BigInt::zero(); n + 1];
        out[0] = BigInt::one();
        let mul_poly = |s: &mut Vec<BigInt>, deg: usize, c: &BigInt| {
            // s ← s · (1 + c X^deg)
            for j in (deg..s.len()).rev() {
                let t = &s[j - deg] * c;
                s[j] += t;
            }
        };
        mul_poly(&mut out, 1, &-BigInt::one());
        for i in 1..=self.m / 2 {
            mul_poly(&mut out, 2, &-p.pow(2 * i as u32));
        }
        if self.m.is_multiple_of(2) && self.xi != 0 {
            // Divide by (1 − ξ p^{m/2} X).
            let r = BigInt::from(self.xi) * p.pow(self.m as u32 / 2);
            for j in 1..=n {
                let t = &out[j - 1] * &r;
                out[j] += t;
            }
        }
        out
    }
}
