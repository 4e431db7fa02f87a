//! Off-diagonal blocks completing two forms to a semidefinite one.

use rayon::prelude::*;

use super::{psd_rank_i128, HalfIntMat};

/// All integer `R` (row-major `n1 × n2`) with `[[A1, R/2], [Rᵀ/2, A2]] ≥ 0`.
pub fn enumerate_r_block(a1: &HalfIntMat, a2: &HalfIntMat) -> Vec<Vec<i64>> {
    let (n1, n2) = (a1.size(), a2.size());
    let len = n1 * n2;
    // r_ij² ≤ (2a1_ii)(2a2_jj) from the 2×2 principal minors of 2B.
    let bounds: Vec<i64> = (0..len)
        .map(|k| isqrt(a1.twice(k / n2, k / n2) * a2.twice(k % n2, k % n2)))
        .collect();
    if len == 0 {
        return vec![vec![]];
    }
    let m = n1 + n2;
    let base = HalfIntMat::from_blocks(a1, &vec![0; len], a2);
    let mut out: Vec<Vec<i64>> = (-bounds[0]..=bounds[0])
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut r = vec![0i64; len];
            r[0] = first;
            for (k, b) in bounds.iter().enumerate().skip(1) {
                r[k] = -b;
            }
            let mut t: Vec<i128> = base.twice_flat().iter().map(|&x| x as i128).collect();
            loop {
                for k in 0..len {
                    let (i, j) = (k / n2, n1 + k % n2);
                    t[i * m + j] = r[k] as i128;
                    t[j * m + i] = r[k] as i128;
                }
                if psd_rank_i128(&t, m).is_some() {
                    found.push(r.clone());
                }
                // Odometer over entries 1..len.
                let mut k = len;
                loop {
                    if k == 1 {
                        return found;
                    }
                    k -= 1;
                    if r[k] < bounds[k] {
                        r[k] += 1;
                        break;
                    }
                    r[k] = -bounds[k];
                }
            }
        })
        .collect();
    out.sort();
    out
}

fn isqrt(n: i64) -> i64 {
    let mut r = 0;
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
