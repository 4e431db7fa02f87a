//! Splitting off the radical, and a greedy reduction used for cache keys.

use super::HalfIntMat;
use crate::{Error, Result};

/// Returns a positive definite `B̃` of size `r` with `B ~ B̃ ⊥ 0` over `ℤ`.
pub fn reduce_nondegenerate(b: &HalfIntMat) -> Result<(HalfIntMat, usize)> {
    let r = b.psd_rank().ok_or(Error::NotPsd)?;
    let m = b.size();
    if r == m {
        return Ok((b.clone(), r));
    }
    let v = column_hermite_transform(b.twice_flat(), m);
    // The first r columns of V complete a basis whose remaining columns span
    // the radical.
    let mut u = vec![0i64; m * r];
    for i in 0..m {
        for j in 0..r {
            u[i * r + j] = i64::try_from(v[i * m + j]).expect("unimodular transform overflow");
        }
    }
    let reduced = b.transform(&u, r);
    debug_assert!(reduced.is_pd());
    Ok((reduced, r))
}

/// Unimodular `V` with `M·V = [H | 0]`, `H` of full column rank.
fn column_hermite_transform(m_flat: &[i64], n: usize) -> Vec<i128> {
    let mut a: Vec<i128> = m_flat.iter().map(|&x| x as i128).collect();
    let mut v: Vec<i128> = (0..n * n).map(|k| i128::from(k / n == k % n)).collect();
    let col_op = |mat: &mut Vec<i128>, rows: usize, c1: usize, c2: usize, x: [i128; 4]| {
        // (col c1, col c2) ← (x0·c1 + x1·c2, x2·c1 + x3·c2)
        for i in 0..rows {
            let (p, q) = (mat[i * n + c1], mat[i * n + c2]);
            mat[i * n + c1] = x[0] * p + x[1] * q;
            mat[i * n + c2] = x[2] * p + x[3] * q;
        }
    };
    let mut pivot = 0;
    for row in 0..n {
        if pivot == n {
            break;
        }
        for c in pivot + 1..n {
            let (p, q) = (a[row * n + pivot], a[row * n + c]);
            if q == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(p, q);
            let ops = [s, t, -q / g, p / g];
            col_op(&mut a, n, pivot, c, ops);
            col_op(&mut v, n, pivot, c, ops);
        }
        if a[row * n + pivot] != 0 {
            pivot += 1;
        }
    }
    v
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Greedy size reduction with diagonal sorting and sign normalization.
/// Returns the upper triangle of the reduced `2B`.
pub(super) fn greedy_reduce(b: &HalfIntMat) -> Vec<i64> {
    let m = b.size();
    let mut t = b.twice_flat().to_vec();
    let swap = |t: &mut Vec<i64>, i: usize, j: usize| {
        for k in 0..m {
            t.swap(i * m + k, j * m + k);
        }
        for k in 0..m {
            t.swap(k * m + i, k * m + j);
        }
    };
    // e_j ← e_j − q e_i
    let shear = |t: &mut Vec<i64>, i: usize, j: usize, q: i64| {
        for k in 0..m {
            t[k * m + j] -= q * t[k * m + i];
        }
        for k in 0..m {
            t[j * m + k] -= q * t[i * m + k];
        }
    };
    for _ in 0..64 {
        let mut changed = false;
        for i in 0..m {
            for j in 0..m.saturating_sub(1 + i) {
                if t[(j + 1) * m + j + 1] < t[j * m + j] {
                    swap(&mut t, j, j + 1);
                    changed = true;
                }
            }
        }
        for i in 0..m {
            let d = t[i * m + i];
            if d <= 0 {
                continue;
            }
            for j in 0..m {
                if j == i {
                    continue;
                }
                let q = (2 * t[i * m + j] + d).div_euclid(2 * d);
                if q != 0 && t[j * m + j] >= d {
                    shear(&mut t, i, j, q);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    for j in 1..m {
        if let Some(i) = (0..j).find(|&i| t[i * m + j] != 0) {
            if t[i * m + j] < 0 {
                for k in 0..m {
                    t[k * m + j] = -t[k * m + j];
                    t[j * m + k] = -t[j * m + k];
                }
            }
        }
    }
    let mut key = Vec::with_capacity(m * (m + 1) / 2);
    for i in 0..m {
        for j in i..m {
            key.push(t[i * m + j]);
        }
    }
    key
}
