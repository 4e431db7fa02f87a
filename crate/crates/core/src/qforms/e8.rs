//! Representation numbers of the E₈ lattice by exact enumeration.
//!
//! Vectors are stored in doubled coordinates `v = 2x ∈ ℤ⁸`: all entries of
//! the same parity with `Σ v ≡ 0 (mod 4)`. Then `(x, x) = |v|²/4`.

use super::HalfIntMat;
use crate::{Error, Result};

/// E₈ vectors with `(x, x)/2 ≤ max_n`, in doubled coordinates.
fn e8_vectors(max_n: i64) -> Vec<[i64; 8]> {
    let bound = 8 * max_n;
    let mut out = Vec::new();
    let mut v = [0i64; 8];
    fn rec(i: usize, rem: i64, parity: i64, v: &mut [i64; 8], out: &mut Vec<[i64; 8]>) {
        if i == 8 {
            if v.iter().sum::<i64>().rem_euclid(4) == 0 {
                out.push(*v);
            }
            return;
        }
        let mut x = 0;
        while x * x <= rem {
            x += 1;
        }
        for c in -x..=x {
            if c.rem_euclid(2) == parity && c * c <= rem {
                v[i] = c;
                rec(i + 1, rem - c * c, parity, v, out);
            }
        }
    }
    rec(0, bound, 0, &mut v, &mut out);
    rec(0, bound, 1, &mut v, &mut out);
    out
}

fn half_norm(v: &[i64; 8]) -> i64 {
    v.iter().map(|x| x * x).sum::<i64>() / 8
}

/// `#{x ∈ E₈ : (x, x)/2 = n}`.
pub fn e8_vector_count(n: i64) -> u64 {
    e8_vectors(n).iter().filter(|v| half_norm(v) == n).count() as u64
}

/// `#{(x₁, …, x_n) ∈ E₈ⁿ : ((x_i, x_j)/2) = T}` for `n ≤ 2`.
pub fn e8_pair_count(t: &HalfIntMat) -> Result<u64> {
    match t.size() {
        0 => Ok(1),
        1 => Ok(if t.twice(0, 0) < 0 { 0 } else { e8_vector_count(t.twice(0, 0) / 2) }),
        2 => {
            let (a, c) = (t.twice(0, 0) / 2, t.twice(1, 1) / 2);
            // (x, y) = 2·b₁₂ = t₀₁ and (x, y) = v·w/4.
            let ip = 4 * t.twice(0, 1);
            if a < 0 || c < 0 {
                return Ok(0);
            }
            let vs = e8_vectors(a.max(c));
            let xs: Vec<_> = vs.iter().filter(|v| half_norm(v) == a).collect();
            let ys: Vec<_> = vs.iter().filter(|v| half_norm(v) == c).collect();
            let mut count = 0u64;
            for x in &xs {
                for y in &ys {
                    if x.iter().zip(y.iter()).map(|(p, q)| p * q).sum::<i64>() == ip {
                        count += 1;
                    }
                }
            }
            Ok(count)
        }
        n => Err(Error::Unsupported(format!("E8 representation counts for size {n}"))),
    }
}
