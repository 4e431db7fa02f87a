//! The first two coefficients of `b_p(B, X)` from classes of level `p` and
//! `p²`, reduced to character sums over lines and planes of `F_pᵐ`.

use num_bigint::BigInt;

use crate::qforms::HalfIntMat;

/// `Σ_{c ∈ (ℤ/p)^×} e(ca/p)`.
fn ramanujan_p(a: i64, p: i64) -> i64 {
    if a.rem_euclid(p) == 0 {
        p - 1
    } else {
        -1
    }
}

/// `Σ_{c ∈ (ℤ/p²)^×} e(ca/p²)`.
fn ramanujan_p2(a: i64, p: i64) -> i64 {
    if a.rem_euclid(p * p) == 0 {
        p * p - p
    } else if a.rem_euclid(p) == 0 {
        -p
    } else {
        0
    }
}

/// Representatives of the lines of `F_pᵐ` (first nonzero coordinate 1).
pub(crate) fn lines(p: u64, m: usize) -> Vec<Vec<i64>> {
    let p = p as i64;
    let mut out = Vec::new();
    for lead in 0..m {
        let free = m - lead - 1;
        let total = p.pow(free as u32);
        for idx in 0..total {
            let mut v = vec![0i64; m];
            v[lead] = 1;
            let mut x = idx;
            for c in v.iter_mut().skip(lead + 1) {
                *c = x % p;
                x /= p;
            }
            out.push(v);
        }
    }
    out
}

/// Bases of the planes of `F_pᵐ` in reduced row echelon form.
fn planes(p: u64, m: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let p = p as i64;
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            // Row 1: 1 at i, 0 at j, free after i except j.
            // Row 2: 1 at j, free after j.
            let free1: Vec<usize> = (i + 1..m).filter(|&c| c != j).collect();
            let free2: Vec<usize> = (j + 1..m).collect();
            let n = free1.len() + free2.len();
            for idx in 0..p.pow(n as u32) {
                let mut r1 = vec![0i64; m];
                let mut r2 = vec![0i64; m];
                r1[i] = 1;
                r2[j] = 1;
                let mut x = idx;
                for &c in &free1 {
                    r1[c] = x % p;
                    x /= p;
                }
                for &c in &free2 {
                    r2[c] = x % p;
                    x /= p;
                }
                out.push((r1, r2));
            }
        }
    }
    out
}

fn bilinear(b: &HalfIntMat, x: &[i64], y: &[i64]) -> i64 {
    let m = b.size();
    let mut s = 0;
    for i in 0..m {
        if x[i] == 0 {
            continue;
        }
        for j in 0..m {
            s += x[i] * b.twice(i, j) * y[j];
        }
    }
    s
}

/// `[X¹] b_p(B, X) = Σ_{lines ℓ} c_p(B[x_ℓ])`.
pub fn stratum_sum_rank1(b: &HalfIntMat, p: u64) -> BigInt {
    let pi = p as i64;
    let s: i64 = lines(p, b.size()).iter().map(|x| ramanujan_p(b.eval(x), pi)).sum();
    BigInt::from(s)
}

fn count_subspaces(p: u64, m: usize, k: usize) -> BigInt {
    // Gaussian binomial [m choose k]_p.
    let p = BigInt::from(p);
    let mut num = BigInt::from(1);
    let mut den = BigInt::from(1);
    for i in 0..k {
        num *= p.pow((m - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// `[X²] b_p(B, X)`: rank-two classes of level `p` plus rank-one classes of
/// level `p²`.
pub fn stratum_sum_level2(b: &HalfIntMat, p: u64) -> BigInt {
    let m = b.size();
    let pi = p as i64;
    let e1 = stratum_sum_rank1(b, p);

    // Rank-two classes: for each plane P, the full sum over Sym₂(F_p) is p³
    // when B|_P vanishes in the dual lattice and 0 otherwise; subtract the
    // rank ≤ 1 parts.
    let isotropic = planes(p, m)
        .iter()
        .filter(|(r1, r2)| {
            b.eval(r1).rem_euclid(pi) == 0
                && b.eval(r2).rem_euclid(pi) == 0
                && bilinear(b, r1, r2).rem_euclid(pi) == 0
        })
        .count();
    let lines_per_plane_sum = if m >= 1 { count_subspaces(p, m - 1, 1) } else { BigInt::from(0) };
    let rank2 = BigInt::from(isotropic) * BigInt::from(p).pow(3)
        - lines_per_plane_sum * &e1
        - count_subspaces(p, m, 2);

    // Rank-one classes of level p²: only x with 2Bx ≡ 0 (mod p) survive the
    // sum over lifts, each contributing p^{m−1} c_{p²}(B[x]) per line.
    let radical: i64 = lines(p, m)
        .iter()
        .filter(|x| (0..m).all(|i| (0..m).map(|j| b.twice(i, j) * x[j]).sum::<i64>().rem_euclid(pi) == 0))
        .map(|x| ramanujan_p2(b.eval(x), pi))
        .sum();
    let level2 = BigInt::from(radical) * BigInt::from(p).pow(m as u32 - 1);
    rank2 + level2
}
