//! Definitional evaluation of `b_p(B, X)` by enumerating `Sym_m(ℤ/p^L)`.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::qforms::HalfIntMat;
use crate::{Error, Result};

pub const BRUTE_BUDGET: u64 = 100_000_000;

/// Coefficients `[Xʲ] b_p(B, X)` for `j ≤ level`, computed from every
/// class `R = S/p^level` with exact cyclotomic accumulation.
pub fn brute_bp(b: &HalfIntMat, p: u64, level: u32) -> Result<Vec<BigInt>> {
    let m = b.size();
    let entries = m * (m + 1) / 2;
    let q = p.checked_pow(level).ok_or_else(|| Error::BudgetExceeded("modulus overflow".into()))?;
    let total = (q as u128).checked_pow(entries as u32).unwrap_or(u128::MAX);
    if total > BRUTE_BUDGET as u128 {
        return Err(Error::BudgetExceeded(format!("{total} matrices modulo {q}")));
    }
    let total = total as u64;
    let qi = q as i64;
    let pos: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    // Trace pairing tr(BS) = Σ b_ii s_ii + Σ_{i<j} 2b_ij s_ij.
    let weights: Vec<i64> = pos
        .iter()
        .map(|&(i, j)| if i == j { b.twice(i, i) / 2 } else { b.twice(i, j) })
        .collect();
    let buckets = (0..total)
        .into_par_iter()
        .fold(
            || vec![vec![0i64; q as usize]; level as usize + 1],
            |mut acc, idx| {
                let mut s = vec![0i64; m * m];
                let mut x = idx;
                let mut tr = 0i64;
                for (k, &(i, j)) in pos.iter().enumerate() {
                    let v = (x % q) as i64;
                    x /= q;
                    s[i * m + j] = v;
                    s[j * m + i] = v;
                    tr += weights[k] * v;
                }
                let depth: u32 = elementary_valuations(&mut s, m, p as i64, level)
                    .iter()
                    .map(|&v| level - v)
                    .sum();
                if depth <= level {
                    acc[depth as usize][tr.rem_euclid(qi) as usize] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![vec![0i64; q as usize]; level as usize + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    for (u, v) in x.iter_mut().zip(y) {
                        *u += v;
                    }
                }
                a
            },
        );
    buckets
        .into_iter()
        .enumerate()
        .map(|(j, counts)| cyclotomic_to_integer(counts, p, level).map_err(|e| match e {
            Error::NonIntegralSum(d) => Error::NonIntegralSum(format!("[X^{j}]: {d}")),
            other => other,
        }))
        .collect()
}

/// `p`-adic valuations (capped at `level`) of the elementary divisors of a
/// matrix over `ℤ/p^level`.
fn elementary_valuations(a: &mut [i64], n: usize, p: i64, level: u32) -> Vec<u32> {
    let q = p.pow(level);
    let val = |x: i64| -> u32 {
        if x == 0 {
            return level;
        }
        let mut x = x;
        let mut v = 0;
        while x % p == 0 && v < level {
            x /= p;
            v += 1;
        }
        v
    };
    let mut out = Vec::with_capacity(n);
    let mut rows: Vec<usize> = (0..n).collect();
    let mut cols: Vec<usize> = (0..n).collect();
    while !rows.is_empty() {
        let mut best = (level, 0, 0);
        for (ri, &r) in rows.iter().enumerate() {
            for (ci, &c) in cols.iter().enumerate() {
                let v = val(a[r * n + c]);
                if v < best.0 {
                    best = (v, ri, ci);
                }
            }
        }
        let (v, ri, ci) = best;
        if v == level {
            out.extend(std::iter::repeat_n(level, rows.len()));
            break;
        }
        let (pr, pc) = (rows.remove(ri), cols.remove(ci));
        let pv = a[pr * n + pc];
        let pk = p.pow(v);
        let unit_inv = mod_inverse((pv / pk).rem_euclid(q), q);
        for &r in &rows {
            let f = (a[r * n + pc] / pk).rem_euclid(q) * unit_inv % q;
            if f == 0 {
                continue;
            }
            for &c in &cols {
                a[r * n + c] = (a[r * n + c] - f * a[pr * n + c]).rem_euclid(q);
            }
        }
        out.push(v);
    }
    out
}

fn mod_inverse(a: i64, q: i64) -> i64 {
    let (mut r0, mut r1) = (a, q);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(q)
}

/// Reduces `Σ counts[r] ζ^r` (`ζ` a primitive `p^level`-th root of unity)
/// modulo the cyclotomic polynomial and returns the rational-integer value.
fn cyclotomic_to_integer(counts: Vec<i64>, p: u64, level: u32) -> Result<BigInt> {
    let q = counts.len();
    let step = (p as usize).pow(level - 1);
    let phi = q - step;
    let mut c = counts;
    // ζ^{e} = −Σ_{k=1}^{p−1} ζ^{e − k·step} for e ≥ φ.
    for e in (phi..q).rev() {
        let v = c[e];
        if v != 0 {
            for k in 1..p as usize {
                c[e - k * step] -= v;
            }
            c[e] = 0;
        }
    }
    if c[1..].iter().any(|&x| x != 0) {
        return Err(Error::NonIntegralSum(format!("residual {:?}", &c[1..phi])));
    }
    Ok(BigInt::from(c[0]))
}
