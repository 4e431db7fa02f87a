//! Half-integral symmetric matrices and their arithmetic invariants.

mod e8;
mod enumerate;
mod reduce;

pub use e8::{e8_pair_count, e8_vector_count};
pub use enumerate::enumerate_r_block;
pub use reduce::reduce_nondegenerate;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::kernel::arith::fundamental_split;
use crate::kernel::{rat, Rational};
use crate::{Error, Result};

/// A half-integral symmetric matrix `B`, stored through the even integral
/// matrix `2B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct HalfIntMat {
    m: usize,
    twice: Vec<i64>,
}

/// Splitting `(−1)^{m/2} det(2B) = d·f²` with `d` a fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DiscSplit {
    pub disc: i64,
    pub conductor: u64,
}

impl HalfIntMat {
    /// Builds `B` from the integer matrix `2B`.
    pub fn from_twice(rows: Vec<Vec<i64>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::NotHalfIntegral("matrix is not square".into()));
        }
        for i in 0..m {
            if rows[i][i] % 2 != 0 {
                return Err(Error::NotHalfIntegral(format!("odd diagonal entry of 2B at {i}")));
            }
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotHalfIntegral(format!("asymmetric at ({i},{j})")));
                }
            }
        }
        Ok(Self { m, twice: rows.into_iter().flatten().collect() })
    }

    /// Builds `B` from its own entries (diagonal integral, off-diagonal in ½ℤ).
    pub fn from_entries(rows: &[Vec<Rational>]) -> Result<Self> {
        let twice = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| {
                        let y = x * Rational::from_integer(2.into());
                        if !y.is_integer() {
                            return Err(Error::NotHalfIntegral(format!("entry {x}")));
                        }
                        y.to_integer().to_i64().ok_or_else(|| Error::NotHalfIntegral("entry too large".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_twice(twice)
    }

    pub fn zero(m: usize) -> Self {
        Self { m, twice: vec![0; m * m] }
    }

    pub fn identity(m: usize) -> Self {
        let mut t = vec![0; m * m];
        for i in 0..m {
            t[i * m + i] = 2;
        }
        Self { m, twice: t }
    }

    pub fn diag(d: &[i64]) -> Self {
        let m = d.len();
        let mut t = vec![0; m * m];
        for (i, &x) in d.iter().enumerate() {
            t[i * m + i] = 2 * x;
        }
        Self { m, twice: t }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// Entry of `2B`.
    pub fn twice(&self, i: usize, j: usize) -> i64 {
        self.twice[i * self.m + j]
    }

    pub fn twice_flat(&self) -> &[i64] {
        &self.twice
    }

    pub fn twice_rows(&self) -> Vec<Vec<i64>> {
        self.twice.chunks(self.m.max(1)).map(<[i64]>::to_vec).take(self.m).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> Rational {
        rat(self.twice(i, j), 2)
    }

    /// `B[x] = xᵀ B x`, an integer.
    pub fn eval(&self, x: &[i64]) -> i64 {
        let m = self.m;
        let mut s = 0;
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            s += self.twice[i * m + i] / 2 * x[i] * x[i];
            for j in i + 1..m {
                s += self.twice[i * m + j] * x[i] * x[j];
            }
        }
        s
    }

    /// `tr(B)`.
    pub fn trace(&self) -> i64 {
        (0..self.m).map(|i| self.twice(i, i) / 2).sum()
    }

    /// `Uᵀ B U` for an integer `m × r` matrix `U` given row-major.
    pub fn transform(&self, u: &[i64], r: usize) -> Self {
        let m = self.m;
        assert_eq!(u.len(), m * r);
        let mut tu = vec![0i64; m * r];
        for i in 0..m {
            for j in 0..r {
                tu[i * r + j] = (0..m).map(|k| self.twice[i * m + k] * u[k * r + j]).sum();
            }
        }
        let mut out = vec![0i64; r * r];
        for i in 0..r {
            for j in 0..r {
                out[i * r + j] = (0..m).map(|k| u[k * r + i] * tu[k * r + j]).sum();
            }
        }
        Self { m: r, twice: out }
    }

    /// `[[A1, R/2], [Rᵀ/2, A2]]` where `r` is the integer matrix `R`.
    pub fn from_blocks(a1: &Self, r: &[i64], a2: &Self) -> Self {
        let (n1, n2) = (a1.m, a2.m);
        assert_eq!(r.len(), n1 * n2);
        let m = n1 + n2;
        let mut t = vec![0i64; m * m];
        for i in 0..n1 {
            for j in 0..n1 {
                t[i * m + j] = a1.twice(i, j);
            }
            for j in 0..n2 {
                t[i * m + n1 + j] = r[i * n2 + j];
                t[(n1 + j) * m + i] = r[i * n2 + j];
            }
        }
        for i in 0..n2 {
            for j in 0..n2 {
                t[(n1 + i) * m + n1 + j] = a2.twice(i, j);
            }
        }
        Self { m, twice: t }
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        Self::from_blocks(self, &vec![0; self.m * o.m], o)
    }

    /// `det(2B)`.
    pub fn det_twice(&self) -> BigInt {
        BigInt::from(det_i128(&self.twice.iter().map(|&x| x as i128).collect::<Vec<_>>(), self.m))
    }

    /// `det(B)`.
    pub fn det(&self) -> Rational {
        Rational::new(self.det_twice(), BigInt::from(2).pow(self.m as u32))
    }

    /// Rank and positive semidefiniteness, certified by fraction-free
    /// symmetric elimination.
    pub fn psd_rank(&self) -> Option<usize> {
        psd_rank_i128(&self.twice.iter().map(|&x| x as i128).collect::<Vec<_>>(), self.m)
    }

    pub fn is_psd(&self) -> bool {
        self.psd_rank().is_some()
    }

    pub fn is_pd(&self) -> bool {
        self.psd_rank() == Some(self.m)
    }

    /// The discriminant splitting for even size.
    pub fn disc_split(&self) -> Result<DiscSplit> {
        if self.m % 2 == 1 {
            return Err(Error::OddRank(self.m));
        }
        let det = self.det_twice().to_i64().ok_or_else(|| Error::Unsupported("determinant too large".into()))?;
        if det == 0 {
            return Err(Error::Domain("singular matrix has no discriminant".into()));
        }
        let n = if (self.m / 2) % 2 == 1 { -det } else { det };
        let (disc, conductor) = fundamental_split(n)?;
        Ok(DiscSplit { disc, conductor })
    }

    /// A key shared by many `GL_m(ℤ)`-equivalent matrices, for caching only.
    pub fn class_key(&self) -> Vec<i64> {
        let mut b = reduce::greedy_reduce(self);
        b.insert(0, self.m as i64);
        b
    }
}

impl TryFrom<Vec<Vec<i64>>> for HalfIntMat {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_twice(rows)
    }
}

impl From<HalfIntMat> for Vec<Vec<i64>> {
    fn from(b: HalfIntMat) -> Self {
        b.twice_rows()
    }
}

impl fmt::Display for HalfIntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2B = {:?}", self.twice_rows())
    }
}

/// Bareiss determinant of an integer matrix.
pub(crate) fn det_i128(a: &[i128], n: usize) -> i128 {
    if n == 0 {
        return 1;
    }
    let mut a = a.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let Some(piv) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                return 0;
            };
            for j in 0..n {
                a.swap(piv * n + j, k * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i * n + j]
                    .checked_mul(a[k * n + k])
                    .and_then(|x| x.checked_sub(a[i * n + k].checked_mul(a[k * n + j])?))
                    .expect("determinant overflow");
                a[i * n + j] = v / prev;
            }
        }
        prev = a[k * n + k];
    }
    sign * a[n * n - 1]
}

/// Returns the rank if the symmetric integer matrix is positive
/// semidefinite, `None` otherwise.
pub(crate) fn psd_rank_i128(a: &[i128], n: usize) -> Option<usize> {
    let mut a = a.to_vec();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    loop {
        if alive.iter().any(|&i| a[i * n + i] < 0) {
            return None;
        }
        let Some(pos) = alive.iter().position(|&i| a[i * n + i] > 0) else {
            let all_zero = alive.iter().all(|&i| alive.iter().all(|&j| a[i * n + j] == 0));
            return all_zero.then_some(rank);
        };
        let p = alive.remove(pos);
        rank += 1;
        let pv = a[p * n + p];
        // Schur complement scaled by the positive pivot, then divided by
        // the content to keep entries small.
        let mut g = 0i128;
        for &i in &alive {
            for &j in &alive {
                let v = pv * a[i * n + j] - a[i * n + p] * a[p * n + j];
                a[i * n + j] = v;
                g = gcd_i128(g, v);
            }
        }
        if g > 1 {
            for &i in &alive {
                for &j in &alive {
                    a[i * n + j] /= g;
                }
            }
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
