//! Genus-3 doubling: the coefficients `C(k; A_i, A)` and the Cramer
//! extraction of standard L-values.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::qpoly::q_poly_scaled;
use crate::eisenstein::EisensteinSpec;
use crate::kernel::arith::gamma_int;
use crate::kernel::{Matrix, QuadScalar, Rational};
use crate::qforms::{enumerate_r_block, HalfIntMat};
use crate::{Error, Result};

const GENUS: usize = 6;

/// `−3Γ(2k−3)Γ(2k−4)/(Γ(2k)Γ(2k−1))`.
pub fn gamma_ratio(k: u32) -> Rational {
    let k = k as i64;
    let num = gamma_int(2 * k - 3) * gamma_int(2 * k - 4) * -3;
    let den = gamma_int(2 * k) * gamma_int(2 * k - 1);
    Rational::new(num, den)
}

/// `−3Γ(2k−3)Γ(2k−4)/(Γ(2k)Γ(2k−1)) · 2^{3k+7}(2k−1)(2k−3)(k−1)`.
pub fn big_c_prefactor(k: u32) -> Rational {
    let kk = k as i64;
    let poly = BigInt::from(2).pow(3 * k + 7) * ((2 * kk - 1) * (2 * kk - 3) * (kk - 1));
    gamma_ratio(k) * Rational::from_integer(poly)
}

type CacheKey = (u32, Vec<i64>, Vec<i64>);

fn cache() -> &'static RwLock<HashMap<CacheKey, Rational>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Rational>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `Σ_R c_{6,k}(B_R) Q²_{3,k}(B_R)` with `B_R = [[A_i, R/2], [ᵗR/2, A]]`.
pub fn eisenstein_q_sum(k: u32, ai: &HalfIntMat, a: &HalfIntMat) -> Result<Rational> {
    let spec = EisensteinSpec::new(GENUS, k)?;
    // Group by (rank, discriminant) so the archimedean factor is applied once.
    let groups = enumerate_r_block(ai, a)
        .into_par_iter()
        .try_fold(HashMap::<(usize, i64), BigInt>::new, |mut acc, r| {
            let b = HalfIntMat::from_blocks(ai, &r, a);
            let q = q_poly_scaled(&b, k);
            if q != 0 {
                let parts = spec.coefficient_parts(&b)?;
                *acc.entry((parts.rank, parts.disc)).or_insert_with(BigInt::zero) += parts.local * q;
            }
            Ok::<_, Error>(acc)
        })
        .try_reduce(HashMap::new, |mut x, y| {
            for (key, v) in y {
                *x.entry(key).or_insert_with(BigInt::zero) += v;
            }
            Ok(x)
        })?;
    let mut keys: Vec<_> = groups.keys().copied().collect();
    keys.sort();
    let mut total = Rational::zero();
    for key in keys {
        total += spec.archimedean(key.0, key.1)? * Rational::from_integer(groups[&key].clone());
    }
    Ok(total / Rational::from_integer(192.into()))
}

/// `C(k; A_i, A)`, the `A_i`-th coefficient of the pulled-back Eisenstein
/// series paired against the `A`-th one. Results are memoized.
pub fn big_c(k: u32, ai: &HalfIntMat, a: &HalfIntMat) -> Result<Rational> {
    if k % 2 == 1 || k < 8 {
        return Err(Error::Domain(format!("doubling needs even k ≥ 8, got {k}")));
    }
    if ai.size() != 3 || a.size() != 3 || !ai.is_pd() || !a.is_pd() {
        return Err(Error::Domain("C(k; A_i, A) needs positive definite 3×3 matrices".into()));
    }
    let key = (k, ai.twice_flat().to_vec(), a.twice_flat().to_vec());
    if let Some(v) = cache().read().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let value = big_c_prefactor(k) * eisenstein_q_sum(k, ai, a)?;
    cache().write().expect("cache poisoned").insert(key, value.clone());
    Ok(value)
}

/// Fourier coefficients `a_{ij} = c_{F_j}(A_i)` of an eigenbasis of
/// `S_{k+2}(Sp₃(ℤ))` at chosen matrices `A_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisTable {
    pub rows: Vec<HalfIntMat>,
    pub coeffs: Matrix<QuadScalar>,
}

impl BasisTable {
    pub fn new(rows: Vec<HalfIntMat>, coeffs: Matrix<QuadScalar>) -> Result<Self> {
        let d = rows.len();
        if coeffs.rows() != d || coeffs.cols() != d {
            return Err(Error::Domain(format!("table of {d} rows needs a {d}×{d} matrix")));
        }
        if coeffs.det().is_zero() {
            return Err(Error::Singular("det(a_ij) vanishes".into()));
        }
        Ok(Self { rows, coeffs })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The table with the `j`-th eigenform multiplied by `c`.
    pub fn scale_column(&self, j: usize, c: &QuadScalar) -> Self {
        let mut coeffs = self.coeffs.clone();
        for i in 0..self.dim() {
            let v = coeffs.get(i, j) * c;
            coeffs.set(i, j, v);
        }
        Self { rows: self.rows.clone(), coeffs }
    }
}

/// `c_{F₁}(A) · det(a with first column replaced by C) / det(a)`.
pub fn cramer_extract(table: &BasisTable, a: &HalfIntMat, c_values: &[Rational]) -> Result<QuadScalar> {
    let row = table
        .rows
        .iter()
        .position(|r| r == a)
        .ok_or_else(|| Error::Domain(format!("{a} must be one of the table rows")))?;
    let column: Vec<QuadScalar> = c_values.iter().cloned().map(QuadScalar::from).collect();
    let det = table.coeffs.det();
    if det.is_zero() {
        return Err(Error::Singular("det(a_ij) vanishes".into()));
    }
    let replaced = table.coeffs.with_column(0, &column).det();
    Ok(table.coeffs.get(row, 0) * &replaced * det.inv())
}

/// `|c_{F₁}(A)|² L_alg(k−3, F₁, St)` from the table by Cramer's rule.
pub fn extract_std_l(k: u32, table: &BasisTable, a: &HalfIntMat) -> Result<QuadScalar> {
    let c_values = table.rows.iter().map(|ai| big_c(k, ai, a)).collect::<Result<Vec<_>>>()?;
    cramer_extract(table, a, &c_values)
}
