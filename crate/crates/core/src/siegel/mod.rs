//! Local Siegel series `b_p(B, X) = γ_p(B, X) F_p(B, X)` and the polynomial
//! part `F_p`.
//!
//! `F_p` is determined by its degree, the functional equation
//! `F_p(B, p^{−m−1}X^{−1}) = ε (p^{(m+1)/2}X)^{−deg} F_p(B, X)` and the first
//! two coefficients of `b_p`, which come from explicit character sums. Every
//! redundant relation between these sources is checked.

mod brute;
mod gamma;
mod local;
mod strata;

pub use brute::{brute_bp, BRUTE_BUDGET};
pub use gamma::GammaFactor;
pub use local::{hasse_invariant, odd_size_fe_sign};
pub use strata::{stratum_sum_level2, stratum_sum_rank1};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::kernel::arith::{kronecker, ord_p_big};
use crate::kernel::{AlphaRing, AlphaRingElem, QuadScalar, Rational};
use crate::qforms::{reduce_nondegenerate, HalfIntMat};
use crate::{Error, Result};

/// Largest degree the solver can close with two strata equations.
pub const MAX_DEGREE: u32 = 5;

/// Which relation fixed a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoeffSource {
    /// The constant term.
    Trivial,
    /// `[X¹] b_p` from level-`p` rank-one classes.
    Stratum1,
    /// `[X²] b_p` from level-`p` rank-two and level-`p²` rank-one classes.
    Stratum2,
    /// The functional equation applied to coefficient `from`.
    FunctionalEquation { from: u32 },
}

/// How the sign of the functional equation was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SignSource {
    /// Only one sign is compatible with the strata equations.
    Strata,
    /// Even size: the sign is `+1`.
    EvenSize,
    /// Odd size, strata undetermined: the local Hasse-invariant formula.
    LocalInvariant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SiegelPoly {
    pub p: u64,
    /// Size of the nondegenerate part.
    pub m: usize,
    pub coeffs: Vec<BigInt>,
    pub derivation: Vec<CoeffSource>,
    pub fe_sign: i32,
    pub sign_source: SignSource,
}

impl SiegelPoly {
    fn trivial(p: u64, m: usize) -> Self {
        Self {
            p,
            m,
            coeffs: vec![BigInt::one()],
            derivation: vec![CoeffSource::Trivial],
            fe_sign: 1,
            sign_source: if m.is_multiple_of(2) { SignSource::EvenSize } else { SignSource::LocalInvariant },
        }
    }

    pub fn degree(&self) -> u32 {
        (self.coeffs.len() - 1) as u32
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// `Σ c_j β^j p^{−j(k+n+1)}`, i.e. `F_p(B, p^{−n−3/2} α_p)` with
    /// `β = p^{(2k−1)/2} α_p`.
    pub fn evaluate_alpha(&self, ring: &AlphaRing, n: u32) -> AlphaRingElem {
        let step = Rational::new(BigInt::one(), BigInt::from(self.p).pow(ring.k + n + 1));
        let mut acc = ring.scalar(QuadScalar::zero());
        let mut beta_pow = ring.scalar(QuadScalar::one());
        let mut scale = Rational::one();
        for c in &self.coeffs {
            let term = beta_pow.scale(&QuadScalar::from(Rational::from_integer(c.clone()) * &scale));
            acc = &acc + &term;
            beta_pow = &beta_pow * &ring.beta();
            scale *= &step;
        }
        acc
    }

    /// `F_p(B, p^{−m−1}X^{−1}) = ε (p^{(m+1)/2} X)^{−d} F_p(B, X)` as an
    /// identity of coefficients.
    pub fn satisfies_functional_equation(&self) -> bool {
        let d = self.degree() as i64;
        let m1 = self.m as i64 + 1;
        let p = BigInt::from(self.p);
        (0..=d).all(|j| {
            // c_{d−j} p^{(m+1) j} = ε p^{(m+1)d/2} c_j; (m+1)d is even.
            let lhs = &self.coeffs[(d - j) as usize] * p.pow((m1 * j) as u32);
            let rhs = &self.coeffs[j as usize] * p.pow((m1 * d / 2) as u32) * self.fe_sign;
            lhs == rhs
        })
    }
}

impl fmt::Display for SiegelPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let body = match j {
                0 => mag.to_string(),
                1 if mag.is_one() => "X".to_string(),
                1 => format!("{mag}X"),
                _ if mag.is_one() => format!("X^{j}"),
                _ => format!("{mag}X^{j}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

/// `ξ_p(B) = χ_B(p)` for positive definite `B` of even size.
pub fn xi_p(bt: &HalfIntMat, p: u64) -> Result<i32> {
    let split = bt.disc_split()?;
    kronecker(split.disc, p as i64)
}

/// Degree of `F_p(B̃, X)`: `2 ord_p(𝔣)` for even size, `ord_p(det(2B̃)/2)`
/// for odd size.
pub fn fp_degree(bt: &HalfIntMat, p: u64) -> Result<u32> {
    let m = bt.size();
    if m == 0 {
        return Ok(0);
    }
    if m.is_multiple_of(2) {
        let f = bt.disc_split()?.conductor;
        Ok(2 * ord_p_big(&BigInt::from(f), p))
    } else {
        let half = bt.det_twice() / 2;
        Ok(ord_p_big(&half, p))
    }
}

/// Polynomials keyed by class key and prime.
type PolyCache = RwLock<HashMap<(Vec<i64>, u64), Arc<SiegelPoly>>>;

fn cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `F_p^*(B, X) = F_p(B̃, X)` for positive semidefinite `B`.
pub fn fp_polynomial(b: &HalfIntMat, p: u64) -> Result<Arc<SiegelPoly>> {
    let (bt, _) = reduce_nondegenerate(b)?;
    fp_polynomial_nondegenerate(&bt, p)
}

/// `F_p(B̃, X)` for positive definite `B̃`, cached by class key.
pub fn fp_polynomial_nondegenerate(bt: &HalfIntMat, p: u64) -> Result<Arc<SiegelPoly>> {
    let key = (bt.class_key(), p);
    if let Some(hit) = cache().read().expect("poisoned").get(&key) {
        return Ok(hit.clone());
    }
    let poly = Arc::new(solve_fp(bt, p)?);
    cache().write().expect("poisoned").insert(key, poly.clone());
    Ok(poly)
}

fn solve_fp(bt: &HalfIntMat, p: u64) -> Result<SiegelPoly> {
    let m = bt.size();
    if m == 0 {
        return Ok(SiegelPoly::trivial(p, 0));
    }
    let d = fp_degree(bt, p)?;
    if d > MAX_DEGREE {
        return Err(Error::DegreeUnsupported { p, size: m, degree: d });
    }
    let xi = if m.is_multiple_of(2) { xi_p(bt, p)? } else { 0 };
    let gamma = GammaFactor::new(p, m, xi).series(2);
    let e1 = stratum_sum_rank1(bt, p);
    let e2 = stratum_sum_level2(bt, p);
    let c1 = &e1 - &gamma[1];
    let c2 = &e2 - &gamma[2] - &gamma[1] * &c1;
    let strata = [BigInt::one(), c1, c2];

    let fe_scale = |j: u32, sign: i32, lower: &BigInt| -> BigInt {
        // c_j = ε p^{(m+1)(2j−d)/2} c_{d−j}, with 2j ≥ d.
        let e = (m as u32 + 1) * (2 * j - d);
        debug_assert!(e.is_multiple_of(2));
        lower * BigInt::from(p).pow(e / 2) * sign
    };
    let candidate = |sign: i32| -> Option<(Vec<BigInt>, Vec<CoeffSource>)> {
        let mut coeffs = Vec::with_capacity(d as usize + 1);
        let mut src = Vec::with_capacity(d as usize + 1);
        for j in 0..=d {
            let from_strata = (j <= 2).then(|| strata[j as usize].clone());
            let from_fe = (2 * j >= d && d - j <= 2).then(|| fe_scale(j, sign, &strata[(d - j) as usize]));
            let from_fe_low = (2 * j < d && d - j <= 2).then(|| {
                // c_j = ε p^{−(m+1)(d−2j)/2} c_{d−j}; consistency only.
                (strata[(d - j) as usize].clone(), (m as u32 + 1) * (d - 2 * j) / 2)
            });
            match (from_strata, from_fe) {
                (Some(a), Some(b)) => {
                    if a != b {
                        return None;
                    }
                    coeffs.push(a);
                    src.push(match j {
                        0 => CoeffSource::Trivial,
                        1 => CoeffSource::Stratum1,
                        _ => CoeffSource::Stratum2,
                    });
                }
                (Some(a), None) => {
                    if let Some((hi, e)) = from_fe_low {
                        if a.clone() * BigInt::from(p).pow(e) * sign != hi {
                            return None;
                        }
                    }
                    coeffs.push(a);
                    src.push(if j == 1 { CoeffSource::Stratum1 } else { CoeffSource::Stratum2 });
                }
                (None, Some(b)) => {
                    coeffs.push(b);
                    src.push(CoeffSource::FunctionalEquation { from: d - j });
                }
                (None, None) => return None,
            }
        }
        // Strata coefficients beyond the degree must vanish.
        if (d + 1..=2).any(|j| !strata[j as usize].is_zero()) {
            return None;
        }
        Some((coeffs, src))
    };

    let plus = candidate(1);
    let minus = candidate(-1);
    let expected = if m.is_multiple_of(2) { 1 } else { odd_size_fe_sign(bt, p) };
    let (sign, sign_source) = match (&plus, &minus) {
        (Some(_), Some(_)) => {
            let source = if m.is_multiple_of(2) { SignSource::EvenSize } else { SignSource::LocalInvariant };
            (expected, source)
        }
        (Some(_), None) => (1, SignSource::Strata),
        (None, Some(_)) => (-1, SignSource::Strata),
        (None, None) => {
            return Err(Error::FunctionalEquation {
                p,
                detail: format!("no sign fits {bt}: degree {d}, strata {strata:?}"),
            })
        }
    };
    if sign != expected {
        return Err(Error::FunctionalEquation {
            p,
            detail: format!("strata force sign {sign} but local invariants give {expected} for {bt}"),
        });
    }
    let (coeffs, derivation) = if sign == 1 { plus } else { minus }.expect("chosen candidate exists");
    let poly = SiegelPoly { p, m, coeffs, derivation, fe_sign: sign, sign_source };
    if !poly.satisfies_functional_equation() {
        return Err(Error::FunctionalEquation { p, detail: format!("assembled polynomial {poly} fails") });
    }
    Ok(poly)
}

/// `[Xʲ] (γ_p · F_p)` for `j ≤ n`, the engine's prediction of `b_p`.
pub fn bp_series(b: &HalfIntMat, p: u64, n: usize) -> Result<Vec<BigInt>> {
    let (bt, m) = reduce_nondegenerate(b)?;
    if m != b.size() {
        return Err(Error::Domain("b_p series requires a nondegenerate matrix".into()));
    }
    let f = fp_polynomial_nondegenerate(&bt, p)?;
    let xi = if m % 2 == 0 && m > 0 { xi_p(&bt, p)? } else { 0 };
    let g = GammaFactor::new(p, m, xi).series(n);
    Ok((0..=n)
        .map(|j| (0..=j.min(f.coeffs.len() - 1)).map(|i| &f.coeffs[i] * &g[j - i]).sum())
        .collect())
}

/// Converts a small integer coefficient, for display and JSON.
pub fn coeffs_i64(poly: &SiegelPoly) -> Option<Vec<i64>> {
    poly.coeffs.iter().map(ToPrimitive::to_i64).collect()
}
