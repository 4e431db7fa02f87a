//! Bernoulli numbers and special values of ζ and Dirichlet L-functions.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::arith::{binomial, kronecker};
use super::{int, rat, Rational};
use crate::{Error, Result};

fn bernoulli_table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// `B_n` with the convention `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = bernoulli_table().read().expect("poisoned").get(n) {
        return b.clone();
    }
    let mut table = bernoulli_table().write().expect("poisoned");
    // Σ_{j=0}^{m} C(m+1, j) B_j = 0.
    while table.len() <= n {
        let m = table.len();
        let mut s = Rational::zero();
        for (j, b) in table.iter().enumerate() {
            s += Rational::from_integer(binomial(m as i64 + 1, j as i64)) * b;
        }
        let b = -s / Rational::from_integer(BigInt::from(m + 1));
        table.push(b);
    }
    table[n].clone()
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_poly(n: usize, x: &Rational) -> Rational {
    let mut s = Rational::zero();
    let mut xp = Rational::one();
    for j in (0..=n).rev() {
        s += Rational::from_integer(binomial(n as i64, j as i64)) * bernoulli(j) * &xp;
        xp *= x;
    }
    s
}

/// `ζ(s)` for an integer `s ≤ 0`.
pub fn zeta_neg(s: i64) -> Result<Rational> {
    if s > 0 {
        return Err(Error::Domain(format!("zeta_neg needs s <= 0, got {s}")));
    }
    if s == 0 {
        return Ok(rat(-1, 2));
    }
    let l = (1 - s) as usize;
    Ok(-bernoulli(l) / int(l as i64))
}

/// `L(s, χ_D)` for an integer `s ≤ 0` and a fundamental discriminant `D`
/// (the principal character when `D = 1`).
pub fn dirichlet_l_neg(d: i64, s: i64) -> Result<Rational> {
    if s > 0 {
        return Err(Error::Domain(format!("dirichlet_l_neg needs s <= 0, got {s}")));
    }
    if d == 1 {
        return zeta_neg(s);
    }
    kronecker(d, 1)?;
    let n = (1 - s) as usize;
    let f = d.unsigned_abs() as i64;
    let mut sum = Rational::zero();
    for a in 1..=f {
        let chi = kronecker(d, a)?;
        if chi != 0 {
            let term = bernoulli_poly(n, &rat(a, f));
            if chi > 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
    }
    let gen_bernoulli = sum * Rational::from_integer(BigInt::from(f).pow(n as u32 - 1));
    Ok(-gen_bernoulli / int(n as i64))
}

/// `2(2π)^{-2i} Γ(2i) ζ(2i)`, which is rational.
pub fn xi_tilde_even(i: usize) -> Rational {
    assert!(i >= 1);
    let b = bernoulli(2 * i) / int(2 * i as i64);
    if i % 2 == 1 {
        b
    } else {
        -b
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::arith::sigma;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(10), rat(5, 66));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert!(bernoulli(15).is_zero());
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_neg(-3).unwrap(), rat(1, 120));
        assert_eq!(zeta_neg(-1).unwrap(), rat(-1, 12));
        assert_eq!(zeta_neg(-9).unwrap(), rat(-1, 132));
        assert_eq!(zeta_neg(0).unwrap(), rat(-1, 2));
        assert!(zeta_neg(1).is_err());
        for l in (2..=30).step_by(2) {
            assert!(!zeta_neg(1 - l).unwrap().is_zero());
        }
    }

    #[test]
    fn principal_l_equals_zeta() {
        for s in -12..=0 {
            assert_eq!(dirichlet_l_neg(1, s).unwrap(), zeta_neg(s).unwrap());
        }
    }

    #[test]
    fn dirichlet_known_values() {
        assert_eq!(dirichlet_l_neg(-4, 0).unwrap(), rat(1, 2));
        assert_eq!(dirichlet_l_neg(-3, 0).unwrap(), rat(1, 3));
        assert_eq!(dirichlet_l_neg(8, -1).unwrap(), int(-1));
        assert!(dirichlet_l_neg(12, 0).unwrap().is_zero());
    }

    /// `ζ_K(-1)` for real quadratic `K` of discriminant `D` via the
    /// divisor-sum (Siegel) formula; `L(-1, χ_D) = ζ_K(-1) / ζ(-1)`.
    fn l_minus_one_oracle(d: i64) -> Rational {
        let mut s = Rational::zero();
        let mut b = d % 2;
        while b * b < d {
            let n = ((d - b * b) / 4) as u64;
            let mult = if b == 0 { 1 } else { 2 };
            s += Rational::from_integer(sigma(1, n) * mult);
            b += 2;
        }
        (s / int(60)) / rat(-1, 12)
    }

    #[test]
    fn dirichlet_matches_divisor_sum_oracle() {
        for d in [5i64, 8, 12, 13, 17, 21, 24, 28, 29, 33] {
            assert_eq!(dirichlet_l_neg(d, -1).unwrap(), l_minus_one_oracle(d), "D = {d}");
        }
    }

    #[test]
    fn xi_tilde_values() {
        assert_eq!(xi_tilde_even(1), rat(1, 12));
        assert_eq!(xi_tilde_even(2), rat(1, 120));
        assert_eq!(xi_tilde_even(3), rat(1, 252));
        for i in 1..8 {
            let z = zeta_neg(1 - 2 * i as i64).unwrap();
            assert_eq!(xi_tilde_even(i), if i % 2 == 1 { -z } else { z });
        }
    }
}
