//! Exact scalars and the classical special values everything else is built on.
//!
//! No floating point is used anywhere in this crate. Rationals are
//! `BigRational`; Hecke-field elements live in [`QuadScalar`].

pub mod alpha;
pub mod arith;
pub mod linalg;
pub mod quad;
pub mod special;

pub use alpha::{alpha_symmetrize, AlphaRing, AlphaRingElem};
pub use arith::{kronecker, is_fundamental_discriminant};
pub use linalg::{Field, Matrix};
pub use quad::QuadScalar;
pub use special::{bernoulli, dirichlet_l_neg, xi_tilde_even, zeta_neg};

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn big(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `p^e` for a possibly negative exponent.
pub fn rat_pow(p: i64, e: i64) -> Rational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(base)
    } else {
        Rational::new(BigInt::from(1), base)
    }
}

/// Formats a rational as `a/b`, or `a` when integral.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `a/b` or `a`.
pub fn parse_rational(s: &str) -> crate::Result<Rational> {
    let s = s.trim();
    let err = || crate::Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d == BigInt::from(0) {
                return Err(err());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}
