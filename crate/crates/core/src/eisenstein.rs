//! Fourier coefficients of normalized Siegel Eisenstein series.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::kernel::arith::{factorize, sigma};
use crate::kernel::{dirichlet_l_neg, zeta_neg, QuadScalar, Rational};
use crate::qforms::{reduce_nondegenerate, HalfIntMat};
use crate::qseries::QSeries;
use crate::siegel::fp_polynomial_nondegenerate;
use crate::{Error, Result};

/// A normalized Eisenstein series `E*_{g,l}` of genus `g` and weight `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EisensteinSpec {
    pub genus: usize,
    pub weight: u32,
}

impl EisensteinSpec {
    pub fn new(genus: usize, weight: u32) -> Result<Self> {
        if weight % 2 == 1 || weight < 2 {
            return Err(Error::Domain(format!("weight {weight} must be even and positive")));
        }
        if genus == 1 {
            if weight == 2 {
                return Err(Error::Unsupported("weight 2 is not holomorphic".into()));
            }
            return Ok(Self { genus, weight });
        }
        if genus % 2 == 1 || genus > 6 || genus == 0 {
            return Err(Error::Unsupported(format!("genus {genus}")));
        }
        let n = (genus / 2) as u32;
        if weight < n + 1 {
            return Err(Error::Domain(format!("weight {weight} below {}", n + 1)));
        }
        if weight == n + 1 && weight % 4 == 2 {
            return Err(Error::Domain(format!("E*_({genus},{weight}) is not holomorphic")));
        }
        Ok(Self { genus, weight })
    }

    /// `Z(g, l) = ζ(1−l) Π_{i=1}^{[g/2]} ζ(1+2i−2l)`.
    pub fn normalization(&self) -> Rational {
        z_norm(self.genus, self.weight)
    }

    /// The coefficient at a positive semidefinite `B` of size `genus`.
    pub fn coefficient(&self, b: &HalfIntMat) -> Result<Rational> {
        if b.size() != self.genus {
            return Err(Error::Domain(format!("matrix size {} for genus {}", b.size(), self.genus)));
        }
        if self.genus == 1 {
            let n = b.twice(0, 0) / 2;
            return Ok(if n == 0 {
                zeta_neg(1 - self.weight as i64)?
            } else {
                Rational::from_integer(sigma(self.weight - 1, n as u64) * 2)
            });
        }
        let parts = self.coefficient_parts(b)?;
        Ok(Rational::from_integer(parts.local) * self.archimedean(parts.rank, parts.disc)?)
    }

    /// Splits the coefficient as `local · archimedean(rank, disc)`.
    pub fn coefficient_parts(&self, b: &HalfIntMat) -> Result<CoefficientParts> {
        let (bt, m) = reduce_nondegenerate(b)?;
        let l = self.weight as i64;
        let mut local = BigInt::from(2).pow(m.div_ceil(2) as u32);
        if m > 0 {
            let det = bt.det_twice().to_u64().ok_or_else(|| Error::Unsupported("large determinant".into()))?;
            let x_exp = l - m as i64 - 1;
            for (p, _) in factorize(det) {
                let f = fp_polynomial_nondegenerate(&bt, p)?;
                let x = crate::kernel::rat_pow(p as i64, x_exp);
                let v = f.evaluate(&x);
                debug_assert!(v.is_integer());
                local *= v.to_integer();
            }
        }
        let disc = if m % 2 == 0 && m > 0 { bt.disc_split()?.disc } else { 1 };
        Ok(CoefficientParts { rank: m, disc, local })
    }

    /// The factor depending only on the rank and discriminant:
    /// `Π_{i=m/2+1}^{n} ζ(1+2i−2l) · L(1+m/2−l, χ)` for even rank, and
    /// `Π_{i=(m+1)/2}^{n} ζ(1+2i−2l)` for odd rank.
    pub fn archimedean(&self, m: usize, disc: i64) -> Result<Rational> {
        let n = self.genus / 2;
        let l = self.weight as i64;
        let start = if m.is_multiple_of(2) { m / 2 + 1 } else { m.div_ceil(2) };
        let mut out = Rational::one();
        for i in start..=n {
            out *= zeta_neg(1 + 2 * i as i64 - 2 * l)?;
        }
        if m.is_multiple_of(2) {
            out *= dirichlet_l_neg(disc, 1 + m as i64 / 2 - l)?;
        }
        Ok(out)
    }
}

/// `c = local · archimedean(rank, disc)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientParts {
    pub rank: usize,
    pub disc: i64,
    pub local: BigInt,
}

/// `Z(g, l) = ζ(1−l) Π_{i=1}^{[g/2]} ζ(1+2i−2l)`.
pub fn z_norm(genus: usize, l: u32) -> Rational {
    let l = l as i64;
    let mut out = zeta_neg(1 - l).expect("l >= 1");
    for i in 1..=(genus / 2) as i64 {
        out *= zeta_neg(1 + 2 * i - 2 * l).expect("nonpositive argument");
    }
    out
}

/// Coefficient of the genus-`2n` series at `B`.
pub fn fc_even_genus(b: &HalfIntMat, l: u32) -> Result<Rational> {
    EisensteinSpec::new(b.size(), l)?.coefficient(b)
}

/// `E*_l = ζ(1−l) + 2 Σ σ_{l−1}(n) qⁿ` through `q^prec`.
pub fn e1_star(l: u32, prec: usize) -> Result<QSeries> {
    EisensteinSpec::new(1, l)?;
    let c0 = QuadScalar::from(zeta_neg(1 - l as i64)?);
    let s = QSeries::from_fn(prec, |n| {
        if n == 0 {
            c0.clone()
        } else {
            QuadScalar::from(sigma(l - 1, n as u64) * 2)
        }
    });
    Ok(s.with_weight(Rational::from_integer(l.into())))
}
