//! Truncated q-expansions over exact scalars.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

use crate::kernel::{Matrix, QuadScalar, Rational};
use crate::{Error, Result};

/// Extra coefficients a span solve must reproduce beyond its solve window.
pub const VERIFY_MARGIN: usize = 25;

/// `Σ_{n ≤ N} c(n) qⁿ`, with coefficients known exactly up to `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    coeffs: Vec<QuadScalar>,
    weight: Option<Rational>,
}

impl QSeries {
    /// Series known through `q^prec`.
    pub fn new(mut coeffs: Vec<QuadScalar>, prec: usize) -> Self {
        coeffs.resize(prec + 1, QuadScalar::zero());
        Self { coeffs, weight: None }
    }

    pub fn from_rationals(coeffs: Vec<Rational>, prec: usize) -> Self {
        Self::new(coeffs.into_iter().map(QuadScalar::from).collect(), prec)
    }

    pub fn from_ints(coeffs: &[i64], prec: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| QuadScalar::from_int(c)).collect(), prec)
    }

    pub fn from_fn(prec: usize, f: impl Fn(usize) -> QuadScalar) -> Self {
        Self::new((0..=prec).map(f).collect(), prec)
    }

    pub fn constant(c: QuadScalar, prec: usize) -> Self {
        Self::new(vec![c], prec)
    }

    pub fn with_weight(mut self, w: Rational) -> Self {
        self.weight = Some(w);
        self
    }

    pub fn weight(&self) -> Option<&Rational> {
        self.weight.as_ref()
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `qⁿ`; panics beyond the known precision.
    pub fn coeff(&self, n: usize) -> &QuadScalar {
        assert!(n <= self.prec(), "q^{n} beyond precision {}", self.prec());
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[QuadScalar] {
        &self.coeffs
    }

    pub fn truncate(&self, prec: usize) -> Self {
        assert!(prec <= self.prec());
        Self { coeffs: self.coeffs[..=prec].to_vec(), weight: self.weight.clone() }
    }

    pub fn scale(&self, c: &QuadScalar) -> Self {
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect(), weight: self.weight.clone() }
    }

    pub fn map(&self, f: impl Fn(&QuadScalar) -> QuadScalar) -> Self {
        Self { coeffs: self.coeffs.iter().map(f).collect(), weight: self.weight.clone() }
    }

    pub fn conj(&self) -> Self {
        self.map(QuadScalar::conj)
    }

    /// `q d/dq`: multiplies the n-th coefficient by `n`.
    pub fn theta_derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::from_integer(BigInt::from(n))))
            .collect();
        Self { coeffs, weight: self.weight.as_ref().map(|w| w + Rational::from_integer(2.into())) }
    }

    pub fn theta_power(&self, times: usize) -> Self {
        (0..times).fold(self.clone(), |acc, _| acc.theta_derivative())
    }

    /// `q ↦ q^m`.
    pub fn dilate(&self, m: usize) -> Self {
        assert!(m >= 1);
        let prec = self.prec() * m;
        let mut coeffs = vec![QuadScalar::zero(); prec + 1];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n * m] = c.clone();
        }
        Self { coeffs, weight: self.weight.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QuadScalar::is_zero)
    }

    /// First index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by the coefficient of `qⁿ`.
    pub fn normalize_at(&self, n: usize) -> Result<Self> {
        let c = self.coeff(n);
        if c.is_zero() {
            return Err(Error::Domain(format!("coefficient of q^{n} vanishes")));
        }
        Ok(self.scale(&c.inv()))
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.coeffs.iter().map(|c| Value::String(c.to_string())).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let arr = v.as_array().ok_or_else(|| Error::Parse("q-series must be an array".into()))?;
        let coeffs = arr
            .iter()
            .map(|x| {
                x.as_str()
                    .ok_or_else(|| Error::Parse("coefficient must be a string".into()))
                    .and_then(QuadScalar::parse)
            })
            .collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("empty q-series".into()));
        }
        let prec = coeffs.len() - 1;
        Ok(Self::new(coeffs, prec))
    }

    /// Coordinates of `target` in `basis`, solved on `window` and then
    /// checked on every shared coefficient.
    pub fn coords_in_span(
        target: &QSeries,
        basis: &[QSeries],
        window: std::ops::Range<usize>,
    ) -> Result<Vec<QuadScalar>> {
        let prec = basis.iter().map(QSeries::prec).fold(target.prec(), usize::min);
        if prec + 1 < window.end + VERIFY_MARGIN {
            return Err(Error::InsufficientPrecision(format!(
                "span check needs q^{} but only q^{prec} is known",
                window.end + VERIFY_MARGIN - 1
            )));
        }
        let rows: Vec<Vec<QuadScalar>> =
            window.clone().map(|n| basis.iter().map(|b| b.coeff(n).clone()).collect()).collect();
        let rhs: Vec<QuadScalar> = window.map(|n| target.coeff(n).clone()).collect();
        let x = Matrix::from_rows(rows).solve(&rhs)?;
        for n in 0..=prec {
            let v: QuadScalar = basis.iter().zip(&x).map(|(b, c)| b.coeff(n) * c).sum();
            if &v != target.coeff(n) {
                return Err(Error::InconsistentSystem(format!("mismatch at q^{n}")));
            }
        }
        Ok(x)
    }
}

fn join_weight(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(x), Some(y)) if x == y => Some(x.clone()),
        _ => None,
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, o: &QSeries) -> QSeries {
        let prec = self.prec().min(o.prec());
        let coeffs = (0..=prec).map(|n| &self.coeffs[n] + &o.coeffs[n]).collect();
        QSeries { coeffs, weight: join_weight(&self.weight, &o.weight) }
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, o: &QSeries) -> QSeries {
        let prec = self.prec().min(o.prec());
        let coeffs = (0..=prec).map(|n| &self.coeffs[n] - &o.coeffs[n]).collect();
        QSeries { coeffs, weight: join_weight(&self.weight, &o.weight) }
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.map(|c| -c)
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, o: &QSeries) -> QSeries {
        let prec = self.prec().min(o.prec());
        let coeffs = match (Split::of(&self.coeffs[..=prec]), Split::of(&o.coeffs[..=prec])) {
            (Some(x), Some(y)) if x.d.is_none() || y.d.is_none() || x.d == y.d => x.mul(&y, prec),
            _ => schoolbook(&self.coeffs, &o.coeffs, prec),
        };
        let weight = match (&self.weight, &o.weight) {
            (Some(x), Some(y)) => Some(x + y),
            _ => None,
        };
        QSeries { coeffs, weight }
    }
}

fn schoolbook(a: &[QuadScalar], b: &[QuadScalar], prec: usize) -> Vec<QuadScalar> {
    let mut coeffs = vec![QuadScalar::zero(); prec + 1];
    for (i, x) in a.iter().enumerate().take(prec + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(prec + 1 - i) {
            if !y.is_zero() {
                coeffs[i + j] += &(x * y);
            }
        }
    }
    coeffs
}

/// A series `(A + B√d)/den` with integer coefficient vectors.
struct Split {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
    den: BigInt,
    d: Option<i64>,
}

impl Split {
    fn of(c: &[QuadScalar]) -> Option<Self> {
        let mut d = None;
        for x in c {
            match (d, x.disc()) {
                (_, None) => {}
                (None, Some(e)) => d = Some(e),
                (Some(e), Some(f)) if e != f => return None,
                _ => {}
            }
        }
        let den = c.iter().fold(BigInt::one(), |l, x| {
            l.lcm(x.rational_part().denom()).lcm(x.irrational_part().denom())
        });
        let scaled = |r: &Rational| r.numer() * (&den / r.denom());
        let a = c.iter().map(|x| scaled(x.rational_part())).collect();
        let b = c.iter().map(|x| scaled(x.irrational_part())).collect();
        Some(Self { a, b, den, d })
    }

    fn mul(&self, o: &Split, prec: usize) -> Vec<QuadScalar> {
        let den = &self.den * &o.den;
        let aa = convolve(&self.a, &o.a, prec);
        let d = self.d.or(o.d);
        match d {
            None => aa.into_iter().map(|x| QuadScalar::rational(Rational::new(x, den.clone()))).collect(),
            Some(d) => {
                let bb = convolve(&self.b, &o.b, prec);
                let ab = convolve(&self.a, &o.b, prec);
                let ba = convolve(&self.b, &o.a, prec);
                (0..=prec)
                    .map(|n| {
                        let re = &aa[n] + &bb[n] * d;
                        let im = &ab[n] + &ba[n];
                        let re = Rational::new(re, den.clone());
                        let im = Rational::new(im, den.clone());
                        if im.is_zero() {
                            QuadScalar::rational(re)
                        } else {
                            QuadScalar::new(re, im, d)
                        }
                    })
                    .collect()
            }
        }
    }
}

fn convolve(x: &[BigInt], y: &[BigInt], prec: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); prec + 1];
    for (i, a) in x.iter().enumerate().take(prec + 1) {
        if a.is_zero() {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(prec + 1 - i) {
            if !b.is_zero() {
                out[i + j] += a * b;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{int, rat};
    use proptest::prelude::*;

    fn theta(prec: usize) -> QSeries {
        QSeries::from_fn(prec, |n| {
            let sq = (0..=n).any(|x| x * x == n);
            QuadScalar::from_int(if n == 0 { 1 } else if sq { 2 } else { 0 })
        })
    }

    #[test]
    fn products() {
        let a = QSeries::from_ints(&[1, 1], 5);
        let b = QSeries::from_ints(&[1, -1], 5);
        assert_eq!(&a * &b, QSeries::from_ints(&[1, 0, -1], 5));
        let t = theta(2);
        assert_eq!(&t * &t, QSeries::from_ints(&[1, 4, 4], 2));
    }

    #[test]
    fn derivative_and_dilation() {
        let t = theta(10);
        let d = t.theta_derivative();
        assert_eq!(d.coeff(0), &QuadScalar::zero());
        assert_eq!(d.coeff(1), &QuadScalar::from_int(2));
        assert_eq!(d.coeff(4), &QuadScalar::from_int(8));
        let q = QSeries::from_ints(&[0, 1], 3);
        let q4 = q.dilate(4);
        assert_eq!(q4.prec(), 12);
        assert_eq!(q4.coeff(4), &QuadScalar::one());
        assert_eq!(QSeries::from_ints(&[1], 3).dilate(5), QSeries::from_ints(&[1], 15));
    }

    #[test]
    fn json_roundtrip() {
        let s = QSeries::new(
            vec![QuadScalar::rational(rat(1, 3)), QuadScalar::new(int(1), rat(-2, 7), 18209)],
            3,
        );
        assert_eq!(QSeries::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn span_solving() {
        let prec = 60;
        let b0 = QSeries::from_fn(prec, |n| QuadScalar::from_int(n as i64 * n as i64));
        let b1 = QSeries::from_fn(prec, |n| QuadScalar::from_int(1 + n as i64));
        let target = &b0.scale(&QuadScalar::from_int(3)) - &b1.scale(&QuadScalar::from_int(2));
        let c = QSeries::coords_in_span(&target, &[b0.clone(), b1.clone()], 0..2).unwrap();
        assert_eq!(c, vec![QuadScalar::from_int(3), QuadScalar::from_int(-2)]);
        assert_eq!(
            QSeries::coords_in_span(&b0, std::slice::from_ref(&b0), 1..2).unwrap(),
            vec![QuadScalar::one()]
        );
        let off = QSeries::from_fn(prec, |n| QuadScalar::from_int(n as i64 * n as i64 * n as i64));
        assert!(matches!(
            QSeries::coords_in_span(&off, &[b0.clone(), b1.clone()], 0..2),
            Err(Error::InconsistentSystem(_))
        ));
        assert!(matches!(
            QSeries::coords_in_span(&off, &[b0.truncate(10)], 0..1),
            Err(Error::InsufficientPrecision(_))
        ));
    }

    fn arb_series(prec: usize) -> impl Strategy<Value = QSeries> {
        proptest::collection::vec((-20i64..20, -5i64..5, 1i64..6), prec + 1).prop_map(move |v| {
            QSeries::new(v.into_iter().map(|(a, b, c)| QuadScalar::new(rat(a, c), rat(b, c), 18209)).collect(), prec)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ring_axioms(a in arb_series(8), b in arb_series(8), c in arb_series(8)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn dilation_is_multiplicative(a in arb_series(6), b in arb_series(6), m in 1usize..5) {
            prop_assert_eq!((&a * &b).dilate(m), &a.dilate(m) * &b.dilate(m));
        }

        #[test]
        fn span_recovers_combinations(x in -30i64..30, y in -30i64..30, z in 1i64..9) {
            let prec = 40;
            let basis = vec![
                QSeries::from_fn(prec, |n| QuadScalar::from_int((n * n) as i64 + 1)),
                QSeries::from_fn(prec, |n| QuadScalar::from_int(if n % 3 == 0 { 1 } else { -(n as i64) })),
                QSeries::from_fn(prec, |n| QuadScalar::from_int(n as i64)),
            ];
            let coords = vec![QuadScalar::from_int(x), QuadScalar::rational(rat(y, z)), QuadScalar::sqrt(18209)];
            let target = basis.iter().zip(&coords).fold(QSeries::constant(QuadScalar::zero(), prec), |acc, (b, c)| &acc + &b.scale(c));
            prop_assert_eq!(QSeries::coords_in_span(&target, &basis, 0..10).unwrap(), coords);
        }
    }
}
