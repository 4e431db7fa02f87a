//! Elements `a + b·λ` of a real quadratic field with `λ² = d`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{parse_rational, Rational};
use crate::{Error, Result};

/// `a + b·√d`. The discriminant is `None` for rational elements so that
/// rationals combine freely with any field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: Rational,
    b: Rational,
    d: Option<i64>,
}

impl QuadScalar {
    pub fn new(a: Rational, b: Rational, d: i64) -> Self {
        assert!(d > 1, "quadratic field discriminant must exceed 1");
        Self::normalized(a, b, Some(d))
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: None }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `√d` itself.
    pub fn sqrt(d: i64) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    fn normalized(a: Rational, b: Rational, d: Option<i64>) -> Self {
        if b.is_zero() {
            Self { a, b, d: None }
        } else {
            Self { a, b, d }
        }
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    pub fn disc(&self) -> Option<i64> {
        self.d
    }

    /// Returns the value as a rational if it has no `λ` component.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn conj(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn norm(&self) -> Rational {
        match self.d {
            None => self.a.clone() * &self.a,
            Some(d) => self.a.clone() * &self.a - self.b.clone() * &self.b * Rational::from_integer(d.into()),
        }
    }

    /// Exact sign of the real embedding with `√d > 0`.
    pub fn signum(&self) -> i32 {
        let sign = |r: &Rational| {
            if r.is_positive() {
                1
            } else if r.is_negative() {
                -1
            } else {
                0
            }
        };
        let (sa, sb) = (sign(&self.a), sign(&self.b));
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // Opposite signs: the larger of a² and b²d wins.
        let a2 = self.a.clone() * &self.a;
        let b2d = self.b.clone() * &self.b * Rational::from_integer(self.d.unwrap_or(0).into());
        if a2 > b2d {
            sa
        } else {
            sb
        }
    }

    pub fn trace(&self) -> Rational {
        self.a.clone() + &self.a
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let n = self.norm();
        let c = self.conj();
        Self::normalized(c.a / &n, c.b / &n, c.d)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self::normalized(self.a.clone() * r, self.b.clone() * r, self.d)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    fn join(x: Option<i64>, y: Option<i64>) -> Option<i64> {
        match (x, y) {
            (Some(u), Some(v)) => {
                assert_eq!(u, v, "combining elements of different quadratic fields");
                Some(u)
            }
            (u, None) => u,
            (None, v) => v,
        }
    }

    /// Parses `a/b`, `a`, or `(a+b*sqrt(d))/c`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if !t.contains("sqrt") {
            return Ok(Self::rational(parse_rational(&t)?));
        }
        let err = || Error::Parse(format!("bad quadratic scalar `{s}`"));
        let (body, den) = match t.strip_prefix('(') {
            Some(rest) => {
                let close = rest.rfind(')').ok_or_else(err)?;
                let den = &rest[close + 1..];
                let den: BigInt = if den.is_empty() {
                    BigInt::one()
                } else {
                    den.strip_prefix('/').ok_or_else(err)?.parse().map_err(|_| err())?
                };
                (rest[..close].to_string(), den)
            }
            None => (t.clone(), BigInt::one()),
        };
        let sq = body.find("sqrt(").ok_or_else(err)?;
        let close = body[sq..].find(')').ok_or_else(err)? + sq;
        let d: i64 = body[sq + 5..close].parse().map_err(|_| err())?;
        let head = &body[..sq];
        let head = head.strip_suffix('*').unwrap_or(head);
        // Split head into rational part and signed sqrt coefficient.
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| (c == '+' || c == '-') && i > 0)
            .map(|(i, _)| i);
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let b_val: BigInt = match b_str {
            "" | "+" => BigInt::one(),
            "-" => -BigInt::one(),
            x => x.trim_start_matches('+').parse().map_err(|_| err())?,
        };
        let a_val: BigInt = a_str.parse().map_err(|_| err())?;
        let den = Rational::from_integer(den);
        Ok(Self::new(Rational::from_integer(a_val) / &den, Rational::from_integer(b_val) / &den, d))
    }
}

impl fmt::Display for QuadScalar {
    /// Prints `a/b`, `a`, or `(a+b*sqrt(d))/c` with a common denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            None => write!(f, "{}", super::fmt_rational(&self.a)),
            Some(d) => {
                let c = self.a.denom().lcm(self.b.denom());
                let an = self.a.numer() * (&c / self.a.denom());
                let bn = self.b.numer() * (&c / self.b.denom());
                let sign = if bn.is_negative() { "-" } else { "+" };
                let body = format!("{an}{sign}{}*sqrt({d})", bn.abs());
                if c.is_one() {
                    write!(f, "({body})")
                } else {
                    write!(f, "({body})/{c}")
                }
            }
        }
    }
}

impl From<Rational> for QuadScalar {
    fn from(r: Rational) -> Self {
        Self::rational(r)
    }
}

impl From<i64> for QuadScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigInt> for QuadScalar {
    fn from(n: BigInt) -> Self {
        Self::rational(Rational::from_integer(n))
    }
}

impl<'a> Add<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn add(self, o: &QuadScalar) -> QuadScalar {
        let d = QuadScalar::join(self.d, o.d);
        QuadScalar::normalized(self.a.clone() + &o.a, self.b.clone() + &o.b, d)
    }
}

impl<'a> Sub<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn sub(self, o: &QuadScalar) -> QuadScalar {
        let d = QuadScalar::join(self.d, o.d);
        QuadScalar::normalized(self.a.clone() - &o.a, self.b.clone() - &o.b, d)
    }
}

impl<'a> Mul<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    fn mul(self, o: &QuadScalar) -> QuadScalar {
        let d = QuadScalar::join(self.d, o.d);
        if self.is_rational() {
            return o.scale(&self.a);
        }
        if o.is_rational() {
            return self.scale(&o.a);
        }
        let dv = Rational::from_integer(d.expect("irrational operand").into());
        let a = self.a.clone() * &o.a + self.b.clone() * &o.b * dv;
        let b = self.a.clone() * &o.b + self.b.clone() * &o.a;
        QuadScalar::normalized(a, b, d)
    }
}

impl<'a> Div<&'a QuadScalar> for &'a QuadScalar {
    type Output = QuadScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &QuadScalar) -> QuadScalar {
        if o.is_rational() {
            assert!(!o.a.is_zero(), "division by zero");
            return self.scale(&(Rational::one() / &o.a));
        }
        self * &o.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, o: QuadScalar) -> QuadScalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a QuadScalar> for QuadScalar {
            type Output = QuadScalar;
            fn $m(self, o: &QuadScalar) -> QuadScalar {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<QuadScalar> for &'a QuadScalar {
            type Output = QuadScalar;
            fn $m(self, o: QuadScalar) -> QuadScalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar::normalized(-self.a, -self.b, self.d)
    }
}

impl Neg for &QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        -(self.clone())
    }
}

impl AddAssign<&QuadScalar> for QuadScalar {
    fn add_assign(&mut self, o: &QuadScalar) {
        *self = &*self + o;
    }
}

impl SubAssign<&QuadScalar> for QuadScalar {
    fn sub_assign(&mut self, o: &QuadScalar) {
        *self = &*self - o;
    }
}

impl MulAssign<&QuadScalar> for QuadScalar {
    fn mul_assign(&mut self, o: &QuadScalar) {
        *self = &*self * o;
    }
}

impl std::iter::Sum for QuadScalar {
    fn sum<I: Iterator<Item = QuadScalar>>(iter: I) -> Self {
        iter.fold(QuadScalar::zero(), |acc, x| acc + x)
    }
}
