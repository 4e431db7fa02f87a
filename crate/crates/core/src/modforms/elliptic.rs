//! Level-one cusp forms, Hecke operators and primitive forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::diagonalize;
use crate::eisenstein::e1_star;
use crate::kernel::arith::factorize;
use crate::kernel::{zeta_neg, Matrix, QuadScalar, Rational};
use crate::qseries::QSeries;
use crate::{Error, Result};

/// `dim S_k(SL₂(ℤ))`.
pub fn cusp_dim(k: u32) -> usize {
    if k % 2 == 1 || k < 12 {
        return 0;
    }
    let base = (k / 12) as usize;
    if k % 12 == 2 {
        base - 1
    } else {
        base
    }
}

/// `E_l` with constant term one.
pub fn e1_normalized(l: u32, prec: usize) -> Result<QSeries> {
    let c0 = zeta_neg(1 - l as i64)?;
    Ok(e1_star(l, prec)?.scale(&QuadScalar::from(c0).inv()))
}

/// Basis `Δ^j E_{k−12j}` (with `E_{k−12j}` a monomial in `E₄`, `E₆`) of `S_k`.
pub fn sk_basis(k: u32, prec: usize) -> Result<Vec<QSeries>> {
    if k % 2 == 1 {
        return Err(Error::Domain(format!("odd weight {k}")));
    }
    let dim = cusp_dim(k);
    if dim == 0 {
        return Ok(Vec::new());
    }
    let e4 = e1_normalized(4, prec)?;
    let e6 = e1_normalized(6, prec)?;
    let e4_cubed = &(&e4 * &e4) * &e4;
    let delta = (&e4_cubed - &(&e6 * &e6)).scale(&QuadScalar::from_int(1728).inv());
    let mut out = Vec::with_capacity(dim);
    let mut delta_pow = delta.clone();
    for j in 1..=dim as u32 {
        let rest = k - 12 * j;
        let (a, b) = if rest.is_multiple_of(4) { (rest / 4, 0) } else { ((rest - 6) / 4, 1) };
        let mut f = delta_pow.clone();
        for _ in 0..a {
            f = &f * &e4;
        }
        for _ in 0..b {
            f = &f * &e6;
        }
        out.push(f.with_weight(Rational::from_integer(k.into())));
        delta_pow = &delta_pow * &delta;
    }
    Ok(out)
}

/// `T(p)` on a weight-`k` level-one form: `c′(n) = c(pn) + p^{k−1} c(n/p)`.
pub fn hecke_tp(k: u32, p: u64, a: &QSeries) -> Result<QSeries> {
    let p = p as usize;
    if a.prec() < p {
        return Err(Error::InsufficientPrecision(format!("T({p}) needs q^{p}, have q^{}", a.prec())));
    }
    let pk = QuadScalar::from(BigInt::from(p).pow(k - 1));
    let out = QSeries::from_fn(a.prec() / p, |n| {
        let mut c = a.coeff(p * n).clone();
        if n % p == 0 {
            c += &(&pk * a.coeff(n / p));
        }
        c
    });
    Ok(match a.weight() {
        Some(w) => out.with_weight(w.clone()),
        None => out,
    })
}

/// Matrix of `T(p)` on `sk_basis(k)`, columns indexed by basis elements.
pub fn hecke_matrix(k: u32, p: u64, prec: usize) -> Result<Matrix<Rational>> {
    let basis = sk_basis(k, prec)?;
    let dim = basis.len();
    let mut m = Matrix::zeros(dim, dim);
    for (j, b) in basis.iter().enumerate() {
        let image = hecke_tp(k, p, b)?;
        let coords = QSeries::coords_in_span(&image, &basis, 1..dim + 1)?;
        for (i, c) in coords.into_iter().enumerate() {
            let c = c.to_rational().ok_or_else(|| Error::Assertion("irrational Hecke matrix".into()))?;
            m.set(i, j, c);
        }
    }
    Ok(m)
}

/// Coefficients `[c₀, …, c_d]` of `det(X − M)`, lowest degree first.
pub fn char_poly(m: &Matrix<Rational>) -> Vec<Rational> {
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let mut next = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut v: Rational = (0..n).map(|l| m.get(i, l) * mk.get(l, j)).sum();
                if i == j {
                    v += &coeffs[n + 1 - k];
                }
                next.set(i, j, v);
            }
        }
        let tr: Rational = (0..n).map(|i| (0..n).map(|l| m.get(i, l) * next.get(l, i)).sum::<Rational>()).sum();
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        mk = next;
    }
    coeffs
}

/// A normalized primitive form of level one.
#[derive(Clone, Debug, PartialEq)]
pub struct Eigenform {
    weight: u32,
    q: QSeries,
}

impl Eigenform {
    /// Checks `c(1) = 1`, multiplicativity and the prime-power recursion on
    /// every stored coefficient.
    pub fn new(weight: u32, q: QSeries) -> Result<Self> {
        let n_max = q.prec();
        if n_max < 1 || !q.coeff(0).is_zero() || q.coeff(1) != &QuadScalar::one() {
            return Err(Error::Assertion("eigenform must be a cusp form with c(1) = 1".into()));
        }
        let pk = |p: u64| QuadScalar::from(BigInt::from(p).pow(weight - 1));
        for n in 2..=n_max {
            let fac = factorize(n as u64);
            let c = q.coeff(n);
            let expect = if fac.len() > 1 {
                let (p, e) = fac[0];
                let pe = p.pow(e) as usize;
                q.coeff(pe) * q.coeff(n / pe)
            } else {
                let p = fac[0].0 as usize;
                if n == p {
                    continue;
                }
                q.coeff(p) * q.coeff(n / p) - pk(p as u64) * q.coeff(n / (p * p))
            };
            if c != &expect {
                return Err(Error::Assertion(format!("Hecke relation fails at n = {n}")));
            }
        }
        Ok(Self { weight, q: q.with_weight(Rational::from_integer(weight.into())) })
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn q(&self) -> &QSeries {
        &self.q
    }

    pub fn coeff(&self, n: usize) -> &QuadScalar {
        self.q.coeff(n)
    }

    /// Hecke eigenvalue at a prime.
    pub fn a(&self, p: u64) -> &QuadScalar {
        self.coeff(p as usize)
    }

    /// `d` with Hecke field `ℚ(√d)`, or `None` for `ℚ`.
    pub fn field_disc(&self) -> Option<i64> {
        self.q.coeffs().iter().find_map(QuadScalar::disc)
    }

    /// Galois conjugate.
    pub fn conj(&self) -> Self {
        Self { weight: self.weight, q: self.q.conj() }
    }
}

/// Primitive forms of weight `k` to precision `prec`, ordered with the
/// positive `√d` part of `a₂` first.
pub fn eigenforms(k: u32, prec: usize) -> Result<Vec<Eigenform>> {
    let basis = sk_basis(k, prec)?;
    match basis.len() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![Eigenform::new(k, basis[0].normalize_at(1)?)?]),
        _ => {
            let m = hecke_matrix(k, 2, prec)?;
            diagonalize(&m)?
                .into_iter()
                .map(|pair| {
                    let f = combine(&basis, &pair.vector);
                    Eigenform::new(k, f.normalize_at(1)?)
                })
                .collect()
        }
    }
}

pub(super) fn combine(basis: &[QSeries], coords: &[QuadScalar]) -> QSeries {
    let mut it = basis.iter().zip(coords).map(|(b, c)| b.scale(c));
    let first = it.next().expect("nonempty basis");
    it.fold(first, |acc, x| &acc + &x)
}
