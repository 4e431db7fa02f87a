//! The Kohnen plus space `S⁺_{k+1/2}(Γ₀(4))` built from `θ` and Eisenstein series.

use num_bigint::BigInt;

use super::elliptic::combine;
use super::{cusp_dim, diagonalize, eigenforms, Eigenform};
use crate::eisenstein::e1_star;
use crate::kernel::arith::legendre;
use crate::kernel::{Matrix, QuadScalar, Rational};
use crate::qseries::QSeries;
use crate::{Error, Result};

/// Default precision of plus-space expansions.
pub const PLUS_PRECISION: usize = 400;

/// Odd prime at which the plus-space Hecke operator is diagonalized.
const HECKE_PRIME: u64 = 3;

/// `θ(τ) = 1 + 2 Σ q^{n²}`.
pub fn theta(prec: usize) -> QSeries {
    QSeries::from_fn(prec, |n| {
        let r = (n as f64).sqrt() as usize;
        let square = (r.saturating_sub(1)..=r + 1).any(|x| x * x == n);
        QuadScalar::from_int(match (n, square) {
            (0, _) => 1,
            (_, true) => 2,
            _ => 0,
        })
    })
}

/// `E*_l(4τ)` through `q^prec`; `E*_0 = 1`.
fn dilated_eisenstein(l: u32, prec: usize) -> Result<QSeries> {
    if l == 0 {
        return Ok(QSeries::constant(QuadScalar::one(), prec));
    }
    Ok(e1_star(l, prec.div_ceil(4))?.dilate(4).truncate(prec))
}

/// `δ_l = ¼((l/2 − 1) E*_{l−2}(4τ) ϑθ − θ (ϑE*_{l−2})(4τ))` with
/// `ϑ = q d/dq`, a cusp form in `S⁺_{l+1/2}`. The derivative of `E*` is taken
/// before substituting `4τ`, which makes this the Rankin–Cohen bracket
/// `[θ, E*_{l−2}(4τ)]` up to a constant.
pub fn delta_l(l: u32, prec: usize) -> Result<QSeries> {
    if l < 6 || l % 2 == 1 {
        return Err(Error::Domain(format!("δ_l needs even l ≥ 6, got {l}")));
    }
    let th = theta(prec);
    let e = dilated_eisenstein(l - 2, prec)?;
    let left = (&e * &th.theta_derivative()).scale(&QuadScalar::from_int(l as i64 / 2 - 1));
    // (ϑE)(4τ) = ¼ ϑ(E(4τ)).
    let right = (&th * &e.theta_derivative()).scale(&QuadScalar::from_int(4).inv());
    let out = (&left - &right).scale(&QuadScalar::from_int(4).inv());
    Ok(out.with_weight(Rational::new((2 * l + 1).into(), 2.into())))
}

/// `(−1)^k m ≡ 0, 1 (mod 4)`.
fn in_support(k: u32, m: usize) -> bool {
    let r = if k.is_multiple_of(2) { m % 4 } else { (4 - m % 4) % 4 };
    r == 0 || r == 1
}

/// An element of `S⁺_{k+1/2}(Γ₀(4))`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlusForm {
    k: u32,
    q: QSeries,
}

impl PlusForm {
    /// Checks the support condition on every stored coefficient.
    pub fn new(k: u32, q: QSeries) -> Result<Self> {
        if let Some(m) = (0..=q.prec()).find(|&m| !in_support(k, m) && !q.coeff(m).is_zero()) {
            return Err(Error::Assertion(format!("plus-space support fails at q^{m}")));
        }
        if !q.coeff(0).is_zero() {
            return Err(Error::Assertion("plus form must be cuspidal".into()));
        }
        Ok(Self { k, q })
    }

    /// `k` with weight `k + 1/2`.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> &QSeries {
        &self.q
    }

    pub fn coeff(&self, m: usize) -> &QuadScalar {
        self.q.coeff(m)
    }

    pub fn scale(&self, c: &QuadScalar) -> Self {
        Self { k: self.k, q: self.q.scale(c) }
    }

    pub fn conj(&self) -> Self {
        Self { k: self.k, q: self.q.conj() }
    }
}

/// `T(p²)` on `S⁺_{k+1/2}` for odd `p`:
/// `c′(n) = c(p²n) + ((−1)^k n | p) p^{k−1} c(n) + p^{2k−1} c(n/p²)`.
pub fn plus_hecke_p2(k: u32, p: u64, h: &QSeries) -> Result<QSeries> {
    if p.is_multiple_of(2) {
        return Err(Error::Domain("plus-space Hecke operator needs odd p".into()));
    }
    let pp = (p * p) as usize;
    if h.prec() < pp {
        return Err(Error::InsufficientPrecision(format!("T({p}²) needs q^{pp}")));
    }
    let mid = QuadScalar::from(BigInt::from(p).pow(k - 1));
    let low = QuadScalar::from(BigInt::from(p).pow(2 * k - 1));
    let out = QSeries::from_fn(h.prec() / pp, |n| {
        let mut c = h.coeff(pp * n).clone();
        let signed = if k.is_multiple_of(2) { n as i64 } else { -(n as i64) };
        match legendre(signed, p) {
            0 => {}
            s => c += &(&mid * h.coeff(n)).scale(&Rational::from_integer(s.into())),
        }
        if n % pp == 0 {
            c += &(&low * h.coeff(n / pp));
        }
        c
    });
    Ok(match h.weight() {
        Some(w) => out.with_weight(w.clone()),
        None => out,
    })
}

/// A basis of `S⁺_{k+1/2}` from the products `δ_a(τ) E*_{k−a}(4τ)`.
pub fn plus_space_basis(k: u32, prec: usize) -> Result<Vec<QSeries>> {
    let dim = cusp_dim(2 * k);
    let mut basis: Vec<QSeries> = Vec::new();
    let mut a = 6;
    while a <= k && basis.len() < dim {
        let b = k - a;
        if b != 2 {
            let cand = &delta_l(a, prec)? * &dilated_eisenstein(b, prec)?;
            let mut trial = basis.clone();
            trial.push(cand.clone());
            if span_rank(&trial, prec) == trial.len() {
                basis.push(cand);
            }
        }
        a += 2;
    }
    if basis.len() != dim {
        return Err(Error::Assertion(format!(
            "found {} independent plus forms, expected {dim}",
            basis.len()
        )));
    }
    Ok(basis)
}

fn span_rank(forms: &[QSeries], prec: usize) -> usize {
    let rows = (0..=prec).map(|n| forms.iter().map(|f| f.coeff(n).clone()).collect()).collect();
    Matrix::<QuadScalar>::from_rows(rows).rank()
}

/// Hecke eigenforms `h` with `c_h(1) = 1`, each paired with the primitive
/// form of weight `2k` sharing its eigenvalue at `p = 3`.
pub fn plus_space_eigenforms(k: u32, prec: usize) -> Result<Vec<(PlusForm, Eigenform)>> {
    let fs = eigenforms(2 * k, prec)?;
    let basis = plus_space_basis(k, prec)?;
    let dim = basis.len();
    let mut m = Matrix::zeros(dim, dim);
    for (j, b) in basis.iter().enumerate() {
        let image = plus_hecke_p2(k, HECKE_PRIME, b)?;
        let window = 1..4 * dim + 2;
        let coords = QSeries::coords_in_span(&image, &basis, window)?;
        for (i, c) in coords.into_iter().enumerate() {
            let c = c.to_rational().ok_or_else(|| Error::Assertion("irrational Hecke matrix".into()))?;
            m.set(i, j, c);
        }
    }
    let mut pairs = Vec::with_capacity(dim);
    for eig in diagonalize(&m)? {
        let h = PlusForm::new(k, combine(&basis, &eig.vector).normalize_at(1)?)?;
        let f = fs
            .iter()
            .find(|f| f.a(HECKE_PRIME) == &eig.value)
            .ok_or_else(|| Error::Assertion(format!("no weight-{} form with a₃ = {}", 2 * k, eig.value)))?;
        pairs.push((h, f.clone()));
    }
    pairs.sort_by_key(|(_, f)| fs.iter().position(|g| g == f));
    Ok(pairs)
}
