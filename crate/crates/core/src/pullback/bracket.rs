//! Rankin–Cohen brackets of Eisenstein series and products of critical
//! values of Hecke L-functions.

use num_bigint::BigInt;

use crate::eisenstein::e1_star;
use crate::kernel::arith::{binomial, gamma_int};
use crate::kernel::{Matrix, QuadScalar, Rational};
use crate::modforms::{sk_basis, Eigenform};
use crate::qseries::QSeries;
use crate::{Error, Result};

/// Checks `l₁ − l₂ ≥ 3` odd, `k` even and `l₁ + 1 < k ≤ l₁ + l₂ − 3`.
fn check_weights(l1: u32, l2: u32, k: u32) -> Result<()> {
    let ok = l1 >= l2 + 3 && (l1 - l2) % 2 == 1 && k.is_multiple_of(2) && l1 + 1 < k && k + 3 <= l1 + l2;
    if ok {
        Ok(())
    } else {
        Err(Error::Domain(format!("(l1, l2, k) = ({l1}, {l2}, {k}) violates the bracket conditions")))
    }
}

/// The bracket `Σ_μ (−1)^{ν−μ} (ν μ) Γ(a+ν)Γ(b+ν)/(Γ(a+μ)Γ(b+ν−μ)) ϑ^μE*_a ϑ^{ν−μ}E*_b`
/// with `ϑ = q d/dq`; for `ν = 0` this is the product `E*_a E*_b`.
pub fn rankin_cohen(a: u32, b: u32, nu: u32, prec: usize) -> Result<QSeries> {
    let ea = e1_star(a, prec)?;
    let eb = e1_star(b, prec)?;
    let (a, b, nu) = (a as i64, b as i64, nu as i64);
    let top = gamma_int(a + nu) * gamma_int(b + nu);
    let mut out = QSeries::constant(QuadScalar::zero(), prec);
    for mu in 0..=nu {
        let sign = if (nu - mu) % 2 == 0 { 1 } else { -1 };
        let c = Rational::new(
            &top * binomial(nu, mu) * sign,
            gamma_int(a + mu) * gamma_int(b + nu - mu),
        );
        let term = &ea.theta_power(mu as usize) * &eb.theta_power((nu - mu) as usize);
        out = &out + &term.scale(&QuadScalar::from(c));
    }
    Ok(out.with_weight(Rational::from_integer((a + b + 2 * nu).into())))
}

/// `G_ν(E*_{l₁−l₂+1}, E*_{l₁+l₂−k+1})` with `ν = k − l₁ − 1`, checked to be a
/// cusp form in the span of `S_k`.
pub fn g_nu(l1: u32, l2: u32, k: u32, prec: usize) -> Result<QSeries> {
    check_weights(l1, l2, k)?;
    let out = rankin_cohen(l1 - l2 + 1, l1 + l2 - k + 1, k - l1 - 1, prec)?;
    if !out.coeff(0).is_zero() {
        return Err(Error::Assertion("bracket has a nonzero constant term".into()));
    }
    let basis = sk_basis(k, prec)?;
    QSeries::coords_in_span(&out, &basis, 1..basis.len() + 1)?;
    Ok(out)
}

/// `γ(k, l₁) = (−1)^{k/2} Γ(k−1) / (2^{k−1} Γ(l₁))`.
pub fn gamma_kl(k: u32, l1: u32) -> Rational {
    let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    Rational::new(gamma_int(k as i64 - 1) * sign, BigInt::from(2).pow(k - 1) * gamma_int(l1 as i64))
}

/// `L_alg(l₁, l₂; f₁)` by Cramer's rule on the coefficients at `ms` of the
/// bracket and of the eigenbasis `forms` (with `f₁ = forms[0]`).
pub fn product_hecke_l_at(l1: u32, l2: u32, forms: &[Eigenform], ms: &[usize]) -> Result<QuadScalar> {
    let k = forms.first().ok_or_else(|| Error::Domain("empty eigenbasis".into()))?.weight();
    let d = forms.len();
    if ms.len() != d {
        return Err(Error::Domain(format!("{} indices for {d} forms", ms.len())));
    }
    let prec = forms.iter().map(|f| f.q().prec()).min().unwrap_or(0);
    let g = g_nu(l1, l2, k, prec)?;
    let rows = ms.iter().map(|&m| forms.iter().map(|f| f.coeff(m).clone()).collect()).collect();
    let a = Matrix::<QuadScalar>::from_rows(rows);
    let det = a.det();
    if det.is_zero() {
        return Err(Error::Singular("eigenform coefficient matrix".into()));
    }
    let column: Vec<QuadScalar> = ms.iter().map(|&m| g.coeff(m).clone()).collect();
    let gamma_l = a.with_column(0, &column).det() * det.inv();
    Ok(gamma_l.scale(&(Rational::from_integer(1.into()) / gamma_kl(k, l1))))
}

/// `L_alg(l₁, l₂; f₁)` using the first `d` coefficients.
pub fn product_hecke_l(l1: u32, l2: u32, forms: &[Eigenform]) -> Result<QuadScalar> {
    let ms: Vec<usize> = (1..=forms.len()).collect();
    product_hecke_l_at(l1, l2, forms, &ms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conditions() {
        assert!(g_nu(17, 10, 20, 60).is_ok());
        assert!(g_nu(16, 11, 20, 60).is_ok());
        assert!(g_nu(11, 10, 20, 60).is_err());
        assert!(g_nu(17, 10, 30, 60).is_err());
        assert!(g_nu(15, 10, 16, 60).is_err());
    }

    #[test]
    fn nu_zero_is_a_product() {
        let g = rankin_cohen(6, 10, 0, 40).unwrap();
        let p = &e1_star(6, 40).unwrap() * &e1_star(10, 40).unwrap();
        assert_eq!(g.coeffs(), p.coeffs());
    }

    #[test]
    fn gamma_factor() {
        assert_eq!(gamma_kl(20, 17), Rational::new(gamma_int(19), BigInt::from(2).pow(19) * gamma_int(17)));
        assert_eq!(gamma_kl(14, 11), -Rational::new(gamma_int(13), BigInt::from(2).pow(13) * gamma_int(11)));
    }
}
