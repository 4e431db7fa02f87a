//! Elliptic modular forms of level one and the Kohnen plus space.

mod elliptic;
mod plus;

pub use elliptic::{
    char_poly, cusp_dim, e1_normalized, eigenforms, hecke_matrix, hecke_tp, sk_basis, Eigenform,
};
pub use plus::{
    delta_l, plus_hecke_p2, plus_space_basis, plus_space_eigenforms, theta, PlusForm,
    PLUS_PRECISION,
};

use num_traits::{Signed, Zero};

use crate::kernel::arith::{exact_isqrt, squarefree_part};
use crate::kernel::{Matrix, QuadScalar, Rational};
use crate::{Error, Result};

/// An eigenvalue with an eigenvector of a rational matrix of size at most two.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenPair {
    pub value: QuadScalar,
    pub vector: Vec<QuadScalar>,
}

/// Eigen-decomposition of a rational operator of dimension one or two.
/// Irrational eigenvalues come with positive `√d` part first.
pub fn diagonalize(m: &Matrix<Rational>) -> Result<Vec<EigenPair>> {
    match m.rows() {
        1 => Ok(vec![EigenPair { value: m.get(0, 0).clone().into(), vector: vec![QuadScalar::one()] }]),
        2 => diagonalize_2x2(m),
        d => Err(Error::Unsupported(format!("Hecke field of degree {d}"))),
    }
}

fn diagonalize_2x2(m: &Matrix<Rational>) -> Result<Vec<EigenPair>> {
    let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
    let tr = a + d;
    let det = a * d - b * c;
    let disc: Rational = &tr * &tr - det * Rational::from_integer(4.into());
    if disc.is_zero() {
        return Err(Error::Domain("repeated Hecke eigenvalue".into()));
    }
    // √(p/q) = √(pq)/q, and pq = s·t².
    let pq = disc.numer() * disc.denom();
    let half = Rational::new(1.into(), 2.into());
    let values: Vec<QuadScalar> = if let Some(r) = exact_isqrt(&pq).filter(|_| !pq.is_negative()) {
        let root = Rational::new(r, disc.denom().clone());
        vec![((&tr + &root) * &half).into(), ((&tr - &root) * &half).into()]
    } else {
        let pq = i64::try_from(pq).map_err(|_| Error::Unsupported("discriminant too large".into()))?;
        let (s, t) = squarefree_part(pq);
        if s < 0 {
            return Err(Error::Domain("complex Hecke eigenvalues".into()));
        }
        let coef = Rational::new(t.into(), disc.denom().clone()) * &half;
        let base = &tr * &half;
        vec![QuadScalar::new(base.clone(), coef.clone(), s), QuadScalar::new(base, -coef, s)]
    };
    let at = |x: &Rational| QuadScalar::from(x.clone());
    Ok(values
        .into_iter()
        .map(|mu| {
            let vector = if !b.is_zero() {
                vec![at(b), &mu - at(a)]
            } else if !c.is_zero() {
                vec![&mu - at(d), at(c)]
            } else if mu == at(a) {
                vec![QuadScalar::one(), QuadScalar::zero()]
            } else {
                vec![QuadScalar::zero(), QuadScalar::one()]
            };
            EigenPair { value: mu, vector }
        })
        .collect())
}
