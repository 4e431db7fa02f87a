//! Hecke L-value products and genus-3 doubling coefficients.

use liftperiod::kernel::{QuadScalar, Rational};
use liftperiod::modforms::eigenforms;
use liftperiod::pullback::{big_c, g_nu, product_hecke_l, product_hecke_l_at};
use liftperiod::qforms::HalfIntMat;
use num_bigint::BigInt;
use num_traits::Signed;

fn pow2(e: u32) -> BigInt {
    BigInt::from(2).pow(e)
}

fn a_matrix() -> HalfIntMat {
    HalfIntMat::from_twice(vec![vec![2, 0, 1], vec![0, 2, 1], vec![1, 1, 2]]).unwrap()
}

fn a1_matrix() -> HalfIntMat {
    HalfIntMat::from_twice(vec![vec![2, 0, 0], vec![0, 2, 1], vec![0, 1, 2]]).unwrap()
}

#[test]
fn weight_twenty_product() {
    let fs = eigenforms(20, 60).unwrap();
    let l = product_hecke_l(17, 10, &fs).unwrap() * product_hecke_l(16, 11, &fs).unwrap();
    let want = Rational::new(pow2(34) * 13, BigInt::from(81 * 5 * 289));
    assert_eq!(l, QuadScalar::from(want));
}

#[test]
fn weight_28_pivots_and_conjugation() {
    let fs = eigenforms(28, 60).unwrap();
    let first = product_hecke_l(25, 14, &fs).unwrap();
    assert_eq!(product_hecke_l_at(25, 14, &fs, &[1, 3]).unwrap(), first);
    assert_eq!(product_hecke_l_at(25, 14, &fs, &[2, 5]).unwrap(), first);
    let conj: Vec<_> = fs.iter().rev().cloned().collect();
    assert_eq!(product_hecke_l(25, 14, &conj).unwrap(), first.conj());
}

#[test]
fn weight_28_product_is_positive_in_both_embeddings() {
    // One factor sits at the center, where the value is nonnegative, and the
    // other three lie in the region of absolute convergence.
    let fs = eigenforms(28, 60).unwrap();
    let prod = product_hecke_l(25, 14, &fs).unwrap() * product_hecke_l(24, 15, &fs).unwrap();
    assert_eq!(prod.signum(), 1);
    assert_eq!(prod.conj().signum(), 1);
}

#[test]
fn brackets_are_cusp_forms() {
    for (l1, l2, k) in [(17, 10, 20), (25, 14, 28), (24, 15, 28)] {
        let g = g_nu(l1, l2, k, 60).unwrap();
        assert!(g.coeff(0).is_zero());
    }
}

#[test]
fn doubling_weight_ten() {
    let a = a_matrix();
    let want = Rational::new(pow2(37) * (9 * 11 * 13), BigInt::from(17));
    assert_eq!(big_c(10, &a, &a).unwrap(), want);
}

#[test]
fn doubling_weight_ten_is_rank_one() {
    // dim S_12(Sp_3(Z)) = 1, so C(10; X, Y) = c(X) c(Y) L for a single L > 0.
    let (a, a1) = (a_matrix(), a1_matrix());
    let c_aa = big_c(10, &a, &a).unwrap();
    let c_11 = big_c(10, &a1, &a1).unwrap();
    let c_1a = big_c(10, &a1, &a).unwrap();
    assert_eq!(c_1a, big_c(10, &a, &a1).unwrap());
    assert_eq!(&c_aa * &c_11, &c_1a * &c_1a);
    assert!(c_aa.is_positive() && c_11.is_positive());
}
