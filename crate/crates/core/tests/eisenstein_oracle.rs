//! Eisenstein coefficients against theta series and the Siegel Φ operator.

use liftperiod::eisenstein::{z_norm, EisensteinSpec};
use liftperiod::kernel::Rational;
use liftperiod::qforms::{e8_pair_count, HalfIntMat};
use liftperiod::siegel::{fp_degree, MAX_DEGREE};
use proptest::prelude::*;

fn normalized(genus: usize, l: u32, b: &HalfIntMat) -> Rational {
    EisensteinSpec::new(genus, l).unwrap().coefficient(b).unwrap() / z_norm(genus, l)
}

/// All positive semidefinite half-integral `T` of size two with trace at most `bound`.
fn psd_pairs(bound: i64) -> Vec<HalfIntMat> {
    let mut out = Vec::new();
    for a in 0..=bound {
        for c in 0..=(bound - a) {
            for t in -2 * bound..=2 * bound {
                let m = HalfIntMat::from_twice(vec![vec![2 * a, t], vec![t, 2 * c]]).unwrap();
                if m.is_psd() {
                    out.push(m);
                }
            }
        }
    }
    out
}

#[test]
fn genus_two_weight_four_is_the_e8_theta_series() {
    let forms = psd_pairs(4);
    assert!(forms.len() > 40);
    for t in &forms {
        let expect = Rational::from_integer(e8_pair_count(t).unwrap().into());
        assert_eq!(normalized(2, 4, t), expect, "T = {t}");
    }
}

#[test]
fn rank_one_matches_genus_one() {
    for l in [4u32, 8, 10] {
        let g1 = EisensteinSpec::new(1, l).unwrap();
        for m in 0..=50 {
            let expect = g1.coefficient(&HalfIntMat::diag(&[m])).unwrap() / z_norm(1, l);
            assert_eq!(normalized(2, l, &HalfIntMat::diag(&[m, 0])), expect, "l = {l}, m = {m}");
        }
    }
}

#[test]
fn siegel_phi_lowers_genus() {
    for t in psd_pairs(3) {
        for l in [10u32, 14] {
            let base = normalized(2, l, &t);
            let padded4 = t.direct_sum(&HalfIntMat::zero(2));
            let padded6 = t.direct_sum(&HalfIntMat::zero(4));
            assert_eq!(normalized(4, l, &padded4), base, "genus 4, l = {l}, T = {t}");
            assert_eq!(normalized(6, l, &padded6), base, "genus 6, l = {l}, T = {t}");
        }
    }
    let t = HalfIntMat::from_twice(vec![vec![2, 1, 1, 0], vec![1, 2, 1, 1], vec![1, 1, 4, 1], vec![0, 1, 1, 4]]).unwrap();
    let padded = t.direct_sum(&HalfIntMat::zero(2));
    assert_eq!(normalized(6, 10, &padded), normalized(4, 10, &t));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn unimodular_invariance(a in 1i64..4, c in 1i64..4, e in 1i64..4, x in -1i64..=1, y in -1i64..=1, z in -1i64..=1,
                             u1 in -2i64..=2, u2 in -2i64..=2, u3 in -2i64..=2) {
        let b = HalfIntMat::from_twice(vec![vec![2 * a, x, y], vec![x, 2 * c, z], vec![y, z, 2 * e]]).unwrap();
        prop_assume!(b.is_pd());
        let b = b.direct_sum(&HalfIntMat::diag(&[1]));
        // Local polynomials past the solver's degree cap are out of scope.
        prop_assume!([2u64, 3, 5, 7].iter().all(|&p| fp_degree(&b, p).is_ok_and(|d| d <= MAX_DEGREE)));
        // Unipotent upper triangular change of basis.
        let u = vec![1, u1, u2, 0, 0, 1, u3, 0, 0, 0, 1, 0, 0, 0, 0, 1];
        let bu = b.transform(&u, 4);
        prop_assert_eq!(normalized(4, 10, &b), normalized(4, 10, &bu));
    }
}
