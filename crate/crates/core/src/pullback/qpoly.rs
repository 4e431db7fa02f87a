//! The polynomial `Q²_{3,k}` attached to the ν = 2 differential operator.

use num_bigint::BigInt;

use crate::kernel::Rational;
use crate::qforms::{det_i128, HalfIntMat};

/// Block size of `R`, `W`, `S` in `T = [[R, W], [ᵗW, S]]`.
const BLOCK: usize = 3;

/// `[P₀, P₁, P₂, P₃]` for `2T`, where `det[[xR, W], [ᵗW, S]] = Σ x^α P_α`.
/// Dividing by `2⁶` gives the values for `T`.
pub fn p_components_twice(b: &HalfIntMat) -> [i128; 4] {
    assert_eq!(b.size(), 2 * BLOCK, "Q-polynomial needs a 6×6 matrix");
    let n = 2 * BLOCK;
    let base: Vec<i128> = b.twice_flat().iter().map(|&x| x as i128).collect();
    let value_at = |x: i128| {
        let mut t = base.clone();
        for i in 0..BLOCK {
            for j in 0..BLOCK {
                t[i * n + j] *= x;
            }
        }
        det_i128(&t, n)
    };
    let v = [value_at(0), value_at(1), value_at(2), value_at(3)];
    // Newton forward differences of a cubic sampled at 0, 1, 2, 3.
    let d1 = v[1] - v[0];
    let d2 = v[2] - 2 * v[1] + v[0];
    let d3 = v[3] - 3 * v[2] + 3 * v[1] - v[0];
    let c3 = d3 / 6;
    let c2 = (d2 - 6 * c3) / 2;
    let c1 = d1 - c2 - c3;
    debug_assert_eq!(d3 % 6, 0);
    [v[0], c1, c2, c3]
}

/// `[P₀, P₁, P₂, P₃]` of `T`.
pub fn p_components(b: &HalfIntMat) -> [Rational; 4] {
    p_components_twice(b).map(|x| Rational::new(BigInt::from(x), BigInt::from(64)))
}

/// Integer weights `w_α` with `3 Q²_{3,k} = Σ w_α P_α`.
fn weights(k: i128) -> [i128; 4] {
    [2 * (k - 1) * (2 * k - 3) * (k - 2), (k - 1) * (2 * k - 3), 2 * (k - 1), 3]
}

/// `192 · Q²_{3,k}(T)`, an integer.
pub fn q_poly_scaled(b: &HalfIntMat, k: u32) -> i128 {
    let p = p_components_twice(b);
    weights(k as i128).iter().zip(p).map(|(w, x)| w * x).sum()
}

/// `Q²_{3,k}(T) = (2(k−1)(2k−3)(k−2)/3)P₀ + ((k−1)(2k−3)/3)P₁ + (2(k−1)/3)P₂ + P₃`.
pub fn q_poly_3k(b: &HalfIntMat, k: u32) -> Rational {
    Rational::new(BigInt::from(q_poly_scaled(b, k)), BigInt::from(192))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Leibniz expansion tracking how many factors come from the `R` block.
    fn leibniz(b: &HalfIntMat) -> [i128; 4] {
        let n = 6;
        let mut out = [0i128; 4];
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            let prod: i128 = (0..n).map(|i| b.twice(i, p[i]) as i128).product();
            let alpha = (0..BLOCK).filter(|&i| p[i] < BLOCK).count();
            out[alpha] += sign * prod;
        });
        out
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    fn det3(b: &HalfIntMat, rows: [usize; 3], cols: [usize; 3]) -> i128 {
        let m: Vec<i128> = rows.iter().flat_map(|&i| cols.iter().map(move |&j| b.twice(i, j) as i128)).collect();
        det_i128(&m, 3)
    }

    fn sym6(diag: [i64; 6], off: [i64; 15]) -> HalfIntMat {
        let mut rows = vec![vec![0; 6]; 6];
        let mut it = off.into_iter();
        for i in 0..6 {
            rows[i][i] = 2 * diag[i];
            for j in i + 1..6 {
                let v = it.next().unwrap();
                rows[i][j] = v;
                rows[j][i] = v;
            }
        }
        HalfIntMat::from_twice(rows).unwrap()
    }

    #[test]
    fn equal_blocks() {
        let a = HalfIntMat::from_twice(vec![vec![2, 0, 1], vec![0, 2, 1], vec![1, 1, 2]]).unwrap();
        let r: Vec<i64> = a.twice_flat().to_vec();
        let t = HalfIntMat::from_blocks(&a, &r, &a);
        let p = p_components(&t);
        assert_eq!(p[3], a.det() * a.det());
        assert_eq!(p[0], -(a.det() * a.det()));
    }

    #[test]
    fn block_diagonal() {
        let a = HalfIntMat::identity(3);
        let t = HalfIntMat::from_blocks(&a, &[0; 9], &a);
        let p = p_components(&t);
        assert_eq!(p[0], Rational::from_integer(0.into()));
        assert_eq!(p[1], Rational::from_integer(0.into()));
        assert_eq!(p[2], Rational::from_integer(0.into()));
        assert_eq!(p[3], Rational::from_integer(1.into()));
        assert_eq!(q_poly_3k(&t, 10), Rational::from_integer(1.into()));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn matches_leibniz_expansion(diag in proptest::array::uniform6(0i64..4), off in proptest::array::uniform15(-3i64..=3)) {
            let t = sym6(diag, off);
            prop_assert_eq!(p_components_twice(&t), leibniz(&t));
        }

        #[test]
        fn extreme_components(diag in proptest::array::uniform6(0i64..4), off in proptest::array::uniform15(-3i64..=3)) {
            let t = sym6(diag, off);
            let p = p_components_twice(&t);
            let w = det3(&t, [0, 1, 2], [3, 4, 5]);
            prop_assert_eq!(p[0], -w * w);
            prop_assert_eq!(p[3], det3(&t, [0, 1, 2], [0, 1, 2]) * det3(&t, [3, 4, 5], [3, 4, 5]));
        }
    }
}
