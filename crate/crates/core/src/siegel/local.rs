//! Local invariants deciding the sign of the functional equation for odd
//! size.

use num_traits::{One, Zero};

use crate::kernel::arith::hilbert_symbol;
use crate::kernel::{int, Matrix, Rational};
use crate::qforms::HalfIntMat;

/// `Π_{i ≤ j} (a_i, a_j)_p` where `B ≅ diag(a_1, …, a_m)` over `ℚ`.
pub fn hasse_invariant(b: &HalfIntMat, p: u64) -> i32 {
    let a = diagonalize(b);
    let mut h = 1;
    for i in 0..a.len() {
        for j in i..a.len() {
            h *= hilbert_symbol(&a[i], &a[j], p);
        }
    }
    h
}

/// Diagonal entries `D_i / D_{i−1}` from the leading principal minors of a
/// positive definite `B`.
fn diagonalize(b: &HalfIntMat) -> Vec<Rational> {
    let m = b.size();
    let mut prev = Rational::one();
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        let rows = (0..k).map(|i| (0..k).map(|j| b.entry(i, j)).collect()).collect();
        let d = Matrix::from_rows(rows).det();
        assert!(!d.is_zero(), "leading minor vanishes; matrix must be positive definite");
        out.push(d.clone() / &prev);
        prev = d;
    }
    out
}

/// Sign of the functional equation of `F_p(B, X)` for odd size `m`:
/// `h_p(B) · (det B, (−1)^{(m−1)/2} det B)_p · (−1, −1)_p^{(m²−1)/8}`.
pub fn odd_size_fe_sign(b: &HalfIntMat, p: u64) -> i32 {
    let m = b.size();
    assert!(m % 2 == 1);
    let det = b.det();
    let signed = if ((m - 1) / 2) % 2 == 1 { -det.clone() } else { det.clone() };
    let mut s = hasse_invariant(b, p) * hilbert_symbol(&det, &signed, p);
    if ((m * m - 1) / 8) % 2 == 1 {
        s *= hilbert_symbol(&int(-1), &int(-1), p);
    }
    s
}
