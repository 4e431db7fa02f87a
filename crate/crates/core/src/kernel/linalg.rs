//! Dense exact linear algebra over a field.

use num_traits::{One, Zero};

use super::{QuadScalar, Rational};
use crate::{Error, Result};

/// Minimal exact field interface.
pub trait Field: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self {
        Self::zero().sub(self)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        <Rational as Zero>::zero()
    }
    fn one() -> Self {
        <Rational as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for QuadScalar {
    fn zero() -> Self {
        QuadScalar::zero()
    }
    fn one() -> Self {
        QuadScalar::one()
    }
    fn is_zero(&self) -> bool {
        QuadScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Field> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn with_column(&self, j: usize, col: &[T]) -> Self {
        assert_eq!(col.len(), self.rows);
        let mut m = self.clone();
        for (i, v) in col.iter().enumerate() {
            m.set(i, j, v.clone());
        }
        m
    }

    pub fn det(&self) -> T {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = T::one();
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| !a[r * n + c].is_zero()) else {
                return T::zero();
            };
            if piv != c {
                for j in 0..n {
                    a.swap(piv * n + j, c * n + j);
                }
                det = det.neg();
            }
            let pv = a[c * n + c].clone();
            det = det.mul(&pv);
            for r in c + 1..n {
                if a[r * n + c].is_zero() {
                    continue;
                }
                let f = a[r * n + c].div(&pv);
                for j in c..n {
                    let v = a[r * n + j].sub(&f.mul(&a[c * n + j]));
                    a[r * n + j] = v;
                }
            }
        }
        det
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let (n, m) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(piv) = (r..n).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..m {
                self.data.swap(piv * m + j, r * m + j);
            }
            let pv = self.get(r, c).clone();
            for j in 0..m {
                let v = self.get(r, j).div(&pv);
                self.set(r, j, v);
            }
            for i in 0..n {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in 0..m {
                        let v = self.get(i, j).sub(&f.mul(self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Solves `self · x = b` for a system with full column rank, checking
    /// every equation (including surplus ones) exactly.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Err(Error::InconsistentSystem("right-hand side outside column span".into()));
        }
        if pivots.len() < self.cols {
            return Err(Error::RankDeficient);
        }
        Ok((0..self.cols).map(|i| aug.get(i, self.cols).clone()).collect())
    }
}
