//! Small dense matrices over a [`Scalar`] with Gaussian elimination.
//!
//! Pivots are chosen by largest magnitude. For the exact backend every
//! nonzero entry is a valid pivot, so the choice only affects speed.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Entries with magnitude at or below this (relative to the largest entry)
/// count as zero in the float backend.
pub const FLOAT_PIVOT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            rows: n,
            cols: m,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: &S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = S::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k).clone() * other.get(k, j).clone();
            }
            acc
        }))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        })
    }

    pub fn max_magnitude(&self) -> f64 {
        self.data.iter().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entrywise equality, exact or relative to the largest entry.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        if S::EXACT {
            return self == other;
        }
        let scale = self.max_magnitude().max(other.max_magnitude()).max(1.0);
        self.data
            .iter()
            .zip(&other.data)
            .all(|(a, b)| (a.clone() - b.clone()).magnitude() <= tol * scale)
    }

    /// First `(row, col)` where the two matrices differ.
    pub fn first_difference(&self, other: &Self, tol: f64) -> Option<(usize, usize)> {
        let scale = self.max_magnitude().max(other.max_magnitude()).max(1.0);
        for i in 0..self.rows.min(other.rows) {
            for j in 0..self.cols.min(other.cols) {
                let (a, b) = (self.get(i, j), other.get(i, j));
                let differs = if S::EXACT {
                    a != b
                } else {
                    (a.clone() - b.clone()).magnitude() > tol * scale
                };
                if differs {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.rows).all(|i| ((i + 1)..self.cols).all(|j| Scalar::is_zero(self.get(i, j))))
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.transpose().is_lower_triangular()
    }

    pub fn diagonal(&self) -> Vec<S> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .collect()
    }

    fn zero_threshold(&self) -> f64 {
        if S::EXACT {
            0.0
        } else {
            FLOAT_PIVOT_TOL * self.max_magnitude().max(1.0)
        }
    }

    /// In-place reduction to reduced row echelon form. Returns pivot columns
    /// and the determinant sign/scale accumulated over the first `n` columns.
    fn rref(&mut self, upto: usize) -> (Vec<usize>, S) {
        let thr = self.zero_threshold();
        let mut pivots = Vec::new();
        let mut det = S::one();
        let mut r = 0;
        for c in 0..upto {
            if r == self.rows {
                break;
            }
            let best = (r..self.rows)
                .map(|i| (i, self.get(i, c).magnitude()))
                .filter(|&(i, m)| m > thr && !Scalar::is_zero(self.get(i, c)))
                .max_by(|a, b| a.1.total_cmp(&b.1));
            let Some((p, _)) = best else {
                det = S::zero();
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(r * self.cols + j, p * self.cols + j);
                }
                det = -det;
            }
            let pivot = self.get(r, c).clone();
            det = det * pivot.clone();
            let inv = pivot.inv().expect("nonzero pivot");
            for j in 0..self.cols {
                let v = self.get(r, j).clone() * inv.clone();
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if Scalar::is_zero(&f) {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.get(i, j).clone() - f.clone() * self.get(r, j).clone();
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        if pivots.len() < upto {
            det = S::zero();
        }
        (pivots, det)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let cols = m.cols;
        m.rref(cols).0.len()
    }

    /// A basis of the row space (the nonzero rows of the reduced form).
    pub fn row_basis(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let cols = m.cols;
        let r = m.rref(cols).0.len();
        (0..r).map(|i| m.row(i).to_vec()).collect()
    }

    pub fn det(&self) -> Result<S> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.cols;
        Ok(m.rref(n).1)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let (pivots, _) = aug.rref(n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
    }

    /// Solve `self · x = b` for a full-column-rank `self`. Returns `None`
    /// when the system is inconsistent; the caller decides how to report the
    /// residual.
    pub fn solve(&self, b: &[S]) -> Result<Option<Vec<S>>> {
        if b.len() != self.rows {
            return Err(Error::Dimension("right-hand side length".into()));
        }
        let n = self.cols;
        let mut aug = Self::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (pivots, _) = aug.rref(n);
        if pivots.len() < n {
            return Err(Error::Dependent);
        }
        let thr = aug.zero_threshold();
        let consistent = (n..aug.rows).all(|i| {
            let v = aug.get(i, n);
            Scalar::is_zero(v) || (!S::EXACT && v.magnitude() <= thr)
        });
        if !consistent {
            return Ok(None);
        }
        Ok(Some((0..n).map(|i| aug.get(i, n).clone()).collect()))
    }
}

impl<S: Scalar> fmt::Display for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(Scalar::fmt_plain).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Coeff, FloatCoeff};

    fn m(rows: &[&[i64]]) -> Matrix<Coeff> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Coeff::from_i64(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn det_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det().unwrap(), Coeff::from_i64(18));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(3));
    }

    #[test]
    fn det_sign_under_swap() {
        let a = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.det().unwrap(), Coeff::from_i64(-1));
    }

    #[test]
    fn singular() {
        let a = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(a.det().unwrap(), Coeff::from_i64(0));
        assert_eq!(a.inverse(), Err(Error::Singular));
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn overdetermined_solve() {
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b: Vec<Coeff> = [2, 3, 5].iter().map(|&x| Coeff::from_i64(x)).collect();
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, vec![Coeff::from_i64(2), Coeff::from_i64(3)]);
        let bad: Vec<Coeff> = [2, 3, 6].iter().map(|&x| Coeff::from_i64(x)).collect();
        assert_eq!(a.solve(&bad).unwrap(), None);
    }

    #[test]
    fn float_inverse() {
        let a: Matrix<FloatCoeff> = m(&[&[4, 7], &[2, 6]]).map(|c| c.to_c64());
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().approx_eq(&Matrix::identity(2), 1e-12));
    }
}
