//! Dense complex matrices and a nonsymmetric eigensolver.

mod eigen;

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

pub use eigen::{eigenvalues, hessenberg_eigenvalues};

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { n, data }
    }

    pub fn diagonal(d: &[Complex64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { Complex64::new(0.0, 0.0) })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix rows must have equal length n".into()));
        }
        Ok(ComplexMatrix { n, data: rows.concat() })
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.re.is_finite() && x.im.is_finite())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    /// Solves `A x = b` by LU with partial pivoting; `None` if a pivot vanishes
    /// relative to `rel_pivot_tol * max|A|`.
    pub fn solve(&self, b: &[Complex64], rel_pivot_tol: f64) -> Option<Vec<Complex64>> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut x = b.to_vec();
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for k in 0..n {
            let p = (k..n)
                .max_by(|&i, &j| a[i * n + k].norm().total_cmp(&a[j * n + k].norm()))
                .unwrap();
            if a[p * n + k].norm() <= rel_pivot_tol * scale {
                return None;
            }
            if p != k {
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                x.swap(k, p);
            }
            let pivot = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / pivot;
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in k..n {
                    let t = a[k * n + j];
                    a[i * n + j] -= f * t;
                }
                let t = x[k];
                x[i] -= f * t;
            }
        }
        for k in (0..n).rev() {
            let s: Complex64 = (k + 1..n).map(|j| a[k * n + j] * x[j]).sum();
            x[k] = (x[k] - s) / a[k * n + k];
        }
        Some(x)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.n, rhs.n);
        ComplexMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn solve_small_system() {
        let a = ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(2.0, 1.0)], vec![c(1.0, 0.0), c(1.0, -1.0)]]).unwrap();
        let x = vec![c(1.0, 2.0), c(-0.5, 0.25)];
        let b = a.mul_vec(&x);
        let y = a.solve(&b, 1e-14).unwrap();
        for (u, v) in x.iter().zip(&y) {
            assert!((u - v).norm() < 1e-14);
        }
        let singular = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(singular.solve(&[c(1.0, 0.0), c(0.0, 0.0)], 1e-12).is_none());
    }

    #[test]
    fn commutator_of_commuting_matrices_vanishes() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 3.0)]);
        let b = ComplexMatrix::diagonal(&[c(-1.0, 0.5), c(4.0, 0.0)]);
        assert_eq!(a.commutator(&b).max_abs(), 0.0);
        assert!(ComplexMatrix::from_rows(&[vec![c(1.0, 0.0)], vec![]]).is_err());
    }
}
