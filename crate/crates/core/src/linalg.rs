//! Small dense complex linear algebra, generic over the scalar.

use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

/// Row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Complex<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_columns(cols: &[Vec<Complex<T>>]) -> Self {
        let rows = cols.first().map_or(0, |c| c.len());
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn matmul(&self, b: &CMat<T>) -> CMat<T> {
        assert_eq!(self.cols, b.rows);
        let mut out = CMat::zeros(self.rows, b.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                for j in 0..b.cols {
                    out[(i, j)] = out[(i, j)] + a * b[(k, j)];
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> CMat<T> {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Maximum absolute column sum.
    pub fn norm1(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero(), |s, i| s + self[(i, j)].norm()))
            .fold(T::zero(), |a, b| a.max(b))
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |a, z| a.max(z.norm()))
    }
}

impl<T> std::ops::Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for CMat<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorisation with complete pivoting, `P A Q = L U`.
#[derive(Debug, Clone)]
pub struct FullPivLu<T> {
    lu: CMat<T>,
    row_perm: Vec<usize>,
    col_perm: Vec<usize>,
    original: CMat<T>,
    pub singular: bool,
}

impl<T: Real> FullPivLu<T> {
    pub fn new(a: &CMat<T>) -> Self {
        assert_eq!(a.rows, a.cols);
        let n = a.rows;
        let mut lu = a.clone();
        let mut row_perm: Vec<usize> = (0..n).collect();
        let mut col_perm: Vec<usize> = (0..n).collect();
        let mut singular = false;
        for k in 0..n {
            let (mut pi, mut pj, mut best) = (k, k, T::zero());
            for i in k..n {
                for j in k..n {
                    let v = lu[(i, j)].norm();
                    if v > best {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if best == T::zero() {
                singular = true;
                break;
            }
            if pi != k {
                for j in 0..n {
                    lu.data.swap(k * n + j, pi * n + j);
                }
                row_perm.swap(k, pi);
            }
            if pj != k {
                for i in 0..n {
                    lu.data.swap(i * n + k, i * n + pj);
                }
                col_perm.swap(k, pj);
            }
            let piv = lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] / piv;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] = lu[(i, j)] - f * u;
                }
            }
        }
        FullPivLu { lu, row_perm, col_perm, original: a.clone(), singular }
    }

    fn solve_once(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.lu.rows;
        let mut y: Vec<Complex<T>> = self.row_perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            for j in 0..i {
                y[i] = y[i] - self.lu[(i, j)] * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                y[i] = y[i] - self.lu[(i, j)] * y[j];
            }
            y[i] = y[i] / self.lu[(i, i)];
        }
        let mut x = vec![Complex::zero(); n];
        for (k, &j) in self.col_perm.iter().enumerate() {
            x[j] = y[k];
        }
        x
    }

    /// Solve with two steps of iterative refinement.
    pub fn solve(&self, b: &[Complex<T>]) -> Vec<Complex<T>> {
        let n = self.lu.rows;
        let mut x = self.solve_once(b);
        for _ in 0..2 {
            let r: Vec<Complex<T>> = (0..n)
                .map(|i| (0..n).fold(b[i], |acc, j| acc - self.original[(i, j)] * x[j]))
                .collect();
            let dx = self.solve_once(&r);
            for (xi, d) in x.iter_mut().zip(dx) {
                *xi = *xi + d;
            }
        }
        x
    }

    pub fn inverse(&self) -> CMat<T> {
        let n = self.lu.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = vec![Complex::zero(); n];
            e[j] = Complex::new(T::one(), T::zero());
            cols.push(self.solve_once(&e));
        }
        CMat::from_columns(&cols)
    }

    /// 1-norm condition number.
    pub fn condition(&self) -> T {
        if self.singular {
            return T::infinity();
        }
        self.original.norm1() * self.inverse().norm1()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Dd;
    use num_traits::Float;

    fn sample() -> CMat<f64> {
        let mut a = CMat::zeros(3, 3);
        let v = [(2.0, 1.0), (0.0, -1.0), (1e-3, 0.0), (1.0, 0.0), (3.0, 0.5), (0.0, 0.0), (0.0, 2.0), (1.0, 1.0), (4.0, -2.0)];
        for (k, (re, im)) in v.iter().enumerate() {
            a.data[k] = Complex::new(*re, *im);
        }
        a
    }

    #[test]
    fn solve_reproduces_rhs() {
        let a = sample();
        let b = vec![Complex::new(1.0, 0.0), Complex::new(0.0, 1.0), Complex::new(-2.0, 0.5)];
        let x = FullPivLu::new(&a).solve(&b);
        for i in 0..3 {
            let r = (0..3).fold(b[i], |s, j| s - a[(i, j)] * x[j]);
            assert!(r.norm() < 1e-14);
        }
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = sample();
        let lu = FullPivLu::new(&a);
        let p = a.matmul(&lu.inverse());
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((p[(i, j)] - Complex::new(want, 0.0)).norm() < 1e-14);
            }
        }
        assert!(lu.condition() >= 1.0);
    }

    #[test]
    fn singular_matrix_is_flagged() {
        let mut a: CMat<Dd> = CMat::identity(3);
        a[(2, 2)] = Complex::zero();
        let lu = FullPivLu::new(&a);
        assert!(lu.singular);
        assert!(lu.condition().is_infinite());
    }
}
