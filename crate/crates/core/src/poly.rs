//! Dense polynomials with ascending-power coefficients.

use nalgebra::DMatrix;
use num_complex::Complex;
use num_traits::Zero;

use crate::scalar::Real;

pub fn mul<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = out[i + j] + ai * bj;
        }
    }
    out
}

/// Horner evaluation at a complex point.
pub fn eval<T: Real>(p: &[T], z: Complex<T>) -> Complex<T> {
    p.iter().rev().fold(Complex::zero(), |acc, &c| acc * z + c)
}

/// All roots of a real polynomial, from the eigenvalues of its balanced
/// companion matrix. Accuracy is that of `f64` eigenvalues; callers polish.
pub fn companion_roots(p: &[f64]) -> Vec<Complex<f64>> {
    let mut p = p.to_vec();
    while p.len() > 1 && p[p.len() - 1] == 0.0 {
        p.pop();
    }
    // Exact zero roots are deflated so the companion matrix stays nonsingular.
    let mut zeros = 0;
    while p.len() > 1 && p[0] == 0.0 {
        p.remove(0);
        zeros += 1;
    }
    let n = p.len() - 1;
    let mut roots = vec![Complex::new(0.0, 0.0); zeros];
    if n == 0 {
        return roots;
    }
    let lead = p[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -p[i] / lead;
    }
    balance(&mut m);
    roots.extend(m.complex_eigenvalues().iter().copied());
    roots
}

/// Parlett–Reinsch diagonal similarity scaling by powers of two.
fn balance(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix = 2.0f64;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= radix * radix;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= radix * radix;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}
