//! Number-basis reference for the logarithmic negativity of
//! `S₂(r)(ρ_th(n_a) ⊗ ρ_th(n_b))S₂(r)†`, independent of the covariance path.
//!
//! Uses the disentangled squeezer
//! `S₂(r) = exp(t a†b†) (cosh r)^−(a†a + b†b + 1) exp(−t ab)`, `t = tanh r`.
//! Each `S₂|m, n⟩` stays in the sector `i − j = m − n`, so the partial
//! transpose is block diagonal in `i + j` and each block is diagonalised
//! separately.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

pub const DEFAULT_CUTOFF: usize = 100;
pub const TAIL_LIMIT: f64 = 1e-10;

fn thermal(n: f64, k: usize) -> f64 {
    if n == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let q = n / (n + 1.0);
    (1.0 - q) * q.powi(k as i32)
}

/// Components `(i, amplitude)` of `S₂(r)|m, n⟩` with `j = i − (m − n)`, truncated at `cutoff`.
fn squeezed_number_state(r: f64, m: usize, n: usize, cutoff: usize) -> Vec<(usize, f64)> {
    let t = r.tanh();
    let sech = 1.0 / r.cosh();
    let mut acc = vec![0.0; cutoff + 1];
    // exp(−t ab)|m, n⟩ = Σ_k (−t)^k / k! √(m!/(m−k)!) √(n!/(n−k)!) |m−k, n−k⟩
    let mut down = 1.0;
    for k in 0..=m.min(n) {
        if k > 0 {
            down *= -t * (((m - k + 1) * (n - k + 1)) as f64).sqrt() / k as f64;
        }
        let (p, q) = (m - k, n - k);
        let damp = sech.powi((p + q + 1) as i32);
        // exp(t a†b†)|p, q⟩ = Σ_l t^l / l! √((p+l)!/p!) √((q+l)!/q!) |p+l, q+l⟩
        let mut up = 1.0;
        for l in 0.. {
            if p + l > cutoff || q + l > cutoff {
                break;
            }
            if l > 0 {
                up *= t * (((p + l) * (q + l)) as f64).sqrt() / l as f64;
            }
            acc[p + l] += down * damp * up;
        }
    }
    let shift = m as isize - n as isize;
    acc.into_iter()
        .enumerate()
        .filter(|&(i, a)| a != 0.0 && i as isize - shift >= 0 && (i as isize - shift) as usize <= cutoff)
        .collect()
}

/// `ln ‖ρ^{T_B}‖₁` for the squeezed thermal state, natural-log units.
pub fn fock_oracle_log_negativity(r: f64, n_a: f64, n_b: f64, cutoff: usize) -> Result<f64> {
    if !(r >= 0.0 && n_a >= 0.0 && n_b >= 0.0) {
        return Err(Error::Config("squeezing and occupations must be non-negative".into()));
    }
    let dim = cutoff + 1;
    // blocks[s] holds ρ^Γ restricted to i + j = s, indexed by i.
    let mut blocks: Vec<DMatrix<f64>> = (0..=2 * cutoff).map(|s| {
        let lo = s.saturating_sub(cutoff);
        let hi = s.min(cutoff);
        DMatrix::zeros(hi - lo + 1, hi - lo + 1)
    }).collect();
    let mut trace = 0.0;
    for m in 0..dim {
        let pa = thermal(n_a, m);
        if pa < 1e-300 {
            continue;
        }
        for n in 0..dim {
            let p = pa * thermal(n_b, n);
            if p < 1e-300 {
                continue;
            }
            let d = m as isize - n as isize;
            let psi = squeezed_number_state(r, m, n, cutoff);
            for &(i, x) in &psi {
                trace += p * x * x;
                let li = (i as isize - d) as usize;
                for &(k, y) in &psi {
                    // ⟨i, l|ρ|k, j⟩ with l = i − d, j = k − d lands at
                    // ρ^Γ[(i, j), (k, l)], inside block s = i + j = k + l.
                    let j = (k as isize - d) as usize;
                    let s = i + j;
                    let lo = s.saturating_sub(cutoff);
                    debug_assert_eq!(k + li, s);
                    blocks[s][(i - lo, k - lo)] += p * x * y;
                }
            }
        }
    }
    let tail = 1.0 - trace;
    if tail > TAIL_LIMIT {
        return Err(Error::Truncation { cutoff, tail });
    }
    let norm: f64 = blocks
        .into_iter()
        .map(|b| SymmetricEigen::new(b).eigenvalues.iter().map(|e| e.abs()).sum::<f64>())
        .sum();
    Ok(norm.ln().max(0.0))
}
