//! Out-state observables of the vacuum scattered by S: spectral flux,
//! photon-number correlations, Gaussian covariance, logarithmic negativity
//! and the degree of entanglement.
//!
//! Conventions: out operators are `d_α = Σ_β (U_αβ a_β + V_αβ a_β†)` where
//! for a positive-norm `α` the in-operators of positive norm enter through
//! `U` and those of negative norm through `V`; for a negative-norm `α` the
//! roles swap and the amplitudes are conjugated. Quadratures are
//! `x = (d + d†)/√2`, `p = (d − d†)/(i√2)`, so the vacuum covariance is `I/2`.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kinematics::{ModeLabel, Scenario};
use crate::scattering::ScatteringMatrix;
use crate::scalar::Real;

/// Real square matrix, row-major nested vectors.
pub type RMat<T> = Vec<Vec<T>>;

pub const UNCERTAINTY_TOL: f64 = 1e-9;
pub const CALIBRATION_TOL: f64 = 1e-9;

/// Written into output headers so readers know how J is normalised.
pub const J_CONVENTION: &str =
    "J = E_N / (2 asinh(sqrt((N1+N2)/2))) with E_N = -ln(2 nu_min) of the partial transpose, N = 2*pi*phi photons per mode";

#[derive(Debug, Clone, PartialEq)]
pub struct FluxSpectrumRow<T> {
    pub omega: T,
    pub scenario: Option<Scenario>,
    pub labels: Vec<ModeLabel>,
    pub eta: Vec<i32>,
    /// φ^α = N_α / 2π.
    pub flux: Vec<T>,
}

impl<T: Real> FluxSpectrumRow<T> {
    pub fn get(&self, label: ModeLabel) -> Option<T> {
        self.labels.iter().position(|l| *l == label).map(|i| self.flux[i])
    }

    /// (Σ φ over positive norm, Σ φ over negative norm).
    pub fn totals(&self) -> (T, T) {
        let mut pos = T::zero();
        let mut neg = T::zero();
        for (f, &e) in self.flux.iter().zip(self.eta.iter()) {
            if e > 0 {
                pos = pos + *f;
            } else {
                neg = neg + *f;
            }
        }
        (pos, neg)
    }

    /// |Σ_pos − Σ_neg| / max(Σ_pos, Σ_neg); zero when both vanish.
    pub fn balance_defect(&self) -> T {
        let (p, n) = self.totals();
        let m = p.max(n);
        if m == T::zero() {
            T::zero()
        } else {
            (p - n).abs() / m
        }
    }
}

/// `N_α = Σ_{β of opposite norm} |S_αβ|²`.
pub fn photon_numbers<T: Real>(s: &ScatteringMatrix<T>) -> Vec<T> {
    (0..s.out_basis.len())
        .map(|a| {
            (0..s.in_basis.len())
                .filter(|&b| s.eta_in[b] != s.eta_out[a])
                .fold(T::zero(), |acc, b| acc + s.entries[(a, b)].norm_sqr())
        })
        .collect()
}

pub fn photon_flux<T: Real>(s: &ScatteringMatrix<T>, scenario: Option<Scenario>) -> FluxSpectrumRow<T> {
    let two_pi = T::PI() + T::PI();
    FluxSpectrumRow {
        omega: s.omega,
        scenario,
        labels: s.out_basis.clone(),
        eta: s.eta_out.clone(),
        flux: photon_numbers(s).into_iter().map(|n| n / two_pi).collect(),
    }
}

/// `Σ_{β ∉ {α}} S*_αβ S_α'β`, with `{α}` the in-modes of the same norm as `α`.
fn cross_sum<T: Real>(s: &ScatteringMatrix<T>, a: usize, b: usize) -> Complex<T> {
    (0..s.in_basis.len())
        .filter(|&j| s.eta_in[j] != s.eta_out[a])
        .fold(Complex::zero(), |acc, j| acc + s.entries[(a, j)].conj() * s.entries[(b, j)])
}

/// Photon-number Pearson correlations over out-mode pairs. Entries whose
/// modes carry no photons are 0.
pub fn correlation_matrix<T: Real>(s: &ScatteringMatrix<T>, bandwidth_ratio: T) -> RMat<T> {
    let n = photon_numbers(s);
    let k = s.out_basis.len();
    let mut c = vec![vec![T::zero(); k]; k];
    for a in 0..k {
        for b in 0..k {
            let v = n[a] * (n[a] + T::one()) * n[b] * (n[b] + T::one());
            if v > T::zero() {
                c[a][b] = bandwidth_ratio * cross_sum(s, a, b).norm_sqr() / v.sqrt();
            }
        }
    }
    c
}

/// Bogoliubov blocks `(U, V)` of the out operators.
pub fn bogoliubov<T: Real>(s: &ScatteringMatrix<T>) -> (Vec<Vec<Complex<T>>>, Vec<Vec<Complex<T>>>) {
    let (no, ni) = (s.out_basis.len(), s.in_basis.len());
    let mut u = vec![vec![Complex::zero(); ni]; no];
    let mut v = u.clone();
    for a in 0..no {
        for b in 0..ni {
            let x = s.entries[(a, b)];
            let same = s.eta_in[b] == s.eta_out[a];
            let x = if s.eta_out[a] > 0 { x } else { x.conj() };
            if same {
                u[a][b] = x;
            } else {
                v[a][b] = x;
            }
        }
    }
    (u, v)
}

/// Covariance of all out modes, ordered `(x_1, p_1, x_2, p_2, …)` along `out_basis`.
pub fn full_covariance<T: Real>(s: &ScatteringMatrix<T>) -> RMat<T> {
    let (u, v) = bogoliubov(s);
    let no = u.len();
    let ni = s.in_basis.len();
    // Rows of the real quadrature transform, one per out quadrature.
    let mut t = vec![vec![T::zero(); 2 * ni]; 2 * no];
    for a in 0..no {
        for b in 0..ni {
            let sum = u[a][b] + v[a][b];
            let dif = u[a][b] - v[a][b];
            t[2 * a][2 * b] = sum.re;
            t[2 * a][2 * b + 1] = -dif.im;
            t[2 * a + 1][2 * b] = sum.im;
            t[2 * a + 1][2 * b + 1] = dif.re;
        }
    }
    let half = T::lit(0.5);
    let mut sigma = vec![vec![T::zero(); 2 * no]; 2 * no];
    for i in 0..2 * no {
        for j in i..2 * no {
            let x = (0..2 * ni).fold(T::zero(), |acc, k| acc + t[i][k] * t[j][k]) * half;
            sigma[i][j] = x;
            sigma[j][i] = x;
        }
    }
    sigma
}

fn sub4<T: Real>(sigma: &RMat<T>, a: usize, b: usize) -> [[T; 4]; 4] {
    let idx = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1];
    let mut out = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = sigma[idx[i]][idx[j]];
        }
    }
    out
}

/// Two-mode covariance `(x_α, p_α, x_α', p_α')`; fails if it violates the
/// uncertainty relation.
pub fn reduced_covariance<T: Real>(s: &ScatteringMatrix<T>, pair: (ModeLabel, ModeLabel)) -> Result<[[T; 4]; 4]> {
    let pos = |l: ModeLabel| {
        s.out_basis
            .iter()
            .position(|x| *x == l)
            .ok_or_else(|| Error::Config(format!("{l} is not an out mode at this frequency")))
    };
    let (a, b) = (pos(pair.0)?, pos(pair.1)?);
    let sigma = sub4(&full_covariance(s), a, b);
    check_uncertainty(&sigma)?;
    Ok(sigma)
}

fn det2<T: Real>(a: T, b: T, c: T, d: T) -> T {
    a * d - b * c
}

pub fn det<T: Real>(m: &[[T; 4]; 4]) -> T {
    let mut a = *m;
    let mut d = T::one();
    for k in 0..4 {
        let p = (k..4).max_by(|&i, &j| a[i][k].abs().partial_cmp(&a[j][k].abs()).unwrap()).unwrap();
        if a[p][k] == T::zero() {
            return T::zero();
        }
        if p != k {
            a.swap(p, k);
            d = -d;
        }
        d = d * a[k][k];
        for i in k + 1..4 {
            let f = a[i][k] / a[k][k];
            for j in k..4 {
                a[i][j] = a[i][j] - f * a[k][j];
            }
        }
    }
    d
}

/// `(ν₋, ν₊)` for the covariance itself (`flip = false`) or its partial
/// transpose (`flip = true`).
fn two_mode_symplectic<T: Real>(m: &[[T; 4]; 4], flip: bool) -> (T, T) {
    let da = det2(m[0][0], m[0][1], m[1][0], m[1][1]);
    let db = det2(m[2][2], m[2][3], m[3][2], m[3][3]);
    let dc = det2(m[0][2], m[0][3], m[1][2], m[1][3]);
    let delta = if flip { da + db - dc - dc } else { da + db + dc + dc };
    let ds = det(m);
    let disc = (delta * delta - T::lit(4.0) * ds).max(T::zero()).sqrt();
    let plus = (delta + disc) * T::lit(0.5);
    // ν₋² = det σ / ν₊² avoids the cancellation in (Δ − disc)/2 when ν₋ ≪ ν₊.
    let minus = if plus > T::zero() { (ds / plus).max(T::zero()) } else { T::zero() };
    (minus.sqrt(), plus.sqrt())
}

/// Symplectic eigenvalues of a two-mode covariance.
pub fn symplectic_eigenvalues<T: Real>(m: &[[T; 4]; 4]) -> (T, T) {
    two_mode_symplectic(m, false)
}

/// Local (single-mode) symplectic eigenvalues `sqrt(det A)`, `sqrt(det B)`.
pub fn local_symplectic_eigenvalues<T: Real>(m: &[[T; 4]; 4]) -> (T, T) {
    (
        det2(m[0][0], m[0][1], m[1][0], m[1][1]).sqrt(),
        det2(m[2][2], m[2][3], m[3][2], m[3][3]).sqrt(),
    )
}

/// Tolerance on `ν₋ ≥ 1/2`. The symplectic eigenvalue of a nearly pure state
/// comes from the square root of a nearly vanishing discriminant, so its
/// round-off floor is `√ε`, not `ε`.
pub fn uncertainty_tolerance<T: Real>() -> T {
    T::lit(UNCERTAINTY_TOL).max(T::epsilon().sqrt() * T::lit(100.0))
}

pub fn check_uncertainty<T: Real>(m: &[[T; 4]; 4]) -> Result<()> {
    let (lo, _) = symplectic_eigenvalues(m);
    let defect = lo - T::lit(0.5);
    if defect < -uncertainty_tolerance::<T>() {
        return Err(Error::Uncertainty(defect.to_f64_lossy()));
    }
    Ok(())
}

/// `E_N = max(0, −ln 2ν̃₋)` in natural-log units.
pub fn log_negativity<T: Real>(m: &[[T; 4]; 4]) -> T {
    let (nu, _) = two_mode_symplectic(m, true);
    (-(nu + nu).ln()).max(T::zero())
}

/// Ratio of `E_N` to the negativity `2 asinh √N̄` of a two-mode squeezed
/// vacuum with the same mean occupation `N̄ = (N₁+N₂)/2`. `None` when that
/// reference negativity is below the round-off floor of `E_N` itself, i.e.
/// when there are effectively no photons.
pub fn degree_of_entanglement<T: Real>(e_n: T, n1: T, n2: T) -> Result<Option<T>> {
    let mean = (n1 + n2) * T::lit(0.5);
    if !(mean > T::zero()) {
        return Ok(None);
    }
    let max_ln = T::lit(2.0) * mean.sqrt().asinh();
    if !(max_ln > uncertainty_tolerance::<T>()) {
        return Ok(None);
    }
    let j = e_n / max_ln;
    if j > T::one() + T::lit(CALIBRATION_TOL) {
        return Err(Error::Calibration(j.to_f64_lossy()));
    }
    Ok(Some(j.min(T::one())))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeReport<T> {
    pub pair: (ModeLabel, ModeLabel),
    pub c: T,
    pub e_n: T,
    pub j: Option<T>,
    /// Whether the reduced pair state is pure (det σ = 1/16).
    pub pure: bool,
}

/// Pairwise correlations and entanglement of every out-mode pair at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct PairAnalysis<T> {
    pub omega: T,
    pub labels: Vec<ModeLabel>,
    pub eta: Vec<i32>,
    pub photons: Vec<T>,
    pub c: RMat<T>,
    pub e_n: RMat<T>,
    pub j: Vec<Vec<Option<T>>>,
}

impl<T: Real> PairAnalysis<T> {
    pub fn index(&self, l: ModeLabel) -> Option<usize> {
        self.labels.iter().position(|x| *x == l)
    }

    pub fn report(&self, a: ModeLabel, b: ModeLabel) -> Option<TwoModeReport<T>> {
        let (i, k) = (self.index(a)?, self.index(b)?);
        Some(TwoModeReport { pair: (a, b), c: self.c[i][k], e_n: self.e_n[i][k], j: self.j[i][k], pure: false })
    }
}

pub fn analyze_pairs<T: Real>(s: &ScatteringMatrix<T>, bandwidth_ratio: T) -> Result<PairAnalysis<T>> {
    let k = s.out_basis.len();
    let photons = photon_numbers(s);
    let c = correlation_matrix(s, bandwidth_ratio);
    let sigma = full_covariance(s);
    let mut e_n = vec![vec![T::zero(); k]; k];
    let mut j = vec![vec![None; k]; k];
    for a in 0..k {
        for b in 0..k {
            if a == b {
                continue;
            }
            let m = sub4(&sigma, a, b);
            check_uncertainty(&m)?;
            let e = log_negativity(&m);
            e_n[a][b] = e;
            j[a][b] = degree_of_entanglement(e, photons[a], photons[b])?;
        }
    }
    Ok(PairAnalysis { omega: s.omega, labels: s.out_basis.clone(), eta: s.eta_out.clone(), photons, c, e_n, j })
}

/// Two-mode report for one pair, including the purity of the reduced state.
pub fn two_mode_report<T: Real>(s: &ScatteringMatrix<T>, pair: (ModeLabel, ModeLabel), bandwidth_ratio: T) -> Result<TwoModeReport<T>> {
    let m = reduced_covariance(s, pair)?;
    let pa = analyze_pairs(s, bandwidth_ratio)?;
    let mut r = pa.report(pair.0, pair.1).expect("pair present");
    r.pure = (det(&m) - T::lit(1.0 / 16.0)).abs() < T::lit(1e-9);
    Ok(r)
}

/// Largest `|(2σΩ)² + I|`: zero exactly for pure Gaussian states.
pub fn purity_defect<T: Real>(sigma: &RMat<T>) -> T {
    let n = sigma.len();
    // 2σΩ with Ω = ⊕ [[0, 1], [−1, 0]].
    let mut m = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for k in 0..n / 2 {
            m[i][2 * k] = -(sigma[i][2 * k + 1] + sigma[i][2 * k + 1]);
            m[i][2 * k + 1] = sigma[i][2 * k] + sigma[i][2 * k];
        }
    }
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut x = (0..n).fold(T::zero(), |acc, k| acc + m[i][k] * m[k][j]);
            if i == j {
                x = x + T::one();
            }
            worst = worst.max(x.abs());
        }
    }
    worst
}

/// Symplectic spectrum (ascending) of an `n`-mode covariance from the
/// eigenvalues `±iν` of `Ωσ`.
pub fn symplectic_spectrum(sigma: &RMat<f64>) -> Vec<f64> {
    let n = sigma.len();
    let mut m = nalgebra::DMatrix::<f64>::zeros(n, n);
    for k in 0..n / 2 {
        for j in 0..n {
            m[(2 * k, j)] = sigma[2 * k + 1][j];
            m[(2 * k + 1, j)] = -sigma[2 * k][j];
        }
    }
    let mut nu: Vec<f64> = m.complex_eigenvalues().iter().filter(|z| z.im > 0.0).map(|z| z.im).collect();
    nu.sort_by(|a, b| a.partial_cmp(b).unwrap());
    nu
}

/// Covariance of `S₂(r)(ρ_th(n_a) ⊗ ρ_th(n_b))S₂(r)†`.
pub fn squeezed_thermal_covariance<T: Real>(r: T, n_a: T, n_b: T) -> [[T; 4]; 4] {
    let (c, s) = (r.cosh(), r.sinh());
    let half = T::lit(0.5);
    let va = (n_a + n_a + T::one()) * half;
    let vb = (n_b + n_b + T::one()) * half;
    let d = c * c * va + s * s * vb;
    let e = s * s * va + c * c * vb;
    let o = c * s * (va + vb);
    let z = T::zero();
    [[d, z, o, z], [z, d, z, -o], [o, z, e, z], [z, -o, z, e]]
}

/// Applies independent phase rotations to the two modes (LN-invariant).
pub fn rotate_locally<T: Real>(m: &[[T; 4]; 4], theta_a: T, theta_b: T) -> [[T; 4]; 4] {
    let mut r = [[T::zero(); 4]; 4];
    let (ca, sa) = (theta_a.cos(), theta_a.sin());
    let (cb, sb) = (theta_b.cos(), theta_b.sin());
    r[0][0] = ca;
    r[0][1] = -sa;
    r[1][0] = sa;
    r[1][1] = ca;
    r[2][2] = cb;
    r[2][3] = -sb;
    r[3][2] = sb;
    r[3][3] = cb;
    let mut out = [[T::zero(); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut x = T::zero();
            for k in 0..4 {
                for l in 0..4 {
                    x = x + r[i][k] * m[k][l] * r[j][l];
                }
            }
            out[i][j] = x;
        }
    }
    out
}

/// One `(C, J)` point of the correlation/entanglement scatter.
#[derive(Debug, Clone, PartialEq)]
pub struct JcPoint {
    pub scenario: Scenario,
    pub omega: f64,
    pub pair: (ModeLabel, ModeLabel),
    pub c: f64,
    pub j: f64,
}

/// Every unordered pair with a defined J, tagged by scenario.
pub fn jc_scatter<T: Real>(results: &[(Scenario, PairAnalysis<T>)]) -> Vec<JcPoint> {
    let mut out = Vec::new();
    for (sc, pa) in results {
        for a in 0..pa.labels.len() {
            for b in a + 1..pa.labels.len() {
                if let Some(j) = pa.j[a][b] {
                    out.push(JcPoint {
                        scenario: *sc,
                        omega: pa.omega.to_f64_lossy(),
                        pair: (pa.labels[a], pa.labels[b]),
                        c: pa.c[a][b].to_f64_lossy(),
                        j: j.to_f64_lossy(),
                    });
                }
            }
        }
    }
    out
}
