//! Scattering matrix at the index step.
//!
//! Each mode is represented by the eight quantities that must be continuous
//! across `x = 0`: the potential `A`, the three oscillator amplitudes `P_i`,
//! and their canonical momenta conjugate to `x`,
//!
//! ```text
//! Π_A  = −(1/4π) ∂ₓA + γβ Σ P_i
//! Π_Pi = −γβ a_i D P_i,         a_i = 1/(κ_i Ω_i²),  D = γ(∂t − u∂ₓ)
//! ```
//!
//! The conserved current `J = −2 Im Σ conj(φ) Π` then gives the norm that
//! makes the resulting matrix pseudo-unitary.
//!
//! `P_i` and `Π_A` are stored multiplied by `−i`. Continuity is unaffected,
//! but every component becomes a real rational function of `(q, Ω)`: real
//! roots get real vectors and conjugate roots get conjugate vectors.

use num_complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kinematics::{Front, FrequencySolution, ModeLabel, ModeSolution, NormSign};
use crate::linalg::{CMat, FullPivLu};
use crate::medium::{DispersionSide, Side};
use crate::scalar::Real;

pub const COND_LIMIT: f64 = 1e12;
pub const RESIDUAL_LIMIT: f64 = 1e-6;

/// Names of the matched components, in vector order.
pub const COMPONENTS: [&str; 8] = ["A", "P1", "P2", "P3", "Pi_A", "Pi_P1", "Pi_P2", "Pi_P3"];

pub type FieldVector<T> = [Complex<T>; 8];

/// `−2 Im Σ_a conj(φ_a) Π_a`: the x-current of a single mode, written for
/// the stored phase convention.
pub fn current<T: Real>(v: &FieldVector<T>) -> T {
    let p = (1..4).fold(Complex::<T>::zero(), |acc, a| acc + v[a].conj() * v[a + 4]);
    let s = v[0].conj() * v[4] - p;
    -(s.re + s.re)
}

/// Field vector of `mode` with `A = 1`, before normalisation.
pub fn raw_field_vector<T: Real>(side: &DispersionSide<T>, mode: &ModeSolution<T>) -> Result<FieldVector<T>> {
    let q = mode.wavenumber * side.light_speed;
    let om = mode.lab_frequency;
    let i = Complex::new(T::zero(), T::one());
    let four_pi = T::lit(4.0) * T::PI();
    let gb = side.gamma * side.beta;
    let a = Complex::new(T::one(), T::zero());
    let e = i * om * a;
    let mut v = [Complex::zero(); 8];
    v[0] = a;
    let mut psum = Complex::zero();
    for k in 0..3 {
        let w2 = side.resonances[k] * side.resonances[k];
        let den = Complex::new(w2, T::zero()) - om * om;
        if den.norm() < T::lit(1e-12) * w2 {
            return Err(Error::ResonancePole {
                frequency: om.re.to_f64_lossy(),
                resonance: side.resonances[k].to_f64_lossy(),
            });
        }
        let p = e * (side.kappas[k] * w2) / den;
        v[1 + k] = p;
        psum = psum + p;
        let a_k = (side.kappas[k] * w2).recip();
        // −γβ a_k (−iΩ) P_k
        v[5 + k] = i * om * p * (gb * a_k);
    }
    v[4] = -(i * q * a) / four_pi + psum * gb;
    for x in v[1..5].iter_mut() {
        *x = *x * -i;
    }
    Ok(v)
}

/// Matched components of a mode: propagating modes carry unit |current|,
/// evanescent modes `A = 1`. The norm sign implied by the current and group
/// velocity must agree with the lab-frequency rule.
pub fn field_vector<T: Real>(side: &DispersionSide<T>, mode: &ModeSolution<T>) -> Result<FieldVector<T>> {
    let mut v = raw_field_vector(side, mode)?;
    if let (Some(vg), Some(sign)) = (mode.group_velocity, mode.norm_sign) {
        let j = current(&v);
        let implied = if j * vg > T::zero() { NormSign::Positive } else { NormSign::Negative };
        if implied != sign || j == T::zero() {
            return Err(Error::Consistency {
                omega: mode.comoving_frequency.to_f64_lossy(),
                residual: f64::NAN,
            });
        }
        let s = j.abs().sqrt().recip();
        for x in v.iter_mut() {
            *x = *x * s;
        }
    }
    Ok(v)
}

/// Conserved norm of a propagating mode's field vector: current signed by
/// propagation direction.
pub fn mode_norm<T: Real>(v: &FieldVector<T>, group_velocity: T) -> T {
    let j = current(v);
    if group_velocity > T::zero() {
        j
    } else {
        -j
    }
}

/// Unknown-amplitude system for one frequency.
#[derive(Debug, Clone)]
pub struct MatchingSystem<T> {
    pub omega: T,
    /// Out modes followed by decaying evanescent modes.
    pub unknowns: Vec<ModeLabel>,
    /// One column per unknown (right-side columns negated).
    pub matrix: CMat<T>,
    pub in_vectors: Vec<FieldVector<T>>,
    pub in_basis: Vec<ModeLabel>,
}

#[derive(Debug, Clone)]
pub struct ScatteringMatrix<T> {
    pub omega: T,
    pub in_basis: Vec<ModeLabel>,
    pub out_basis: Vec<ModeLabel>,
    pub eta_in: Vec<i32>,
    pub eta_out: Vec<i32>,
    /// Rows follow `out_basis`, columns `in_basis`.
    pub entries: CMat<T>,
    /// max |S η S† − η|.
    pub residual: T,
    /// 1-norm condition number of the column-equilibrated matching matrix.
    pub condition: f64,
}

impl<T: Real> ScatteringMatrix<T> {
    pub fn dim(&self) -> usize {
        self.in_basis.len()
    }

    pub fn get(&self, out: ModeLabel, inp: ModeLabel) -> Option<Complex<T>> {
        let a = self.out_basis.iter().position(|l| *l == out)?;
        let b = self.in_basis.iter().position(|l| *l == inp)?;
        Some(self.entries[(a, b)])
    }
}

fn norm_value<T: Real>(m: &ModeSolution<T>) -> i32 {
    m.norm_sign.map_or(0, NormSign::value)
}

pub fn matching_system<T: Real>(front: &Front<T>, fs: &FrequencySolution<T>) -> Result<MatchingSystem<T>> {
    let omega_f = fs.omega.to_f64_lossy();
    let unknowns: Vec<ModeLabel> = fs.out_basis.iter().chain(fs.evanescent.iter()).copied().collect();
    if unknowns.len() != 8 {
        return Err(Error::Unbalanced { omega: omega_f, n_in: fs.in_basis.len(), n_out: unknowns.len() });
    }
    let vec_of = |l: ModeLabel| -> Result<FieldVector<T>> {
        let m = fs.mode(l).ok_or_else(|| Error::Labeling {
            omega: omega_f,
            side: l.side,
            reason: format!("mode {l} missing"),
        })?;
        field_vector(front.side(l.side), m)
    };
    let mut cols = Vec::with_capacity(8);
    for &l in &unknowns {
        let v = vec_of(l)?;
        let sign = if l.side == Side::Left { T::one() } else { -T::one() };
        cols.push(v.iter().map(|z| *z * sign).collect::<Vec<_>>());
    }
    let in_vectors = fs.in_basis.iter().map(|&l| vec_of(l)).collect::<Result<Vec<_>>>()?;
    Ok(MatchingSystem {
        omega: fs.omega,
        unknowns,
        matrix: CMat::from_columns(&cols),
        in_vectors,
        in_basis: fs.in_basis.clone(),
    })
}

/// Pseudo-unitarity defect `max |S η_in S† − η_out|`.
pub fn pseudo_unitarity_residual<T: Real>(s: &CMat<T>, eta_in: &[i32], eta_out: &[i32]) -> T {
    let mut worst = T::zero();
    for a in 0..s.rows {
        for b in 0..s.rows {
            let mut acc = Complex::<T>::zero();
            for (j, &e) in eta_in.iter().enumerate() {
                acc = acc + s[(a, j)] * s[(b, j)].conj() * T::lit(e as f64);
            }
            if a == b {
                acc = acc - T::lit(eta_out[a] as f64);
            }
            worst = worst.max(acc.norm());
        }
    }
    worst
}

pub fn build_scattering_matrix<T: Real>(front: &Front<T>, fs: &FrequencySolution<T>) -> Result<ScatteringMatrix<T>> {
    let omega_f = fs.omega.to_f64_lossy();
    if fs.in_basis.is_empty() {
        return Err(Error::Unbalanced { omega: omega_f, n_in: 0, n_out: fs.out_basis.len() });
    }
    let sys = matching_system(front, fs)?;

    // Column equilibration: mode normalisation is arbitrary up to scale.
    let mut scaled = sys.matrix.clone();
    let mut col_scale = vec![T::one(); 8];
    for (j, cs) in col_scale.iter_mut().enumerate() {
        let m = (0..8).fold(T::zero(), |a, i| a.max(scaled[(i, j)].norm()));
        *cs = m.recip();
        for i in 0..8 {
            scaled[(i, j)] = scaled[(i, j)] * *cs;
        }
    }
    let lu = FullPivLu::new(&scaled);
    let condition = lu.condition().to_f64_lossy();
    if !(condition <= COND_LIMIT) {
        return Err(Error::IllConditioned { omega: omega_f, cond: condition });
    }

    let n_out = fs.out_basis.len();
    let n_in = fs.in_basis.len();
    let mut entries = CMat::zeros(n_out, n_in);
    for (b, (l, v)) in sys.in_basis.iter().zip(sys.in_vectors.iter()).enumerate() {
        let sign = if l.side == Side::Left { -T::one() } else { T::one() };
        let rhs: Vec<Complex<T>> = v.iter().map(|z| *z * sign).collect();
        let x = lu.solve(&rhs);
        for a in 0..n_out {
            entries[(a, b)] = x[a] * col_scale[a];
        }
    }
    let eta = |ls: &[ModeLabel]| -> Vec<i32> { ls.iter().map(|&l| fs.mode(l).map_or(0, norm_value)).collect() };
    let eta_in = eta(&fs.in_basis);
    let eta_out = eta(&fs.out_basis);
    let residual = pseudo_unitarity_residual(&entries, &eta_in, &eta_out);
    if !(residual.to_f64_lossy() <= RESIDUAL_LIMIT) {
        return Err(Error::Consistency { omega: omega_f, residual: residual.to_f64_lossy() });
    }
    Ok(ScatteringMatrix {
        omega: fs.omega,
        in_basis: fs.in_basis.clone(),
        out_basis: fs.out_basis.clone(),
        eta_in,
        eta_out,
        entries,
        residual,
        condition,
    })
}
