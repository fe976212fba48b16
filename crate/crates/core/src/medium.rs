//! Dispersive medium on both sides of the front.
//!
//! Internally every wavenumber is carried as `q = c k`, i.e. in frequency
//! units, so the dispersion relation reads `q² − ω² = G(Ω)` with
//! `G(Ω) = Ω² Σ 4πκ_i Ω_i² / (Ω_i² − Ω²)` and `Ω = γ(ω + βq)`. Public
//! wavenumbers are converted back with `k = q / c`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::Real;

/// Fused silica, three-term Sellmeier fit: oscillator strengths `B_i` and
/// resonance wavelengths in µm.
pub const FUSED_SILICA_B: [f64; 3] = [0.6961663, 0.4079426, 0.8974794];
pub const FUSED_SILICA_LAMBDA_UM: [f64; 3] = [0.0684043, 0.1162414, 9.896161];

/// Distance (in frequency units) from a resonance inside which the index is not evaluated.
pub const POLE_GUARD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// x < 0, raised index.
    Left,
    /// x > 0, base medium.
    Right,
}

impl Side {
    pub fn letter(self) -> char {
        match self {
            Side::Left => 'L',
            Side::Right => 'R',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumParams<T> {
    pub resonant_frequencies: [T; 3],
    pub elastic_constants: [T; 3],
    pub front_speed_fraction: T,
    pub delta_n: T,
    pub light_speed: T,
}

impl<T: Real> MediumParams<T> {
    /// Fused silica with `light_speed` setting the unit of frequency
    /// (`Ω_i = 2πc/λ_i`, λ in µm).
    pub fn fused_silica(front_speed_fraction: T, delta_n: T, light_speed: T) -> Self {
        let two_pi = T::PI() + T::PI();
        let four_pi = two_pi + two_pi;
        let mut res = [T::zero(); 3];
        let mut kap = [T::zero(); 3];
        for i in 0..3 {
            res[i] = two_pi * light_speed / T::lit(FUSED_SILICA_LAMBDA_UM[i]);
            kap[i] = T::lit(FUSED_SILICA_B[i]) / four_pi;
        }
        MediumParams {
            resonant_frequencies: res,
            elastic_constants: kap,
            front_speed_fraction,
            delta_n,
            light_speed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidMedium(m.to_string()));
        if self.resonant_frequencies.iter().any(|w| !(*w > T::zero()) || !w.is_finite()) {
            return bad("resonant frequencies must be positive and finite");
        }
        if self.elastic_constants.iter().any(|k| !(*k > T::zero()) || !k.is_finite()) {
            return bad("elastic constants must be positive and finite");
        }
        let b = self.front_speed_fraction;
        if !(b > T::zero() && b < T::one()) {
            return bad("front speed fraction must lie in (0, 1)");
        }
        if !(self.delta_n >= T::zero()) || !self.delta_n.is_finite() {
            return bad("delta_n must be non-negative and finite");
        }
        if !(self.light_speed > T::zero()) || !self.light_speed.is_finite() {
            return bad("light speed must be positive and finite");
        }
        let r = self.resonant_frequencies;
        if r[0] == r[1] || r[1] == r[2] || r[0] == r[2] {
            return bad("resonant frequencies must be distinct");
        }
        Ok(())
    }

    pub fn gamma(&self) -> T {
        let b = self.front_speed_fraction;
        (T::one() - b * b).sqrt().recip()
    }

    /// Static index of the base medium, `n(0) = sqrt(1 + 4π Σκ_i)`.
    pub fn base_static_index(&self) -> T {
        let four_pi = T::lit(4.0) * T::PI();
        let s = self.elastic_constants.iter().fold(T::zero(), |a, &k| a + k);
        (T::one() + four_pi * s).sqrt()
    }

    /// Common factor applied to every κ_i on the left so that `n(0)` rises by `delta_n`.
    pub fn left_kappa_scale(&self) -> T {
        let n0 = self.base_static_index();
        let nl = n0 + self.delta_n;
        (nl * nl - T::one()) / (n0 * n0 - T::one())
    }

    pub fn side(&self, side: Side) -> DispersionSide<T> {
        let scale = match side {
            Side::Left => self.left_kappa_scale(),
            Side::Right => T::one(),
        };
        DispersionSide {
            side,
            resonances: self.resonant_frequencies,
            kappas: self.elastic_constants.map(|k| k * scale),
            beta: self.front_speed_fraction,
            gamma: self.gamma(),
            light_speed: self.light_speed,
        }
    }

    pub fn cast<U: Real>(&self) -> MediumParams<U> {
        let c = |x: T| U::lit(x.to_f64_lossy());
        MediumParams {
            resonant_frequencies: self.resonant_frequencies.map(c),
            elastic_constants: self.elastic_constants.map(c),
            front_speed_fraction: c(self.front_speed_fraction),
            delta_n: c(self.delta_n),
            light_speed: c(self.light_speed),
        }
    }
}

/// Effective constants of one side of the front.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionSide<T> {
    pub side: Side,
    pub resonances: [T; 3],
    pub kappas: [T; 3],
    pub beta: T,
    pub gamma: T,
    pub light_speed: T,
}

impl<T: Real> DispersionSide<T> {
    fn strength(&self, i: usize) -> T {
        T::lit(4.0) * T::PI() * self.kappas[i]
    }

    /// Resonances in ascending order.
    pub fn sorted_resonances(&self) -> [T; 3] {
        let mut r = self.resonances;
        r.sort_by(|a, b| a.partial_cmp(b).unwrap());
        r
    }

    /// Rest-frame index `n(Ω)`. Fails within [`POLE_GUARD`] of a resonance
    /// and for frequencies in a stop band (`n² < 0`).
    pub fn refractive_index(&self, lab_frequency: T) -> Result<T> {
        for &w in &self.resonances {
            if (lab_frequency - w).abs() < T::lit(POLE_GUARD) {
                return Err(Error::ResonancePole {
                    frequency: lab_frequency.to_f64_lossy(),
                    resonance: w.to_f64_lossy(),
                });
            }
        }
        let n2 = T::one() + self.susceptibility(lab_frequency);
        if n2 < T::zero() {
            return Err(Error::InvalidMedium(format!(
                "n^2 < 0 at lab frequency {lab_frequency} (stop band)"
            )));
        }
        Ok(n2.sqrt())
    }

    /// χ(Ω) = n² − 1.
    pub fn susceptibility(&self, om: T) -> T {
        (0..3).fold(T::zero(), |acc, i| {
            let w2 = self.resonances[i] * self.resonances[i];
            acc + self.strength(i) * w2 / (w2 - om * om)
        })
    }

    /// dχ/dΩ.
    pub fn susceptibility_derivative(&self, om: T) -> T {
        (0..3).fold(T::zero(), |acc, i| {
            let w2 = self.resonances[i] * self.resonances[i];
            let d = w2 - om * om;
            acc + self.strength(i) * w2 * (om + om) / (d * d)
        })
    }

    /// G(Ω) and G'(Ω) for complex Ω.
    pub fn g_and_derivative(&self, om: Complex<T>) -> (Complex<T>, Complex<T>) {
        let om2 = om * om;
        let mut chi = Complex::new(T::zero(), T::zero());
        let mut dchi = chi;
        for i in 0..3 {
            let w2 = self.resonances[i] * self.resonances[i];
            let b = self.strength(i) * w2;
            let inv = (Complex::new(w2, T::zero()) - om2).inv();
            chi = chi + inv * b;
            dchi = dchi + om * inv * inv * (b + b);
        }
        (om2 * chi, om * (chi + chi) + om2 * dchi)
    }

    /// Lab frequency `Ω = γ(ω + βq)` of a reduced wavenumber `q = ck`.
    pub fn lab_frequency(&self, omega: T, q: Complex<T>) -> Complex<T> {
        (q * self.beta + omega) * self.gamma
    }

    /// `F(q) = q² − ω² − G(Ω)`, the dispersion relation in rational form.
    pub fn dispersion(&self, omega: T, q: Complex<T>) -> Complex<T> {
        let (g, _) = self.g_and_derivative(self.lab_frequency(omega, q));
        q * q - omega * omega - g
    }

    /// `F` and `∂F/∂q`.
    pub fn dispersion_with_derivative(&self, omega: T, q: Complex<T>) -> (Complex<T>, Complex<T>) {
        let (g, gp) = self.g_and_derivative(self.lab_frequency(omega, q));
        (q * q - omega * omega - g, q + q - gp * (self.gamma * self.beta))
    }

    /// Coefficients (ascending powers) of the degree-8 polynomial in the
    /// reduced wavenumber `q = ck` whose roots solve the dispersion relation.
    pub fn reduced_polynomial(&self, omega: T) -> [T; 9] {
        let g = self.gamma;
        let w = [g * omega, g * self.beta]; // Ω as a polynomial in q
        let w2 = poly::mul(&w, &w);
        let factors: Vec<Vec<T>> = (0..3)
            .map(|i| {
                let r2 = self.resonances[i] * self.resonances[i];
                vec![r2 - w2[0], -w2[1], -w2[2]]
            })
            .collect();
        let all = poly::mul(&poly::mul(&factors[0], &factors[1]), &factors[2]);
        let vacuum = [-omega * omega, T::zero(), T::one()];
        let mut p = poly::mul(&vacuum, &all);
        for i in 0..3 {
            let others: Vec<&Vec<T>> = (0..3).filter(|&j| j != i).map(|j| &factors[j]).collect();
            let b = self.strength(i) * self.resonances[i] * self.resonances[i];
            let term = poly::mul(&w2, &poly::mul(others[0], others[1]));
            for (pk, tk) in p.iter_mut().zip(term.iter()) {
                *pk = *pk - b * *tk;
            }
        }
        let mut out = [T::zero(); 9];
        out.copy_from_slice(&p[..9]);
        out
    }

    /// Coefficients (ascending powers) of the same polynomial in the physical
    /// wavenumber `k`; identical to [`Self::reduced_polynomial`] when `c = 1`.
    pub fn polynomial_coefficients(&self, omega: T) -> [T; 9] {
        let mut p = self.reduced_polynomial(omega);
        let mut cj = T::one();
        for pj in p.iter_mut() {
            *pj = *pj * cj;
            cj = cj * self.light_speed;
        }
        p
    }
}
