//! Independent reference computations shared by the integration tests.
//! Everything here works from the wavelength form of the Sellmeier fit and
//! plain f64, without touching the library's dispersion code.
#![allow(dead_code)]

use std::f64::consts::PI;

use rifsim::medium::{FUSED_SILICA_B, FUSED_SILICA_LAMBDA_UM};
use rifsim::Side;

pub const U: f64 = 2.0 / 3.0;
pub const DN: f64 = 2e-6;

/// κ scale on the left so that the static index rises by `dn`.
pub fn left_scale(dn: f64) -> f64 {
    let n0 = (1.0 + FUSED_SILICA_B.iter().sum::<f64>()).sqrt();
    ((n0 + dn).powi(2) - 1.0) / (n0 * n0 - 1.0)
}

pub fn scale(side: Side, dn: f64) -> f64 {
    match side {
        Side::Left => left_scale(dn),
        Side::Right => 1.0,
    }
}

/// `n²(Ω) − 1` with `λ = 2π/Ω` µm.
pub fn chi(lab: f64, side: Side, dn: f64) -> f64 {
    let l2 = (2.0 * PI / lab).powi(2);
    scale(side, dn)
        * FUSED_SILICA_B
            .iter()
            .zip(FUSED_SILICA_LAMBDA_UM)
            .map(|(b, li)| b * l2 / (l2 - li * li))
            .sum::<f64>()
}

pub fn gamma(u: f64) -> f64 {
    1.0 / (1.0 - u * u).sqrt()
}

/// Comoving frequency of the forward lab wave `k = nΩ`.
pub fn comoving(lab: f64, side: Side, dn: f64, u: f64) -> Option<f64> {
    let n2 = 1.0 + chi(lab, side, dn);
    (n2 > 0.0).then(|| gamma(u) * lab * (1.0 - u * n2.sqrt()))
}

/// `F(q) = q² − ω² − Ω² χ(Ω)`, `Ω = γ(ω + uq)`.
pub fn dispersion(q: f64, omega: f64, side: Side, dn: f64, u: f64) -> f64 {
    let lab = gamma(u) * (omega + u * q);
    q * q - omega * omega - lab * lab * chi(lab, side, dn)
}

/// Real root of `F` near `seed` by secant iteration.
pub fn real_root(seed: f64, omega: f64, side: Side, dn: f64, u: f64) -> f64 {
    let f = |q: f64| dispersion(q, omega, side, dn, u);
    let (mut a, mut b) = (seed, seed * (1.0 + 1e-9) + 1e-12);
    let (mut fa, mut fb) = (f(a), f(b));
    for _ in 0..100 {
        if fb == fa {
            break;
        }
        let c = b - fb * (b - a) / (fb - fa);
        a = b;
        fa = fb;
        b = c;
        fb = f(b);
        if (b - a).abs() <= 1e-15 * b.abs().max(1e-300) {
            break;
        }
    }
    b
}

/// Local extrema of the forward comoving frequency between the two lowest
/// resonances: dense geometric scan followed by golden-section refinement.
/// Returns `(ω_min, ω_max)`.
pub fn oracle_criticals(side: Side, dn: f64, u: f64) -> (f64, f64) {
    let lo = 2.0 * PI / FUSED_SILICA_LAMBDA_UM[2] * (1.0 + 1e-6);
    let hi = 2.0 * PI / FUSED_SILICA_LAMBDA_UM[1] * (1.0 - 1e-6);
    let n = 200_000;
    let xs: Vec<f64> = (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect();
    let ys: Vec<Option<f64>> = xs.iter().map(|&x| comoving(x, side, dn, u)).collect();
    let mut found = Vec::new();
    for i in 1..n - 1 {
        let (Some(a), Some(b), Some(c)) = (ys[i - 1], ys[i], ys[i + 1]) else { continue };
        let is_min = b < a && b <= c;
        let is_max = b > a && b >= c;
        if is_min || is_max {
            let sign = if is_min { 1.0 } else { -1.0 };
            let g = |x: f64| sign * comoving(x, side, dn, u).unwrap();
            let (mut a, mut b) = (xs[i - 1], xs[i + 1]);
            let r = (5f64.sqrt() - 1.0) / 2.0;
            for _ in 0..200 {
                let c = b - r * (b - a);
                let d = a + r * (b - a);
                if g(c) < g(d) {
                    b = d;
                } else {
                    a = c;
                }
            }
            found.push((is_min, sign * g(0.5 * (a + b))));
        }
    }
    let mins: Vec<f64> = found.iter().filter(|f| f.0).map(|f| f.1).collect();
    let maxs: Vec<f64> = found.iter().filter(|f| !f.0).map(|f| f.1).collect();
    assert_eq!((mins.len(), maxs.len()), (1, 1), "extrema {found:?}");
    (mins[0], maxs[0])
}
