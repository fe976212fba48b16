mod common;

use common::*;
use rifsim::fock::{fock_oracle_log_negativity, DEFAULT_CUTOFF};
use rifsim::kinematics::{Front, Nature};
use rifsim::quantum::{log_negativity, rotate_locally, squeezed_thermal_covariance};
use rifsim::{MediumParams, Side};

fn front() -> Front<f64> {
    Front::new(MediumParams::fused_silica(U, DN, 1.0)).unwrap()
}

#[test]
fn turning_points_match_extrema_of_the_lab_branch() {
    let f = front();
    let c = f.criticals.unwrap();
    for side in [Side::Left, Side::Right] {
        let (lo, hi) = oracle_criticals(side, DN, U);
        let k = c.side(side);
        assert!((k.omega_min - lo).abs() < 1e-11 * lo, "{side:?} min {} vs {lo}", k.omega_min);
        assert!((k.omega_max - hi).abs() < 1e-11 * hi, "{side:?} max {} vs {hi}", k.omega_max);
    }
}

#[test]
fn optical_root_count_goes_one_three_one() {
    let f = front();
    let c = f.criticals.unwrap();
    for side in [Side::Left, Side::Right] {
        let k = c.side(side);
        let count = |w: f64| {
            f.solve_side(side, w)
                .unwrap()
                .iter()
                .filter(|m| m.is_propagating() && m.label.tag.is_optical() && m.lab_frequency.re > 0.0)
                .count()
        };
        assert_eq!(count(k.omega_min * (1.0 - 1e-4)), 1);
        assert_eq!(count(0.5 * (k.omega_min + k.omega_max)), 3);
        assert_eq!(count(k.omega_max * (1.0 + 1e-4)), 1);
    }
}

#[test]
fn group_velocity_matches_finite_difference() {
    let f = front();
    let e = f.criticals.unwrap().edges();
    let omegas = [0.08, 0.5 * (e[0] + e[1]), 0.3, 0.5 * (e[2] + e[3]), 0.65];
    let mut checked = 0;
    for &w in &omegas {
        for side in [Side::Left, Side::Right] {
            for m in f.solve_side(side, w).unwrap() {
                if m.nature != Nature::Propagating {
                    continue;
                }
                let q = m.wavenumber.re;
                let h = 1e-7 * w;
                let qp = real_root(q, w + h, side, DN, U);
                let qm = real_root(q, w - h, side, DN, U);
                let fd = 2.0 * h / (qp - qm);
                let vg = m.group_velocity.unwrap();
                assert!((vg - fd).abs() < 1e-4 * vg.abs(), "{} at {w}: {vg} vs {fd}", m.label);
                checked += 1;
            }
        }
    }
    assert!(checked >= 30, "{checked}");
}

#[test]
fn covariance_negativity_matches_fock_oracle() {
    for &(r, na, nb) in &[(0.3, 0.0, 0.0), (0.5, 0.2, 0.1), (0.2, 1.0, 0.0), (0.6, 0.0, 0.4)] {
        let m = rotate_locally(&squeezed_thermal_covariance(r, na, nb), 0.3, -1.1);
        let fock = fock_oracle_log_negativity(r, na, nb, DEFAULT_CUTOFF).unwrap();
        assert!((log_negativity(&m) - fock).abs() < 1e-6, "{r} {na} {nb}");
    }
}
