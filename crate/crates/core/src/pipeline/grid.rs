//! Two-tier frequency grid: log-spaced over the whole range plus a linear
//! window around each horizon interval, with every point kept outside the
//! near-critical exclusion zones.

use crate::kinematics::{Criticals, Scenario};
use crate::pipeline::config::GridConfig;

/// Half-width of the zone around each critical frequency, relative.
pub const EXCLUSION: f64 = 1e-6;
/// Extra displacement beyond the zone for points that fell inside it, relative.
pub const NUDGE: f64 = 1e-8;

pub fn exclusion_zones(edges: &[f64]) -> Vec<(f64, f64)> {
    edges.iter().map(|&c| (c * (1.0 - EXCLUSION), c * (1.0 + EXCLUSION))).collect()
}

pub fn in_exclusion_zone(omega: f64, edges: &[f64]) -> bool {
    exclusion_zones(edges).iter().any(|&(a, b)| omega > a && omega < b)
}

fn geomspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let r = (b / a).ln() / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { b } else { a * (r * i as f64).exp() }).collect()
}

/// `n` points spread uniformly over `[a, b]` minus `holes`, cell-centred.
fn linspace_avoiding(a: f64, b: f64, n: usize, holes: &[(f64, f64)]) -> Vec<f64> {
    let mut pieces = vec![(a, b)];
    for &(ha, hb) in holes {
        pieces = pieces
            .into_iter()
            .flat_map(|(pa, pb)| {
                if hb <= pa || ha >= pb {
                    vec![(pa, pb)]
                } else {
                    [(pa, ha.max(pa)), (hb.min(pb), pb)].into_iter().filter(|(x, y)| y > x).collect()
                }
            })
            .collect();
    }
    let total: f64 = pieces.iter().map(|(x, y)| y - x).sum();
    if total <= 0.0 || n == 0 {
        return Vec::new();
    }
    (0..n)
        .map(|k| {
            let mut t = (k as f64 + 0.5) / n as f64 * total;
            for &(x, y) in &pieces {
                if t <= y - x {
                    return x + t;
                }
                t -= y - x;
            }
            pieces.last().unwrap().1
        })
        .collect()
}

/// Moves a point lying inside an exclusion zone to just beyond the nearer zone boundary.
pub fn displace(omega: f64, edges: &[f64]) -> f64 {
    for &c in edges {
        let (a, b) = (c * (1.0 - EXCLUSION), c * (1.0 + EXCLUSION));
        if omega > a && omega < b {
            return if omega - a <= b - omega { a - NUDGE * c } else { b + NUDGE * c };
        }
    }
    omega
}

/// Grid of exactly `points` frequencies in ascending order.
pub fn build_grid(g: &GridConfig, criticals: Option<&Criticals<f64>>) -> Vec<f64> {
    let n = g.points;
    let Some(c) = criticals else {
        return geomspace(g.omega_min, g.omega_max, n);
    };
    let edges = c.edges();
    let holes = exclusion_zones(&edges);
    let mut windows = Vec::new();
    for (lo, hi) in [(edges[0], edges[1]), (edges[2], edges[3])] {
        let w = hi - lo;
        let (a, b) = ((lo - w).max(g.omega_min), (hi + w).min(g.omega_max));
        if w > 0.0 && b > a {
            windows.push((a, b));
        }
    }
    let per_window = (g.dense_fraction * n as f64).round() as usize;
    let dense_total = (per_window * windows.len()).min(n.saturating_sub(2));
    let per_window = if windows.is_empty() { 0 } else { dense_total / windows.len() };
    let mut out = geomspace(g.omega_min, g.omega_max, n - per_window * windows.len());
    for &(a, b) in &windows {
        out.extend(linspace_avoiding(a, b, per_window, &holes));
    }
    for x in out.iter_mut() {
        *x = displace(*x, &edges);
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out
}

/// One representative frequency per scenario: the geometric mean of the grid
/// minimum and ω_minL, the midpoints of the B, C, D intervals, and 1.5 ω_maxR.
pub fn typifying_frequencies(grid_min: f64, c: &Criticals<f64>) -> Vec<(Scenario, f64)> {
    let e = c.edges();
    vec![
        (Scenario::AHorizonlessLow, (grid_min * e[0]).sqrt()),
        (Scenario::BWhiteHole, 0.5 * (e[0] + e[1])),
        (Scenario::CHorizonlessMid, 0.5 * (e[1] + e[2])),
        (Scenario::DBlackHole, 0.5 * (e[2] + e[3])),
        (Scenario::EHigh, 1.5 * e[3]),
    ]
}
