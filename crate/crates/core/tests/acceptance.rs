//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! `cargo test --release --test acceptance`

mod common;

use std::fs;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rifsim::fock::{fock_oracle_log_negativity, DEFAULT_CUTOFF};
use rifsim::kinematics::{Front, Nature, Scenario, Tag};
use rifsim::pipeline::{run_sweep, write_artifacts, SweepArtifacts, SweepConfig};
use rifsim::quantum::{degree_of_entanglement, JcPoint, log_negativity, rotate_locally, squeezed_thermal_covariance, PairAnalysis};
use rifsim::{MediumParams, ModeLabel, Side};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn l(tag: Tag, side: Side) -> ModeLabel {
    ModeLabel::new(tag, side)
}

fn total_flux(a: &SweepArtifacts) -> Vec<Option<f64>> {
    a.rows.iter().map(|r| r.result.as_ref().ok().map(|d| d.flux.iter().sum())).collect()
}

fn pair_value(pa: &PairAnalysis<f64>, a: ModeLabel, b: ModeLabel, m: impl Fn(&PairAnalysis<f64>, usize, usize) -> Option<f64>) -> Option<f64> {
    m(pa, pa.index(a)?, pa.index(b)?)
}

fn j_of(pa: &PairAnalysis<f64>, a: ModeLabel, b: ModeLabel) -> Option<f64> {
    pair_value(pa, a, b, |p, i, k| p.j[i][k])
}

/// Cross-norm unordered pairs `(i, k, C)`.
fn cross_norm_c(pa: &PairAnalysis<f64>) -> Vec<(usize, usize, f64)> {
    let mut v = Vec::new();
    for i in 0..pa.labels.len() {
        for k in i + 1..pa.labels.len() {
            if pa.eta[i] != pa.eta[k] {
                v.push((i, k, pa.c[i][k]));
            }
        }
    }
    v
}

fn argmax_pair(pa: &PairAnalysis<f64>) -> (ModeLabel, ModeLabel) {
    let mut best = (0, 1, f64::NEG_INFINITY);
    for i in 0..pa.labels.len() {
        for k in i + 1..pa.labels.len() {
            if pa.c[i][k] > best.2 {
                best = (i, k, pa.c[i][k]);
            }
        }
    }
    (pa.labels[best.0], pa.labels[best.1])
}

fn same_pair(p: (ModeLabel, ModeLabel), a: ModeLabel, b: ModeLabel) -> bool {
    p == (a, b) || p == (b, a)
}

fn c1(main: &SweepArtifacts, elapsed: Duration) -> Outcome {
    let res = main.max_residual();
    let pass = main.failures() == 0 && res < 1e-8 && elapsed < Duration::from_secs(300);
    outcome(pass, format!("{} points, {} failed, max residual {res:e}, {:.2} s", main.rows.len(), main.failures(), elapsed.as_secs_f64()))
}

fn c2() -> Outcome {
    let mut c = SweepConfig::default();
    c.medium.delta_n = 0.0;
    c.dump_smatrix = true;
    let a = run_sweep(&c).unwrap();
    let (mut max_flux, mut max_dev) = (0.0f64, 0.0f64);
    for r in &a.rows {
        let Ok(d) = &r.result else { continue };
        max_flux = d.flux.iter().fold(max_flux, |m, &x| m.max(x));
        let s = d.smatrix.as_ref().unwrap();
        let n = s.in_basis.len();
        for (i, o) in s.out_basis.iter().enumerate() {
            for (j, inp) in s.in_basis.iter().enumerate() {
                let want = if o.tag == inp.tag { 1.0 } else { 0.0 };
                max_dev = max_dev.max((s.entries[i * n + j] - want).norm());
            }
        }
    }
    let pass = a.failures() == 0 && max_flux < 1e-14 && max_dev < 1e-12;
    outcome(pass, format!("{} failed, max flux {max_flux:e}, max |S - 1| {max_dev:e}", a.failures()))
}

/// Peaks are maximal runs of grid points whose total flux exceeds ten times
/// the median total flux of the sweep.
fn c3(a: &SweepArtifacts) -> Outcome {
    let phi = total_flux(a);
    let mut sorted: Vec<f64> = phi.iter().flatten().cloned().collect();
    sorted.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let median = sorted[sorted.len() / 2];
    let hot: Vec<bool> = phi.iter().map(|p| p.is_some_and(|x| x > 10.0 * median)).collect();
    let mut runs = Vec::new();
    let mut i = 0;
    while i < hot.len() {
        if hot[i] {
            let s = i;
            while i + 1 < hot.len() && hot[i + 1] {
                i += 1;
            }
            runs.push((s, i));
        }
        i += 1;
    }
    let e = a.criticals.unwrap().edges();
    let g = &a.grid;
    // An end point is within one grid step of an edge when the edge lies
    // between that point's neighbours.
    let near = |k: usize, edge: f64| {
        let a = if k > 0 { g[k - 1] } else { g[k] };
        let b = if k + 1 < g.len() { g[k + 1] } else { g[k] };
        a <= edge && edge <= b
    };
    let mut details = vec![format!("{} peak interval(s)", runs.len())];
    let mut coincide = runs.len() == 2;
    for (n, &(lo, hi)) in [(e[0], e[1]), (e[2], e[3])].iter().enumerate() {
        let Some(&(s, t)) = runs.get(n) else { break };
        let ok = near(s, lo) && near(t, hi);
        coincide &= ok;
        details.push(format!("[{:e}, {:e}] vs [{lo:e}, {hi:e}] {}", g[s], g[t], if ok { "ok" } else { "off" }));
    }
    // Shark fin: flux just inside an edge over flux ten grid points beyond it.
    let mut fins = true;
    for (name, lo, hi) in [("WHI", e[0], e[1]), ("BHI", e[2], e[3])] {
        let inside: Vec<usize> = (0..g.len()).filter(|&k| g[k] > lo && g[k] < hi).collect();
        let (first, last) = (inside[0], *inside.last().unwrap());
        let ratio = |k_in: usize, k_out: Option<usize>| match (k_out.and_then(|k| phi[k]), phi[k_in]) {
            (Some(out), Some(inn)) => inn / out,
            _ => 0.0,
        };
        let below = ratio(first, first.checked_sub(10));
        let above = ratio(last, (last + 10 < g.len()).then_some(last + 10));
        let best = below.max(above);
        fins &= best >= 1e3;
        let peak = inside.iter().filter_map(|&k| phi[k]).fold(0.0f64, f64::max);
        let outside = [first.checked_sub(10), (last + 10 < g.len()).then_some(last + 10)]
            .into_iter()
            .flatten()
            .filter_map(|k| phi[k])
            .fold(f64::INFINITY, f64::min);
        details.push(format!(
            "{name} edge drop {best:.3e} (low {below:.3e}, high {above:.3e}; interval peak over outside level {:.3e})",
            peak / outside
        ));
    }
    outcome(coincide && fins, details.join("; "))
}

fn c4(a: &SweepArtifacts) -> Outcome {
    let mut bad = Vec::new();
    let (nol, lol, mor) = (l(Tag::No, Side::Left), l(Tag::Lo, Side::Left), l(Tag::Mo, Side::Right));
    let mut checked = 0;
    for r in &a.rows {
        let (want, sc) = match r.scenario {
            Some(Scenario::BWhiteHole) => ((nol, lol), 'B'),
            Some(Scenario::DBlackHole) => ((nol, mor), 'D'),
            _ => continue,
        };
        let Ok(d) = &r.result else { continue };
        checked += 1;
        let pa = &d.analysis;
        let mut idx: Vec<usize> = (0..d.flux.len()).collect();
        idx.sort_by(|&x, &y| d.flux[y].partial_cmp(&d.flux[x]).unwrap());
        let top = (pa.labels[idx[0]], pa.labels[idx[1]]);
        if !same_pair(top, want.0, want.1) || !same_pair(argmax_pair(pa), want.0, want.1) {
            bad.push(format!("{sc}@{:e}", r.omega));
        }
    }
    let mut spread = Vec::new();
    let mut typ_ok = true;
    for t in &a.typifying {
        if !matches!(t.scenario, Scenario::AHorizonlessLow | Scenario::CHorizonlessMid | Scenario::EHigh) {
            continue;
        }
        let Ok(d) = &t.result else {
            typ_ok = false;
            continue;
        };
        let cs = cross_norm_c(&d.analysis);
        let max = cs.iter().fold(0.0f64, |m, x| m.max(x.2));
        let n = cs.iter().filter(|x| x.2 >= max / 10.0).count();
        typ_ok &= n >= 3;
        spread.push(format!("{}: {n}", t.scenario.letter()));
    }
    let pass = bad.is_empty() && checked > 0 && typ_ok;
    outcome(
        pass,
        format!(
            "{checked} horizon points, {} off ({}); comparable cross-norm pairs {}",
            bad.len(),
            bad.iter().take(5).cloned().collect::<Vec<_>>().join(" "),
            spread.join(", ")
        ),
    )
}

fn c5(a: &SweepArtifacts) -> Outcome {
    let (nol, lol, mor) = (l(Tag::No, Side::Left), l(Tag::Lo, Side::Left), l(Tag::Mo, Side::Right));
    let peak = |b: ModeLabel| {
        a.rows
            .iter()
            .filter_map(|r| Some((r.scenario, r.omega, j_of(&r.result.as_ref().ok()?.analysis, nol, b)?)))
            .fold((None, 0.0, f64::NEG_INFINITY), |m, x| if x.2 > m.2 { x } else { m })
    };
    let (sl, wl, jl) = peak(lol);
    let (sm, wm, jm) = peak(mor);
    let peaks_ok = sl == Some(Scenario::BWhiteHole) && sm == Some(Scenario::DBlackHole);

    let mut max_j = f64::NEG_INFINITY;
    let analyses = a
        .rows
        .iter()
        .filter_map(|r| r.result.as_ref().ok())
        .chain(a.typifying.iter().filter_map(|t| t.result.as_ref().ok()));
    for d in analyses {
        for row in &d.analysis.j {
            for j in row.iter().flatten() {
                max_j = max_j.max(*j);
            }
        }
    }
    let below_unity = max_j < 1.0;

    let typ = |s: Scenario| a.typifying.iter().find(|t| t.scenario == s).and_then(|t| t.result.as_ref().ok());
    let jb = typ(Scenario::BWhiteHole).and_then(|d| j_of(&d.analysis, nol, lol)).unwrap_or(f64::NAN);
    let jd = typ(Scenario::DBlackHole).and_then(|d| j_of(&d.analysis, nol, mor)).unwrap_or(f64::NAN);
    let mut horizonless = (f64::NEG_INFINITY, String::new());
    for s in [Scenario::AHorizonlessLow, Scenario::CHorizonlessMid, Scenario::EHigh] {
        let Some(d) = typ(s) else { continue };
        let pa = &d.analysis;
        for i in 0..pa.labels.len() {
            for k in i + 1..pa.labels.len() {
                if let Some(j) = pa.j[i][k] {
                    if j > horizonless.0 {
                        horizonless = (j, format!("{}:{}-{}", s.letter(), pa.labels[i], pa.labels[k]));
                    }
                }
            }
        }
    }
    let dominance = jb.min(jd) > horizonless.0;
    outcome(
        peaks_ok && below_unity && dominance,
        format!(
            "peak J(noL,loL) {jl:.6} at {wl:e} in {:?}, peak J(noL,moR) {jm:.6} at {wm:e} in {:?} [{}]; max J {max_j:.6} [{}]; J_B(noL,loL) {jb:.6}, J_D(noL,moR) {jd:.6} vs horizonless max {:.6} ({}) [{}]",
            sl.map(|s| s.letter()),
            sm.map(|s| s.letter()),
            if peaks_ok { "ok" } else { "fail" },
            if below_unity { "ok" } else { "fail" },
            horizonless.0,
            horizonless.1,
            if dominance { "ok" } else { "fail" },
        ),
    )
}

fn occupations(m: &[[f64; 4]; 4]) -> (f64, f64) {
    ((m[0][0] + m[1][1] - 1.0) / 2.0, (m[2][2] + m[3][3] - 1.0) / 2.0)
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut worst = 0.0f64;
    let mut n = 0;
    while n < 20 {
        let (r, na, nb) = (rng.gen_range(0.0..0.9), rng.gen_range(0.0..1.5), rng.gen_range(0.0..1.5));
        let m = rotate_locally(&squeezed_thermal_covariance(r, na, nb), rng.gen_range(0.0..6.3), rng.gen_range(0.0..6.3));
        let (oa, ob) = occupations(&m);
        if oa > 2.0 || ob > 2.0 {
            continue;
        }
        let fock = match fock_oracle_log_negativity(r, na, nb, DEFAULT_CUTOFF) {
            Ok(v) => v,
            Err(e) => return outcome(false, format!("oracle failed: {e}")),
        };
        worst = worst.max((log_negativity(&m) - fock).abs());
        n += 1;
    }
    let mut tmsv = 0.0f64;
    for r in [0.05f64, 0.3, 0.7, 1.2, 2.0, 3.0] {
        let m = squeezed_thermal_covariance(r, 0.0, 0.0);
        let nbar: f64 = r.sinh().powi(2);
        tmsv = tmsv.max((log_negativity(&m) - 2.0 * nbar.sqrt().asinh()).abs());
    }
    outcome(worst < 1e-6 && tmsv < 1e-9, format!("20 random states: max |dE_N| {worst:e}; TMSV max |dE_N| {tmsv:e}"))
}

fn c7() -> Outcome {
    let mut worst = 0.0f64;
    for r in [0.05f64, 0.3, 1.0, 2.0, 3.0] {
        let m = squeezed_thermal_covariance(r, 0.0, 0.0);
        let (na, nb) = occupations(&m);
        let j = degree_of_entanglement(log_negativity(&m), na, nb).unwrap().unwrap();
        worst = worst.max((j - 1.0).abs());
    }
    let mut variants = Vec::new();
    for (r, na, nb) in [(0.5, 0.2, 0.2), (0.5, 0.5, 0.0), (1.0, 0.0, 0.3), (0.1, 0.01, 0.0)] {
        let m = squeezed_thermal_covariance(r, na, nb);
        let (oa, ob) = occupations(&m);
        variants.push(degree_of_entanglement(log_negativity(&m), oa, ob).map(|j| j.unwrap_or(0.0)).unwrap_or(f64::NAN));
    }
    let pass = worst < 1e-9 && variants.iter().all(|&j| j < 1.0);
    outcome(pass, format!("TMSV max |J - 1| {worst:e}; noisy/asymmetric J {variants:.6?}"))
}

fn c8(a: &SweepArtifacts) -> Outcome {
    let pts = &a.jc;
    // The qualifying pair with the largest J spread.
    let mut witness: Option<(JcPoint, JcPoint)> = None;
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let dj = (p.j - q.j).abs();
            if (p.c - q.c).abs() < 0.05 && dj > 0.2 && witness.as_ref().map_or(true, |(a, b)| dj > (a.j - b.j).abs()) {
                witness = Some((p.clone(), q.clone()));
            }
        }
    }
    let high: Vec<_> = pts.iter().filter(|p| p.c > 0.99).collect();
    let high_ok = high.iter().all(|p| p.j > 0.9);
    let w = witness.as_ref().map_or("none".to_string(), |(p, q)| {
        format!(
            "{}:{}-{} (C {:.4}, J {:.4}) vs {}:{}-{} (C {:.4}, J {:.4})",
            p.scenario.letter(), p.pair.0, p.pair.1, p.c, p.j,
            q.scenario.letter(), q.pair.0, q.pair.1, q.c, q.j
        )
    });
    outcome(
        witness.is_some() && high_ok,
        format!("{} points; non-unique pair: {w}; {} points with C > 0.99, min J {:.4}", pts.len(), high.len(),
            high.iter().map(|p| p.j).fold(f64::INFINITY, f64::min)),
    )
}

fn c9(main: &SweepArtifacts) -> Outcome {
    // Group velocity against central differences of independently solved roots.
    let f = Front::new(MediumParams::fused_silica(common::U, common::DN, 1.0)).unwrap();
    let e = f.criticals.unwrap().edges();
    let mut worst_vg = 0.0f64;
    for &w in &[0.07, 0.5 * (e[0] + e[1]), 0.25, 0.5 * (e[2] + e[3]), 0.6] {
        for side in [Side::Left, Side::Right] {
            for m in f.solve_side(side, w).unwrap().iter().filter(|m| m.nature == Nature::Propagating) {
                let q = m.wavenumber.re;
                let h = 1e-7 * w;
                let fd = 2.0 * h
                    / (common::real_root(q, w + h, side, common::DN, common::U)
                        - common::real_root(q, w - h, side, common::DN, common::U));
                let vg = m.group_velocity.unwrap();
                worst_vg = worst_vg.max((vg - fd).abs() / vg.abs());
            }
        }
    }
    let balance = main.rows.iter().filter_map(|r| r.result.as_ref().ok()).fold(0.0f64, |m, d| m.max(d.balance_defect));

    let mut cfg = main.config.clone();
    cfg.dump_modes = true;
    cfg.dump_smatrix = true;
    let (d1, d2) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    cfg.jobs = 1;
    let f1 = write_artifacts(&run_sweep(&cfg).unwrap(), d1.path()).unwrap();
    cfg.jobs = 8;
    let f2 = write_artifacts(&run_sweep(&cfg).unwrap(), d2.path()).unwrap();
    let identical = f1 == f2
        && f1.iter().all(|n| fs::read(d1.path().join(n)).unwrap() == fs::read(d2.path().join(n)).unwrap());
    let all_rows = main.failures() == 0;
    outcome(
        worst_vg < 1e-4 && balance < 1e-10 && identical && all_rows,
        format!(
            "max relative v_g error {worst_vg:e}; max flux imbalance {balance:e} over {} points; {} files byte-identical for 1 vs 8 threads: {identical}",
            main.rows.len(),
            f1.len()
        ),
    )
}

fn main() {
    let cfg = SweepConfig::default();
    let t = Instant::now();
    let main = run_sweep(&cfg).expect("default sweep runs");
    let elapsed = t.elapsed();

    let results = [
        ("pseudo-unitarity over the 2000-point sweep", c1(&main, elapsed)),
        ("null test at delta_n = 0", c2()),
        ("two peak intervals at the horizons with shark-fin edges", c3(&main)),
        ("mode and correlation dominance", c4(&main)),
        ("entanglement structure", c5(&main)),
        ("log-negativity oracle equivalence", c6()),
        ("degree-of-entanglement calibration", c7()),
        ("C-J non-uniqueness", c8(&main)),
        ("numerical hygiene", c9(&main)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {}: {} - {name}: {}", i + 1, if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("acceptance: {}/{} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
