//! CSV artefacts. Every file opens with a `#` header carrying the effective
//! configuration, the derived left-side constants and the turning points.
//!
//! Column layouts (after the header):
//!
//! * `spectra.csv`: `omega,scenario,status,residual,condition,balance_defect,phi_<label>…,reason`
//!   with one `phi_` column per label in [`ModeLabel::all`] order; absent modes are empty.
//! * `entanglement.csv`: `omega,scenario,status,` then `EN_noL_<l>,J_noL_<l>,C_noL_<l>` for every
//!   positive-norm label `l`.
//! * `modes.csv`: `omega,side,label,re_k,im_k,norm_sign,group_velocity,nature`.
//! * `smatrix.csv`: `omega,out,in,eta_out,eta_in,re,im,residual`, one line per entry.
//! * `critical.csv`: `side,omega_min,omega_max,lab_at_min,lab_at_max`.
//! * `typifying.csv`: `scenario,omega,status,reason`.
//! * `correlations_<S>.csv`, `degree_<S>.csv`, `log_negativity_<S>.csv`: square tables with
//!   the out labels as row and column headers.
//! * `jc_scatter.csv`: `scenario,omega,mode_a,mode_b,c,j`.
//!
//! Numbers use Rust's shortest round-trip scientific form.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::kinematics::{ModeLabel, Nature, Tag};
use crate::medium::Side;
use crate::pipeline::sweep::{RowData, SweepArtifacts};
use crate::quantum::{PairAnalysis, J_CONVENTION};

/// Labels whose modes carry positive norm whenever they propagate.
pub fn positive_norm_labels() -> Vec<ModeLabel> {
    ModeLabel::all()
        .into_iter()
        .filter(|l| matches!(l.tag, Tag::Uo | Tag::Mo | Tag::Lo | Tag::Ul | Tag::Ll))
        .collect()
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\"").replace('\n', " "))
    } else {
        s.to_string()
    }
}

/// Configuration header shared by every file. Thread count and output
/// directory are left out so identical physics gives identical bytes.
pub fn header(a: &SweepArtifacts) -> String {
    let mut h = String::new();
    let mut value = toml::Value::try_from(&a.config).expect("config serialises");
    if let Some(t) = value.as_table_mut() {
        t.remove("jobs");
        t.remove("out_dir");
    }
    let text = toml::to_string(&value).expect("config serialises");
    h.push_str("# rif-sweep output\n");
    for line in text.lines().filter(|l| !l.is_empty()) {
        let _ = writeln!(h, "# {line}");
    }
    let p = &a.params;
    let left = p.side(Side::Left);
    let _ = writeln!(h, "# resonant_frequencies = [{}]", p.resonant_frequencies.map(num).join(", "));
    let _ = writeln!(h, "# right_elastic_constants = [{}]", p.elastic_constants.map(num).join(", "));
    let _ = writeln!(h, "# left_elastic_constants = [{}]", left.kappas.map(num).join(", "));
    let _ = writeln!(h, "# left_kappa_scale = {}", num(p.left_kappa_scale()));
    let _ = writeln!(h, "# base_static_index = {}", num(p.base_static_index()));
    let _ = writeln!(h, "# gamma = {}", num(p.gamma()));
    match &a.criticals {
        Some(c) => {
            let e = c.edges();
            let _ = writeln!(h, "# omega_minL = {}", num(e[0]));
            let _ = writeln!(h, "# omega_minR = {}", num(e[1]));
            let _ = writeln!(h, "# omega_maxL = {}", num(e[2]));
            let _ = writeln!(h, "# omega_maxR = {}", num(e[3]));
        }
        None => h.push_str("# criticals = none\n"),
    }
    let _ = writeln!(h, "# j_convention = {J_CONVENTION}");
    h
}

fn status<T>(r: &std::result::Result<T, String>) -> (&'static str, String) {
    match r {
        Ok(_) => ("ok", String::new()),
        Err(e) => ("failed", csv_escape(e)),
    }
}

fn scenario_cell(s: Option<crate::kinematics::Scenario>) -> String {
    s.map(|s| s.letter().to_string()).unwrap_or_default()
}

pub fn spectra_csv(a: &SweepArtifacts) -> String {
    let labels = ModeLabel::all();
    let mut s = header(a);
    s.push_str("omega,scenario,status,residual,condition,balance_defect");
    for l in &labels {
        let _ = write!(s, ",phi_{l}");
    }
    s.push_str(",reason\n");
    for r in &a.rows {
        let (st, reason) = status(&r.result);
        let _ = write!(s, "{},{},{st}", num(r.omega), scenario_cell(r.scenario));
        match &r.result {
            Ok(d) => {
                let _ = write!(s, ",{},{},{}", num(d.residual), num(d.condition), num(d.balance_defect));
                for l in &labels {
                    let _ = write!(s, ",{}", opt(d.flux_of(*l)));
                }
            }
            Err(_) => s.push_str(&",".repeat(3 + labels.len())),
        }
        let _ = writeln!(s, ",{reason}");
    }
    s
}

fn nol_entry(d: &RowData, l: ModeLabel) -> [String; 3] {
    let pa = &d.analysis;
    match (pa.index(ModeLabel::new(Tag::No, Side::Left)), pa.index(l)) {
        (Some(i), Some(k)) => [num(pa.e_n[i][k]), opt(pa.j[i][k]), num(pa.c[i][k])],
        _ => Default::default(),
    }
}

pub fn entanglement_csv(a: &SweepArtifacts) -> String {
    let labels = positive_norm_labels();
    let mut s = header(a);
    s.push_str("omega,scenario,status");
    for l in &labels {
        let _ = write!(s, ",EN_noL_{l},J_noL_{l},C_noL_{l}");
    }
    s.push('\n');
    for r in &a.rows {
        let (st, _) = status(&r.result);
        let _ = write!(s, "{},{},{st}", num(r.omega), scenario_cell(r.scenario));
        for l in &labels {
            let cells = r.result.as_ref().map(|d| nol_entry(d, *l)).unwrap_or_default();
            let _ = write!(s, ",{}", cells.join(","));
        }
        s.push('\n');
    }
    s
}

fn nature_name(n: Nature) -> &'static str {
    match n {
        Nature::Propagating => "propagating",
        Nature::Evanescent => "evanescent",
    }
}

pub fn modes_csv(a: &SweepArtifacts) -> String {
    let mut s = header(a);
    s.push_str("omega,side,label,re_k,im_k,norm_sign,group_velocity,nature\n");
    for m in a.rows.iter().filter_map(|r| r.modes.as_ref()).flatten() {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            num(m.omega),
            m.side.letter(),
            m.label,
            num(m.wavenumber.re),
            num(m.wavenumber.im),
            m.norm_sign.map(|v| v.to_string()).unwrap_or_default(),
            opt(m.group_velocity),
            nature_name(m.nature)
        );
    }
    s
}

pub fn smatrix_csv(a: &SweepArtifacts) -> String {
    let mut s = header(a);
    s.push_str("omega,out,in,eta_out,eta_in,re,im,residual\n");
    for r in &a.rows {
        let Ok(d) = &r.result else { continue };
        let Some(m) = &d.smatrix else { continue };
        let n = m.in_basis.len();
        for (i, o) in m.out_basis.iter().enumerate() {
            for (j, inp) in m.in_basis.iter().enumerate() {
                let z = m.entries[i * n + j];
                let _ = writeln!(
                    s,
                    "{},{o},{inp},{},{},{},{},{}",
                    num(r.omega),
                    m.eta_out[i],
                    m.eta_in[j],
                    num(z.re),
                    num(z.im),
                    num(d.residual)
                );
            }
        }
    }
    s
}

pub fn critical_csv(a: &SweepArtifacts) -> String {
    let mut s = header(a);
    s.push_str("side,omega_min,omega_max,lab_at_min,lab_at_max\n");
    if let Some(c) = &a.criticals {
        for side in [Side::Left, Side::Right] {
            let k = c.side(side);
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                side.letter(),
                num(k.omega_min),
                num(k.omega_max),
                num(k.lab_at_min),
                num(k.lab_at_max)
            );
        }
    }
    s
}

pub fn typifying_csv(a: &SweepArtifacts) -> String {
    let mut s = header(a);
    s.push_str("scenario,omega,status,reason\n");
    for t in &a.typifying {
        let (st, reason) = status(&t.result);
        let _ = writeln!(s, "{},{},{st},{reason}", t.scenario.letter(), num(t.omega));
    }
    s
}

fn square_table(a: &SweepArtifacts, pa: &PairAnalysis<f64>, cell: impl Fn(usize, usize) -> String) -> String {
    let mut s = header(a);
    let _ = writeln!(s, "# omega = {}", num(pa.omega));
    s.push_str("mode");
    for l in &pa.labels {
        let _ = write!(s, ",{l}");
    }
    s.push('\n');
    for (i, l) in pa.labels.iter().enumerate() {
        let _ = write!(s, "{l}");
        for k in 0..pa.labels.len() {
            let _ = write!(s, ",{}", cell(i, k));
        }
        s.push('\n');
    }
    s
}

pub fn jc_csv(a: &SweepArtifacts) -> String {
    let mut s = header(a);
    s.push_str("scenario,omega,mode_a,mode_b,c,j\n");
    for p in &a.jc {
        let _ = writeln!(s, "{},{},{},{},{},{}", p.scenario.letter(), num(p.omega), p.pair.0, p.pair.1, num(p.c), num(p.j));
    }
    s
}

/// Writes every artefact into `dir` and returns the file names written.
pub fn write_artifacts(a: &SweepArtifacts, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut files: Vec<(String, String)> = vec![
        ("spectra.csv".into(), spectra_csv(a)),
        ("entanglement.csv".into(), entanglement_csv(a)),
        ("critical.csv".into(), critical_csv(a)),
        ("typifying.csv".into(), typifying_csv(a)),
        ("jc_scatter.csv".into(), jc_csv(a)),
    ];
    if a.config.dump_modes {
        files.push(("modes.csv".into(), modes_csv(a)));
    }
    if a.config.dump_smatrix {
        files.push(("smatrix.csv".into(), smatrix_csv(a)));
    }
    for t in &a.typifying {
        let Ok(d) = &t.result else { continue };
        let pa = &d.analysis;
        let sc = t.scenario.letter();
        let diag = |i: usize, k: usize| i == k;
        files.push((
            format!("correlations_{sc}.csv"),
            square_table(a, pa, |i, k| if diag(i, k) { String::new() } else { num(pa.c[i][k]) }),
        ));
        files.push((
            format!("degree_{sc}.csv"),
            square_table(a, pa, |i, k| if diag(i, k) { String::new() } else { opt(pa.j[i][k]) }),
        ));
        files.push((
            format!("log_negativity_{sc}.csv"),
            square_table(a, pa, |i, k| if diag(i, k) { String::new() } else { num(pa.e_n[i][k]) }),
        ));
    }
    files.extend(crate::pipeline::plots::plot_scripts());
    let mut written = Vec::new();
    for (name, body) in files {
        let p = dir.join(&name);
        fs::write(&p, body)?;
        written.push(PathBuf::from(name));
    }
    Ok(written)
}
