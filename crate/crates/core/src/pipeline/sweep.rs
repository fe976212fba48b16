//! Frequency sweep: solve, scatter and analyse every grid point in parallel,
//! then the five typifying frequencies.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kinematics::{Criticals, Front, Nature, Scenario, SideCriticals};
use crate::medium::{MediumParams, Side};
use crate::pipeline::config::{Precision, SweepConfig};
use crate::pipeline::grid::{build_grid, typifying_frequencies};
use crate::quantum::{analyze_pairs, jc_scatter, photon_flux, JcPoint, PairAnalysis};
use crate::kinematics::ModeLabel;
use crate::scalar::Real;
use crate::scattering::build_scattering_matrix;
use crate::Dd;

/// Share of failed grid points above which the run counts as failed.
pub const FAILURE_BUDGET: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct ModeRecord {
    pub omega: f64,
    pub side: Side,
    pub label: ModeLabel,
    pub wavenumber: Complex<f64>,
    pub norm_sign: Option<i32>,
    pub group_velocity: Option<f64>,
    pub nature: Nature,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmatrixRecord {
    pub in_basis: Vec<ModeLabel>,
    pub out_basis: Vec<ModeLabel>,
    pub eta_in: Vec<i32>,
    pub eta_out: Vec<i32>,
    /// Row-major, rows follow `out_basis`.
    pub entries: Vec<Complex<f64>>,
}

/// Everything computed at one successful grid point, reduced to f64.
#[derive(Debug, Clone, PartialEq)]
pub struct RowData {
    /// φ per out mode.
    pub flux: Vec<f64>,
    /// `|Σ_pos φ − Σ_neg φ| / max`, evaluated at working precision.
    pub balance_defect: f64,
    pub residual: f64,
    pub condition: f64,
    pub analysis: PairAnalysis<f64>,
    pub smatrix: Option<SmatrixRecord>,
}

impl RowData {
    pub fn flux_of(&self, l: ModeLabel) -> Option<f64> {
        self.analysis.index(l).map(|i| self.flux[i])
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub omega: f64,
    pub scenario: Option<Scenario>,
    pub modes: Option<Vec<ModeRecord>>,
    /// `Err` holds the reason written into the gap row.
    pub result: std::result::Result<RowData, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypifyingPoint {
    pub scenario: Scenario,
    pub omega: f64,
    pub result: std::result::Result<RowData, String>,
}

#[derive(Debug, Clone)]
pub struct SweepArtifacts {
    pub config: SweepConfig,
    pub params: MediumParams<f64>,
    pub criticals: Option<Criticals<f64>>,
    pub grid: Vec<f64>,
    pub rows: Vec<SweepRow>,
    pub typifying: Vec<TypifyingPoint>,
    pub jc: Vec<JcPoint>,
    pub warnings: Vec<String>,
}

impl SweepArtifacts {
    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.result.is_err()).count()
    }

    pub fn failed_fraction(&self) -> f64 {
        self.failures() as f64 / self.rows.len().max(1) as f64
    }

    pub fn within_budget(&self) -> bool {
        self.failed_fraction() <= FAILURE_BUDGET
    }

    pub fn max_residual(&self) -> f64 {
        self.rows.iter().filter_map(|r| r.result.as_ref().ok()).fold(0.0, |m, d| m.max(d.residual))
    }
}

fn cast_side<T: Real>(c: &SideCriticals<T>) -> SideCriticals<f64> {
    SideCriticals {
        omega_min: c.omega_min.to_f64_lossy(),
        omega_max: c.omega_max.to_f64_lossy(),
        lab_at_min: c.lab_at_min.to_f64_lossy(),
        lab_at_max: c.lab_at_max.to_f64_lossy(),
    }
}

fn cast_analysis<T: Real>(pa: &PairAnalysis<T>) -> PairAnalysis<f64> {
    let m = |v: &Vec<Vec<T>>| v.iter().map(|r| r.iter().map(|x| x.to_f64_lossy()).collect()).collect();
    PairAnalysis {
        omega: pa.omega.to_f64_lossy(),
        labels: pa.labels.clone(),
        eta: pa.eta.clone(),
        photons: pa.photons.iter().map(|x| x.to_f64_lossy()).collect(),
        c: m(&pa.c),
        e_n: m(&pa.e_n),
        j: pa.j.iter().map(|r| r.iter().map(|x| x.map(|v| v.to_f64_lossy())).collect()).collect(),
    }
}

fn cz<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy())
}

/// Solves one frequency. Mode records are returned whenever the kinematics succeeded.
fn solve_point<T: Real>(
    front: &Front<T>,
    omega: f64,
    ratio: f64,
    dump_modes: bool,
    dump_smatrix: bool,
) -> (Option<Vec<ModeRecord>>, Result<RowData>) {
    let fs = match front.solve(T::lit(omega)) {
        Ok(fs) => fs,
        Err(e) => return (None, Err(e)),
    };
    let modes = dump_modes.then(|| {
        fs.left_modes
            .iter()
            .chain(fs.right_modes.iter())
            .map(|m| ModeRecord {
                omega,
                side: m.label.side,
                label: m.label,
                wavenumber: cz(m.wavenumber),
                norm_sign: m.norm_sign.map(|s| s.value()),
                group_velocity: m.group_velocity.map(|v| v.to_f64_lossy()),
                nature: m.nature,
            })
            .collect()
    });
    let data = (|| {
        let s = build_scattering_matrix(front, &fs)?;
        let flux = photon_flux(&s, fs.scenario);
        let analysis = analyze_pairs(&s, T::lit(ratio))?;
        Ok(RowData {
            flux: flux.flux.iter().map(|x| x.to_f64_lossy()).collect(),
            balance_defect: flux.balance_defect().to_f64_lossy(),
            residual: s.residual.to_f64_lossy(),
            condition: s.condition,
            analysis: cast_analysis(&analysis),
            smatrix: dump_smatrix.then(|| SmatrixRecord {
                in_basis: s.in_basis.clone(),
                out_basis: s.out_basis.clone(),
                eta_in: s.eta_in.clone(),
                eta_out: s.eta_out.clone(),
                entries: s.entries.data.iter().map(|&z| cz(z)).collect(),
            }),
        })
    })();
    (modes, data)
}

/// Runs the sweep at the working precision `T`.
pub fn run_sweep_with<T: Real>(cfg: &SweepConfig) -> Result<SweepArtifacts> {
    cfg.validate()?;
    let params = cfg.medium_params();
    let front = Front::<T>::new(params.cast())?;
    let criticals = front.criticals.as_ref().map(|c| Criticals { left: cast_side(&c.left), right: cast_side(&c.right) });
    let mut warnings = Vec::new();
    if criticals.is_none() {
        warnings.push("no subluminal interval on at least one side: scenarios and typifying frequencies unavailable".into());
    }
    let grid = build_grid(&cfg.grid, criticals.as_ref());

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let ratio = cfg.bandwidth_ratio;
    let rows: Vec<SweepRow> = pool.install(|| {
        grid.par_iter()
            .map(|&omega| {
                let scenario = criticals
                    .as_ref()
                    .and_then(|c| crate::kinematics::classify_scenario(omega, &c.edges()).ok());
                let (modes, data) = solve_point(&front, omega, ratio, cfg.dump_modes, cfg.dump_smatrix);
                SweepRow { omega, scenario, modes, result: data.map_err(|e| e.to_string()) }
            })
            .collect()
    });

    let mut typifying = Vec::new();
    if let Some(c) = &criticals {
        let points = typifying_frequencies(cfg.grid.omega_min, c);
        typifying = pool.install(|| {
            points
                .par_iter()
                .map(|&(scenario, omega)| TypifyingPoint {
                    scenario,
                    omega,
                    result: solve_point(&front, omega, ratio, false, true).1.map_err(|e| e.to_string()),
                })
                .collect()
        });
    }
    for t in &typifying {
        if let Err(e) = &t.result {
            warnings.push(format!("typifying {} at {:e}: {e}", t.scenario.letter(), t.omega));
        }
    }
    let analyses: Vec<(Scenario, PairAnalysis<f64>)> = typifying
        .iter()
        .filter_map(|t| t.result.as_ref().ok().map(|d| (t.scenario, d.analysis.clone())))
        .collect();
    let jc = jc_scatter(&analyses);

    Ok(SweepArtifacts { config: cfg.clone(), params, criticals, grid, rows, typifying, jc, warnings })
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepArtifacts> {
    match cfg.precision {
        Precision::F64 => run_sweep_with::<f64>(cfg),
        Precision::DoubleDouble => run_sweep_with::<Dd>(cfg),
    }
}
