use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::medium::MediumParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precision {
    /// Plain `f64` throughout.
    F64,
    /// Double-double for every per-frequency solve.
    DoubleDouble,
}

impl std::str::FromStr for Precision {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "f64" => Ok(Precision::F64),
            "double-double" | "dd" => Ok(Precision::DoubleDouble),
            _ => Err(Error::Config(format!("unknown precision {s:?} (f64 | double-double)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MediumConfig {
    /// Ω_i; fused silica (`2πc/λ_i`) when absent.
    pub resonant_frequencies: Option<[f64; 3]>,
    /// κ_i; fused silica (`B_i/4π`) when absent.
    pub elastic_constants: Option<[f64; 3]>,
    pub u_over_c: f64,
    pub delta_n: f64,
    /// Sets the frequency unit: frequencies are in `c / µm` times this value.
    pub light_speed: f64,
}

impl Default for MediumConfig {
    fn default() -> Self {
        MediumConfig {
            resonant_frequencies: None,
            elastic_constants: None,
            u_over_c: 2.0 / 3.0,
            delta_n: 2e-6,
            light_speed: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    /// Share of the points spent, per horizon interval, on a linear window
    /// around it; the rest are log-spaced over the whole range.
    pub dense_fraction: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { omega_min: 0.05, omega_max: 0.7, points: 2000, dense_fraction: 0.2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub medium: MediumConfig,
    pub grid: GridConfig,
    /// Δ²/(Δ₁Δ₂) prefactor of the correlation coefficient.
    pub bandwidth_ratio: f64,
    pub precision: Precision,
    pub out_dir: PathBuf,
    /// Worker threads; 0 uses every core.
    pub jobs: usize,
    pub dump_modes: bool,
    pub dump_smatrix: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            medium: MediumConfig::default(),
            grid: GridConfig::default(),
            bandwidth_ratio: 1.0,
            precision: Precision::DoubleDouble,
            out_dir: PathBuf::from("rif-out"),
            jobs: 0,
            dump_modes: false,
            dump_smatrix: false,
        }
    }
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: SweepConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serialisable")
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.grid;
        if g.points < 2 {
            return Err(Error::Config("grid needs at least 2 points".into()));
        }
        if !(g.omega_min > 0.0 && g.omega_max > g.omega_min && g.omega_max.is_finite()) {
            return Err(Error::Config("need 0 < omega_min < omega_max".into()));
        }
        if !(0.0..0.5).contains(&g.dense_fraction) {
            return Err(Error::Config("dense_fraction must lie in [0, 0.5)".into()));
        }
        if !(self.bandwidth_ratio > 0.0 && self.bandwidth_ratio.is_finite()) {
            return Err(Error::Config("bandwidth_ratio must be positive".into()));
        }
        self.medium_params().validate()
    }

    pub fn medium_params(&self) -> MediumParams<f64> {
        let m = &self.medium;
        let mut p = MediumParams::fused_silica(m.u_over_c, m.delta_n, m.light_speed);
        if let Some(r) = m.resonant_frequencies {
            p.resonant_frequencies = r;
        }
        if let Some(k) = m.elastic_constants {
            p.elastic_constants = k;
        }
        p
    }
}
