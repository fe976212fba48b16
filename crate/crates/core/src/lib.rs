pub mod dd;
pub mod error;
pub mod fock;
pub mod kinematics;
pub mod linalg;
pub mod medium;
pub mod pipeline;
pub mod poly;
pub mod quantum;
pub mod scalar;
pub mod scattering;

pub use dd::Dd;
pub use error::{Error, Result};
pub use kinematics::{Front, ModeLabel, Scenario, Tag};
pub use medium::{DispersionSide, MediumParams, Side};
pub use pipeline::{run_sweep, SweepConfig};
pub use scalar::Real;
pub use scattering::ScatteringMatrix;

pub type FrontF64 = Front<f64>;
pub type FrontDd = Front<Dd>;
pub type MediumParamsF64 = MediumParams<f64>;
pub type ScatteringMatrixF64 = ScatteringMatrix<f64>;
pub type ScatteringMatrixDd = ScatteringMatrix<Dd>;
