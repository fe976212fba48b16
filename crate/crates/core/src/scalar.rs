//! Scalar abstraction shared by every numerical module.
//!
//! All of the physics is written against [`Real`], so the same code runs in
//! plain `f64` or in double-double arithmetic ([`Dd`]). The sweep defaults to
//! double-double: spontaneous fluxes are O(δn²) quantities extracted from
//! O(1) matching systems, and the positive/negative flux balance only closes
//! to ~1e-10 relative in `f64`.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

pub use crate::dd::Dd;

/// Real scalar usable by the solver.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal. Exact for every implementor in this crate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal is representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Loose precision floor used to scale tolerances that were specified for `f64`.
    #[inline]
    fn tol(f64_tol: f64) -> Self {
        Self::lit(f64_tol).max(Self::epsilon() * Self::lit(1e4))
    }
}

impl<T> Real for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + ToPrimitive
        + Debug
        + Display
        + Default
        + Send
        + Sync
        + 'static
{
}
