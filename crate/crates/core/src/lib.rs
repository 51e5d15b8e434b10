//! Barnes multiple gamma functions, Barnes beta distributions, Selberg integral
//! laws and Riemann xi constructions.
//!
//! The analytic layers are generic over [`Real`] (`f32`, `f64`); the aliases below
//! fix the common `f64` instantiation. Monte-Carlo samplers work in `f64`.

// `!(x > 0)` is how NaN gets rejected throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod accel;
pub mod error;
pub mod identities;
pub mod mellin;
pub mod multigamma;
pub mod quad;
pub mod sampling;
pub mod scalar;
pub mod selberg;
pub mod series;
pub mod special;
pub mod verify;
pub mod xi;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Complex64 = num_complex::Complex<f64>;
pub type PowerSeries = series::PowerSeries<f64>;
pub type GammaParams = series::GammaParams<f64>;
pub type QuadratureConfig = quad::QuadratureConfig<f64>;
pub type LogGammaValue = multigamma::LogGammaValue<f64>;
pub type BarnesBetaParams = mellin::BarnesBetaParams<f64>;
pub type MellinValue = mellin::MellinValue<f64>;
pub type Extrapolated = accel::Extrapolated<f64>;
pub type SelbergParams = selberg::SelbergParams<f64>;
pub type MasterParams = selberg::MasterParams<f64>;
pub use identities::IdentityReport;
pub use sampling::{RngStream, SampleStats, Variate};
pub use verify::{run_suite, CheckRecord, Suite, VerifyOptions};
pub use xi::TDeltaParams;
