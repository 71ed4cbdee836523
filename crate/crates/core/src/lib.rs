//! Numerical evaluation of the fundamental solution of the space-time
//! fractional diffusion equation for admissible parameter triplets
//! (alpha, beta, theta): closed forms, Mellin-Barnes residue series,
//! subordination integrals, fractional moments and independent quadrature
//! oracles.

pub mod densities;
pub mod error;
pub mod green;
pub mod mellin_barnes;
pub mod oracles;
pub mod params;
pub mod quad;
pub mod result;
pub mod specials;
pub mod verify;

pub use error::{Error, Result};
pub use green::{green, moment, reduced_green, subordination_integral, GreenRequest};
pub use mellin_barnes::{ExpansionSide, GammaFraction, PowerSeriesExpansion, SeriesNature};
pub use oracles::{fourier_oracle, mellin_oracle, quadrature_moment};
pub use params::{DiffusionClass, FractionalTriplet};
pub use result::{ComplexEvaluation, EvaluationResult, Method};
pub use verify::{run_suite, CheckResult, Suite};
