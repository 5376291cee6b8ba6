//! Tail probabilities of time-averaged vacuum stress-tensor fluctuations and
//! their use as a barrier-penetration channel competing with WKB tunneling.
//!
//! Modules are layered bottom-up:
//!
//! * [`numerics`]: log-gamma, incomplete gamma, Brent root finding, quadrature.
//! * [`units`]: natural-unit constants and conversions.
//! * [`sampling`]: the `exp(-|ω|^α)` sampling-function family.
//! * [`tail`]: tail coefficients, exceedance exponent `F(x)`, moments, validity bounds.
//! * [`wick`]: brute-force contraction counting behind the moment constants.
//! * [`barrier`]: WKB exponents, charged-particle hop variable, `F = G` crossovers.
//! * [`fusion`]: Hill–Wheeler baseline and fluctuation-driven fusion cross sections.
//! * [`polar`]: force fluctuations on polarizable particles.
//! * [`catalog`] and [`report`]: JSON ingestion and tabular output used by the CLI.

// `!(x > 0.0)` is the NaN-rejecting form used throughout; reference
// constants are kept at the digits they were published with
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod barrier;
pub mod catalog;
pub mod error;
pub mod fusion;
pub mod numerics;
pub mod polar;
pub mod report;
pub mod sampling;
pub mod tail;
pub mod units;
pub mod wick;

pub use barrier::{BarrierScenario, CrossoverResult, Dominance};
pub use error::{Error, Result};
pub use fusion::{FusionDerived, FusionSystem};
pub use numerics::ToleranceSpec;
pub use polar::PolarizableParticle;
pub use sampling::{SamplingSpec, SwitchOnParams};
pub use tail::{OperatorKind, TailCoefficients};
pub use units::{PhysicalConstants, Unit, CONSTANTS};
