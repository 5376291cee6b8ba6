//! Shared inputs for the kernel benchmarks.

use radpress_core::catalog::Catalog;
use radpress_core::fusion::{derive_parameters, FusionDerived};
use radpress_core::FusionSystem;

/// Incomplete-gamma arguments spanning the series, continued-fraction and
/// negative-shape branches.
pub const GAMMA_CASES: [(f64, f64); 5] = [(0.5, 0.3), (12.0, 10.0), (28.0, 1e4), (-2.7, 40.0), (-3.0, 0.5)];

pub fn ar_sm() -> (FusionSystem, FusionDerived) {
    let system = Catalog::builtin().system("Ar+Sm").expect("built-in system").clone();
    let derived = derive_parameters(&system).expect("below-barrier system");
    (system, derived)
}
