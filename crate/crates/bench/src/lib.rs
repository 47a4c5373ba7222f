//! Shared parameter sets for the criterion benches.

use solow_energy::{EnergyParams, EnergyProductionParams};

/// s = 1, C = N1 = N2 = 1, delta = 0.7, alpha = 2.
pub fn demo_params() -> EnergyParams {
    EnergyParams::demo()
}

/// A general-exponent case with two nontrivial steady states.
pub fn fractional_params() -> EnergyParams {
    let production = EnergyProductionParams::new(1.0, 1.0, 1.0, 1.5).expect("valid production");
    EnergyParams::new(0.9, 0.6, production).expect("valid params")
}
