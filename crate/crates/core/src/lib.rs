//! Energy-extended Solow-Swan growth model.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: root refinement, adaptive quadrature, explicit ODE
//!   integration and damped Gauss-Newton least squares.
//! * [`production`]: Cobb-Douglas, the logistic-derived two-input function,
//!   the single-input energy function and the S-shaped comparison function.
//! * [`invariants`]: exponential/logistic growth systems, their monomial
//!   invariants and the constant-returns exponent formulas.
//! * [`dynamics`]: the energy accumulation equation `dE/dt = s X(E) - delta E`,
//!   steady states, EROI, net energy gain and time-dependent solutions.
//! * [`calibration`]: CSV ingestion and growth-rate fitting.

pub mod calibration;
pub mod dynamics;
mod error;
pub mod invariants;
pub mod numerics;
pub mod production;

pub use error::{Error, Result};
pub use numerics::{Bracket, NumericsError, Tolerance};

pub use calibration::{FitMethod, FitResult, TimeSeries};
pub use dynamics::{
    ClassicParams, EnergyParams, Regime, Stability, SteadyState, SteadyStateReport, Trajectory,
};
pub use invariants::{CarryingCapacities, CdExponents, ExponentVector, GrowthRates, InitialLevels};
pub use production::{
    CobbDouglasParams, EnergyProductionParams, GeneralizedTwoInputParams, SShapedParams,
};
