//! Energy accumulation `dE/dt = s X(E) - delta E` and its analysis:
//! steady states and their stability, EROI, net energy gain, numerical
//! and implicit time-dependent solutions.
//!
//! The classic capital-intensity reduction `dk/dt = s k^alpha - (n+g+delta) k`
//! lives in [`classic`] for comparison.

pub mod classic;
mod energy;
mod implicit;
mod steady;
mod trajectory;

pub use classic::{classic_steady_state, ClassicParams, ClassicSteadyState};
pub use energy::{
    eroi, eroi_above, eroi_above_general, neg_closed_form, neg_general, OpenInterval,
};
pub use implicit::{calibrate_t0, implicit_lhs, implicit_relation, IMPLICIT_RATE};
pub use steady::{
    existence_condition, steady_states, steady_states_general, steady_states_general_with,
    steady_states_quadratic, ScanOptions, Stability, SteadyState, SteadyStateReport,
};
pub use trajectory::{
    classify_regime, simulate, time_of_flight, Method, Regime, Trajectory, TrajectoryPoint,
};

use crate::error::{ensure_nonnegative_input, ensure_positive, Error, Result};
use crate::production::EnergyProductionParams;

/// Savings fraction, depreciation rate and the production function of the
/// energy model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyParams {
    s: f64,
    delta: f64,
    production: EnergyProductionParams,
}

impl EnergyParams {
    /// Requires `0 < s < 1` and `delta > 0`.
    pub fn new(s: f64, delta: f64, production: EnergyProductionParams) -> Result<Self> {
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason:
                    "savings fraction must lie in (0, 1); use EnergyParams::demo_mode for s = 1",
            });
        }
        Self::demo_mode(s, delta, production)
    }

    /// Like [`EnergyParams::new`] but also accepts `s = 1`, the value used
    /// in the reference figures. [`EnergyParams::diagnostics`] flags it.
    pub fn demo_mode(s: f64, delta: f64, production: EnergyProductionParams) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidParameter {
                name: "s",
                value: s,
                reason: "savings fraction must lie in (0, 1]",
            });
        }
        ensure_positive("delta", delta)?;
        Ok(Self {
            s,
            delta,
            production,
        })
    }

    /// `s = 1, delta = 0.7, N1 = N2 = C = 1, alpha = 2`.
    pub fn demo() -> Self {
        Self {
            s: 1.0,
            delta: 0.7,
            production: EnergyProductionParams {
                n1: 1.0,
                n2: 1.0,
                c: 1.0,
                alpha: 2.0,
            },
        }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn production(&self) -> &EnergyProductionParams {
        &self.production
    }

    pub fn alpha(&self) -> f64 {
        self.production.alpha
    }

    pub fn is_demo_mode(&self) -> bool {
        self.s >= 1.0
    }

    /// Same model with another depreciation rate.
    pub fn with_delta(&self, delta: f64) -> Result<Self> {
        Self::demo_mode(self.s, delta, self.production)
    }

    /// Human-readable warnings about parameter choices outside the model's
    /// stated range.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.is_demo_mode() {
            out.push(format!(
                "s = {} is outside 0 < s < 1 (demo mode: all output is reinvested)",
                self.s
            ));
        }
        out
    }

    /// `s X(E) - delta E` without domain checks; negative `E` is treated as 0.
    pub fn flow(&self, e: f64) -> f64 {
        let e = e.max(0.0);
        self.s * self.production.value(e) - self.delta * e
    }

    /// Analytic `dF/dE`.
    pub fn flow_derivative(&self, e: f64) -> f64 {
        self.s * self.production.derivative(e.max(0.0)) - self.delta
    }

    pub(crate) fn is_quadratic(&self) -> bool {
        self.production.alpha == 2.0
    }
}

/// `F(E) = s X(E) - delta E` for `E >= 0`.
pub fn net_flow(e: f64, params: &EnergyParams) -> Result<f64> {
    ensure_nonnegative_input("E", e)?;
    Ok(params.flow(e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flow_examples() {
        let p = EnergyParams::demo();
        assert_eq!(net_flow(0.0, &p).unwrap(), 0.0);
        assert!((net_flow(1.0, &p).unwrap() - 0.3).abs() < 1e-15);
        assert!(net_flow(-1.0, &p).is_err());
    }

    #[test]
    fn savings_fraction_range() {
        let prod = *EnergyParams::demo().production();
        assert!(EnergyParams::new(1.0, 0.7, prod).is_err());
        assert!(EnergyParams::new(0.0, 0.7, prod).is_err());
        assert!(EnergyParams::new(0.5, 0.0, prod).is_err());
        let demo = EnergyParams::demo_mode(1.0, 0.7, prod).unwrap();
        assert_eq!(demo, EnergyParams::demo());
        assert_eq!(demo.diagnostics().len(), 1);
        assert!(EnergyParams::new(0.5, 0.7, prod)
            .unwrap()
            .diagnostics()
            .is_empty());
    }

    #[test]
    fn flow_derivative_matches_finite_difference() {
        let p = EnergyParams::demo();
        for &e in &[0.1, 0.3726907, 0.9, 1.3, 2.0] {
            let h = 1e-6;
            let fd = (p.flow(e + h) - p.flow(e - h)) / (2.0 * h);
            assert!((p.flow_derivative(e) - fd).abs() < 1e-8);
        }
    }
}
