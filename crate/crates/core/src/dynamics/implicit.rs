//! Implicit time solution of the energy equation for the reference
//! parameters `s = 1, C = N1 = N2 = 1, delta = 0.7, alpha = 2`:
//!
//! `(14E - 12 + sqrt46)/(14E - 12 - sqrt46) * E^(-sqrt46/5) = ±exp(7 sqrt46/50 (t + t0))`.
//!
//! The branch sign is positive outside `(E1, E2)` and negative inside, with
//! `E1,2 = (12 ∓ sqrt46)/14`.

use crate::error::{Error, Result};

fn sqrt46() -> f64 {
    46f64.sqrt()
}

/// Exponential rate `7 sqrt(46) / 50` on the right-hand side.
pub const IMPLICIT_RATE: f64 = 0.949_526_197_637_537_5;

/// Left-hand side of the implicit relation.
pub fn implicit_lhs(e: f64) -> Result<f64> {
    if !(e.is_finite() && e > 0.0) {
        return Err(Error::Domain {
            name: "E",
            value: e,
            reason: "implicit solution is defined for E > 0",
        });
    }
    let r = sqrt46();
    let lower = (12.0 - r) / 14.0;
    let upper = (12.0 + r) / 14.0;
    for root in [lower, upper] {
        if (e - root).abs() <= 1e-12 * root {
            return Err(Error::Singular(e));
        }
    }
    Ok((14.0 * e - 12.0 + r) / (14.0 * e - 12.0 - r) * e.powf(-r / 5.0))
}

/// Integration constant placing `E(0) = e0` on its branch:
/// `t0 = ln|LHS(e0)| / rate`.
pub fn calibrate_t0(e0: f64) -> Result<f64> {
    Ok(implicit_lhs(e0)?.abs().ln() / IMPLICIT_RATE)
}

/// `LHS(E) exp(-rate (t + t0)) - sign(LHS(E))`; zero on exact trajectories.
pub fn implicit_relation(e: f64, t: f64, t0: f64) -> Result<f64> {
    let lhs = implicit_lhs(e)?;
    Ok(lhs * (-IMPLICIT_RATE * (t + t0)).exp() - lhs.signum())
}
