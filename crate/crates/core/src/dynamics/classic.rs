//! Classic Solow-Swan capital intensity: `dk/dt = s k^alpha - (n + g + delta) k`.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicParams {
    pub alpha: f64,
    pub s: f64,
    /// Labor growth.
    pub n: f64,
    /// Technology growth.
    pub g: f64,
    pub delta: f64,
}

impl ClassicParams {
    pub fn new(alpha: f64, s: f64, n: f64, g: f64, delta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("s", s)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must lie in (0, 1)",
                });
            }
        }
        let effective = n + g + delta;
        if !(effective.is_finite() && effective > 0.0) {
            return Err(Error::InvalidParameter {
                name: "n + g + delta",
                value: effective,
                reason: "effective depreciation must be > 0",
            });
        }
        Ok(Self {
            alpha,
            s,
            n,
            g,
            delta,
        })
    }

    pub fn effective_depreciation(&self) -> f64 {
        self.n + self.g + self.delta
    }

    /// Right-hand side `s k^alpha - (n + g + delta) k`.
    pub fn flow(&self, k: f64) -> f64 {
        self.s * k.max(0.0).powf(self.alpha) - self.effective_depreciation() * k
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicSteadyState {
    /// Capital per effective worker.
    pub k: f64,
    /// Output per effective worker, `k^alpha`.
    pub y: f64,
}

/// `k* = (s / (n + g + delta))^(1 / (1 - alpha))`.
pub fn classic_steady_state(params: &ClassicParams) -> ClassicSteadyState {
    let k = (params.s / params.effective_depreciation()).powf(1.0 / (1.0 - params.alpha));
    ClassicSteadyState {
        k,
        y: k.powf(params.alpha),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{find_root, Bracket, Tolerance};

    #[test]
    fn hand_example() {
        let p = ClassicParams::new(0.5, 0.2, 0.02, 0.03, 0.05).unwrap();
        let ss = classic_steady_state(&p);
        assert!((ss.k - 4.0).abs() < 1e-12);
        assert!((ss.y - 2.0).abs() < 1e-12);
    }

    #[test]
    fn savings_equal_to_depreciation_gives_unit_intensity() {
        let p = ClassicParams::new(0.3, 0.1, 0.02, 0.02, 0.06).unwrap();
        assert!((classic_steady_state(&p).k - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matches_bisection() {
        let p = ClassicParams::new(0.5, 0.2, 0.02, 0.03, 0.05).unwrap();
        let tol = Tolerance::new(1e-15, 0.0, 300).unwrap();
        let k = find_root(|k| p.flow(k), Bracket::new(0.1, 100.0).unwrap(), tol).unwrap();
        assert!((k - classic_steady_state(&p).k).abs() < 1e-10);
    }

    #[test]
    fn rejects_invalid() {
        assert!(ClassicParams::new(1.0, 0.2, 0.0, 0.0, 0.1).is_err());
        assert!(ClassicParams::new(0.3, 0.2, -0.1, 0.0, 0.05).is_err());
    }
}
