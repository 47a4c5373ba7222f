use super::steady::{steady_states, SteadyStateReport};
use super::EnergyParams;
use crate::error::{ensure_nonnegative_input, Error, Result};
use crate::numerics::{integrate_ode, quadrature, OdeSolution, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    ClosedForm,
    Numeric,
}

/// Long-run behaviour selected by the initial energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Below the lower nontrivial steady state: decays toward 0.
    Collapse,
    /// Between the nontrivial steady states: rises to the upper one.
    Optimal,
    /// Above the upper steady state: falls back to it.
    Overshoot,
    AtSteadyState,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Collapse => "collapse",
            Regime::Optimal => "optimal",
            Regime::Overshoot => "overshoot",
            Regime::AtSteadyState => "at_steady_state",
        }
    }
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub energy: f64,
}

/// Time-indexed energy series with strictly increasing `t` and `E >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    solution: OdeSolution,
    method: Method,
    regime: Regime,
}

impl Trajectory {
    pub fn samples(&self) -> Vec<TrajectoryPoint> {
        self.solution
            .times()
            .iter()
            .zip(self.solution.values())
            .map(|(&t, &e)| TrajectoryPoint {
                t,
                energy: e.max(0.0),
            })
            .collect()
    }

    pub fn times(&self) -> &[f64] {
        self.solution.times()
    }

    pub fn energies(&self) -> &[f64] {
        self.solution.values()
    }

    pub fn len(&self) -> usize {
        self.solution.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solution.is_empty()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn terminal(&self) -> TrajectoryPoint {
        let (t, e) = self
            .solution
            .last()
            .expect("trajectory has at least one sample");
        TrajectoryPoint {
            t,
            energy: e.max(0.0),
        }
    }

    /// Energy at any time inside the integrated span (cubic Hermite
    /// between accepted steps).
    pub fn energy_at(&self, t: f64) -> Option<f64> {
        self.solution.interpolate(t).map(|e| e.max(0.0))
    }

    /// `points` equally spaced samples over the integrated span.
    pub fn resample(&self, points: usize) -> Vec<TrajectoryPoint> {
        let (t_start, t_end) = (self.solution.times()[0], self.terminal().t);
        let n = points.max(2);
        (0..n)
            .map(|i| {
                let t = if i == n - 1 {
                    t_end
                } else {
                    t_start + (t_end - t_start) * i as f64 / (n - 1) as f64
                };
                TrajectoryPoint {
                    t,
                    energy: self.energy_at(t).expect("grid inside span"),
                }
            })
            .collect()
    }
}

/// Integrates `dE/dt = F(E)` from `E(0) = e0` to `t_end`.
pub fn simulate(
    e0: f64,
    t_end: f64,
    params: &EnergyParams,
    control: Tolerance,
) -> Result<Trajectory> {
    ensure_nonnegative_input("E0", e0)?;
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(Error::Domain {
            name: "t_end",
            value: t_end,
            reason: "must be finite and > 0",
        });
    }
    let regime = classify_regime(e0, &steady_states(params)?);
    let solution = integrate_ode(|_, e| params.flow(e), e0, (0.0, t_end), control)?;
    Ok(Trajectory {
        solution,
        method: Method::Numeric,
        regime,
    })
}

/// Regime of a trajectory started at `e0`. Equality with a root means
/// `|e0 - root| <= 1e-9 max(1, root)`.
pub fn classify_regime(e0: f64, report: &SteadyStateReport) -> Regime {
    if report
        .roots
        .iter()
        .any(|r| (e0 - r.energy).abs() <= 1e-9 * r.energy.max(1.0))
    {
        return Regime::AtSteadyState;
    }
    match report.nontrivial() {
        [] => Regime::Collapse,
        [only] => {
            if e0 < only.energy {
                Regime::Collapse
            } else {
                Regime::Overshoot
            }
        }
        [lower, .., upper] => {
            if e0 < lower.energy {
                Regime::Collapse
            } else if e0 < upper.energy {
                Regime::Optimal
            } else {
                Regime::Overshoot
            }
        }
    }
}

/// Time to go from `e_start` to `e_target`: `integral of dE / F(E)`.
///
/// Positive when the flow carries `e_start` toward `e_target`. A steady
/// state anywhere in the closed interval makes the time infinite.
pub fn time_of_flight(e_start: f64, e_target: f64, params: &EnergyParams) -> Result<f64> {
    ensure_nonnegative_input("E_start", e_start)?;
    ensure_nonnegative_input("E_target", e_target)?;
    if e_start == e_target {
        return Ok(0.0);
    }
    let (lo, hi) = (e_start.min(e_target), e_start.max(e_target));
    if let Some(root) = steady_states(params)?
        .roots
        .iter()
        .find(|r| r.energy >= lo && r.energy <= hi)
    {
        return Err(Error::Divergence {
            from: e_start,
            to: e_target,
            energy: root.energy,
        });
    }
    let tol = Tolerance::new(1e-13, 1e-12, 60)?;
    Ok(quadrature(
        |e| 1.0 / params.flow(e),
        e_start,
        e_target,
        tol,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::steady_states_quadratic;

    fn control() -> Tolerance {
        Tolerance::new(1e-11, 1e-11, 1_000_000).unwrap()
    }

    #[test]
    fn zero_start_stays_at_zero() {
        let tr = simulate(0.0, 10.0, &EnergyParams::demo(), control()).unwrap();
        assert!(tr.energies().iter().all(|&e| e == 0.0));
        assert_eq!(tr.regime(), Regime::AtSteadyState);
        assert_eq!(tr.method(), Method::Numeric);
    }

    #[test]
    fn rises_to_upper_steady_state() {
        let tr = simulate(0.5, 30.0, &EnergyParams::demo(), control()).unwrap();
        assert_eq!(tr.regime(), Regime::Optimal);
        assert!(tr.energies().windows(2).all(|w| w[1] >= w[0]));
        assert!((tr.terminal().energy - 1.3415950).abs() < 1e-5);
    }

    #[test]
    fn demo_terminal_at_twenty() {
        let tr = simulate(0.5, 20.0, &EnergyParams::demo(), control()).unwrap();
        let e2 = (2.4 + 1.84f64.sqrt()) / 2.8;
        assert!(
            (tr.terminal().energy - e2).abs() < 1e-6,
            "{}",
            tr.terminal().energy
        );
    }

    #[test]
    fn decays_below_lower_steady_state() {
        let tr = simulate(0.2, 30.0, &EnergyParams::demo(), control()).unwrap();
        assert_eq!(tr.regime(), Regime::Collapse);
        assert!(tr.energies().windows(2).all(|w| w[1] <= w[0]));
        assert!(tr.terminal().energy < 1e-6);
    }

    #[test]
    fn regime_labels() {
        let report = steady_states_quadratic(&EnergyParams::demo()).unwrap();
        assert_eq!(classify_regime(0.5, &report), Regime::Optimal);
        assert_eq!(classify_regime(1.5, &report), Regime::Overshoot);
        assert_eq!(classify_regime(0.1, &report), Regime::Collapse);
        let e1 = report.nontrivial()[0].energy;
        assert_eq!(classify_regime(e1, &report), Regime::AtSteadyState);
        // the 7-digit rounding of E1 sits 1.5e-9 below it, outside the 1e-9 band
        assert_eq!(classify_regime(0.3726907, &report), Regime::Collapse);
        assert_eq!(
            classify_regime(e1 * (1.0 + 1e-10), &report),
            Regime::AtSteadyState
        );
    }

    #[test]
    fn resample_covers_span() {
        let tr = simulate(1.5, 10.0, &EnergyParams::demo(), control()).unwrap();
        let grid = tr.resample(11);
        assert_eq!(grid.len(), 11);
        assert_eq!(grid[0].t, 0.0);
        assert_eq!(grid[10].t, 10.0);
        assert!((grid[0].energy - 1.5).abs() < 1e-15);
    }

    #[test]
    fn flight_time_examples() {
        let p = EnergyParams::demo();
        assert_eq!(time_of_flight(0.7, 0.7, &p).unwrap(), 0.0);
        let t = time_of_flight(0.5, 1.0, &p).unwrap();
        assert!(t > 0.0 && t.is_finite());
        assert!(matches!(
            time_of_flight(0.3, 0.5, &p),
            Err(Error::Divergence { .. })
        ));
        // against the flow
        assert!(time_of_flight(1.0, 0.5, &p).unwrap() < 0.0);
    }
}
