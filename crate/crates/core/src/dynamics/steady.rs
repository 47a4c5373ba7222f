use super::EnergyParams;
use crate::error::{Error, Result};
use crate::numerics::{find_root, Bracket, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stability {
    Stable,
    Unstable,
    /// Zero slope at a tangential root: attracting from one side only.
    SemiStable,
}

impl Stability {
    fn from_slope(slope: f64) -> Self {
        if slope < 0.0 {
            Stability::Stable
        } else if slope > 0.0 {
            Stability::Unstable
        } else {
            Stability::SemiStable
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::SemiStable => "semi-stable",
        }
    }
}

impl std::fmt::Display for Stability {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub energy: f64,
    pub stability: Stability,
    /// `dF/dE` at the root, as used for the stability label.
    pub slope: f64,
}

/// Steady states sorted ascending; `E = 0` is always the first entry.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyStateReport {
    pub roots: Vec<SteadyState>,
    pub exists_nontrivial: bool,
    /// `s^2 N1^2 + 4 C delta N2 (s N1 - delta N2)`, quadratic variant only.
    pub discriminant: Option<f64>,
    /// The two nontrivial roots merged into one.
    pub tangency: bool,
}

impl SteadyStateReport {
    /// Roots other than `E = 0`.
    pub fn nontrivial(&self) -> &[SteadyState] {
        &self.roots[1..]
    }

    pub fn energies(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.energy).collect()
    }
}

/// Bracketing grid used by [`steady_states_general_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Number of geometrically spaced grid points.
    pub points: usize,
    /// Lower end of the grid as a fraction of `N2`.
    pub lower_fraction: f64,
    pub tolerance: Tolerance,
}

impl Default for ScanOptions {
    fn default() -> Self {
        Self {
            points: 512,
            lower_fraction: 1e-9,
            tolerance: Tolerance {
                abs_tol: 1e-300,
                rel_tol: 0.0,
                max_iter: 300,
            },
        }
    }
}

fn trivial_root(params: &EnergyParams) -> SteadyState {
    let slope = params.flow_derivative(0.0);
    SteadyState {
        energy: 0.0,
        stability: Stability::from_slope(slope),
        slope,
    }
}

/// Closed-form steady states for `alpha = 2`: the positive roots of
/// `delta (C+1) E^2 - (2 C delta N2 + s N1) E + C delta N2^2 = 0`.
pub fn steady_states_quadratic(params: &EnergyParams) -> Result<SteadyStateReport> {
    if !params.is_quadratic() {
        return Err(Error::WrongVariant {
            operation: "steady_states_quadratic",
            requirement: "alpha = 2",
            alternative: "steady_states_general",
        });
    }
    let p = params.production();
    let (s, delta) = (params.s(), params.delta());
    let a = delta * (p.c + 1.0);
    let b = 2.0 * p.c * delta * p.n2 + s * p.n1;
    let c = p.c * delta * p.n2 * p.n2;
    let disc = s * s * p.n1 * p.n1 + 4.0 * p.c * delta * p.n2 * (s * p.n1 - delta * p.n2);

    let mut roots = vec![trivial_root(params)];
    let tangency = disc.abs() <= 1e-14 * b * b;
    if tangency {
        let e = b / (2.0 * a);
        roots.push(SteadyState {
            energy: e,
            stability: Stability::SemiStable,
            slope: 0.0,
        });
    } else if disc > 0.0 {
        // b > 0, so the larger root is cancellation-free; Vieta for the other
        let upper = (b + disc.sqrt()) / (2.0 * a);
        let lower = c / (a * upper);
        for e in [lower, upper] {
            let slope = params.flow_derivative(e);
            roots.push(SteadyState {
                energy: e,
                stability: Stability::from_slope(slope),
                slope,
            });
        }
    }

    Ok(SteadyStateReport {
        exists_nontrivial: roots.len() > 1,
        roots,
        discriminant: Some(disc),
        tangency,
    })
}

/// `1 + s N1 / (4 C delta N2) > delta N2 / (s N1)`: two distinct nontrivial
/// steady states exist (quadratic variant).
pub fn existence_condition(params: &EnergyParams) -> Result<bool> {
    if !params.is_quadratic() {
        return Err(Error::WrongVariant {
            operation: "existence_condition",
            requirement: "alpha = 2",
            alternative: "steady_states_general",
        });
    }
    let p = params.production();
    let sn1 = params.s() * p.n1;
    let dn2 = params.delta() * p.n2;
    Ok(1.0 + sn1 / (4.0 * p.c * dn2) > dn2 / sn1)
}

pub fn steady_states_general(params: &EnergyParams) -> Result<SteadyStateReport> {
    steady_states_general_with(params, &ScanOptions::default())
}

/// Sign-change scan of `F` on a geometric grid over
/// `(lower_fraction N2, max(4 N2, 4 s N1 / delta)]`, each bracket refined
/// with Brent's method. Stability comes from a centered difference of `F`.
///
/// Every nontrivial root satisfies `s X(E) = delta E <= s N1`, so the grid
/// covers all of them except roots below `lower_fraction N2` and tangential
/// roots that do not change sign.
pub fn steady_states_general_with(
    params: &EnergyParams,
    options: &ScanOptions,
) -> Result<SteadyStateReport> {
    let p = params.production();
    let lo = options.lower_fraction * p.n2;
    let hi = (4.0 * p.n2).max(4.0 * params.s() * p.n1 / params.delta());
    let n = options.points.max(2);
    let ratio = (hi / lo).powf(1.0 / (n - 1) as f64);

    let grid: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo * ratio.powi(i as i32)
            }
        })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&e| params.flow(e)).collect();

    let mut roots = vec![trivial_root(params)];
    for i in 0..n - 1 {
        let (e0, e1) = (grid[i], grid[i + 1]);
        let (f0, f1) = (values[i], values[i + 1]);
        let energy = if f0 == 0.0 {
            e0
        } else if f0.signum() != f1.signum() && f1 != 0.0 {
            find_root(|e| params.flow(e), Bracket::new(e0, e1)?, options.tolerance)?
        } else if f1 == 0.0 && i == n - 2 {
            e1
        } else {
            continue;
        };

        let h = 1e-6 * energy;
        let mut slope = (params.flow(energy + h) - params.flow(energy - h)) / (2.0 * h);
        if slope == 0.0 && f0 != 0.0 && f1 != 0.0 {
            slope = (f1 - f0).signum();
        }
        roots.push(SteadyState {
            energy,
            stability: Stability::from_slope(slope),
            slope,
        });
    }

    Ok(SteadyStateReport {
        exists_nontrivial: roots.len() > 1,
        roots,
        discriminant: None,
        tangency: false,
    })
}

/// Closed form for `alpha = 2`, grid scan otherwise.
pub fn steady_states(params: &EnergyParams) -> Result<SteadyStateReport> {
    if params.is_quadratic() {
        steady_states_quadratic(params)
    } else {
        steady_states_general(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::production::EnergyProductionParams;

    fn params(s: f64, c: f64, n1: f64, n2: f64, delta: f64, alpha: f64) -> EnergyParams {
        EnergyParams::demo_mode(
            s,
            delta,
            EnergyProductionParams::new(n1, n2, c, alpha).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn demo_roots_and_stability() {
        let report = steady_states_quadratic(&EnergyParams::demo()).unwrap();
        let e = report.energies();
        assert_eq!(e.len(), 3);
        assert_eq!(e[0], 0.0);
        assert!((e[1] - 0.3726907).abs() < 1e-6);
        assert!((e[2] - 1.3415950).abs() < 1e-6);
        let labels: Vec<_> = report.roots.iter().map(|r| r.stability).collect();
        assert_eq!(
            labels,
            [Stability::Stable, Stability::Unstable, Stability::Stable]
        );
        assert!(report.exists_nontrivial && !report.tangency);
        assert!((report.discriminant.unwrap() - 1.84).abs() < 1e-14);
    }

    #[test]
    fn high_depreciation_has_no_nontrivial_roots() {
        let p = params(1.0, 1.0, 1.0, 1.0, 2.0, 2.0);
        let report = steady_states_quadratic(&p).unwrap();
        assert_eq!(report.energies(), [0.0]);
        assert!((report.discriminant.unwrap() + 7.0).abs() < 1e-14);
        assert!(!existence_condition(&p).unwrap());
        assert!(existence_condition(&EnergyParams::demo()).unwrap());
        assert_eq!(steady_states_general(&p).unwrap().energies(), [0.0]);
    }

    #[test]
    fn tangency_reports_single_root() {
        // disc = 0 with s = C = N1 = N2 = 1: 1 + 4 delta (1 - delta) = 0
        let delta = (1.0 + 2f64.sqrt()) / 2.0;
        let p = params(1.0, 1.0, 1.0, 1.0, delta, 2.0);
        let report = steady_states_quadratic(&p).unwrap();
        assert!(report.tangency);
        assert_eq!(report.roots.len(), 2);
        assert_eq!(report.roots[1].stability, Stability::SemiStable);
        assert!(p.flow(report.roots[1].energy).abs() < 1e-12);
    }

    #[test]
    fn wrong_variant() {
        let p = params(0.9, 1.0, 1.0, 1.0, 0.6, 1.5);
        assert!(matches!(
            steady_states_quadratic(&p),
            Err(Error::WrongVariant { .. })
        ));
        assert!(existence_condition(&p).is_err());
    }

    #[test]
    fn general_matches_quadratic_on_demo() {
        let quad = steady_states_quadratic(&EnergyParams::demo()).unwrap();
        let gen = steady_states_general(&EnergyParams::demo()).unwrap();
        assert_eq!(quad.roots.len(), gen.roots.len());
        for (q, g) in quad.roots.iter().zip(&gen.roots) {
            assert!((q.energy - g.energy).abs() < 1e-8);
            assert_eq!(q.stability, g.stability);
        }
    }

    #[test]
    fn fractional_exponent_has_two_roots_with_positive_flow_between() {
        let p = params(0.9, 1.0, 1.0, 1.0, 0.6, 1.5);
        let report = steady_states_general(&p).unwrap();
        let nt = report.nontrivial();
        assert_eq!(nt.len(), 2);
        let (e1, e2) = (nt[0].energy, nt[1].energy);
        // brute-force sign scan between the roots
        assert!((1..100).all(|i| p.flow(e1 + (e2 - e1) * i as f64 / 100.0) > 0.0));
        assert_eq!(nt[0].stability, Stability::Unstable);
        assert_eq!(nt[1].stability, Stability::Stable);
        for r in nt {
            assert!(p.flow(r.energy).abs() <= 1e-9 * (p.delta() * r.energy).max(1.0));
        }
    }

    #[test]
    fn huge_depreciation_leaves_only_origin() {
        let p = params(0.5, 1.0, 1.0, 1.0, 1e6, 1.5);
        assert_eq!(steady_states_general(&p).unwrap().energies(), [0.0]);
    }

    #[test]
    fn origin_stability_depends_on_exponent() {
        assert_eq!(
            trivial_root(&params(0.5, 1.0, 1.0, 1.0, 0.3, 0.5)).stability,
            Stability::Unstable
        );
        assert_eq!(
            trivial_root(&params(0.5, 1.0, 1.0, 1.0, 0.3, 3.0)).stability,
            Stability::Stable
        );
        // alpha = 1: F'(0) = s N1 / (C N2) - delta
        assert_eq!(
            trivial_root(&params(0.5, 1.0, 1.0, 1.0, 0.3, 1.0)).stability,
            Stability::Unstable
        );
        assert_eq!(
            trivial_root(&params(0.5, 1.0, 1.0, 1.0, 0.7, 1.0)).stability,
            Stability::Stable
        );
    }
}
