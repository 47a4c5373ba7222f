//! Growth-system algebra: exponential and logistic closed forms, monomial
//! invariants, the coordinate change between the two systems and the
//! constant-returns exponent formulas.

use crate::error::{ensure_finite, ensure_positive, Error, Result};
use crate::numerics::Tolerance;

/// Per-unit-time growth rates of capital, labor and production.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthRates {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

impl GrowthRates {
    pub fn new(b1: f64, b2: f64, b3: f64) -> Result<Self> {
        Ok(Self {
            b1: ensure_finite("b1", b1)?,
            b2: ensure_finite("b2", b2)?,
            b3: ensure_finite("b3", b3)?,
        })
    }

    /// Rates fitted to the 1899-1922 US manufacturing series.
    pub fn cobb_douglas_1928() -> Self {
        Self {
            b1: 0.06472564,
            b2: 0.02549605,
            b3: 0.03592651,
        }
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.b1, self.b2, self.b3]
    }

    /// `b2 < b3 < b1`: a constant-returns Cobb-Douglas member with both
    /// exponents in (0, 1) exists exactly under this ordering.
    pub fn admits_constant_returns(&self) -> bool {
        self.b2 < self.b3 && self.b3 < self.b1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialLevels {
    pub k0: f64,
    pub l0: f64,
    pub y0: f64,
}

impl InitialLevels {
    pub fn new(k0: f64, l0: f64, y0: f64) -> Result<Self> {
        Ok(Self {
            k0: ensure_positive("K0", k0)?,
            l0: ensure_positive("L0", l0)?,
            y0: ensure_positive("Y0", y0)?,
        })
    }

    /// Levels given as natural logarithms, as fitted intercepts usually are.
    pub fn from_logs(ln_k0: f64, ln_l0: f64, ln_y0: f64) -> Result<Self> {
        Self::new(ln_k0.exp(), ln_l0.exp(), ln_y0.exp())
    }

    /// Fitted intercepts of the 1899-1922 series.
    pub fn cobb_douglas_1928() -> Self {
        Self::from_logs(4.61213588, 4.66953290, 4.66415363).expect("finite levels")
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CarryingCapacities {
    pub nk: f64,
    pub nl: f64,
    pub ny: f64,
}

impl CarryingCapacities {
    pub fn new(nk: f64, nl: f64, ny: f64) -> Result<Self> {
        Ok(Self {
            nk: ensure_positive("NK", nk)?,
            nl: ensure_positive("NL", nl)?,
            ny: ensure_positive("NY", ny)?,
        })
    }

    /// Checks that every initial level sits strictly below its capacity.
    pub fn admits(&self, init: &InitialLevels) -> Result<()> {
        below_capacity("K0", init.k0, self.nk)?;
        below_capacity("L0", init.l0, self.nl)?;
        below_capacity("Y0", init.y0, self.ny)?;
        Ok(())
    }
}

/// Exponents of the monomial `K^a1 L^a2 Y^a3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentVector {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl ExponentVector {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Result<Self> {
        for (name, v) in [("a1", a1), ("a2", a2), ("a3", a3)] {
            if !v.is_finite() || v == 0.0 {
                return Err(Error::InvalidParameter {
                    name,
                    value: v,
                    reason: "must be finite and nonzero",
                });
            }
        }
        Ok(Self { a1, a2, a3 })
    }

    /// Vector whose invariant solves to `Y = A K^alpha L^beta`:
    /// `(-alpha a3, -beta a3, a3)`.
    pub fn from_cd(exponents: CdExponents, a3: f64) -> Result<Self> {
        Self::new(-exponents.alpha * a3, -exponents.beta * a3, a3)
    }

    pub fn dot(&self, rates: &GrowthRates) -> f64 {
        self.a1 * rates.b1 + self.a2 * rates.b2 + self.a3 * rates.b3
    }

    /// Inverse of [`ExponentVector::from_cd`]: `alpha = -a1/a3`, `beta = -a2/a3`.
    pub fn cd_exponents(&self) -> CdExponents {
        CdExponents {
            alpha: -self.a1 / self.a3,
            beta: -self.a2 / self.a3,
        }
    }
}

/// Output elasticities of capital (`alpha`) and labor (`beta`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdExponents {
    pub alpha: f64,
    pub beta: f64,
}

impl CdExponents {
    /// Both exponents strictly inside (0, 1).
    pub fn is_admissible(&self) -> bool {
        (self.alpha > 0.0 && self.alpha < 1.0) && (self.beta > 0.0 && self.beta < 1.0)
    }
}

fn below_capacity(name: &'static str, value: f64, cap: f64) -> Result<()> {
    if value > 0.0 && value < cap {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value,
            reason: "must lie strictly between 0 and its carrying capacity",
        })
    }
}

fn logistic(x0: f64, cap: f64, rate: f64, t: f64) -> f64 {
    cap * x0 / (x0 + (cap - x0) * (-rate * t).exp())
}

/// `(K0 e^(b1 t), L0 e^(b2 t), Y0 e^(b3 t))`.
pub fn solve_exponential(rates: &GrowthRates, init: &InitialLevels, t: f64) -> (f64, f64, f64) {
    (
        init.k0 * (rates.b1 * t).exp(),
        init.l0 * (rates.b2 * t).exp(),
        init.y0 * (rates.b3 * t).exp(),
    )
}

/// Closed-form solution of the logistic system, `N x0 / (x0 + (N - x0) e^(-b t))`
/// per component.
pub fn solve_logistic(
    rates: &GrowthRates,
    init: &InitialLevels,
    caps: &CarryingCapacities,
    t: f64,
) -> Result<(f64, f64, f64)> {
    caps.admits(init)?;
    Ok((
        logistic(init.k0, caps.nk, rates.b1, t),
        logistic(init.l0, caps.nl, rates.b2, t),
        logistic(init.y0, caps.ny, rates.b3, t),
    ))
}

/// `|a . b| <= abs_tol`.
pub fn orthogonality_holds(a: &ExponentVector, rates: &GrowthRates, tol: &Tolerance) -> bool {
    a.dot(rates).abs() <= tol.abs_tol
}

/// Labor exponent of the Cobb-Douglas family member with capital exponent
/// `alpha`: `b3/b2 - alpha b1/b2`.
pub fn family_beta(alpha: f64, rates: &GrowthRates) -> Result<f64> {
    if rates.b2 == 0.0 {
        return Err(Error::Domain {
            name: "b2",
            value: rates.b2,
            reason: "labor growth rate must be nonzero",
        });
    }
    Ok(rates.b3 / rates.b2 - alpha * rates.b1 / rates.b2)
}

/// The family member with `alpha + beta = 1`:
/// `alpha = (b2 - b3)/(b2 - b1)`, `beta = (b3 - b1)/(b2 - b1)`.
///
/// Exponents outside (0, 1) are returned as computed; check
/// [`CdExponents::is_admissible`].
pub fn constant_returns_exponents(rates: &GrowthRates) -> Result<CdExponents> {
    let denom = rates.b2 - rates.b1;
    if denom == 0.0 {
        return Err(Error::DegenerateRates("b1 = b2 leaves alpha undetermined"));
    }
    Ok(CdExponents {
        alpha: (rates.b2 - rates.b3) / denom,
        beta: (rates.b3 - rates.b1) / denom,
    })
}

pub fn exponential_invariant(k: f64, l: f64, y: f64, a: &ExponentVector) -> Result<f64> {
    let k = positive_level("K", k)?;
    let l = positive_level("L", l)?;
    let y = positive_level("Y", y)?;
    Ok(k.powf(a.a1) * l.powf(a.a2) * y.powf(a.a3))
}

/// `(NK K/(NK-K))^a1 (NL L/(NL-L))^a2 (NY Y/(NY-Y))^a3`.
pub fn logistic_invariant(
    k: f64,
    l: f64,
    y: f64,
    a: &ExponentVector,
    caps: &CarryingCapacities,
) -> Result<f64> {
    below_capacity("K", k, caps.nk)?;
    below_capacity("L", l, caps.nl)?;
    below_capacity("Y", y, caps.ny)?;
    Ok(odds(k, caps.nk).powf(a.a1) * odds(l, caps.nl).powf(a.a2) * odds(y, caps.ny).powf(a.a3))
}

fn odds(x: f64, cap: f64) -> f64 {
    cap * x / (cap - x)
}

/// Member of the logistic production family selected by `alpha`, passing
/// through `(K0, L0) -> Y0`. With `beta = family_beta(alpha)` and
/// `G = B (NK K/(NK-K))^alpha (NL L/(NL-L))^beta` this is `NY G / (NY + G)`.
pub fn logistic_production(
    k: f64,
    l: f64,
    alpha: f64,
    rates: &GrowthRates,
    caps: &CarryingCapacities,
    init: &InitialLevels,
) -> Result<f64> {
    below_capacity("K", k, caps.nk)?;
    below_capacity("L", l, caps.nl)?;
    caps.admits(init)?;
    let beta = family_beta(alpha, rates)?;
    let b = odds(init.k0, caps.nk).powf(-alpha)
        * odds(init.l0, caps.nl).powf(-beta)
        * odds(init.y0, caps.ny);
    let g = b * odds(k, caps.nk).powf(alpha) * odds(l, caps.nl).powf(beta);
    Ok(caps.ny * g / (caps.ny + g))
}

/// `x -> N x / (N + x)` per component.
pub fn to_exponential_coords(
    k: f64,
    l: f64,
    y: f64,
    caps: &CarryingCapacities,
) -> Result<(f64, f64, f64)> {
    let k = positive_level("K", k)?;
    let l = positive_level("L", l)?;
    let y = positive_level("Y", y)?;
    Ok((
        caps.nk * k / (caps.nk + k),
        caps.nl * l / (caps.nl + l),
        caps.ny * y / (caps.ny + y),
    ))
}

/// `x -> N x / (N - x)` per component, defined for `0 < x < N`.
pub fn to_logistic_coords(
    k: f64,
    l: f64,
    y: f64,
    caps: &CarryingCapacities,
) -> Result<(f64, f64, f64)> {
    below_capacity("K", k, caps.nk)?;
    below_capacity("L", l, caps.nl)?;
    below_capacity("Y", y, caps.ny)?;
    Ok((odds(k, caps.nk), odds(l, caps.nl), odds(y, caps.ny)))
}

fn positive_level(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            reason: "level must be finite and > 0",
        })
    }
}
