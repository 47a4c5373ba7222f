//! Production functions as pure evaluators.
//!
//! Zero inputs give zero output. Exponents are strictly positive, so `0^0`
//! never arises. The absolute values in the logistic-derived functions are
//! taken literally: inputs beyond a carrying capacity are legal.

use crate::error::{ensure_nonnegative_input, ensure_positive, Error, Result};

/// `Y = A K^alpha L^beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CobbDouglasParams {
    pub a: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl CobbDouglasParams {
    pub fn new(a: f64, alpha: f64, beta: f64) -> Result<Self> {
        ensure_positive("A", a)?;
        ensure_unit_open("alpha", alpha)?;
        ensure_unit_open("beta", beta)?;
        Ok(Self { a, alpha, beta })
    }

    /// `A = 1.01, alpha = 0.25, beta = 0.75`, the classic 1899-1922 fit.
    pub fn classic_1928() -> Self {
        Self {
            a: 1.01,
            alpha: 0.25,
            beta: 0.75,
        }
    }

    pub fn returns_to_scale(&self) -> f64 {
        self.alpha + self.beta
    }
}

/// Two-input function obtained from the logistic growth system:
///
/// `Y = NY L^alpha K^beta / (C |NL - L|^alpha |NK - K|^beta + L^alpha K^beta)`.
///
/// Note the exponent roles: `alpha` sits on labor and `beta` on capital,
/// the reverse of [`CobbDouglasParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedTwoInputParams {
    pub ny: f64,
    pub nk: f64,
    pub nl: f64,
    pub c: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl GeneralizedTwoInputParams {
    pub fn new(ny: f64, nk: f64, nl: f64, c: f64, alpha: f64, beta: f64) -> Result<Self> {
        Ok(Self {
            ny: ensure_positive("NY", ny)?,
            nk: ensure_positive("NK", nk)?,
            nl: ensure_positive("NL", nl)?,
            c: ensure_positive("C", c)?,
            alpha: ensure_positive("alpha", alpha)?,
            beta: ensure_positive("beta", beta)?,
        })
    }

    /// Chooses `C` so that the function passes through `(K0, L0) -> Y0`:
    ///
    /// `C = (L0/|NL-L0|)^alpha (K0/|NK-K0|)^beta (NY-Y0)/Y0`.
    ///
    /// This is `NY NK^-beta NL^-alpha / B` with `B` the logistic invariant
    /// constant of the initial levels.
    #[allow(clippy::too_many_arguments)]
    pub fn through_point(
        ny: f64,
        nk: f64,
        nl: f64,
        alpha: f64,
        beta: f64,
        k0: f64,
        l0: f64,
        y0: f64,
    ) -> Result<Self> {
        ensure_positive("K0", k0)?;
        ensure_positive("L0", l0)?;
        ensure_positive("Y0", y0)?;
        if y0 >= ny {
            return Err(Error::Domain {
                name: "Y0",
                value: y0,
                reason: "must be below NY",
            });
        }
        let c =
            (l0 / (nl - l0).abs()).powf(alpha) * (k0 / (nk - k0).abs()).powf(beta) * (ny - y0) / y0;
        Self::new(ny, nk, nl, c, alpha, beta)
    }
}

/// Single-input energy production `X(E) = N1 E^alpha / (C |N2 - E|^alpha + E^alpha)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyProductionParams {
    pub n1: f64,
    pub n2: f64,
    pub c: f64,
    pub alpha: f64,
}

impl EnergyProductionParams {
    pub fn new(n1: f64, n2: f64, c: f64, alpha: f64) -> Result<Self> {
        Ok(Self {
            n1: ensure_positive("N1", n1)?,
            n2: ensure_positive("N2", n2)?,
            c: ensure_positive("C", c)?,
            alpha: ensure_positive("alpha", alpha)?,
        })
    }

    /// Unchecked evaluation for `e >= 0`. Written as
    /// `N1 / (C (|N2-E|/E)^alpha + 1)` so large `E` cannot overflow.
    pub fn value(&self, e: f64) -> f64 {
        if e <= 0.0 {
            return 0.0;
        }
        let u = (self.n2 - e).abs() / e;
        self.n1 / (self.c * u.powf(self.alpha) + 1.0)
    }

    /// `dX/dE` for `e > 0`. Infinite at `E = N2` when `alpha < 1`; at
    /// `alpha = 1` the one-sided derivatives differ there and the left one
    /// is returned.
    pub fn derivative(&self, e: f64) -> f64 {
        if e <= 0.0 {
            return if self.alpha > 1.0 {
                0.0
            } else if self.alpha == 1.0 {
                self.n1 / (self.c * self.n2)
            } else {
                f64::INFINITY
            };
        }
        let gap = self.n2 - e;
        let u = gap.abs() / e;
        if u == 0.0 {
            return if self.alpha > 1.0 {
                0.0
            } else if self.alpha == 1.0 {
                self.n1 * self.c / self.n2
            } else {
                f64::INFINITY
            };
        }
        let du = -gap.signum() * self.n2 / (e * e);
        let denom = self.c * u.powf(self.alpha) + 1.0;
        -self.n1 * self.c * self.alpha * u.powf(self.alpha - 1.0) * du / (denom * denom)
    }

    /// Limit of `X(E)` as `E -> infinity`.
    pub fn asymptote(&self) -> f64 {
        self.n1 / (self.c + 1.0)
    }
}

/// `Y = A K^p L^(1-p) / (1 + B K^p L^-p)`, a static comparison function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SShapedParams {
    pub a: f64,
    pub b: f64,
    pub p: f64,
}

impl SShapedParams {
    pub fn new(a: f64, b: f64, p: f64) -> Result<Self> {
        ensure_positive("A", a)?;
        ensure_positive("B", b)?;
        ensure_unit_open("p", p)?;
        Ok(Self { a, b, p })
    }
}

fn ensure_unit_open(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value < 1.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must lie in (0, 1)",
        })
    }
}

pub fn cobb_douglas(k: f64, l: f64, params: &CobbDouglasParams) -> Result<f64> {
    ensure_nonnegative_input("K", k)?;
    ensure_nonnegative_input("L", l)?;
    if k == 0.0 || l == 0.0 {
        return Ok(0.0);
    }
    Ok(params.a * k.powf(params.alpha) * l.powf(params.beta))
}

pub fn generalized_two_input(k: f64, l: f64, params: &GeneralizedTwoInputParams) -> Result<f64> {
    ensure_nonnegative_input("K", k)?;
    ensure_nonnegative_input("L", l)?;
    if k == 0.0 || l == 0.0 {
        return Ok(0.0);
    }
    let core = l.powf(params.alpha) * k.powf(params.beta);
    let gap = (params.nl - l).abs().powf(params.alpha) * (params.nk - k).abs().powf(params.beta);
    Ok(params.ny * core / (params.c * gap + core))
}

pub fn energy_production(e: f64, params: &EnergyProductionParams) -> Result<f64> {
    ensure_nonnegative_input("E", e)?;
    Ok(params.value(e))
}

pub fn s_shaped(k: f64, l: f64, params: &SShapedParams) -> Result<f64> {
    ensure_nonnegative_input("K", k)?;
    if !(l.is_finite() && l > 0.0) {
        return Err(Error::Domain {
            name: "L",
            value: l,
            reason: "must be finite and > 0",
        });
    }
    if k == 0.0 {
        return Ok(0.0);
    }
    let kp = k.powf(params.p);
    Ok(params.a * kp * l.powf(1.0 - params.p) / (1.0 + params.b * kp * l.powf(-params.p)))
}
