//! Self-contained numerical kernel shared by the model modules.
//!
//! Everything here is a pure function of its inputs. Closures are taken by
//! `FnMut` so callers can count evaluations or cache without interior
//! mutability.

mod lsq;
mod ode;
mod quad;
mod root;

pub use lsq::{least_squares, LeastSquaresFit};
pub use ode::{integrate_ode, OdeSolution};
pub use quad::quadrature;
pub use root::find_root;

/// Stopping criteria shared by every iterative routine.
///
/// The meaning of `abs_tol` depends on the routine: a residual bound for
/// [`find_root`], a local error bound per step for [`integrate_ode`], an
/// integral error bound for [`quadrature`] and a cost bound for
/// [`least_squares`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_iter: usize,
}

impl Tolerance {
    pub fn new(abs_tol: f64, rel_tol: f64, max_iter: usize) -> Result<Self, NumericsError> {
        if !(abs_tol.is_finite() && abs_tol > 0.0) {
            return Err(NumericsError::InvalidTolerance(
                "abs_tol must be finite and > 0",
            ));
        }
        if !(rel_tol.is_finite() && rel_tol >= 0.0) {
            return Err(NumericsError::InvalidTolerance(
                "rel_tol must be finite and >= 0",
            ));
        }
        if max_iter == 0 {
            return Err(NumericsError::InvalidTolerance("max_iter must be >= 1"));
        }
        Ok(Self {
            abs_tol,
            rel_tol,
            max_iter,
        })
    }

    /// Same relative and absolute tolerance.
    pub fn uniform(tol: f64, max_iter: usize) -> Result<Self, NumericsError> {
        Self::new(tol, tol, max_iter)
    }

    /// `abs_tol + rel_tol * scale`.
    pub(crate) fn bound(&self, scale: f64) -> f64 {
        self.abs_tol + self.rel_tol * scale.abs()
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// Closed interval `[lo, hi]` with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericsError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(NumericsError::InvalidBracket { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum NumericsError {
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),

    #[error("invalid bracket [{lo}, {hi}]: need finite lo < hi")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("invalid interval [{start}, {end}]")]
    InvalidInterval { start: f64, end: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("root search did not converge after {iterations} iterations (best x = {best}, f = {residual})")]
    RootNoConvergence {
        iterations: usize,
        best: f64,
        residual: f64,
    },

    #[error("non-finite function value at x = {x}")]
    NonFinite { x: f64 },

    #[error("step size underflow at t = {t} (h = {step}); {} samples kept", partial.len())]
    StepUnderflow {
        t: f64,
        step: f64,
        partial: Box<OdeSolution>,
    },

    #[error("non-finite derivative at t = {t}, y = {y}; {} samples kept", partial.len())]
    OdeNonFinite {
        t: f64,
        y: f64,
        partial: Box<OdeSolution>,
    },

    #[error("integration exceeded {steps} steps before reaching t = {t_end}; {} samples kept", partial.len())]
    TooManySteps {
        steps: usize,
        t_end: f64,
        partial: Box<OdeSolution>,
    },

    #[error("quadrature did not reach tolerance on [{a}, {b}] (estimate {estimate})")]
    QuadratureNoConvergence { a: f64, b: f64, estimate: f64 },

    #[error("rank-deficient problem: {0}")]
    Rank(String),

    #[error("least squares did not converge after {iterations} iterations (residual norm {residual_norm})")]
    LeastSquaresNoConvergence {
        iterations: usize,
        best: Vec<f64>,
        residual_norm: f64,
    },
}
