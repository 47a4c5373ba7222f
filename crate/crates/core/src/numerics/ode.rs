use super::{NumericsError, Tolerance};

/// Accepted steps of a scalar integration, with the derivative at each
/// sample so the solution can be interpolated by cubic Hermite segments.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct OdeSolution {
    t: Vec<f64>,
    y: Vec<f64>,
    dydt: Vec<f64>,
}

impl OdeSolution {
    fn push(&mut self, t: f64, y: f64, dydt: f64) {
        self.t.push(t);
        self.y.push(y);
        self.dydt.push(dydt);
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    pub fn derivatives(&self) -> &[f64] {
        &self.dydt
    }

    /// Final `(t, y)`.
    pub fn last(&self) -> Option<(f64, f64)> {
        Some((*self.t.last()?, *self.y.last()?))
    }

    /// Cubic Hermite interpolation between accepted steps. `None` outside
    /// the integrated span.
    pub fn interpolate(&self, t: f64) -> Option<f64> {
        let first = *self.t.first()?;
        let last = *self.t.last()?;
        if !(first..=last).contains(&t) {
            return None;
        }
        let i = match self.t.partition_point(|&x| x <= t) {
            0 => 0,
            n if n >= self.t.len() => return Some(self.y[self.t.len() - 1]),
            n => n - 1,
        };
        let h = self.t[i + 1] - self.t[i];
        let s = (t - self.t[i]) / h;
        let s2 = s * s;
        let s3 = s2 * s;
        let h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
        let h10 = s3 - 2.0 * s2 + s;
        let h01 = -2.0 * s3 + 3.0 * s2;
        let h11 = s3 - s2;
        Some(
            h00 * self.y[i]
                + h10 * h * self.dydt[i]
                + h01 * self.y[i + 1]
                + h11 * h * self.dydt[i + 1],
        )
    }
}

/// Classical fourth-order Runge-Kutta with step-doubling error control.
///
/// Each trial step of size `h` is compared against two steps of `h/2`; the
/// step is accepted when `|y_two - y_full| / 15 <= abs_tol + rel_tol * |y|`
/// and halved otherwise. Steps that pass with a 32x margin double the next
/// step. `control.max_iter` caps the number of trial steps.
///
/// Growth is also capped by a secant estimate `L` of `|df/dy|` so that
/// `h * L` stays inside the real stability interval of RK4; without it the
/// controller happily steps past a stable equilibrium with an amplification
/// factor above one once the error there becomes negligible.
pub fn integrate_ode<F>(
    mut f: F,
    y0: f64,
    t_span: (f64, f64),
    control: Tolerance,
) -> Result<OdeSolution, NumericsError>
where
    F: FnMut(f64, f64) -> f64,
{
    let (t_start, t_end) = t_span;
    if !(t_start.is_finite() && t_end.is_finite() && t_end > t_start) {
        return Err(NumericsError::InvalidInterval {
            start: t_start,
            end: t_end,
        });
    }
    if !y0.is_finite() {
        return Err(NumericsError::NonFinite { x: t_start });
    }

    let span = t_end - t_start;
    let h_max = span / 8.0;
    let h_min = 64.0 * f64::EPSILON * t_start.abs().max(t_end.abs()).max(span);

    let mut out = OdeSolution::default();
    let mut t = t_start;
    let mut y = y0;
    let mut k1 = f(t, y);
    if !k1.is_finite() {
        return Err(NumericsError::OdeNonFinite {
            t,
            y,
            partial: Box::new(out),
        });
    }
    out.push(t, y, k1);

    let mut h = span / 64.0;
    let mut trials = 0usize;

    while t < t_end {
        trials += 1;
        if trials > control.max_iter {
            return Err(NumericsError::TooManySteps {
                steps: control.max_iter,
                t_end,
                partial: Box::new(out),
            });
        }

        let last_step = t + h >= t_end;
        let h_try = if last_step { t_end - t } else { h };

        let full = rk4_step(&mut f, t, y, k1, h_try);
        let half = rk4_step(&mut f, t, y, k1, 0.5 * h_try);
        let k_mid = f(t + 0.5 * h_try, half);
        let two = rk4_step(&mut f, t + 0.5 * h_try, half, k_mid, 0.5 * h_try);

        let err = (two - full).abs() / 15.0;
        let scale = control.bound(y.abs().max(two.abs()));

        if err.is_finite() && two.is_finite() && err <= scale {
            t = if last_step { t_end } else { t + h_try };
            let (y_prev, k_prev) = (y, k1);
            y = two;
            k1 = f(t, y);
            if !k1.is_finite() {
                return Err(NumericsError::OdeNonFinite {
                    t,
                    y,
                    partial: Box::new(out),
                });
            }
            out.push(t, y, k1);
            if err * 32.0 < scale {
                h = (2.0 * h).min(h_max);
            }
            let dy = y - y_prev;
            if dy != 0.0 {
                let lipschitz = ((k1 - k_prev) / dy).abs();
                if lipschitz * h > STABLE_HL {
                    h = (STABLE_HL / lipschitz).max(h_min);
                }
            }
        } else {
            h = 0.5 * h_try;
            if h < h_min {
                return Err(NumericsError::StepUnderflow {
                    t,
                    step: h,
                    partial: Box::new(out),
                });
            }
        }
    }

    Ok(out)
}

/// Conservative bound on `h * |df/dy|`; RK4's real stability interval
/// reaches about 2.785.
const STABLE_HL: f64 = 2.0;

fn rk4_step<F>(f: &mut F, t: f64, y: f64, k1: f64, h: f64) -> f64
where
    F: FnMut(f64, f64) -> f64,
{
    let k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
    let k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
    let k4 = f(t + h, y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}
