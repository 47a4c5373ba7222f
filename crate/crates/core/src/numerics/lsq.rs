use nalgebra::{DMatrix, DVector};

use super::{NumericsError, Tolerance};

const LAMBDA_INIT: f64 = 1e-3;
const LAMBDA_UP: f64 = 10.0;
const LAMBDA_DOWN: f64 = 0.1;
const LAMBDA_MAX: f64 = 1e16;

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresFit {
    pub params: Vec<f64>,
    /// Euclidean norm of `model(params, t_i) - y_i`.
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Levenberg-Marquardt minimisation of `sum_i (model(p, t_i) - y_i)^2`.
///
/// The Jacobian is taken by central differences. Damping is Marquardt's
/// diagonal scaling with `lambda` starting at 1e-3 and moving by x10 on a
/// rejected step and x0.1 on an accepted one, so accepted residual norms
/// never increase.
///
/// Terminates when the residual norm drops below `abs_tol`, when the
/// relative cost reduction or the relative step falls below `rel_tol`, or
/// when no damped step can reduce the cost any further.
pub fn least_squares<M>(
    mut model: M,
    data: &[(f64, f64)],
    init: &[f64],
    tol: Tolerance,
) -> Result<LeastSquaresFit, NumericsError>
where
    M: FnMut(&[f64], f64) -> f64,
{
    let n = init.len();
    let m = data.len();
    if n == 0 {
        return Err(NumericsError::Rank("no parameters to fit".into()));
    }
    if m < n {
        return Err(NumericsError::Rank(format!(
            "{m} data points cannot determine {n} parameters"
        )));
    }
    if init.iter().any(|p| !p.is_finite()) {
        return Err(NumericsError::NonFinite { x: f64::NAN });
    }

    let mut residuals = |p: &[f64]| -> DVector<f64> {
        DVector::from_iterator(m, data.iter().map(|&(t, y)| model(p, t) - y))
    };

    let mut params = init.to_vec();
    let mut r = residuals(&params);
    let mut cost = r.norm_squared();
    if !cost.is_finite() {
        return Err(NumericsError::NonFinite { x: f64::NAN });
    }
    let mut lambda = LAMBDA_INIT;

    for iteration in 0..tol.max_iter {
        if cost.sqrt() <= tol.abs_tol {
            return Ok(finish(params, cost, iteration));
        }

        let jac = jacobian(&mut residuals, &params, &r);
        if iteration == 0 {
            check_rank(&jac)?;
        }
        let jtj = jac.transpose() * &jac;
        let grad = jac.transpose() * &r;

        let step = loop {
            let mut damped = jtj.clone();
            for i in 0..n {
                let d = jtj[(i, i)];
                damped[(i, i)] += lambda * if d > 0.0 { d } else { 1.0 };
            }
            let candidate = damped
                .cholesky()
                .map(|c| c.solve(&(-&grad)))
                .filter(|s| s.iter().all(|v| v.is_finite()));

            if let Some(step) = candidate {
                let trial: Vec<f64> = params.iter().zip(step.iter()).map(|(p, s)| p + s).collect();
                let r_trial = residuals(&trial);
                let cost_trial = r_trial.norm_squared();
                if cost_trial.is_finite() && cost_trial < cost {
                    lambda = (lambda * LAMBDA_DOWN).max(f64::MIN_POSITIVE);
                    break Some((step, trial, r_trial, cost_trial));
                }
            }
            lambda *= LAMBDA_UP;
            if lambda > LAMBDA_MAX {
                break None;
            }
        };

        let Some((step, trial, r_trial, cost_trial)) = step else {
            // no descent direction left at working precision
            return Ok(finish(params, cost, iteration + 1));
        };

        let reduction = (cost - cost_trial) / cost;
        let step_norm = step.norm();
        let param_norm = params.iter().map(|p| p * p).sum::<f64>().sqrt();
        params = trial;
        r = r_trial;
        cost = cost_trial;

        if reduction <= tol.rel_tol || step_norm <= tol.rel_tol * (param_norm + tol.rel_tol) {
            return Ok(finish(params, cost, iteration + 1));
        }
    }

    if cost.sqrt() <= tol.abs_tol {
        return Ok(finish(params, cost, tol.max_iter));
    }
    Err(NumericsError::LeastSquaresNoConvergence {
        iterations: tol.max_iter,
        best: params,
        residual_norm: cost.sqrt(),
    })
}

fn finish(params: Vec<f64>, cost: f64, iterations: usize) -> LeastSquaresFit {
    LeastSquaresFit {
        params,
        residual_norm: cost.sqrt(),
        iterations,
    }
}

fn jacobian<R>(residuals: &mut R, params: &[f64], r0: &DVector<f64>) -> DMatrix<f64>
where
    R: FnMut(&[f64]) -> DVector<f64>,
{
    let mut jac = DMatrix::zeros(r0.len(), params.len());
    let mut p = params.to_vec();
    for j in 0..params.len() {
        let h = f64::EPSILON.cbrt() * params[j].abs().max(1.0);
        p[j] = params[j] + h;
        let forward = residuals(&p);
        p[j] = params[j] - h;
        let backward = residuals(&p);
        p[j] = params[j];
        let column = (forward - backward) / (2.0 * h);
        jac.set_column(j, &column);
    }
    jac
}

fn check_rank(jac: &DMatrix<f64>) -> Result<(), NumericsError> {
    let sv = jac.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if max.is_nan() || max <= 0.0 || min <= 1e-9 * max {
        return Err(NumericsError::Rank(format!(
            "normal equations are singular (singular values {min:e} .. {max:e})"
        )));
    }
    Ok(())
}
