use super::{Bracket, NumericsError, Tolerance};

/// Brent's method: inverse quadratic / secant steps guarded by bisection.
///
/// Stops when `|f(x)| <= max(abs_tol, rel_tol * |f(lo)|)` or when the
/// bracket has shrunk to a few ulps around the estimate.
pub fn find_root<F>(mut f: F, bracket: Bracket, tol: Tolerance) -> Result<f64, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    let mut eval = |x: f64| {
        let y = f(x);
        if y.is_nan() {
            Err(NumericsError::NonFinite { x })
        } else {
            Ok(y)
        }
    };

    let (mut a, mut b) = (bracket.lo(), bracket.hi());
    let mut fa = eval(a)?;
    let mut fb = eval(b)?;
    let f_tol = tol.abs_tol.max(tol.rel_tol * fa.abs());

    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(NumericsError::NoSignChange {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..tol.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        // keep b as the best estimate
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let x_tol = 2.0 * f64::EPSILON * b.abs() + f64::MIN_POSITIVE;
        let m = 0.5 * (c - b);
        if fb.abs() <= f_tol || m.abs() <= x_tol {
            return Ok(b);
        }

        if e.abs() >= x_tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (x_tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }

        a = b;
        fa = fb;
        b += if d.abs() > x_tol {
            d
        } else {
            x_tol.copysign(m)
        };
        fb = eval(b)?;
    }

    Err(NumericsError::RootNoConvergence {
        iterations: tol.max_iter,
        best: b,
        residual: fb,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tight() -> Tolerance {
        Tolerance::new(1e-15, 0.0, 200).unwrap()
    }

    #[test]
    fn sqrt_two() {
        let x = find_root(|x| x * x - 2.0, Bracket::new(1.0, 2.0).unwrap(), tight()).unwrap();
        assert!((x - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn odd_function_root_at_zero() {
        let x = find_root(|x| x, Bracket::new(-1.0, 1.0).unwrap(), tight()).unwrap();
        assert!(x.abs() < 1e-15);
    }

    #[test]
    fn energy_flow_lower_root() {
        // s = 1, C = N1 = N2 = 1, delta = 0.7, alpha = 2
        let flow = |e: f64| e * e / ((1.0 - e).powi(2) + e * e) - 0.7 * e;
        let x = find_root(flow, Bracket::new(0.1, 0.7).unwrap(), tight()).unwrap();
        let closed = (2.4 - 1.84f64.sqrt()) / 2.8;
        assert!((x - closed).abs() < 1e-12);
        assert!((x - 0.3726907).abs() < 1e-7);
    }

    #[test]
    fn no_sign_change_is_reported() {
        let err =
            find_root(|x| x * x + 1.0, Bracket::new(-1.0, 1.0).unwrap(), tight()).unwrap_err();
        assert!(matches!(err, NumericsError::NoSignChange { .. }));
    }

    #[test]
    fn iteration_budget_exhaustion_carries_estimate() {
        let tol = Tolerance::new(1e-300, 0.0, 2).unwrap();
        match find_root(|x| x.powi(3) - 0.3, Bracket::new(0.0, 5.0).unwrap(), tol) {
            Err(NumericsError::RootNoConvergence { best, .. }) => {
                assert!((0.0..=5.0).contains(&best))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn nan_is_an_error() {
        let err = find_root(
            |x| if x > 0.5 { f64::NAN } else { x - 0.75 },
            Bracket::new(0.0, 1.0).unwrap(),
            tight(),
        )
        .unwrap_err();
        assert!(matches!(err, NumericsError::NonFinite { .. }));
    }

    proptest! {
        #[test]
        fn residual_bound_holds(root in -10.0f64..10.0, scale in 0.01f64..100.0, rel in 0.0f64..1e-6) {
            let tol = Tolerance::new(1e-10, rel, 200).unwrap();
            let f = |x: f64| scale * (x - root) * (1.0 + (x - root).powi(2));
            let bracket = Bracket::new(root - 3.7, root + 11.3).unwrap();
            let x = find_root(f, bracket, tol).unwrap();
            let bound = tol.abs_tol.max(tol.rel_tol * f(bracket.lo()).abs());
            prop_assert!(f(x).abs() <= bound, "|f| = {} > {}", f(x).abs(), bound);
        }
    }
}
