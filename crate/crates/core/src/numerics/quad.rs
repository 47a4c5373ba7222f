use super::{NumericsError, Tolerance};

const MAX_DEPTH: usize = 60;

/// Adaptive Simpson quadrature with Richardson correction.
///
/// The error target is `max(abs_tol, rel_tol * |S|)` where `S` is the
/// coarse Simpson estimate over the whole interval; it is split evenly
/// between halves on each refinement. `a > b` integrates backwards.
/// Recursion depth is bounded by `min(tol.max_iter, 60)`.
pub fn quadrature<F>(mut f: F, a: f64, b: f64, tol: Tolerance) -> Result<f64, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(NumericsError::InvalidInterval { start: a, end: b });
    }
    if a == b {
        return Ok(0.0);
    }
    if a > b {
        return quadrature(f, b, a, tol).map(|v| -v);
    }

    let mut eval = |x: f64| {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NumericsError::NonFinite { x })
        }
    };

    let fa = eval(a)?;
    let fb = eval(b)?;
    let m = 0.5 * (a + b);
    let fm = eval(m)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let target = tol.abs_tol.max(tol.rel_tol * whole.abs());
    let depth = tol.max_iter.min(MAX_DEPTH);

    let segment = Segment {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
    };
    refine(&mut eval, segment, target, depth)
}

#[derive(Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn refine<F>(eval: &mut F, seg: Segment, target: f64, depth: usize) -> Result<f64, NumericsError>
where
    F: FnMut(f64) -> Result<f64, NumericsError>,
{
    let Segment {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
    } = seg;
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = eval(lm)?;
    let frm = eval(rm)?;
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;

    let roundoff = 16.0 * f64::EPSILON * (left.abs() + right.abs());
    let unsplittable = lm <= a || rm >= b;
    if delta.abs() <= 15.0 * target || delta.abs() <= roundoff || unsplittable {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(NumericsError::QuadratureNoConvergence {
            a,
            b,
            estimate: left + right,
        });
    }

    let lhs = Segment {
        a,
        b: m,
        fa,
        fm: flm,
        fb: fm,
        whole: left,
    };
    let rhs = Segment {
        a: m,
        b,
        fa: fm,
        fm: frm,
        fb,
        whole: right,
    };
    Ok(refine(eval, lhs, 0.5 * target, depth - 1)? + refine(eval, rhs, 0.5 * target, depth - 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tol() -> Tolerance {
        Tolerance::new(1e-13, 0.0, 60).unwrap()
    }

    #[test]
    fn identity_on_unit_interval() {
        assert!((quadrature(|x| x, 0.0, 1.0, tol()).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn empty_interval() {
        assert_eq!(quadrature(|x| x.exp(), 0.0, 0.0, tol()).unwrap(), 0.0);
    }

    #[test]
    fn demo_energy_flow_integral() {
        let flow = |q: f64| q * q / ((1.0 - q).powi(2) + q * q) - 0.7 * q;
        let v = quadrature(flow, 0.0, 1.0, tol()).unwrap();
        assert!((v - 0.15).abs() < 1e-10, "{v}");
    }

    #[test]
    fn reversed_limits_negate() {
        let fwd = quadrature(|x| x.cos(), 0.0, 2.0, tol()).unwrap();
        let back = quadrature(|x| x.cos(), 2.0, 0.0, tol()).unwrap();
        assert_eq!(fwd, -back);
        assert!((fwd - 2.0f64.sin()).abs() < 1e-12);
    }

    #[test]
    fn non_finite_reports_abscissa() {
        let err = quadrature(|x| 1.0 / (x - 0.5), 0.0, 1.0, tol()).unwrap_err();
        match err {
            NumericsError::NonFinite { x } => assert_eq!(x, 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn cubics_are_exact(c in proptest::array::uniform4(-10.0f64..10.0), a in -5.0f64..0.0, w in 0.1f64..5.0) {
            let b = a + w;
            let p = |x: f64| c[0] + x * (c[1] + x * (c[2] + x * c[3]));
            let antideriv = |x: f64| x * (c[0] + x * (c[1] / 2.0 + x * (c[2] / 3.0 + x * c[3] / 4.0)));
            let exact = antideriv(b) - antideriv(a);
            let got = quadrature(p, a, b, tol()).unwrap();
            let scale = 1.0 + c.iter().map(|v| v.abs()).sum::<f64>() * 5f64.powi(4);
            prop_assert!((got - exact).abs() <= 1e-13 * scale, "{got} vs {exact}");
        }
    }
}
