//! Time-series ingestion and growth-system calibration.
//!
//! CSV input has a header row whose first column is `t`; every further
//! column is a named series of positive values.

use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::invariants::{constant_returns_exponents, CdExponents, GrowthRates};
use crate::numerics::{least_squares, NumericsError, Tolerance};

/// The 1899-1922 capital/labor/production indices, embedded at build time.
pub const COBB_DOUGLAS_1899_1922: &str = include_str!("../data/cobb_douglas_1899_1922.csv");

const MIN_FIT_POINTS: usize = 3;
const UNIDENTIFIED_CAPACITY_FACTOR: f64 = 100.0;

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    label: String,
    points: Vec<(f64, f64)>,
}

impl TimeSeries {
    /// Requires strictly increasing finite times and finite positive values.
    pub fn new(label: impl Into<String>, points: Vec<(f64, f64)>) -> Result<Self> {
        for (i, &(t, v)) in points.iter().enumerate() {
            if !t.is_finite() {
                return Err(Error::Domain {
                    name: "t",
                    value: t,
                    reason: "times must be finite",
                });
            }
            if i > 0 && t <= points[i - 1].0 {
                return Err(Error::Domain {
                    name: "t",
                    value: t,
                    reason: "times must be strictly increasing",
                });
            }
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Domain {
                    name: "value",
                    value: v,
                    reason: "series values must be finite and > 0",
                });
            }
        }
        Ok(Self {
            label: label.into(),
            points,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn max_value(&self) -> f64 {
        self.points
            .iter()
            .map(|p| p.1)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FitMethod {
    /// Ordinary least squares on `(t, ln value)`.
    LogLinear,
    /// Levenberg-Marquardt on the logistic closed form.
    Nonlinear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub rate: f64,
    pub initial_level: f64,
    /// Logistic fits only. Infinite when the exponential limit fits best.
    pub capacity: Option<f64>,
    /// Euclidean norm of the residuals in log space.
    pub residual_norm: f64,
    pub method: FitMethod,
    /// Capacity exceeds 100x the largest observation, so the data do not
    /// pin it down.
    pub capacity_unidentified: bool,
}

impl FitResult {
    pub fn ln_initial_level(&self) -> f64 {
        self.initial_level.ln()
    }

    /// Fitted curve at time `t`.
    pub fn predict(&self, t: f64) -> f64 {
        match self.capacity {
            Some(n) if n.is_finite() => logistic_value(self.rate, n, self.initial_level, t),
            _ => self.initial_level * (self.rate * t).exp(),
        }
    }
}

/// Reads column `column` of a CSV file.
pub fn load_timeseries(path: impl AsRef<Path>, column: &str) -> Result<TimeSeries> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_timeseries(file, path, column)
}

/// One column of the embedded 1899-1922 dataset (`K`, `L` or `Y`).
pub fn bundled_cobb_douglas(column: &str) -> Result<TimeSeries> {
    read_timeseries(
        COBB_DOUGLAS_1899_1922.as_bytes(),
        Path::new("<bundled cobb_douglas_1899_1922.csv>"),
        column,
    )
}

/// Parses CSV from any reader; `source` only labels errors.
pub fn read_timeseries<R: Read>(reader: R, source: &Path, column: &str) -> Result<TimeSeries> {
    let path = source.to_path_buf();
    let parse_err = |line: u64, message: String| Error::Parse {
        path: path.clone(),
        line,
        message,
    };

    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr
        .headers()
        .map_err(|e| parse_err(csv_line(&e).unwrap_or(1), e.to_string()))?
        .clone();
    match headers.get(0) {
        Some("t") => {}
        other => {
            return Err(parse_err(
                1,
                format!("first header must be `t`, found {:?}", other.unwrap_or("")),
            ))
        }
    }
    let index = headers
        .iter()
        .skip(1)
        .position(|h| h == column)
        .map(|i| i + 1)
        .ok_or_else(|| Error::MissingColumn {
            path: path.clone(),
            column: column.to_string(),
        })?;

    let mut points = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| parse_err(csv_line(&e).unwrap_or(0), e.to_string()))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize, name: &str| -> Result<f64> {
            let raw = record.get(i).unwrap_or("");
            raw.parse::<f64>()
                .map_err(|_| parse_err(line, format!("`{name}` value {raw:?} is not a number")))
        };
        let t = field(0, "t")?;
        let v = field(index, column)?;
        if !t.is_finite() {
            return Err(parse_err(line, format!("non-finite time {t}")));
        }
        if let Some(&(prev, _)) = points.last() {
            if t <= prev {
                return Err(parse_err(
                    line,
                    format!("time {t} does not increase (previous {prev})"),
                ));
            }
        }
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::DataDomain {
                path: path.clone(),
                line,
                column: column.to_string(),
                value: v,
            });
        }
        points.push((t, v));
    }
    TimeSeries::new(column, points)
}

fn csv_line(err: &csv::Error) -> Option<u64> {
    err.position().map(|p| p.line())
}

fn require_points(series: &TimeSeries) -> Result<()> {
    if series.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientData {
            needed: MIN_FIT_POINTS,
            got: series.len(),
        });
    }
    Ok(())
}

/// OLS of `ln value` on `t`: slope is the growth rate, intercept `ln X0`.
pub fn fit_exponential(series: &TimeSeries) -> Result<FitResult> {
    require_points(series)?;
    let n = series.len() as f64;
    let pts: Vec<(f64, f64)> = series.points().iter().map(|&(t, v)| (t, v.ln())).collect();
    let t_mean = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let y_mean = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - t_mean).powi(2)).sum();
    if sxx.is_nan() || sxx <= 0.0 {
        return Err(NumericsError::Rank("all observation times are equal".into()).into());
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - t_mean) * (p.1 - y_mean)).sum();
    let rate = sxy / sxx;
    let intercept = y_mean - rate * t_mean;
    let residual_norm = pts
        .iter()
        .map(|&(t, y)| (intercept + rate * t - y).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(FitResult {
        rate,
        initial_level: intercept.exp(),
        capacity: None,
        residual_norm,
        method: FitMethod::LogLinear,
        capacity_unidentified: false,
    })
}

fn logistic_value(rate: f64, cap: f64, x0: f64, t: f64) -> f64 {
    cap * x0 / (x0 + (cap - x0) * (-rate * t).exp())
}

/// `ln` of the logistic curve, parameterised as `(b, ln N, ln X0)`.
fn log_logistic(theta: &[f64], t: f64) -> f64 {
    let (b, ln_cap, ln_x0) = (theta[0], theta[1], theta[2]);
    let decay = (-b * t).exp();
    ln_cap - ((ln_cap - ln_x0).exp() * decay + (1.0 - decay)).ln()
}

/// Nonlinear least squares of the logistic closed form in log space.
///
/// Without a guess, starts from the exponential fit with capacities of 2,
/// 10 and 1000 times the largest observation and keeps the best. When no
/// finite capacity beats the exponential fit, the exponential limit
/// (`capacity = inf`) is returned.
pub fn fit_logistic(series: &TimeSeries, init_guess: Option<&FitResult>) -> Result<FitResult> {
    require_points(series)?;
    let v_max = series.max_value();
    let exponential = fit_exponential(series)?;
    let data: Vec<(f64, f64)> = series.points().iter().map(|&(t, v)| (t, v.ln())).collect();

    let mut starts: Vec<[f64; 3]> = Vec::new();
    let start = |rate: f64, level: f64, cap: f64| [rate, cap.ln(), level.ln()];
    if let Some(guess) = init_guess {
        let cap = guess
            .capacity
            .filter(|c| c.is_finite() && *c > v_max)
            .unwrap_or(2.0 * v_max);
        starts.push(start(guess.rate, guess.initial_level, cap));
    }
    for factor in [2.0, 10.0, 1000.0] {
        starts.push(start(
            exponential.rate,
            exponential.initial_level,
            factor * v_max,
        ));
    }

    let tol = Tolerance::new(1e-14, 1e-15, 500)?;
    let mut best: Option<(Vec<f64>, f64)> = None;
    let mut first_err: Option<NumericsError> = None;
    for init in &starts {
        match least_squares(log_logistic, &data, init, tol) {
            Ok(fit) => {
                if best.as_ref().is_none_or(|(_, r)| fit.residual_norm < *r) {
                    best = Some((fit.params, fit.residual_norm));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }

    let Some((theta, residual_norm)) = best else {
        return Err(first_err.expect("at least one start").into());
    };

    if residual_norm > exponential.residual_norm {
        return Ok(FitResult {
            capacity: Some(f64::INFINITY),
            method: FitMethod::Nonlinear,
            capacity_unidentified: true,
            ..exponential
        });
    }

    let capacity = theta[1].exp();
    Ok(FitResult {
        rate: theta[0],
        initial_level: theta[2].exp(),
        capacity: Some(capacity),
        residual_norm,
        method: FitMethod::Nonlinear,
        capacity_unidentified: capacity > UNIDENTIFIED_CAPACITY_FACTOR * v_max,
    })
}

/// Constant-returns exponents induced by fitted capital, labor and
/// production growth rates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedExponents {
    pub rates: GrowthRates,
    pub exponents: CdExponents,
    /// `b2 < b3 < b1`, i.e. both exponents lie in (0, 1).
    pub constant_returns_admissible: bool,
}

pub fn derive_cd_exponents(
    capital: &FitResult,
    labor: &FitResult,
    production: &FitResult,
) -> Result<DerivedExponents> {
    let rates = GrowthRates::new(capital.rate, labor.rate, production.rate)?;
    let exponents = constant_returns_exponents(&rates)?;
    Ok(DerivedExponents {
        rates,
        exponents,
        constant_returns_admissible: rates.admits_constant_returns(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;

    fn series_from(f: impl Fn(f64) -> f64, n: usize, dt: f64) -> TimeSeries {
        TimeSeries::new(
            "x",
            (0..n).map(|i| (i as f64 * dt, f(i as f64 * dt))).collect(),
        )
        .unwrap()
    }

    fn read(text: &str, column: &str) -> Result<TimeSeries> {
        read_timeseries(text.as_bytes(), Path::new("test.csv"), column)
    }

    #[test]
    fn reads_well_formed_csv() {
        let s = read("t,K,L\n0,1,2\n1,2,3\n2,4,5\n", "L").unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.points()[2], (2.0, 5.0));
        assert_eq!(s.label(), "L");
    }

    #[test]
    fn zero_value_is_domain_error() {
        match read("t,K\n0,1\n1,0\n", "K") {
            Err(Error::DataDomain { line, value, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(value, 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_row_reports_line() {
        match read("t,K\n0,1\n1,abc\n2,3\n", "K") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        match read("t,K\n0,1\n1\n", "K") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn header_and_column_checks() {
        assert!(matches!(
            read("year,K\n0,1\n", "K"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read("t,K\n0,1\n", "Q"),
            Err(Error::MissingColumn { .. })
        ));
        assert!(matches!(
            read("t,K\n1,1\n0,2\n", "K"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn bundled_dataset_spans_24_years() {
        for col in ["K", "L", "Y"] {
            assert_eq!(bundled_cobb_douglas(col).unwrap().len(), 24);
        }
    }

    #[test]
    fn exponential_roundtrip() {
        let s = series_from(|t| 100.0 * (0.05 * t).exp(), 30, 1.0);
        let fit = fit_exponential(&s).unwrap();
        assert!((fit.rate - 0.05).abs() < 1e-12);
        assert!((fit.initial_level - 100.0).abs() < 1e-12 * 100.0);
        assert!(fit.residual_norm < 1e-12);
        assert_eq!(fit.method, FitMethod::LogLinear);
    }

    #[test]
    fn constant_series_has_zero_rate() {
        let fit = fit_exponential(&series_from(|_| 7.0, 5, 1.0)).unwrap();
        assert!(fit.rate.abs() < 1e-15);
    }

    #[test]
    fn logistic_roundtrip() {
        let s = series_from(|t| logistic_value(0.5, 10.0, 1.0, t), 41, 0.5);
        let fit = fit_logistic(&s, None).unwrap();
        assert!((fit.rate - 0.5).abs() < 1e-6 * 0.5);
        assert!((fit.capacity.unwrap() - 10.0).abs() < 1e-6 * 10.0);
        assert!((fit.initial_level - 1.0).abs() < 1e-6);
        assert!(!fit.capacity_unidentified);
        assert!((fit.predict(3.0) - logistic_value(0.5, 10.0, 1.0, 3.0)).abs() < 1e-6);
    }

    #[test]
    fn far_from_capacity_is_flagged() {
        // logistic with a capacity 1e6 x the data: indistinguishable from exponential
        let s = series_from(|t| logistic_value(0.05, 1e8, 100.0, t), 24, 1.0);
        let fit = fit_logistic(&s, None).unwrap();
        assert!(fit.capacity_unidentified);
        assert!(fit.capacity.unwrap() > 100.0 * s.max_value());
    }

    #[test]
    fn too_few_points() {
        let s = TimeSeries::new("x", vec![(0.0, 1.0), (1.0, 2.0)]).unwrap();
        assert!(matches!(
            fit_logistic(&s, None),
            Err(Error::InsufficientData { needed: 3, got: 2 })
        ));
        assert!(matches!(
            fit_exponential(&s),
            Err(Error::InsufficientData { .. })
        ));
    }

    #[test]
    fn derived_exponents() {
        let fit = |rate| FitResult {
            rate,
            initial_level: 1.0,
            capacity: None,
            residual_norm: 0.0,
            method: FitMethod::LogLinear,
            capacity_unidentified: false,
        };
        let d = derive_cd_exponents(&fit(3.0), &fit(1.0), &fit(2.0)).unwrap();
        assert_eq!((d.exponents.alpha, d.exponents.beta), (0.5, 0.5));
        assert!(d.constant_returns_admissible);

        let reference =
            derive_cd_exponents(&fit(0.06472564), &fit(0.02549605), &fit(0.03592651)).unwrap();
        assert!((reference.exponents.alpha - 0.2658824627).abs() < 1e-9);
        assert!((reference.exponents.beta - 0.7341175376).abs() < 1e-9);

        let bad = derive_cd_exponents(&fit(1.0), &fit(2.0), &fit(3.0)).unwrap();
        assert!(!bad.constant_returns_admissible);
        assert!(derive_cd_exponents(&fit(1.0), &fit(1.0), &fit(3.0)).is_err());
    }
}
