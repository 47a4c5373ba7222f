//! The six analyses. Each reads its inputs from a [`Config`], writes CSV
//! (and where useful SVG) files into the output directory and prints a
//! short summary on stdout.

use std::fs;
use std::path::Path;

use solow_energy::calibration::{
    bundled_cobb_douglas, derive_cd_exponents, fit_exponential, fit_logistic, load_timeseries,
};
use solow_energy::dynamics::{
    eroi, eroi_above, eroi_above_general, existence_condition, neg_closed_form, neg_general,
    net_flow, simulate, steady_states, OpenInterval, ScanOptions,
};
use solow_energy::invariants::{
    constant_returns_exponents, exponential_invariant, family_beta, logistic_invariant,
    solve_exponential, solve_logistic,
};
use solow_energy::numerics::OdeSolution;
use solow_energy::{
    CarryingCapacities, CdExponents, Error, ExponentVector, FitResult, GrowthRates, InitialLevels,
    NumericsError, Tolerance, Trajectory,
};

use crate::config::{linspace, Config};
use crate::error::{CliError, CliResult};
use crate::plot::Figure;

fn num(x: f64) -> String {
    format!("{x}")
}

fn writer(out: &Path, name: &str) -> CliResult<csv::Writer<fs::File>> {
    let path = out.join(name);
    let file = fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    Ok(csv::Writer::from_writer(file))
}

fn write_svg(out: &Path, name: &str, figure: &Figure) -> CliResult<()> {
    let path = out.join(name);
    fs::write(&path, figure.render()).map_err(|e| CliError::io(&path, e))
}

fn flush(mut w: csv::Writer<fs::File>) -> CliResult<()> {
    w.flush()
        .map_err(|e| CliError::usage(format!("writing CSV: {e}")))
}

pub fn steady(cfg: &Config, out: &Path) -> CliResult<()> {
    let params = cfg.energy_params()?;
    let report = steady_states(&params)?;
    let quadratic = params.alpha() == 2.0;

    let mut w = writer(out, "steady.csv")?;
    w.write_record(["root", "stability", "slope", "eroi"])?;
    println!(
        "{:>14}  {:<11}  {:>12}  {:>10}",
        "E", "stability", "dF/dE", "EROI"
    );
    for root in &report.roots {
        let ratio = if root.energy > 0.0 {
            Some(eroi(root.energy, &params)?)
        } else {
            None
        };
        w.write_record([
            num(root.energy),
            root.stability.to_string(),
            num(root.slope),
            ratio.map(num).unwrap_or_default(),
        ])?;
        println!(
            "{:>14.10}  {:<11}  {:>12.6}  {:>10}",
            root.energy,
            root.stability,
            root.slope,
            ratio
                .map(|r| format!("{r:.6}"))
                .unwrap_or_else(|| "-".into())
        );
    }
    flush(w)?;
    if report.nontrivial().is_empty() {
        println!("no nontrivial steady states");
    }

    let mut diag = writer(out, "steady_diagnostics.csv")?;
    diag.write_record(["key", "value"])?;
    let method = if quadratic {
        "closed form"
    } else {
        "numeric scan"
    };
    let mut rows = vec![
        ("method", method.to_string()),
        ("exists_nontrivial", report.exists_nontrivial.to_string()),
        ("tangency", report.tangency.to_string()),
    ];
    if quadratic {
        rows.push((
            "existence_condition",
            existence_condition(&params)?.to_string(),
        ));
    }
    if let Some(d) = report.discriminant {
        rows.push(("discriminant", num(d)));
    }
    for (key, value) in &rows {
        diag.write_record([key, value.as_str()])?;
        println!("{key}: {value}");
    }
    flush(diag)
}

enum Curve {
    Complete(Trajectory),
    Partial(OdeSolution),
}

impl Curve {
    fn value_at(&self, t: f64) -> Option<f64> {
        match self {
            Curve::Complete(tr) => tr.energy_at(t),
            Curve::Partial(sol) => sol.interpolate(t),
        }
    }
}

pub fn simulate_cmd(cfg: &Config, out: &Path) -> CliResult<()> {
    let params = cfg.energy_params()?;
    let starts = cfg
        .numbers("E0")?
        .ok_or_else(|| CliError::usage("`E0` (list of initial energies) is required"))?;
    if starts.is_empty() {
        return Err(CliError::usage(
            "`E0` must list at least one initial energy",
        ));
    }
    let t_end = cfg.number_or("t_end", 20.0)?;
    let tol = cfg.number_or("tolerance", 1e-10)?;
    let max_steps = cfg.count_or("max_steps", 1_000_000)?;
    let control =
        Tolerance::new(tol, tol, max_steps).map_err(|e| CliError::usage(e.to_string()))?;
    let report = steady_states(&params)?;

    let results: Vec<_> = std::thread::scope(|scope| {
        let params = &params;
        let handles: Vec<_> = starts
            .iter()
            .map(|&e0| scope.spawn(move || simulate(e0, t_end, params, control)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("simulation thread panicked"))
            .collect()
    });

    let mut curves = Vec::new();
    let mut failures = Vec::new();
    for (&e0, result) in starts.iter().zip(results) {
        match result {
            Ok(tr) => {
                println!(
                    "E0 = {e0}: {} regime, E({t_end}) = {:.10}",
                    tr.regime(),
                    tr.terminal().energy
                );
                curves.push(Curve::Complete(tr));
            }
            Err(Error::Numerics(err)) => {
                let msg = format!("E0 = {e0}: {err}");
                eprintln!("warning: {msg}; writing the partial trajectory");
                failures.push(msg);
                match err {
                    NumericsError::StepUnderflow { partial, .. }
                    | NumericsError::OdeNonFinite { partial, .. }
                    | NumericsError::TooManySteps { partial, .. } => {
                        curves.push(Curve::Partial(*partial))
                    }
                    _ => curves.push(Curve::Partial(OdeSolution::default())),
                }
            }
            Err(other) => return Err(other.into()),
        }
    }

    let grid = linspace(0.0, t_end, cfg.count_or("grid_points", 201)?);
    let mut w = writer(out, "trajectories.csv")?;
    let mut header = vec!["t".to_string()];
    header.extend(starts.iter().map(|e0| format!("E0={e0}")));
    w.write_record(&header)?;
    for &t in &grid {
        let mut row = vec![num(t)];
        row.extend(
            curves
                .iter()
                .map(|c| c.value_at(t).map(num).unwrap_or_default()),
        );
        w.write_record(&row)?;
    }
    flush(w)?;

    let mut figure = Figure::new("Energy trajectories", "t", "E");
    for (e0, curve) in starts.iter().zip(&curves) {
        let points = grid
            .iter()
            .map(|&t| (t, curve.value_at(t).unwrap_or(f64::NAN)))
            .collect();
        figure = figure.series(format!("E0 = {e0}"), points);
    }
    for root in &report.roots {
        figure = figure.hline(
            root.energy,
            format!("{:.4} {}", root.energy, root.stability),
        );
    }
    write_svg(out, "trajectories.svg", &figure)?;

    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "integration failed: {}",
            failures.join("; ")
        )))
    }
}

pub fn energy_report(cfg: &Config, out: &Path) -> CliResult<()> {
    let params = cfg.energy_params()?;
    let grid = cfg.grid(0.0, 1.6, 161)?;
    let closed = params.alpha() == 2.0 && params.production().c == 1.0;
    if !closed {
        eprintln!(
            "notice: closed-form NEG needs alpha = 2 and C = 1; integrating the net flow instead"
        );
    }

    let mut rows = Vec::with_capacity(grid.len());
    for &e in &grid {
        net_flow(e, &params)?;
        let gain = params.s() * params.production().value(e);
        let loss = params.delta() * e;
        let neg = if closed {
            neg_closed_form(e, &params)?
        } else {
            neg_general(0.0, e, &params)?
        };
        rows.push([e, gain, loss, neg]);
    }

    let mut w = writer(out, "energy_report.csv")?;
    w.write_record(["E", "sX", "deltaE", "NEG"])?;
    for row in &rows {
        w.write_record(row.map(num))?;
    }
    flush(w)?;

    let column = |i: usize| rows.iter().map(|r| (r[0], r[i])).collect::<Vec<_>>();
    let figure = Figure::new("Energy growth, depreciation and net gain", "E", "energy")
        .series("sX(E)", column(1))
        .series("δE", column(2))
        .series("NEG(E)", column(3));
    write_svg(out, "energy_report.svg", &figure)?;

    if let Some(best) = rows.iter().max_by(|a, b| a[3].total_cmp(&b[3])) {
        println!("max NEG = {:.10} at E = {}", best[3], best[0]);
    }
    println!(
        "{} rows written ({})",
        rows.len(),
        if closed { "closed form" } else { "quadrature" }
    );
    Ok(())
}

pub fn eroi_cmd(cfg: &Config, out: &Path) -> CliResult<()> {
    let params = cfg.energy_params()?;
    let r = cfg.number_or("r", 1.0)?;
    if !(r.is_finite() && r > 0.0) {
        return Err(CliError::usage(format!(
            "`r` must be finite and > 0, got {r}"
        )));
    }
    let intervals: Vec<OpenInterval> = if params.alpha() == 2.0 {
        eroi_above(r, &params)?.into_iter().collect()
    } else {
        eroi_above_general(r, &params, &ScanOptions::default())?
    };

    let mut w = writer(out, "eroi.csv")?;
    w.write_record(["E", "EROI"])?;
    for e in cfg.grid(0.0, 1.6, 161)?.into_iter().filter(|&e| e > 0.0) {
        w.write_record([num(e), num(eroi(e, &params)?)])?;
    }
    flush(w)?;

    let mut w = writer(out, "eroi_interval.csv")?;
    w.write_record(["lo", "hi"])?;
    for iv in &intervals {
        w.write_record([num(iv.lo), num(iv.hi)])?;
    }
    flush(w)?;

    if intervals.is_empty() {
        println!("EROI > {r}: empty");
    }
    for iv in &intervals {
        println!("EROI > {r} on ({:.10}, {:.10})", iv.lo, iv.hi);
    }
    Ok(())
}

pub fn fit(cfg: &Config, out: &Path) -> CliResult<()> {
    let path = cfg.path("data_path")?;
    let load = |column: &str| match &path {
        Some(p) => load_timeseries(p, column),
        None => bundled_cobb_douglas(column),
    };
    match &path {
        Some(p) => println!("data: {}", p.display()),
        None => println!("data: bundled 1899-1922 Cobb-Douglas indices"),
    }

    let mut w = writer(out, "fit.csv")?;
    w.write_record([
        "column",
        "model",
        "rate",
        "initial_level",
        "ln_initial_level",
        "capacity",
        "residual_norm",
        "capacity_unidentified",
    ])?;
    let mut record = |column: &str, model: &str, f: &FitResult| {
        w.write_record([
            column.to_string(),
            model.to_string(),
            num(f.rate),
            num(f.initial_level),
            num(f.ln_initial_level()),
            f.capacity.map(num).unwrap_or_default(),
            num(f.residual_norm),
            f.capacity_unidentified.to_string(),
        ])
    };

    let mut exponential = Vec::new();
    for column in ["K", "L", "Y"] {
        let series = load(column)?;
        let exp = fit_exponential(&series)?;
        let log = fit_logistic(&series, None)?;
        println!(
            "{column}: exponential b = {:.8}, ln X0 = {:.8}, residual {:.3e}",
            exp.rate,
            exp.ln_initial_level(),
            exp.residual_norm
        );
        let cap = match log.capacity {
            Some(n) if log.capacity_unidentified => format!("{n:.4e} (unidentified)"),
            Some(n) => format!("{n:.6}"),
            None => "-".into(),
        };
        println!(
            "{column}: logistic    b = {:.8}, X0 = {:.6}, N = {cap}, residual {:.3e}",
            log.rate, log.initial_level, log.residual_norm
        );
        record(column, "exponential", &exp)?;
        record(column, "logistic", &log)?;
        exponential.push(exp);
    }
    flush(w)?;

    let derived = derive_cd_exponents(&exponential[0], &exponential[1], &exponential[2])?;
    let mut w = writer(out, "fit_exponents.csv")?;
    w.write_record(["alpha", "beta", "constant_returns_admissible"])?;
    w.write_record([
        num(derived.exponents.alpha),
        num(derived.exponents.beta),
        derived.constant_returns_admissible.to_string(),
    ])?;
    flush(w)?;
    println!(
        "alpha = {:.10}, beta = {:.10}",
        derived.exponents.alpha, derived.exponents.beta
    );
    println!(
        "ordering b2 < b3 < b1: {}",
        if derived.constant_returns_admissible {
            "holds"
        } else {
            "violated"
        }
    );
    Ok(())
}

fn exponent_vector(cfg: &Config, rates: &GrowthRates) -> CliResult<ExponentVector> {
    let given: Vec<Option<f64>> = ["a1", "a2", "a3"]
        .iter()
        .map(|k| cfg.number(k))
        .collect::<CliResult<_>>()?;
    let vector = match given.as_slice() {
        [Some(a1), Some(a2), Some(a3)] => ExponentVector::new(*a1, *a2, *a3),
        [None, None, None] => {
            let exponents = match cfg.number("alpha")? {
                Some(alpha) => CdExponents {
                    alpha,
                    beta: family_beta(alpha, rates)?,
                },
                None => constant_returns_exponents(rates)?,
            };
            ExponentVector::from_cd(exponents, 1.0)
        }
        _ => return Err(CliError::usage("give all of a1, a2, a3 or none of them")),
    };
    Ok(vector?)
}

pub fn invariant_check(cfg: &Config, out: &Path) -> CliResult<()> {
    let d = GrowthRates::cobb_douglas_1928();
    let rates = GrowthRates::new(
        cfg.number_or("b1", d.b1)?,
        cfg.number_or("b2", d.b2)?,
        cfg.number_or("b3", d.b3)?,
    )?;
    let d = InitialLevels::cobb_douglas_1928();
    let init = InitialLevels::new(
        cfg.number_or("K0", d.k0)?,
        cfg.number_or("L0", d.l0)?,
        cfg.number_or("Y0", d.y0)?,
    )?;
    let caps = match ["NK", "NL", "NY"].map(|k| cfg.has(k)) {
        [false, false, false] => None,
        [true, true, true] => {
            let caps = CarryingCapacities::new(
                cfg.number_or("NK", 0.0)?,
                cfg.number_or("NL", 0.0)?,
                cfg.number_or("NY", 0.0)?,
            )?;
            caps.admits(&init)?;
            Some(caps)
        }
        _ => return Err(CliError::usage("give all of NK, NL, NY or none of them")),
    };
    let a = exponent_vector(cfg, &rates)?;
    let tolerance = cfg.number_or("tolerance", if caps.is_some() { 1e-8 } else { 1e-9 })?;
    let t_end = cfg.number_or("t_end", 50.0)?;
    if !(t_end.is_finite() && t_end > 0.0) {
        return Err(CliError::usage(format!(
            "`t_end` must be finite and > 0, got {t_end}"
        )));
    }

    let mut w = writer(out, "invariant.csv")?;
    w.write_record(["t", "K", "L", "Y", "invariant"])?;
    let mut first = None;
    let mut drift: f64 = 0.0;
    for t in linspace(0.0, t_end, cfg.count_or("grid_points", 101)?) {
        let ((k, l, y), value) = match &caps {
            None => {
                let kly = solve_exponential(&rates, &init, t);
                (kly, exponential_invariant(kly.0, kly.1, kly.2, &a)?)
            }
            Some(caps) => {
                let kly = solve_logistic(&rates, &init, caps, t)?;
                (kly, logistic_invariant(kly.0, kly.1, kly.2, &a, caps)?)
            }
        };
        let base = *first.get_or_insert(value);
        drift = drift.max(((value - base) / base).abs());
        w.write_record([t, k, l, y, value].map(num))?;
    }
    flush(w)?;

    let pass = drift < tolerance;
    println!(
        "model: {}",
        if caps.is_some() {
            "logistic"
        } else {
            "exponential"
        }
    );
    println!(
        "a = ({}, {}, {}), a.b = {:e}",
        a.a1,
        a.a2,
        a.a3,
        a.dot(&rates)
    );
    println!("max relative drift = {drift:e} (tolerance {tolerance:e})");
    println!("result: {}", if pass { "PASS" } else { "FAIL" });
    Ok(())
}
