use solow_energy::calibration::{bundled_cobb_douglas, derive_cd_exponents, fit_exponential};
use solow_energy::dynamics::{calibrate_t0, eroi, implicit_relation, simulate, steady_states};
use solow_energy::invariants::{constant_returns_exponents, solve_logistic};
use solow_energy::production::{cobb_douglas, generalized_two_input};
use solow_energy::{
    CarryingCapacities, CobbDouglasParams, EnergyParams, GeneralizedTwoInputParams, GrowthRates,
    InitialLevels, Tolerance,
};

#[test]
fn generalized_function_through_initial_point_tracks_logistic_output() {
    let rates = GrowthRates::new(0.08, 0.02, 0.04).unwrap();
    let init = InitialLevels::new(50.0, 80.0, 60.0).unwrap();
    let caps = CarryingCapacities::new(400.0, 300.0, 500.0).unwrap();
    let cr = constant_returns_exponents(&rates).unwrap();
    // alpha sits on labor in the generalized form, so the labor exponent goes first.
    let params = GeneralizedTwoInputParams::through_point(
        caps.ny, caps.nk, caps.nl, cr.beta, cr.alpha, init.k0, init.l0, init.y0,
    )
    .unwrap();
    for t in [0.0, 5.0, 20.0, 60.0] {
        let (k, l, y) = solve_logistic(&rates, &init, &caps, t).unwrap();
        let model = generalized_two_input(k, l, &params).unwrap();
        assert!(((model - y) / y).abs() < 1e-10, "t = {t}: {model} vs {y}");
    }
}

#[test]
fn generalized_function_approaches_cobb_douglas_for_huge_capacities() {
    let cd = CobbDouglasParams::classic_1928();
    let big: f64 = 1e6 * 200.0;
    // C chosen so that NY / (C NL^alpha NK^beta) = A.
    let c = big / (cd.a * big.powf(cd.beta) * big.powf(cd.alpha));
    let params = GeneralizedTwoInputParams::new(big, big, big, c, cd.beta, cd.alpha).unwrap();
    let (k, l) = (150.0, 120.0);
    let target = cobb_douglas(k, l, &cd).unwrap();
    let value = generalized_two_input(k, l, &params).unwrap();
    assert!(
        ((value - target) / target).abs() < 1e-3,
        "{value} vs {target}"
    );
}

#[test]
fn bundled_data_supports_constant_returns() {
    let fits: Vec<_> = ["K", "L", "Y"]
        .iter()
        .map(|c| fit_exponential(&bundled_cobb_douglas(c).unwrap()).unwrap())
        .collect();
    let derived = derive_cd_exponents(&fits[0], &fits[1], &fits[2]).unwrap();
    assert!(derived.constant_returns_admissible);
    assert!((derived.exponents.alpha + derived.exponents.beta - 1.0).abs() < 1e-14);
}

#[test]
fn simulated_trajectory_satisfies_implicit_relation_and_settles_at_unit_eroi() {
    let demo = EnergyParams::demo();
    let tol = Tolerance::new(1e-12, 1e-12, 1_000_000).unwrap();
    let tr = simulate(1.5, 40.0, &demo, tol).unwrap();
    let t0 = calibrate_t0(1.5).unwrap();
    // LHS diverges at E2, so late samples only measure the conditioning.
    for p in tr.samples().iter().filter(|p| p.t <= 10.0) {
        let residual = implicit_relation(p.energy, p.t, t0).unwrap();
        assert!(residual.abs() < 1e-5, "t = {}: {residual}", p.t);
    }
    let e2 = steady_states(&demo).unwrap().nontrivial()[1].energy;
    assert!((tr.terminal().energy - e2).abs() < 1e-6);
    assert!((eroi(tr.terminal().energy, &demo).unwrap() - 1.0).abs() < 1e-6);
}
