//! Release acceptance checks. Each test prints one `PASS`/`FAIL` line and
//! fails when the check fails.

use std::f64::consts::PI;

use vacgas_core::montecarlo::p_in_integral_from_continuum;
use vacgas_core::pressure::{sweep, LAMOREAUX_D_MAX, LAMOREAUX_D_MIN};
use vacgas_core::summation::{
    bracket_euler_maclaurin_fn, continuum_integral_to_infinity, default_n_max, IDEAL_BRACKET,
};
use vacgas_core::*;

fn report(id: u32, name: &str, ok: bool, detail: String) {
    println!("{} criterion {id} ({name}): {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id} ({name}) failed: {detail}");
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn fd(lambda: f64, b: f64) -> DistributionSpec {
    DistributionSpec::fermi_dirac(lambda, b).unwrap()
}

fn direct(spec: &DistributionSpec) -> BracketResult {
    let integrand = ReducedIntegrand::new(*spec);
    bracket_direct(&integrand, default_n_max(spec), 1e-10).unwrap()
}

#[test]
fn criterion_1_casimir_regression() {
    let consts = make_constants();
    let spec = fd(25.0, 2.0);
    let bracket = direct(&spec);
    let geometry = PlateGeometry::with_separation(1.0e-6).unwrap();
    let p = pressure_difference(&spec, &geometry, Method::Direct, consts).unwrap();
    let ideal = ideal_casimir_pressure(1.0e-6, consts).unwrap();
    let bracket_ok = rel(bracket.value, IDEAL_BRACKET) < 1e-3;
    let pressure_ok = rel(p.pressure_difference, ideal) < 5e-3 && rel(ideal, -1.30e-3) < 5e-3;
    report(
        1,
        "casimir regression",
        bracket_ok && pressure_ok,
        format!(
            "bracket {:.10e} (target {:.10e}), P = {:.6e} Pa vs closed form {:.6e} Pa",
            bracket.value, IDEAL_BRACKET, p.pressure_difference, ideal
        ),
    );
}

#[test]
fn criterion_2_method_cross_validation() {
    let spec = fd(25.0, 2.0);
    let d = direct(&spec);
    let integrand = ReducedIntegrand::new(spec);
    let em = bracket_euler_maclaurin(&integrand, 3, &bernoulli(3).unwrap()).unwrap();
    let ratio = d.diagnostics["f_evaluations"] / em.diagnostics["f_evaluations"];
    let agree = rel(d.value, em.value) < 1e-4;
    report(
        2,
        "method cross-validation",
        agree && ratio >= 100.0,
        format!(
            "direct {:.10e}, euler-maclaurin {:.10e}, relative gap {:.3e}, evaluation ratio {:.0}",
            d.value,
            em.value,
            rel(d.value, em.value),
            ratio
        ),
    );
}

#[test]
fn criterion_3_regularization_plateau() {
    let values: Vec<f64> = [20.0, 25.0, 30.0].iter().map(|&l| direct(&fd(l, 2.0)).value).collect();
    let mut spread: f64 = 0.0;
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            spread = spread.max(rel(values[i], values[j]));
        }
    }
    report(
        3,
        "regularization plateau",
        spread < 1e-3,
        format!("brackets {values:?}, largest pairwise relative spread {spread:.3e}"),
    );
}

#[test]
fn criterion_4_temperature_numbers() {
    let consts = make_constants();
    let k_c = consts.inverse_bohr_radius();
    let paper = temperature_from_affinity(-1.0, k_c, Convention::PaperLiteral, consts).unwrap();
    let energy = temperature_from_affinity(-1.0, k_c, Convention::EnergyConsistent, consts).unwrap();
    let ok = rel(paper.omega_c, 5.666e18) < 2e-4
        && rel(paper.temperature, 1.369e33) < 1e-3
        && rel(energy.temperature, 4.327e7) < 2e-3;
    report(
        4,
        "temperature numbers",
        ok,
        format!(
            "omega_c {:.6e} 1/s, T(paper) {:.6e} K, T(energy) {:.6e} K",
            paper.omega_c, paper.temperature, energy.temperature
        ),
    );
}

#[test]
fn criterion_5_distribution_taxonomy() {
    let eps = 0.01;
    let fd_ok = fd(25.0, 2.0).check_cutoff_compliance(eps).unwrap().verdict;
    let mut failures = Vec::new();
    for lambda in [5.0, 25.0, 100.0] {
        for b in [0.5, 2.0, 10.0] {
            let be = DistributionSpec::bose_einstein(lambda, b).unwrap();
            let mb = DistributionSpec::maxwell_boltzmann(lambda, b).unwrap();
            if be.check_cutoff_compliance(eps).unwrap().verdict {
                failures.push(format!("BE({lambda},{b})"));
            }
            if mb.check_cutoff_compliance(eps).unwrap().verdict {
                failures.push(format!("MB({lambda},{b})"));
            }
        }
    }
    report(
        5,
        "distribution taxonomy",
        fd_ok && failures.is_empty(),
        format!("FD verdict {fd_ok}, unexpected passes {failures:?}"),
    );
}

#[test]
fn criterion_6_fermi_dirac_structure() {
    let b = 2.0;
    let spec = fd(25.0, b);
    let f = spec.eval_f(25.0).unwrap();
    let f2 = spec.eval_f_second_derivative(25.0).unwrap();
    report(
        6,
        "fermi-dirac structure",
        (f - 0.5).abs() <= 1e-12 && f2.abs() <= 1e-12 * b * b,
        format!("f(k_c) = {f}, f''(k_c) = {f2:e}"),
    );
}

#[test]
fn criterion_7_monte_carlo_consistency() {
    let sharp = McConfig::new(DistributionSpec::sharp_cutoff(1.0).unwrap(), 10_000_000, 2024, 8).unwrap();
    let s = estimate_p_in(&sharp).unwrap();
    let z_sharp = (s.mean - PI / 24.0) / s.standard_error;

    let spec = fd(25.0, 2.0);
    let reference =
        p_in_integral_from_continuum(continuum_integral_to_infinity(&ReducedIntegrand::new(spec), 1e-9).unwrap());
    let cfg = McConfig::new(spec, 10_000_000, 2024, 8).unwrap();
    let m = estimate_p_in(&cfg).unwrap();
    let z_fd = (m.mean - reference) / m.standard_error;
    let again = estimate_p_in(&cfg).unwrap();
    let reproducible = again.mean.to_bits() == m.mean.to_bits();

    report(
        7,
        "monte carlo consistency",
        z_sharp.abs() < 3.0 && z_fd.abs() < 3.0 && reproducible,
        format!(
            "sharp z = {z_sharp:.2}, fermi-dirac z = {z_fd:.2} ({:.6e} vs {:.6e}), bit-identical rerun {reproducible}",
            m.mean, reference
        ),
    );
}

#[test]
fn criterion_8_scaling_law() {
    let consts = make_constants();
    let spec = fd(25.0, 2.0);
    let fixed = sweep(
        &spec,
        SweepMode::FixedLambda,
        Method::EulerMaclaurin,
        &BracketSettings::default(),
        1.0e-6,
        2.0e-6,
        2,
        consts,
    )
    .unwrap();
    let ratio = fixed.points[1].pressure_difference / fixed.points[0].pressure_difference;
    let lamoreaux = lamoreaux_sweep(&spec, LAMOREAUX_D_MIN, LAMOREAUX_D_MAX, 13, consts).unwrap();
    report(
        8,
        "scaling law",
        (ratio - 1.0 / 16.0).abs() < 1e-10 && lamoreaux.all_within_tolerance,
        format!(
            "P(2d)/P(d) = {ratio:.15}, sweep max |deviation| {:.3e} over {} points",
            lamoreaux.max_abs_deviation,
            lamoreaux.points.len()
        ),
    );
}

#[test]
fn criterion_9_bernoulli_and_expansion() {
    use num::BigRational;
    let table = bernoulli(3).unwrap();
    let want = [(1, 6), (1, 30), (1, 42)];
    let exact = want
        .iter()
        .enumerate()
        .all(|(i, &(n, d))| table.get(i + 1) == Some(&BigRational::new(n.into(), d.into())));
    let synthetic = bracket_euler_maclaurin_fn(|u| Ok(-2.0 * u * u * u), 3, &table).unwrap();
    report(
        9,
        "bernoulli and expansion",
        exact && (synthetic.value - IDEAL_BRACKET).abs() < 1e-12,
        format!("table exact {exact}, synthetic bracket {:.16e}", synthetic.value),
    );
}
