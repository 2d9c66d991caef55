// reference values keep every digit of their high-precision source
#![allow(clippy::excessive_precision)]

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use vacgas_core::quadrature::Integrator;
use vacgas_core::summation::{default_n_max, plateau_scan, IDEAL_BRACKET};
use vacgas_core::*;

/// Akiyama-Tanigawa algorithm, independent of the library's recurrence.
fn akiyama_tanigawa(n: usize) -> Vec<BigRational> {
    let mut a = vec![BigRational::zero(); n + 1];
    let mut out = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a[m] = BigRational::new(BigInt::one(), BigInt::from(m + 1));
        for j in (1..=m).rev() {
            a[j - 1] = (&a[j - 1] - &a[j]) * BigInt::from(j);
        }
        out.push(a[0].clone());
    }
    out
}

#[test]
fn bernoulli_matches_independent_oracle() {
    let table = bernoulli(20).unwrap();
    let oracle = akiyama_tanigawa(40);
    for r in 1..=20 {
        let want = oracle[2 * r].abs();
        assert_eq!(table.get(r).unwrap(), &want, "B_{}", 2 * r);
        let as_float = want.to_f64().unwrap();
        let got = table.value(r).unwrap();
        assert!((got - as_float).abs() <= f64::EPSILON * as_float.abs() / 2.0, "r={r}");
    }
}

#[test]
fn bernoulli_domain() {
    assert!(bernoulli(0).is_err());
    assert!(bernoulli(21).is_err());
}

#[test]
fn quadrature_self_test() {
    let r = Integrator::new(0.0, 1e-13)
        .integrate_to_infinity(|u| Ok(u * u * (-u).exp()), 0.0)
        .unwrap();
    assert!((r.value - 2.0).abs() < 2e-12, "{}", r.value);
}

fn direct(spec: &DistributionSpec) -> BracketResult {
    bracket_direct(&ReducedIntegrand::new(*spec), default_n_max(spec), 1e-10).unwrap()
}

fn em(spec: &DistributionSpec, order: usize) -> BracketResult {
    bracket_euler_maclaurin(&ReducedIntegrand::new(*spec), order, &bernoulli(order).unwrap()).unwrap()
}

#[test]
fn direct_matches_high_precision_references() {
    // 40-digit references
    let cases = [
        (25.0, 2.0, -0.081_010_106_862_771_482_61),
        (20.0, 2.0, -0.057_734_071_048_232_496_361),
        (30.0, 2.0, -0.109_458_595_080_541_354_63),
        (25.0, 1.0, -0.016_673_238_027_023_950_897),
        (20.0, 1.0, -0.016_670_830_236_279_445_788),
        (30.0, 1.0, -0.016_676_180_844_030_646_632),
        (40.0, 1.0, -0.016_683_671_650_417_116_523),
        (25.0, 0.5, -0.016_666_605_772_385_409_28),
        (20.0, 0.5, -0.016_665_924_851_221_281_329),
        (30.0, 0.5, -0.016_666_661_668_189_959_213),
        (25.0, 0.25, -0.016_634_712_283_268_309_661),
    ];
    for (lambda, b, want) in cases {
        let r = direct(&DistributionSpec::fermi_dirac(lambda, b).unwrap());
        let err = (r.value - want).abs();
        assert!(err < 1e-9, "({lambda}, {b}): {} vs {want}", r.value);
        assert!(
            err <= r.error_estimate.max(1e-12) * 10.0,
            "({lambda}, {b}) estimate {}",
            r.error_estimate
        );
    }
}

#[test]
fn continuum_integral_reference() {
    let cases = [
        (25.0, 2.0, 65_618.682_078_971_486_051),
        (20.0, 2.0, 26_996.126_996_451_060_577),
        (25.0, 0.5, 73_450.056_964_577_698_865),
    ];
    for (lambda, b, want) in cases {
        let integrand = ReducedIntegrand::new(DistributionSpec::fermi_dirac(lambda, b).unwrap());
        let got = summation::continuum_integral_to_infinity(&integrand, 1e-10).unwrap();
        assert!((got - want).abs() < 1e-8, "({lambda}, {b}): {got}");
    }
}

#[test]
fn methods_agree_for_soft_knees() {
    // the knee's oscillatory contribution decays like exp(-2 pi^2 / b)
    for (lambda, b) in [(80.0, 0.5), (100.0, 0.5), (25.0, 0.5)] {
        let spec = DistributionSpec::fermi_dirac(lambda, b).unwrap();
        let d = direct(&spec);
        let e = em(&spec, 3);
        assert!(
            (d.value - e.value).abs() < 1e-4 * d.value.abs(),
            "({lambda}, {b}): {} vs {}",
            d.value,
            e.value
        );
        assert!(d.diagnostics["f_evaluations"] >= 100.0 * e.diagnostics["f_evaluations"]);
    }
}

#[test]
fn sharp_knee_breaks_agreement() {
    let spec = DistributionSpec::fermi_dirac(25.0, 2.0).unwrap();
    let d = direct(&spec).value;
    let e = em(&spec, 3).value;
    assert!((e - IDEAL_BRACKET).abs() < 1e-9);
    assert!((d - e).abs() > 0.01, "{d} {e}");
}

#[test]
fn plateau_for_soft_knees() {
    let spec = DistributionSpec::fermi_dirac(25.0, 0.5).unwrap();
    let scan = plateau_scan(&spec, &[20.0, 25.0, 30.0], Method::Direct, &BracketSettings::default()).unwrap();
    assert!(scan.is_flat(1e-3), "{scan:?}");
    let steep = plateau_scan(
        &DistributionSpec::fermi_dirac(25.0, 2.0).unwrap(),
        &[20.0, 25.0, 30.0],
        Method::Direct,
        &BracketSettings::default(),
    )
    .unwrap();
    assert!(!steep.is_flat(1e-3));
}

#[test]
fn expansion_orders_converge() {
    let spec = DistributionSpec::fermi_dirac(25.0, 0.5).unwrap();
    let reference = -0.016_666_605_772_385_409_28;
    for order in 2..=5 {
        let r = em(&spec, order);
        // f(0) = 1 - e^{-12.5} here, so the expansion sees the same small
        // offset from -1/60 that the direct sum does
        assert!((r.value - reference).abs() < 1e-8, "order {order}: {}", r.value);
        assert!((r.diagnostics["printed_sign_value"] + r.value).abs() < 1e-12);
    }
}

#[test]
fn sharp_cutoff_has_no_plateau() {
    for n in [5.0, 10.0, 20.0] {
        let spec = DistributionSpec::sharp_cutoff(n).unwrap();
        let r = direct(&spec);
        assert!((r.value + n * n / 6.0).abs() < 1e-8 * n * n, "{n}: {}", r.value);
    }
    let spec = DistributionSpec::sharp_cutoff(10.0).unwrap();
    let scan = plateau_scan(&spec, &[10.0, 20.0], Method::Direct, &BracketSettings::default()).unwrap();
    assert!(!scan.is_flat(1e-3));
}

#[test]
fn bracket_result_round_trip() {
    let r = direct(&DistributionSpec::fermi_dirac(25.0, 0.5).unwrap());
    let json = serde_json::to_string(&r).unwrap();
    let back: BracketResult = serde_json::from_str(&json).unwrap();
    assert_eq!(back, r);
    assert!(json.contains("\"direct\""));
}

#[test]
fn knee_oscillation_explains_the_steep_case() {
    use vacgas_core::summation::euler_maclaurin::knee_oscillation;
    for (lambda, b) in [(25.0, 2.0), (20.0, 2.0), (30.0, 2.0), (25.5, 2.0), (40.0, 1.0)] {
        let spec = DistributionSpec::fermi_dirac(lambda, b).unwrap();
        let knee = knee_oscillation(&spec).unwrap();
        let gap = direct(&spec).value - em(&spec, 3).value;
        // leading order in 1/lambda only
        assert!(
            (gap - knee.leading).abs() < 0.05 * knee.amplitude,
            "({lambda}, {b}): {gap} vs {}",
            knee.leading
        );
        assert!(gap.abs() <= 1.05 * knee.amplitude);
    }
    let steep = em(&DistributionSpec::fermi_dirac(25.0, 2.0).unwrap(), 3);
    assert!(steep.error_estimate > 0.06);
    assert!(steep.flags.iter().any(|f| f.starts_with("knee-oscillation")));
    let soft = em(&DistributionSpec::fermi_dirac(25.0, 0.5).unwrap(), 3);
    assert!(soft.diagnostics["knee_oscillation_amplitude"] < 1e-12);
    // an infinitely steep knee is the sharp cutoff, whose bracket is -lambda^2/6
    let limit = knee_oscillation(&DistributionSpec::fermi_dirac(25.0, 1e9).unwrap()).unwrap();
    assert!(
        (limit.amplitude / (625.0 / 6.0) - 1.0).abs() < 1e-3,
        "{}",
        limit.amplitude
    );
    assert!(knee_oscillation(&DistributionSpec::sharp_cutoff(25.0).unwrap()).is_none());
}
