//! One function per subcommand, each turning a resolved configuration into
//! a [`Report`].

use anyhow::Result;
use serde_json::{json, Map, Value};
use vacgas_core::montecarlo::{bracket_monte_carlo, p_in_integral_from_continuum};
use vacgas_core::pressure::{pressure_difference_with, sweep};
use vacgas_core::summation::{continuum_integral_to_infinity, evaluate_bracket};
use vacgas_core::{
    estimate_p_in, make_constants, temperature_from_affinity, BracketResult, BracketSettings, DistributionSpec, Family,
    McConfig, Method, PlateGeometry, PressureResult, ReducedIntegrand, SweepMode,
};

use crate::args::{RunConfig, Task};
use crate::output::{Cell, Report, Table};

const PRESSURE_COLUMNS: [&str; 7] = [
    "d_m",
    "lambda",
    "bracket_value",
    "bracket_error",
    "pressure_pa",
    "ideal_pressure_pa",
    "relative_deviation",
];

pub fn run(config: &RunConfig) -> Result<Report> {
    match config.subcommand {
        Task::Bracket => bracket(config),
        Task::Pressure => pressure(config),
        Task::Sweep => pressure_sweep(config),
        Task::Compare => compare(config),
        Task::CheckCutoff => check_cutoff(config),
        Task::Temperature => temperature(config),
        Task::Montecarlo => montecarlo(config),
    }
}

fn settings(config: &RunConfig) -> BracketSettings {
    BracketSettings {
        n_max: None,
        quad_tol: config.quad_tol,
        em_order: config.em_order as usize,
    }
}

fn mc_config(config: &RunConfig, spec: DistributionSpec) -> vacgas_core::Result<McConfig> {
    McConfig::new(spec, config.samples, config.seed, config.streams)
}

fn compute_bracket(config: &RunConfig, spec: &DistributionSpec) -> vacgas_core::Result<BracketResult> {
    match Method::from(config.method) {
        Method::MonteCarlo => bracket_monte_carlo(&mc_config(config, *spec)?),
        method => evaluate_bracket(spec, method, &settings(config)),
    }
}

fn bracket_diagnostics(b: &BracketResult) -> Map<String, Value> {
    let mut map: Map<String, Value> = b
        .diagnostics
        .iter()
        .map(|(k, v)| (k.clone(), Cell::Num(*v).to_json_value()))
        .collect();
    map.insert("flags".into(), json!(b.flags));
    map
}

fn bracket(config: &RunConfig) -> Result<Report> {
    let spec = config.spec_at(config.separation)?;
    let b = compute_bracket(config, &spec)?;
    let mut table = Table::new(&["method", "lambda", "value", "error_estimate", "terms_used"]);
    table.push(vec![
        b.method.to_string().into(),
        spec.lambda().into(),
        b.value.into(),
        b.error_estimate.into(),
        b.terms_used.into(),
    ]);
    Ok(Report {
        table,
        diagnostics: bracket_diagnostics(&b),
    })
}

fn pressure_row(p: &PressureResult) -> Vec<Cell> {
    vec![
        p.separation_d.into(),
        p.lambda.into(),
        p.bracket.value.into(),
        p.bracket.error_estimate.into(),
        p.pressure_difference.into(),
        p.ideal_limit_pressure.into(),
        p.relative_deviation_from_ideal.into(),
    ]
}

fn pressure(config: &RunConfig) -> Result<Report> {
    let consts = make_constants();
    let geometry = PlateGeometry::with_separation(config.separation)?;
    let spec = config.spec_at(config.separation)?;
    let p = pressure_difference_with(&spec, &geometry, config.method.into(), &settings(config), consts)?;
    let mut header = PRESSURE_COLUMNS.to_vec();
    header.push("pressure_error_pa");
    let mut table = Table::new(&header);
    let mut row = pressure_row(&p);
    row.push(p.pressure_error(consts).into());
    table.push(row);
    Ok(Report {
        table,
        diagnostics: bracket_diagnostics(&p.bracket),
    })
}

fn pressure_sweep(config: &RunConfig) -> Result<Report> {
    let consts = make_constants();
    let mode = match config.kc_physical {
        Some(k_c) => SweepMode::FixedPhysicalCutoff { k_c },
        None => SweepMode::FixedLambda,
    };
    let spec = config.spec_with(config.dist.family(), config.lambda)?;
    let s = sweep(
        &spec,
        mode,
        config.method.into(),
        &settings(config),
        config.dmin,
        config.dmax,
        config.points as usize,
        consts,
    )?;
    let mut table = Table::new(&PRESSURE_COLUMNS);
    for p in &s.points {
        table.push(pressure_row(p));
    }
    let mut diagnostics = Map::new();
    diagnostics.insert("mode".into(), serde_json::to_value(mode)?);
    diagnostics.insert("tolerance".into(), json!(s.tolerance));
    diagnostics.insert("all_within_tolerance".into(), json!(s.all_within_tolerance));
    diagnostics.insert(
        "max_abs_deviation".into(),
        Cell::Num(s.max_abs_deviation).to_json_value(),
    );
    Ok(Report { table, diagnostics })
}

fn compare(config: &RunConfig) -> Result<Report> {
    let lambda = config.spec_at(config.separation)?.lambda();
    let mut table = Table::new(&[
        "family",
        "passes_plateau",
        "passes_decay",
        "passes_range",
        "verdict",
        "bracket_value",
        "bracket_error",
        "bracket_failure",
    ]);
    for family in Family::CANDIDATES {
        let spec = config.spec_with(family, lambda)?;
        let report = spec.check_cutoff_compliance(config.epsilon)?;
        let mut row: Vec<Cell> = vec![
            family_name(family).into(),
            report.passes_plateau.into(),
            report.passes_decay.into(),
            report.passes_range.into(),
            report.verdict.into(),
        ];
        match compute_bracket(config, &spec) {
            Ok(b) => row.extend([b.value.into(), b.error_estimate.into(), Cell::Missing]),
            Err(e) => row.extend([Cell::Missing, Cell::Missing, e.to_string().into()]),
        }
        table.push(row);
    }
    let mut diagnostics = Map::new();
    diagnostics.insert("lambda".into(), json!(lambda));
    diagnostics.insert("method".into(), json!(Method::from(config.method).to_string()));
    Ok(Report { table, diagnostics })
}

fn family_name(family: Family) -> String {
    match serde_json::to_value(family) {
        Ok(Value::String(s)) => s,
        _ => format!("{family:?}"),
    }
}

fn check_cutoff(config: &RunConfig) -> Result<Report> {
    let spec = config.spec_at(config.separation)?;
    let report = spec.check_cutoff_compliance(config.epsilon)?;
    let mut table = Table::new(&[
        "family",
        "lambda",
        "passes_plateau",
        "passes_decay",
        "passes_range",
        "verdict",
    ]);
    table.push(vec![
        family_name(report.family).into(),
        spec.lambda().into(),
        report.passes_plateau.into(),
        report.passes_decay.into(),
        report.passes_range.into(),
        report.verdict.into(),
    ]);
    let mut diagnostics = Map::new();
    diagnostics.insert("probes".into(), serde_json::to_value(&report.diagnostics)?);
    Ok(Report { table, diagnostics })
}

fn temperature(config: &RunConfig) -> Result<Report> {
    let consts = make_constants();
    let k_c = config
        .kc_physical
        .ok_or_else(|| anyhow::anyhow!("temperature needs a physical cutoff"))?;
    let t = temperature_from_affinity(config.alpha, k_c, config.convention.into(), consts)?;
    let mut table = Table::new(&["convention", "alpha", "k_c", "omega_c", "beta", "temperature_k"]);
    table.push(vec![
        t.convention.to_string().into(),
        t.alpha.into(),
        t.k_c.into(),
        t.omega_c.into(),
        t.beta().into(),
        t.temperature.into(),
    ]);
    Ok(Report {
        table,
        diagnostics: Map::new(),
    })
}

fn montecarlo(config: &RunConfig) -> Result<Report> {
    let spec = config.spec_at(config.separation)?;
    let estimate = estimate_p_in(&mc_config(config, spec)?)?;
    let reference = continuum_integral_to_infinity(&ReducedIntegrand::new(spec), 1e-9)
        .map(p_in_integral_from_continuum)
        .ok();
    let mut table = Table::new(&[
        "mean",
        "standard_error",
        "samples_used",
        "seed",
        "proposal_extent",
        "nonzero_fraction",
        "quadrature_reference",
        "z_score",
    ]);
    table.push(vec![
        estimate.mean.into(),
        estimate.standard_error.into(),
        estimate.samples_used.into(),
        estimate.seed.into(),
        estimate.proposal_extent.into(),
        estimate.nonzero_fraction.into(),
        reference.map_or(Cell::Missing, Cell::Num),
        reference.map_or(Cell::Missing, |r| {
            Cell::Num((estimate.mean - r) / estimate.standard_error)
        }),
    ]);
    let mut diagnostics = Map::new();
    diagnostics.insert("streams".into(), json!(config.streams));
    Ok(Report { table, diagnostics })
}
