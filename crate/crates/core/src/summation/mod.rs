//! Evaluation of the pressure bracket
//!
//! ```text
//! X = sum_{n>=1} F(n) - int_0^inf F(u) du
//! ```
//!
//! either directly (series minus quadrature) or through the boundary
//! expansion in [`euler_maclaurin`].

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

use crate::distributions::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::quadrature::{CompensatedSum, Integrator, QuadResult};
use crate::spectral::ReducedIntegrand;

mod bernoulli;
pub mod euler_maclaurin;

pub use bernoulli::{bernoulli, BernoulliTable, MAX_ORDER};
pub use euler_maclaurin::{bracket_euler_maclaurin, bracket_euler_maclaurin_fn};

/// Value the bracket takes for an ideal smooth cutoff.
pub const IDEAL_BRACKET: f64 = -1.0 / 60.0;

/// Series terms kept beyond the cutoff, in units of the decay length `1/b`.
pub const SERIES_TAIL_LENGTHS: f64 = 50.0;

/// Loosest accepted quadrature tolerance for the direct method.
pub const MAX_QUAD_TOL: f64 = 1e-8;

/// Default expansion order.
pub const DEFAULT_EM_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Direct,
    EulerMaclaurin,
    MonteCarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Direct => "direct",
            Method::EulerMaclaurin => "euler-maclaurin",
            Method::MonteCarlo => "monte-carlo",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BracketResult {
    pub value: f64,
    pub method: Method,
    pub error_estimate: f64,
    pub terms_used: u64,
    pub diagnostics: BTreeMap<String, f64>,
    /// Qualitative findings, e.g. a bracket that depends on the cutoff.
    pub flags: Vec<String>,
}

/// Smallest series length satisfying the truncation rule
/// `n_max >= lambda + 50 / b`.
pub fn default_n_max(spec: &DistributionSpec) -> u64 {
    let reach = match (spec.family(), spec.decay_rate()) {
        (Family::Empty, _) => 1.0,
        (_, Some(b)) => spec.lambda() + SERIES_TAIL_LENGTHS / b,
        (_, None) => spec.lambda() + 1.0,
    };
    (reach.ceil() as u64).max(1)
}

/// `int_0^upper F(u) du`, split at the cutoff. `abs_tol` is absolute, in
/// bracket units.
pub fn continuum_integral(integrand: &ReducedIntegrand, upper: f64, abs_tol: f64) -> Result<QuadResult> {
    let lambda = integrand.spec().lambda();
    Integrator::new(abs_tol, 0.0).integrate(|u| integrand.big_f(u), 0.0, upper, &[lambda])
}

/// `int_0^inf F(u) du` for distributions with an exponential tail.
pub fn continuum_integral_to_infinity(integrand: &ReducedIntegrand, abs_tol: f64) -> Result<f64> {
    let spec = integrand.spec();
    let upper = default_n_max(spec) as f64;
    let body = continuum_integral(integrand, upper, abs_tol)?;
    Ok(body.value + tail_integral_bound(spec, integrand.big_f(upper)?))
}

fn tail_integral_bound(spec: &DistributionSpec, f_at_upper: f64) -> f64 {
    match spec.decay_rate() {
        Some(b) => f_at_upper / b,
        None => 0.0,
    }
}

/// Series minus quadrature, truncated at `n_max`.
///
/// `quad_tol` is the absolute tolerance of the quadrature, in bracket units.
pub fn bracket_direct(integrand: &ReducedIntegrand, n_max: u64, quad_tol: f64) -> Result<BracketResult> {
    let spec = *integrand.spec();
    let required = default_n_max(&spec);
    if n_max < required {
        return Err(Error::domain(format!(
            "series length {n_max} is below the truncation rule minimum {required}"
        )));
    }
    if !(quad_tol > 0.0 && quad_tol <= MAX_QUAD_TOL) {
        return Err(Error::domain(format!(
            "quadrature tolerance must lie in (0, {MAX_QUAD_TOL:e}], got {quad_tol:e}"
        )));
    }
    let f_before = integrand.occupation_evaluations();
    let big_before = integrand.big_f_evaluations();

    let terms: Vec<f64> = (1..=n_max)
        .into_par_iter()
        .map(|n| integrand.big_f(n as f64))
        .collect::<Result<_>>()?;
    let series: CompensatedSum = terms.iter().copied().collect();
    let series = series.value();

    let upper = n_max as f64;
    let quad = continuum_integral(integrand, upper, quad_tol)?;

    let last = terms.last().copied().unwrap_or(0.0).abs();
    let (series_tail, integral_tail) = match spec.decay_rate() {
        Some(b) => {
            let ratio = (-b).exp();
            (last * ratio / (1.0 - ratio), tail_integral_bound(&spec, last))
        }
        None => (0.0, 0.0),
    };

    let value = series - quad.value;
    let rounding = 4.0 * f64::EPSILON * (series.abs() + quad.value.abs());
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("n_max".into(), n_max as f64);
    diagnostics.insert("u_max".into(), upper);
    diagnostics.insert("series_sum".into(), series);
    diagnostics.insert("continuum_integral".into(), quad.value);
    diagnostics.insert("quadrature_error".into(), quad.error);
    diagnostics.insert("quadrature_panels".into(), quad.panels as f64);
    diagnostics.insert(
        "quadrature_roundoff_limited".into(),
        if quad.roundoff_limited { 1.0 } else { 0.0 },
    );
    diagnostics.insert("series_tail_bound".into(), series_tail);
    diagnostics.insert("rounding_bound".into(), rounding);
    diagnostics.insert("integral_tail_bound".into(), integral_tail);
    diagnostics.insert(
        "f_evaluations".into(),
        (integrand.occupation_evaluations() - f_before) as f64,
    );
    diagnostics.insert(
        "big_f_evaluations".into(),
        (integrand.big_f_evaluations() - big_before) as f64,
    );
    diagnostics.insert("smooth_occupation".into(), if spec.is_smooth() { 1.0 } else { 0.0 });

    let mut flags = Vec::new();
    if !spec.is_smooth() {
        flags.push("no-lambda-plateau: a discontinuous occupation leaves the bracket dependent on the cutoff".into());
    }
    if quad.roundoff_limited {
        flags.push("quadrature-roundoff-limited".into());
    }

    Ok(BracketResult {
        value,
        method: Method::Direct,
        error_estimate: quad.error + series_tail + integral_tail + rounding,
        terms_used: n_max,
        diagnostics,
        flags,
    })
}

/// Bracket by either deterministic method with default settings.
pub fn evaluate_bracket(spec: &DistributionSpec, method: Method, settings: &BracketSettings) -> Result<BracketResult> {
    let integrand = ReducedIntegrand::new(*spec);
    match method {
        Method::Direct => {
            let n_max = settings.n_max.unwrap_or_else(|| default_n_max(spec));
            bracket_direct(&integrand, n_max, settings.quad_tol)
        }
        Method::EulerMaclaurin => {
            let table = bernoulli(settings.em_order.max(1))?;
            bracket_euler_maclaurin(&integrand, settings.em_order, &table)
        }
        Method::MonteCarlo => Err(Error::Unsupported(
            "the Monte Carlo bracket needs a sampling configuration".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketSettings {
    pub n_max: Option<u64>,
    pub quad_tol: f64,
    pub em_order: usize,
}

impl Default for BracketSettings {
    fn default() -> Self {
        BracketSettings {
            n_max: None,
            quad_tol: 1e-10,
            em_order: DEFAULT_EM_ORDER,
        }
    }
}

/// Bracket values across several cutoffs and their largest pairwise
/// relative spread.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlateauScan {
    pub lambdas: Vec<f64>,
    pub values: Vec<f64>,
    pub max_relative_spread: f64,
}

impl PlateauScan {
    pub fn is_flat(&self, tolerance: f64) -> bool {
        self.max_relative_spread < tolerance
    }
}

pub fn plateau_scan(
    spec: &DistributionSpec,
    lambdas: &[f64],
    method: Method,
    settings: &BracketSettings,
) -> Result<PlateauScan> {
    let values = lambdas
        .iter()
        .map(|&l| evaluate_bracket(&spec.with_lambda(l)?, method, settings).map(|r| r.value))
        .collect::<Result<Vec<_>>>()?;
    let mut spread: f64 = 0.0;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            let scale = a.abs().max(b.abs());
            spread = spread.max((a - b).abs() / scale);
        }
    }
    Ok(PlateauScan {
        lambdas: lambdas.to_vec(),
        values,
        max_relative_spread: spread,
    })
}
