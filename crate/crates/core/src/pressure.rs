//! Dimensional Casimir pressures from the dimensionless bracket.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::constants::{PhysicalConstants, PlateGeometry};
use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};
use crate::summation::{evaluate_bracket, BracketResult, BracketSettings, Method};

/// Error bar of the 0.6 to 6 micron torsion-pendulum measurement.
pub const LAMOREAUX_TOLERANCE: f64 = 0.05;
pub const LAMOREAUX_D_MIN: f64 = 0.6e-6;
pub const LAMOREAUX_D_MAX: f64 = 6.0e-6;

/// `pi^2 hbar c / (4 d^4)`, the factor turning the bracket into a pressure.
pub fn casimir_prefactor(d: f64, constants: &PhysicalConstants) -> f64 {
    PI * PI * constants.hbar * constants.c / (4.0 * d.powi(4))
}

/// `-pi^2 hbar c / (240 d^4)`.
pub fn ideal_casimir_pressure(d: f64, constants: &PhysicalConstants) -> Result<f64> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain(format!("plate separation must be positive, got {d}")));
    }
    Ok(-PI * PI * constants.hbar * constants.c / (240.0 * d.powi(4)))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressureResult {
    /// Plate separation (m).
    pub separation_d: f64,
    /// Dimensionless cutoff used for this separation.
    pub lambda: f64,
    pub bracket: BracketResult,
    /// `P_out - P_in` (Pa); negative means attraction.
    pub pressure_difference: f64,
    pub ideal_limit_pressure: f64,
    pub relative_deviation_from_ideal: f64,
}

impl PressureResult {
    /// Uncertainty of the pressure carried over from the bracket (Pa).
    pub fn pressure_error(&self, constants: &PhysicalConstants) -> f64 {
        casimir_prefactor(self.separation_d, constants) * self.bracket.error_estimate
    }
}

pub fn pressure_difference(
    spec: &DistributionSpec,
    geometry: &PlateGeometry,
    method: Method,
    constants: &PhysicalConstants,
) -> Result<PressureResult> {
    pressure_difference_with(spec, geometry, method, &BracketSettings::default(), constants)
}

pub fn pressure_difference_with(
    spec: &DistributionSpec,
    geometry: &PlateGeometry,
    method: Method,
    settings: &BracketSettings,
    constants: &PhysicalConstants,
) -> Result<PressureResult> {
    if method == Method::MonteCarlo {
        return Err(Error::Unsupported(
            "pressure assembly accepts the direct and euler-maclaurin methods".into(),
        ));
    }
    let bracket = evaluate_bracket(spec, method, settings)?;
    assemble(spec, geometry.separation(), bracket, constants)
}

fn assemble(
    spec: &DistributionSpec,
    d: f64,
    bracket: BracketResult,
    constants: &PhysicalConstants,
) -> Result<PressureResult> {
    let prefactor = casimir_prefactor(d, constants);
    let pressure = prefactor * bracket.value;
    let ideal = ideal_casimir_pressure(d, constants)?;
    Ok(PressureResult {
        separation_d: d,
        lambda: spec.lambda(),
        bracket,
        pressure_difference: pressure,
        ideal_limit_pressure: ideal,
        relative_deviation_from_ideal: (pressure - ideal) / ideal,
    })
}

/// How the cutoff behaves as the separation changes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode")]
pub enum SweepMode {
    /// Same dimensionless `lambda` at every separation; pure `d^-4` law.
    FixedLambda,
    /// Fixed physical cutoff `k_c` (1/m), so `lambda = k_c d / pi`.
    FixedPhysicalCutoff { k_c: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sweep {
    pub points: Vec<PressureResult>,
    pub tolerance: f64,
    /// Every `|relative_deviation_from_ideal|` is below `tolerance`.
    pub all_within_tolerance: bool,
    pub max_abs_deviation: f64,
}

/// Log-spaced separations from `d_min` to `d_max`, both included exactly.
pub fn log_spaced(d_min: f64, d_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(d_min > 0.0 && d_min < d_max && d_max.is_finite()) {
        return Err(Error::domain(format!(
            "separations need 0 < d_min < d_max, got {d_min:e} and {d_max:e}"
        )));
    }
    if points < 2 {
        return Err(Error::domain("a sweep needs at least two points"));
    }
    let ratio = (d_max / d_min).ln();
    Ok((0..points)
        .map(|i| match i {
            0 => d_min,
            i if i + 1 == points => d_max,
            i => d_min * (ratio * i as f64 / (points - 1) as f64).exp(),
        })
        .collect())
}

#[allow(clippy::too_many_arguments)]
pub fn sweep(
    spec: &DistributionSpec,
    mode: SweepMode,
    method: Method,
    settings: &BracketSettings,
    d_min: f64,
    d_max: f64,
    points: usize,
    constants: &PhysicalConstants,
) -> Result<Sweep> {
    let separations = log_spaced(d_min, d_max, points)?;
    if let SweepMode::FixedPhysicalCutoff { k_c } = mode {
        if !(k_c > 0.0 && k_c.is_finite()) {
            return Err(Error::domain(format!("physical cutoff must be positive, got {k_c}")));
        }
    }
    let results = separations
        .par_iter()
        .map(|&d| {
            let local = match mode {
                SweepMode::FixedLambda => *spec,
                SweepMode::FixedPhysicalCutoff { k_c } => spec.with_lambda(k_c * d / PI)?,
            };
            let bracket = evaluate_bracket(&local, method, settings)?;
            assemble(&local, d, bracket, constants)
        })
        .collect::<Result<Vec<_>>>()?;
    let max_abs_deviation = results
        .iter()
        .map(|r| r.relative_deviation_from_ideal.abs())
        .fold(0.0, f64::max);
    Ok(Sweep {
        all_within_tolerance: results
            .iter()
            .all(|r| r.relative_deviation_from_ideal.abs() < LAMOREAUX_TOLERANCE),
        tolerance: LAMOREAUX_TOLERANCE,
        max_abs_deviation,
        points: results,
    })
}

/// Sweep at the physical cutoff `k_c = 1/a_0`, evaluated through the
/// boundary expansion. With `lambda` in the thousands the direct series
/// cannot resolve the bracket in double precision.
pub fn lamoreaux_sweep(
    spec: &DistributionSpec,
    d_min: f64,
    d_max: f64,
    points: usize,
    constants: &PhysicalConstants,
) -> Result<Sweep> {
    sweep(
        spec,
        SweepMode::FixedPhysicalCutoff {
            k_c: constants.inverse_bohr_radius(),
        },
        Method::EulerMaclaurin,
        &BracketSettings::default(),
        d_min,
        d_max,
        points,
        constants,
    )
}
