//! Vacuum temperature implied by a Fermi-Dirac occupation.
//!
//! With `f(k) = 1 / (e^{alpha + beta k} + 1)` the cutoff is `k_c = -alpha / beta`
//! and `beta = 1 / (K T)`. Because `beta` multiplies a wavenumber, two
//! readings of `T` are offered:
//!
//! * `PaperLiteral`: `T = k_c / (-alpha K)` with `k_c` in 1/m and `K` in J/K,
//!   taken at face value.
//! * `EnergyConsistent`: the exponent is `(E - E_c) / (K T)` with `E = hbar c k`,
//!   giving `T = hbar c k_c / (-alpha K)`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::constants::{cutoff_frequency, PhysicalConstants};
use crate::distributions::DistributionSpec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    PaperLiteral,
    EnergyConsistent,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::PaperLiteral => "paper-literal",
            Convention::EnergyConsistent => "energy-consistent",
        })
    }
}

impl Convention {
    /// Quantity divided by `-alpha K` to give the temperature.
    fn cutoff_scale(self, k_c: f64, constants: &PhysicalConstants) -> f64 {
        match self {
            Convention::PaperLiteral => k_c,
            Convention::EnergyConsistent => constants.hbar * constants.c * k_c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TemperatureEstimate {
    pub alpha: f64,
    /// Cutoff wavenumber (1/m).
    pub k_c: f64,
    /// `k_c c` (1/s).
    pub omega_c: f64,
    /// Kelvin.
    pub temperature: f64,
    pub convention: Convention,
}

impl TemperatureEstimate {
    /// Wavenumber-conjugate `beta = -alpha / k_c` (m).
    pub fn beta(&self) -> f64 {
        -self.alpha / self.k_c
    }

    /// The occupation these parameters describe, seen between plates at
    /// separation `d`.
    pub fn distribution(&self, d: f64) -> Result<DistributionSpec> {
        DistributionSpec::fermi_dirac_from_affinity(self.alpha, self.beta(), d)
    }
}

fn check_cutoff(k_c: f64) -> Result<()> {
    if !(k_c > 0.0 && k_c.is_finite()) {
        return Err(Error::domain(format!("cutoff wavenumber must be positive, got {k_c}")));
    }
    Ok(())
}

pub fn temperature_from_affinity(
    alpha: f64,
    k_c: f64,
    convention: Convention,
    constants: &PhysicalConstants,
) -> Result<TemperatureEstimate> {
    if !(alpha < 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("affinity must be negative, got {alpha}")));
    }
    check_cutoff(k_c)?;
    let temperature = convention.cutoff_scale(k_c, constants) / (-alpha * constants.boltzmann);
    Ok(TemperatureEstimate {
        alpha,
        k_c,
        omega_c: cutoff_frequency(constants, k_c)?,
        temperature,
        convention,
    })
}

/// Inverse of [`temperature_from_affinity`].
pub fn affinity_from_temperature(
    temperature: f64,
    k_c: f64,
    convention: Convention,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(Error::domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    check_cutoff(k_c)?;
    Ok(-convention.cutoff_scale(k_c, constants) / (temperature * constants.boltzmann))
}
