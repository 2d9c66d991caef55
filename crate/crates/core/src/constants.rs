//! Physical constants and plate geometry.
//!
//! Everything here is SI. Conversions to other units happen only at the
//! command-line boundary.

use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Default lateral plate extent (1 cm) used when only a separation is given.
pub const DEFAULT_LATERAL_EXTENT: f64 = 1.0e-2;

/// Separation-to-width ratio above which the thin-gap model is questionable.
pub const THIN_GAP_RATIO: f64 = 0.01;

/// CODATA 2018 constants used by all dimensional computations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Reduced Planck constant (J s).
    pub hbar: f64,
    /// Speed of light in vacuum (m/s).
    pub c: f64,
    /// Boltzmann constant (J/K).
    pub boltzmann: f64,
    /// Bohr radius (m).
    pub bohr_radius: f64,
}

impl PhysicalConstants {
    pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
        hbar: 1.054_571_817e-34,
        c: 2.997_924_58e8,
        boltzmann: 1.380_649e-23,
        bohr_radius: 5.291_772_109_03e-11,
    };

    /// The Bohr inverse radius `1/a_0` in 1/m.
    pub fn inverse_bohr_radius(&self) -> f64 {
        1.0 / self.bohr_radius
    }
}

/// Returns the process-wide constants instance.
pub fn make_constants() -> &'static PhysicalConstants {
    static CONSTANTS: OnceLock<PhysicalConstants> = OnceLock::new();
    CONSTANTS.get_or_init(|| PhysicalConstants::CODATA_2018)
}

/// Angular cutoff frequency `omega_c = k_c c` for a cutoff wavenumber in 1/m.
pub fn cutoff_frequency(constants: &PhysicalConstants, k_c: f64) -> Result<f64> {
    if !(k_c > 0.0) || !k_c.is_finite() {
        return Err(Error::domain(format!(
            "cutoff wavenumber must be positive and finite, got {k_c}"
        )));
    }
    Ok(k_c * constants.c)
}

/// Two square plates of side `lateral_l` facing each other at distance
/// `separation_d`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlateGeometry {
    separation_d: f64,
    lateral_l: f64,
}

impl PlateGeometry {
    pub fn new(separation_d: f64, lateral_l: f64) -> Result<Self> {
        if !(separation_d > 0.0) || !separation_d.is_finite() {
            return Err(Error::domain(format!(
                "plate separation must be positive, got {separation_d}"
            )));
        }
        if !(lateral_l > 0.0) || !lateral_l.is_finite() {
            return Err(Error::domain(format!(
                "lateral plate extent must be positive, got {lateral_l}"
            )));
        }
        let geometry = PlateGeometry {
            separation_d,
            lateral_l,
        };
        if !geometry.is_thin_gap() {
            log::warn!(
                "separation {separation_d:e} m is not small against plate size {lateral_l:e} m; \
                 the parallel-plate mode model assumes d << L"
            );
        }
        Ok(geometry)
    }

    /// Plates of the default lateral extent.
    pub fn with_separation(separation_d: f64) -> Result<Self> {
        Self::new(separation_d, DEFAULT_LATERAL_EXTENT)
    }

    pub fn separation(&self) -> f64 {
        self.separation_d
    }

    pub fn lateral_extent(&self) -> f64 {
        self.lateral_l
    }

    pub fn is_thin_gap(&self) -> bool {
        self.separation_d / self.lateral_l <= THIN_GAP_RATIO
    }
}
