//! The parallel-plate Casimir effect modeled as a gas of virtual photons.
//!
//! A pluggable occupation function `f(k)` fixes how many virtual photons sit
//! in each cavity mode. The crate reduces the inward and outward radiation
//! pressures to a dimensionless bracket, evaluates it by series-minus-quadrature,
//! by the Euler-Maclaurin boundary expansion and by Monte Carlo, classifies
//! candidate statistics as cutoff functions, and converts Fermi-Dirac
//! parameters into a vacuum temperature.

// Kronrod nodes are kept at published precision; `!(x > 0.0)` guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod constants;
pub mod distributions;
pub mod error;
pub mod montecarlo;
pub mod pressure;
pub mod quadrature;
pub mod spectral;
pub mod summation;
pub mod temperature;

pub use constants::{cutoff_frequency, make_constants, PhysicalConstants, PlateGeometry};
pub use distributions::{ComplianceReport, DistributionSpec, Family};
pub use error::{Error, Result};
pub use montecarlo::{estimate_p_in, photon_flux_density, McConfig, McEstimate};
pub use pressure::{ideal_casimir_pressure, lamoreaux_sweep, pressure_difference, PressureResult, Sweep, SweepMode};
pub use spectral::{inner_integral, mode_density_factor, reduced_big_f, ModeGrid, ReducedIntegrand};
pub use summation::{
    bernoulli, bracket_direct, bracket_euler_maclaurin, BernoulliTable, BracketResult, BracketSettings, Method,
};
pub use temperature::{affinity_from_temperature, temperature_from_affinity, Convention, TemperatureEstimate};
