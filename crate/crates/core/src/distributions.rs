//! Occupation functions for the virtual-photon gas and the cutoff-compliance
//! classifier.
//!
//! Everything is expressed in the dimensionless wavenumber `u = k d / pi`.
//! A distribution is fixed by its cutoff `lambda = k_c d / pi` and its
//! sharpness `b = beta pi / d`; the affinity is then `alpha = -b lambda`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Largest exponent passed to `exp` when evaluating Maxwell-Boltzmann.
pub const MB_EXPONENT_CLAMP: f64 = 700.0;

/// Half-width of the window around a Bose-Einstein pole that integration
/// routines refuse to enter.
pub const POLE_EXCLUSION: f64 = 1.0e-6;

/// Samples per probe interval in the compliance check.
pub const PROBES_PER_INTERVAL: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SharpCutoff,
    FermiDirac,
    MaxwellBoltzmann,
    BoseEinstein,
    /// No virtual photons at all, `f = 0`.
    Empty,
}

impl Family {
    pub const CANDIDATES: [Family; 4] = [
        Family::SharpCutoff,
        Family::FermiDirac,
        Family::MaxwellBoltzmann,
        Family::BoseEinstein,
    ];

    pub fn uses_sharpness(self) -> bool {
        matches!(
            self,
            Family::FermiDirac | Family::MaxwellBoltzmann | Family::BoseEinstein
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::SharpCutoff => "sharp-cutoff",
            Family::FermiDirac => "fermi-dirac",
            Family::MaxwellBoltzmann => "maxwell-boltzmann",
            Family::BoseEinstein => "bose-einstein",
            Family::Empty => "empty",
        };
        f.write_str(name)
    }
}

/// A distribution family together with its dimensionless parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    family: Family,
    lambda: f64,
    sharpness: f64,
}

impl DistributionSpec {
    pub fn new(family: Family, lambda: f64, sharpness: f64) -> Result<Self> {
        if family != Family::Empty && !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!(
                "cutoff lambda must be positive and finite, got {lambda}"
            )));
        }
        if family.uses_sharpness() && !(sharpness > 0.0 && sharpness.is_finite()) {
            return Err(Error::domain(format!(
                "sharpness must be positive and finite, got {sharpness}"
            )));
        }
        Ok(DistributionSpec {
            family,
            lambda,
            sharpness,
        })
    }

    pub fn sharp_cutoff(lambda: f64) -> Result<Self> {
        Self::new(Family::SharpCutoff, lambda, 0.0)
    }

    pub fn fermi_dirac(lambda: f64, sharpness: f64) -> Result<Self> {
        Self::new(Family::FermiDirac, lambda, sharpness)
    }

    pub fn maxwell_boltzmann(lambda: f64, sharpness: f64) -> Result<Self> {
        Self::new(Family::MaxwellBoltzmann, lambda, sharpness)
    }

    pub fn bose_einstein(lambda: f64, sharpness: f64) -> Result<Self> {
        Self::new(Family::BoseEinstein, lambda, sharpness)
    }

    pub fn empty() -> Self {
        DistributionSpec {
            family: Family::Empty,
            lambda: 0.0,
            sharpness: 0.0,
        }
    }

    /// Fermi-Dirac occupation from the physical affinity `alpha` and the
    /// wavenumber-conjugate `beta` (in m), for plates at separation `d`.
    ///
    /// `k_c = -alpha / beta`, `lambda = k_c d / pi`, `b = beta pi / d`.
    pub fn fermi_dirac_from_affinity(alpha: f64, beta: f64, d: f64) -> Result<Self> {
        if !(alpha < 0.0) {
            return Err(Error::domain(format!("affinity must be negative, got {alpha}")));
        }
        if !(beta > 0.0) || !(d > 0.0) {
            return Err(Error::domain("beta and separation must be positive"));
        }
        let k_c = -alpha / beta;
        Self::fermi_dirac(k_c * d / PI, beta * PI / d)
    }

    /// Same family and sharpness with a different cutoff.
    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        Self::new(self.family, lambda, self.sharpness)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn sharpness(&self) -> f64 {
        self.sharpness
    }

    /// Dimensionless affinity `alpha = -b lambda`, for families with a sharpness.
    pub fn affinity(&self) -> Option<f64> {
        self.family.uses_sharpness().then(|| -self.sharpness * self.lambda)
    }

    /// Exponential decay rate of `f` above the cutoff, if there is one.
    pub fn decay_rate(&self) -> Option<f64> {
        self.family.uses_sharpness().then_some(self.sharpness)
    }

    /// True when `f` is infinitely differentiable on the positive axis.
    pub fn is_smooth(&self) -> bool {
        !matches!(self.family, Family::SharpCutoff | Family::BoseEinstein)
    }

    /// Location of the Bose-Einstein pole, if any.
    pub fn pole(&self) -> Option<f64> {
        (self.family == Family::BoseEinstein).then_some(self.lambda)
    }

    /// Occupation `f(u)` for `u >= 0`.
    pub fn eval_f(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) {
            return Err(Error::domain(format!("wavenumber must be non-negative, got {u}")));
        }
        self.occupation(u)
    }

    /// Occupation at any real argument, continuing the closed form below zero.
    /// Used for symmetric difference stencils around the origin.
    pub(crate) fn occupation(&self, u: f64) -> Result<f64> {
        let x = self.sharpness * (u - self.lambda);
        match self.family {
            Family::Empty => Ok(0.0),
            Family::SharpCutoff => Ok(if u < self.lambda {
                1.0
            } else if u > self.lambda {
                0.0
            } else {
                0.5
            }),
            Family::FermiDirac => Ok(fermi_dirac(x)),
            Family::MaxwellBoltzmann => Ok(maxwell_boltzmann(x).0),
            Family::BoseEinstein => {
                let denom = x.exp_m1();
                if denom == 0.0 {
                    Err(Error::Singularity { pole: self.lambda })
                } else {
                    Ok(1.0 / denom)
                }
            }
        }
    }

    /// Second derivative of the Fermi-Dirac occupation with respect to `u`.
    pub fn eval_f_second_derivative(&self, u: f64) -> Result<f64> {
        if self.family != Family::FermiDirac {
            return Err(Error::Unsupported(format!(
                "second derivative is only implemented for fermi-dirac, not {}",
                self.family
            )));
        }
        if !(u >= 0.0) {
            return Err(Error::domain(format!("wavenumber must be non-negative, got {u}")));
        }
        let b = self.sharpness;
        let x = b * (u - self.lambda);
        // f'' = b^2 f (1 - f) (1 - 2f), with 1 - 2f = tanh(x/2)
        let e = (-x.abs()).exp();
        let occupancy_variance = e / ((1.0 + e) * (1.0 + e));
        Ok(b * b * occupancy_variance * (0.5 * x).tanh())
    }

    /// Classifies the distribution against the cutoff-function criteria:
    /// a unit plateau well below the cutoff, decay to zero well above it, and
    /// values inside `[0, 1]` everywhere probed.
    pub fn check_cutoff_compliance(&self, epsilon: f64) -> Result<ComplianceReport> {
        if !(epsilon > 0.0 && epsilon < 0.5) {
            return Err(Error::domain(format!(
                "compliance tolerance must lie in (0, 0.5), got {epsilon}"
            )));
        }
        let lambda = self.lambda;
        let plateau = probe_points(0.0, 0.5 * lambda);
        let decay = probe_points(2.0 * lambda, 10.0 * lambda);

        let mut report = ComplianceReport {
            family: self.family,
            passes_plateau: true,
            passes_decay: true,
            passes_range: true,
            verdict: false,
            diagnostics: Vec::new(),
        };
        let mut worst_plateau: Option<(f64, f64)> = None;
        let mut worst_decay: Option<(f64, f64)> = None;
        let mut first_range_violation: Option<(f64, f64)> = None;

        for (u, in_plateau) in plateau
            .iter()
            .map(|&u| (u, true))
            .chain(decay.iter().map(|&u| (u, false)))
        {
            let (value, in_range) = self.probe(u);
            if !in_range {
                report.passes_range = false;
                first_range_violation.get_or_insert((u, value));
            }
            if in_plateau {
                let miss = (value - 1.0).abs();
                if !(miss <= epsilon) {
                    report.passes_plateau = false;
                }
                if worst_plateau.is_none_or(|(_, w)| !((w - 1.0).abs() >= miss)) {
                    worst_plateau = Some((u, value));
                }
            } else {
                if !(value.abs() <= epsilon) {
                    report.passes_decay = false;
                }
                if worst_decay.is_none_or(|(_, w)| !(w.abs() >= value.abs())) {
                    worst_decay = Some((u, value));
                }
            }
        }

        report.verdict = report.passes_plateau && report.passes_decay && report.passes_range;
        for &u in [plateau[0], plateau[PROBES_PER_INTERVAL - 1], decay[0]].iter() {
            report.diagnostics.push(ProbeSample { u, f: self.probe(u).0 });
        }
        for (u, f) in [worst_plateau, worst_decay, first_range_violation]
            .into_iter()
            .flatten()
        {
            report.diagnostics.push(ProbeSample { u, f });
        }
        Ok(report)
    }

    /// Value at a probe point and whether it is a valid occupation.
    fn probe(&self, u: f64) -> (f64, bool) {
        if self.family == Family::MaxwellBoltzmann {
            let (value, clamped) = maxwell_boltzmann(self.sharpness * (u - self.lambda));
            return (value, !clamped && (0.0..=1.0).contains(&value));
        }
        match self.occupation(u) {
            Ok(value) => (value, value.is_finite() && (0.0..=1.0).contains(&value)),
            Err(_) => (f64::NAN, false),
        }
    }
}

fn probe_points(lo: f64, hi: f64) -> Vec<f64> {
    let step = (hi - lo) / (PROBES_PER_INTERVAL - 1) as f64;
    (0..PROBES_PER_INTERVAL)
        .map(|i| {
            if i + 1 == PROBES_PER_INTERVAL {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect()
}

/// `1 / (e^x + 1)` without overflow.
fn fermi_dirac(x: f64) -> f64 {
    if x > 0.0 {
        let e = (-x).exp();
        e / (1.0 + e)
    } else {
        1.0 / (x.exp() + 1.0)
    }
}

/// `e^{-x}` with the exponent clamped; the flag reports whether it was.
fn maxwell_boltzmann(x: f64) -> (f64, bool) {
    let exponent = -x;
    if exponent > MB_EXPONENT_CLAMP {
        (MB_EXPONENT_CLAMP.exp(), true)
    } else {
        (exponent.exp(), false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSample {
    pub u: f64,
    pub f: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub family: Family,
    pub passes_plateau: bool,
    pub passes_decay: bool,
    pub passes_range: bool,
    pub verdict: bool,
    /// Interval boundaries followed by the worst plateau probe, the worst
    /// decay probe and the first out-of-range probe.
    pub diagnostics: Vec<ProbeSample>,
}
