//! Monte Carlo estimate of the inward-pressure integral
//!
//! ```text
//! M = int int int_{octant} f(|u|) u_z^2 / |u| d^3u
//! ```
//!
//! Each virtual photon striking the plate at angle `gamma` arrives at a rate
//! proportional to `cos(gamma) = u_z/|u|` and hands over momentum `2 * u_z / 2`,
//! which gives the weight above. `P_in = hbar c pi / d^4 * M`.
//!
//! Sampling is split into `stream_count` ChaCha substreams keyed by
//! `(seed, stream index)` and merged in stream order, so the result does not
//! depend on thread scheduling.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use crate::distributions::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::quadrature::CompensatedSum;
use crate::spectral::ReducedIntegrand;
use crate::summation::{default_n_max, BracketResult, Method};

pub const MIN_SAMPLES: u64 = 1000;

/// Proposal box reach beyond the cutoff, in decay lengths.
pub const PROPOSAL_TAIL_LENGTHS: f64 = 20.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub spec: DistributionSpec,
    pub samples: u64,
    pub seed: u64,
    pub stream_count: u32,
}

impl McConfig {
    pub fn new(spec: DistributionSpec, samples: u64, seed: u64, stream_count: u32) -> Result<Self> {
        if samples < MIN_SAMPLES {
            return Err(Error::domain(format!(
                "need at least {MIN_SAMPLES} samples, got {samples}"
            )));
        }
        if stream_count == 0 {
            return Err(Error::domain("need at least one stream"));
        }
        Ok(McConfig {
            spec,
            samples,
            seed,
            stream_count,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub mean: f64,
    pub standard_error: f64,
    pub samples_used: u64,
    pub seed: u64,
    /// Side of the uniform proposal cube.
    pub proposal_extent: f64,
    pub nonzero_fraction: f64,
}

/// Per-mode strike-rate weight `f(|u|) u_z / |u|`; zero at the origin.
pub fn photon_flux_density(spec: &DistributionSpec, k: [f64; 3]) -> Result<f64> {
    if k.iter().any(|&c| !(c >= 0.0)) {
        return Err(Error::domain("wavevector components must be non-negative"));
    }
    let norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(spec.eval_f(norm)? * k[2] / norm)
}

/// Momentum-transfer weight `f(|u|) u_z^2 / |u|`; the flux density times `u_z`.
fn momentum_weight(spec: &DistributionSpec, k: [f64; 3]) -> Result<f64> {
    let norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(spec.eval_f(norm)? * k[2] * k[2] / norm)
}

/// Side of the uniform proposal cube `[0, extent]^3`.
pub fn proposal_extent(spec: &DistributionSpec) -> Result<f64> {
    match spec.family() {
        Family::BoseEinstein => Err(Error::Singularity { pole: spec.lambda() }),
        Family::Empty => Ok(1.0),
        Family::SharpCutoff => Ok(spec.lambda()),
        _ => Ok(spec.lambda() + PROPOSAL_TAIL_LENGTHS / spec.sharpness()),
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct StreamStats {
    count: u64,
    mean: f64,
    m2: f64,
    nonzero: u64,
}

impl StreamStats {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
        if x != 0.0 {
            self.nonzero += 1;
        }
    }

    fn merge(self, other: StreamStats) -> StreamStats {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let weight = other.count as f64 / count as f64;
        StreamStats {
            count,
            mean: self.mean + delta * weight,
            m2: self.m2 + other.m2 + delta * delta * self.count as f64 * weight,
            nonzero: self.nonzero + other.nonzero,
        }
    }
}

fn run_stream(spec: &DistributionSpec, seed: u64, stream: u64, samples: u64, extent: f64) -> Result<StreamStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut stats = StreamStats::default();
    for _ in 0..samples {
        let k = [
            extent * rng.random::<f64>(),
            extent * rng.random::<f64>(),
            extent * rng.random::<f64>(),
        ];
        stats.push(momentum_weight(spec, k)?);
    }
    Ok(stats)
}

/// Uniform-proposal estimate of the inward-pressure integral `M`.
pub fn estimate_p_in(config: &McConfig) -> Result<McEstimate> {
    let spec = config.spec;
    let extent = proposal_extent(&spec)?;
    let streams = u64::from(config.stream_count);
    let base = config.samples / streams;
    let extra = config.samples % streams;

    let per_stream = (0..streams)
        .into_par_iter()
        .map(|s| {
            let n = base + u64::from(s < extra);
            run_stream(&spec, config.seed, s, n, extent)
        })
        .collect::<Result<Vec<_>>>()?;
    let stats = per_stream.into_iter().fold(StreamStats::default(), StreamStats::merge);

    if stats.nonzero == 0 {
        return Err(Error::DegenerateEstimate(format!(
            "no sample inside [0, {extent}]^3 carried momentum"
        )));
    }
    let volume = extent * extent * extent;
    let n = stats.count as f64;
    let variance = stats.m2 / (n - 1.0);
    Ok(McEstimate {
        mean: volume * stats.mean,
        standard_error: volume * (variance / n).sqrt(),
        samples_used: stats.count,
        seed: config.seed,
        proposal_extent: extent,
        nonzero_fraction: stats.nonzero as f64 / n,
    })
}

/// `M = (pi / 4) int_0^inf F(u) du`, the same integral reached through the
/// reduced integrand.
pub fn p_in_integral_from_continuum(continuum_integral: f64) -> f64 {
    0.25 * PI * continuum_integral
}

/// Bracket with the continuum integral replaced by its Monte Carlo estimate.
/// Far noisier than the deterministic methods; useful as a consistency check.
pub fn bracket_monte_carlo(config: &McConfig) -> Result<BracketResult> {
    let integrand = ReducedIntegrand::new(config.spec);
    let n_max = default_n_max(&config.spec);
    let series: CompensatedSum = (1..=n_max)
        .map(|n| integrand.big_f(n as f64))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    let estimate = estimate_p_in(config)?;
    let continuum = estimate.mean * 4.0 / PI;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("series_sum".into(), series.value());
    diagnostics.insert("continuum_integral".into(), continuum);
    diagnostics.insert("p_in_integral".into(), estimate.mean);
    diagnostics.insert("p_in_standard_error".into(), estimate.standard_error);
    diagnostics.insert("samples".into(), estimate.samples_used as f64);
    diagnostics.insert("seed".into(), config.seed as f64);
    Ok(BracketResult {
        value: series.value() - continuum,
        method: Method::MonteCarlo,
        error_estimate: estimate.standard_error * 4.0 / PI,
        terms_used: n_max,
        diagnostics,
        flags: Vec::new(),
    })
}
