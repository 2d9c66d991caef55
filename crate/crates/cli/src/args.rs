//! Command-line flags and the fully resolved run configuration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use vacgas_core::{make_constants, Convention, DistributionSpec, Family, Method};

#[derive(Debug, Parser)]
#[command(name = "vacgas", version, about = "Casimir pressure from a virtual-photon gas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Sum-minus-integral bracket for one distribution.
    Bracket(Options),
    /// Pressure difference at one plate separation.
    Pressure(Options),
    /// Pressure over log-spaced separations.
    Sweep(Options),
    /// Compliance and bracket for every candidate family.
    Compare(Options),
    /// Classify a distribution against the cutoff criteria.
    CheckCutoff(Options),
    /// Vacuum temperature from the Fermi-Dirac affinity.
    Temperature(Options),
    /// Monte Carlo estimate of the inward-pressure integral.
    Montecarlo(Options),
}

impl Command {
    pub fn split(self) -> (Task, Options) {
        match self {
            Command::Bracket(o) => (Task::Bracket, o),
            Command::Pressure(o) => (Task::Pressure, o),
            Command::Sweep(o) => (Task::Sweep, o),
            Command::Compare(o) => (Task::Compare, o),
            Command::CheckCutoff(o) => (Task::CheckCutoff, o),
            Command::Temperature(o) => (Task::Temperature, o),
            Command::Montecarlo(o) => (Task::Montecarlo, o),
        }
    }
}

/// Subcommand tag as echoed in the configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    Bracket,
    Pressure,
    Sweep,
    Compare,
    CheckCutoff,
    Temperature,
    Montecarlo,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::Bracket => "bracket",
            Task::Pressure => "pressure",
            Task::Sweep => "sweep",
            Task::Compare => "compare",
            Task::CheckCutoff => "check-cutoff",
            Task::Temperature => "temperature",
            Task::Montecarlo => "montecarlo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistArg {
    Sharp,
    Fd,
    Mb,
    Be,
}

impl DistArg {
    pub fn family(self) -> Family {
        match self {
            DistArg::Sharp => Family::SharpCutoff,
            DistArg::Fd => Family::FermiDirac,
            DistArg::Mb => Family::MaxwellBoltzmann,
            DistArg::Be => Family::BoseEinstein,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConventionArg {
    Paper,
    Energy,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Paper => Convention::PaperLiteral,
            ConventionArg::Energy => Convention::EnergyConsistent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Direct,
    Em,
    Mc,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => Method::Direct,
            MethodArg::Em => Method::EulerMaclaurin,
            MethodArg::Mc => Method::MonteCarlo,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Distribution family [default: fd]
    #[arg(long, value_enum)]
    pub dist: Option<DistArg>,
    /// Dimensionless cutoff k_c d / pi [default: 25]
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    /// Dimensionless sharpness beta pi / d [default: 2]
    #[arg(long, allow_negative_numbers = true)]
    pub sharpness: Option<f64>,
    /// Physical cutoff wavenumber in 1/m; sets lambda from the separation
    #[arg(long, allow_negative_numbers = true, conflicts_with = "kc_inverse_bohr")]
    pub kc_physical: Option<f64>,
    /// Physical cutoff at the inverse Bohr radius
    #[arg(long)]
    pub kc_inverse_bohr: bool,
    /// Fermi-Dirac affinity [default: -1]
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Temperature unit convention [default: paper]
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    /// Bracket method [default: direct, or em for physical-cutoff sweeps]
    #[arg(long, value_enum)]
    pub method: Option<MethodArg>,
    /// Euler-Maclaurin order [default: 3]
    #[arg(long)]
    pub em_order: Option<u32>,
    /// Absolute quadrature tolerance of the direct method [default: 1e-10]
    #[arg(long)]
    pub quad_tol: Option<f64>,
    /// Monte Carlo samples [default: 1000000]
    #[arg(long)]
    pub samples: Option<u64>,
    /// Monte Carlo seed [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Monte Carlo substreams [default: 8]
    #[arg(long)]
    pub streams: Option<u32>,
    /// Plate separation in m for single-point runs [default: 1e-6]
    #[arg(long)]
    pub separation: Option<f64>,
    /// Smallest sweep separation in m [default: 6e-7]
    #[arg(long)]
    pub dmin: Option<f64>,
    /// Largest sweep separation in m [default: 6e-6]
    #[arg(long)]
    pub dmax: Option<f64>,
    /// Sweep points [default: 13]
    #[arg(long)]
    pub points: Option<u32>,
    /// Output encoding [default: json]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output to a file instead of standard output
    #[arg(long)]
    pub out: Option<String>,
    /// Compliance tolerance [default: 0.01]
    #[arg(long, allow_negative_numbers = true)]
    pub epsilon: Option<f64>,
}

/// Every setting of a run with defaults filled in. Echoed with the output
/// and sufficient to repeat the run exactly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: Task,
    pub dist: DistArg,
    pub lambda: f64,
    pub sharpness: f64,
    pub kc_physical: Option<f64>,
    pub kc_inverse_bohr: bool,
    pub alpha: f64,
    pub convention: ConventionArg,
    pub method: MethodArg,
    pub em_order: u32,
    pub quad_tol: f64,
    pub samples: u64,
    pub seed: u64,
    pub streams: u32,
    pub separation: f64,
    pub dmin: f64,
    pub dmax: f64,
    pub points: u32,
    pub format: Format,
    pub out: Option<String>,
    pub epsilon: f64,
}

impl RunConfig {
    pub fn resolve(subcommand: Task, o: Options) -> RunConfig {
        let kc_inverse_bohr = o.kc_inverse_bohr || (subcommand == Task::Temperature && o.kc_physical.is_none());
        let kc_physical = if kc_inverse_bohr {
            Some(make_constants().inverse_bohr_radius())
        } else {
            o.kc_physical
        };
        let method = o.method.unwrap_or(match subcommand {
            // the direct series cannot resolve the bracket once lambda runs
            // into the thousands
            Task::Sweep if kc_physical.is_some() => MethodArg::Em,
            _ => MethodArg::Direct,
        });
        RunConfig {
            subcommand,
            dist: o.dist.unwrap_or(DistArg::Fd),
            lambda: o.lambda.unwrap_or(25.0),
            sharpness: o.sharpness.unwrap_or(2.0),
            kc_physical,
            kc_inverse_bohr,
            alpha: o.alpha.unwrap_or(-1.0),
            convention: o.convention.unwrap_or(ConventionArg::Paper),
            method,
            em_order: o.em_order.unwrap_or(3),
            quad_tol: o.quad_tol.unwrap_or(1e-10),
            samples: o.samples.unwrap_or(1_000_000),
            seed: o.seed.unwrap_or(0),
            streams: o.streams.unwrap_or(8),
            separation: o.separation.unwrap_or(1e-6),
            dmin: o.dmin.unwrap_or(0.6e-6),
            dmax: o.dmax.unwrap_or(6e-6),
            points: o.points.unwrap_or(13),
            format: o.format.unwrap_or(Format::Json),
            out: o.out,
            epsilon: o.epsilon.unwrap_or(0.01),
        }
    }

    /// Command line that reproduces this configuration.
    pub fn to_args(&self) -> Vec<String> {
        fn value<T: Serialize>(v: T) -> String {
            match serde_json::to_value(v).expect("enum serializes") {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            }
        }
        let mut args = vec![self.subcommand.name().to_string()];
        let mut push = |flag: &str, v: String| args.push(format!("--{flag}={v}"));
        push("dist", value(self.dist));
        push("lambda", self.lambda.to_string());
        push("sharpness", self.sharpness.to_string());
        if !self.kc_inverse_bohr {
            if let Some(k) = self.kc_physical {
                push("kc-physical", k.to_string());
            }
        }
        push("alpha", self.alpha.to_string());
        push("convention", value(self.convention));
        push("method", value(self.method));
        push("em-order", self.em_order.to_string());
        push("quad-tol", self.quad_tol.to_string());
        push("samples", self.samples.to_string());
        push("seed", self.seed.to_string());
        push("streams", self.streams.to_string());
        push("separation", self.separation.to_string());
        push("dmin", self.dmin.to_string());
        push("dmax", self.dmax.to_string());
        push("points", self.points.to_string());
        push("format", value(self.format));
        if let Some(out) = &self.out {
            push("out", out.clone());
        }
        push("epsilon", self.epsilon.to_string());
        if self.kc_inverse_bohr {
            args.push("--kc-inverse-bohr".into());
        }
        args
    }

    /// Distribution at the configured separation `d`; a physical cutoff
    /// overrides `lambda`.
    pub fn spec_at(&self, d: f64) -> vacgas_core::Result<DistributionSpec> {
        let lambda = match self.kc_physical {
            Some(k_c) => k_c * d / std::f64::consts::PI,
            None => self.lambda,
        };
        self.spec_with(self.dist.family(), lambda)
    }

    pub fn spec_with(&self, family: Family, lambda: f64) -> vacgas_core::Result<DistributionSpec> {
        let sharpness = if family.uses_sharpness() { self.sharpness } else { 0.0 };
        DistributionSpec::new(family, lambda, sharpness)
    }
}
