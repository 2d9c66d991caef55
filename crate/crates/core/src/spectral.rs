//! Reduction of the plate pressure integrals to one dimensionless variable.
//!
//! With `u = k_z d / pi` and `x = (k_x^2 + k_y^2) d^2 / pi^2` the transverse
//! double integral collapses to
//!
//! ```text
//! I(u) = int_0^inf f(sqrt(x + u^2)) / sqrt(x + u^2) dx = 2 int_u^inf f(t) dt
//! ```
//!
//! through `t = sqrt(x + u^2)`, `dx = 2 t dt`. The pressure bracket then
//! only needs `F(u) = u^2 I(u)`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::constants::PlateGeometry;
use crate::distributions::{DistributionSpec, Family, POLE_EXCLUSION};
use crate::error::{Error, Result};
use crate::quadrature::{kronrod_rule, Integrator};

/// Relative tolerance of the inner integral. Tighter than strictly needed
/// because the bracket is a difference of two numbers ~1e6 times larger.
pub const INNER_REL_TOL: f64 = 1e-13;

/// The inner integral is truncated where `f(t) < TAIL_CUTOFF f(u)`.
pub const TAIL_CUTOFF: f64 = 1e-17;

/// Allowed cavity modes `k = (l pi / L, m pi / L, n pi / d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeGrid {
    pub geometry: PlateGeometry,
}

impl ModeGrid {
    pub fn new(geometry: PlateGeometry) -> Self {
        ModeGrid { geometry }
    }

    /// Wavenumber spacing per axis, in 1/m.
    pub fn mode_spacing(&self) -> [f64; 3] {
        let transverse = PI / self.geometry.lateral_extent();
        [transverse, transverse, PI / self.geometry.separation()]
    }

    pub fn wavevector(&self, l: u64, m: u64, n: u64) -> [f64; 3] {
        let [sx, sy, sz] = self.mode_spacing();
        [l as f64 * sx, m as f64 * sy, n as f64 * sz]
    }
}

/// Mode density `1/pi^3` of the boundary-condition lattice in the
/// dimensionless k-space measure. Independent of the plate dimensions.
pub fn mode_density_factor(_grid: &ModeGrid) -> f64 {
    1.0 / (PI * PI * PI)
}

/// `I(u)` and `F(u) = u^2 I(u)` for one distribution, with evaluation counters.
#[derive(Debug)]
pub struct ReducedIntegrand {
    spec: DistributionSpec,
    integrator: Integrator,
    occupation_evals: AtomicU64,
    big_f_evals: AtomicU64,
}

impl Clone for ReducedIntegrand {
    fn clone(&self) -> Self {
        ReducedIntegrand::new(self.spec)
    }
}

impl ReducedIntegrand {
    pub fn new(spec: DistributionSpec) -> Self {
        ReducedIntegrand {
            spec,
            integrator: Integrator::new(0.0, INNER_REL_TOL),
            occupation_evals: AtomicU64::new(0),
            big_f_evals: AtomicU64::new(0),
        }
    }

    pub fn spec(&self) -> &DistributionSpec {
        &self.spec
    }

    /// Number of occupation-function evaluations so far.
    pub fn occupation_evaluations(&self) -> u64 {
        self.occupation_evals.load(Ordering::Relaxed)
    }

    /// Number of `F` evaluations so far, including odd differences.
    pub fn big_f_evaluations(&self) -> u64 {
        self.big_f_evals.load(Ordering::Relaxed)
    }

    pub fn reset_counters(&self) {
        self.occupation_evals.store(0, Ordering::Relaxed);
        self.big_f_evals.store(0, Ordering::Relaxed);
    }

    fn f(&self, t: f64) -> Result<f64> {
        self.occupation_evals.fetch_add(1, Ordering::Relaxed);
        self.spec.occupation(t)
    }

    /// `I(u) = 2 int_u^inf f(t) dt`.
    pub fn inner(&self, u: f64) -> Result<f64> {
        if !(u >= 0.0) || !u.is_finite() {
            return Err(Error::domain(format!(
                "wavenumber must be non-negative and finite, got {u}"
            )));
        }
        let lambda = self.spec.lambda();
        match self.spec.family() {
            Family::Empty => Ok(0.0),
            Family::SharpCutoff => {
                if u >= lambda {
                    return Ok(0.0);
                }
                let r = self.integrator.integrate(|t| self.f(t), u, lambda, &[])?;
                Ok(2.0 * r.value)
            }
            Family::BoseEinstein if u < lambda + POLE_EXCLUSION => Err(Error::Singularity { pole: lambda }),
            _ => {
                let f_u = self.f(u)?;
                if f_u == 0.0 {
                    return Ok(0.0);
                }
                let upper = self.truncation_point(u, f_u)?;
                let r = self.integrator.integrate(|t| self.f(t), u, upper, &[lambda])?;
                Ok(2.0 * r.value)
            }
        }
    }

    fn truncation_point(&self, u: f64, f_u: f64) -> Result<f64> {
        let scale = 1.0 / self.spec.decay_rate().unwrap_or(1.0);
        let start = u.max(self.spec.lambda());
        let mut reach = 8.0 * scale;
        for _ in 0..12 {
            let t = start + reach;
            if self.f(t)?.abs() < TAIL_CUTOFF * f_u.abs() {
                return Ok(t);
            }
            reach *= 2.0;
        }
        Err(Error::Convergence {
            message: format!("occupation does not decay beyond u = {start}"),
            error_estimate: f64::INFINITY,
            evaluations: self.occupation_evaluations(),
        })
    }

    /// `F(u) = u^2 I(u)`; exactly zero at the origin.
    pub fn big_f(&self, u: f64) -> Result<f64> {
        self.big_f_evals.fetch_add(1, Ordering::Relaxed);
        if u == 0.0 {
            return Ok(0.0);
        }
        Ok(u * u * self.inner(u)?)
    }

    /// `F(x) - F(-x) = -2 x^2 int_{-x}^{x} f(t) dt` for small `x`, with `f`
    /// continued analytically below zero. Free of the cancellation a direct
    /// difference of two `F` values would suffer.
    pub fn odd_difference(&self, x: f64) -> Result<f64> {
        self.big_f_evals.fetch_add(2, Ordering::Relaxed);
        if x == 0.0 {
            return Ok(0.0);
        }
        let window = kronrod_rule(|t| self.f(t), -x, x)?;
        Ok(-2.0 * x * x * window)
    }
}

/// `I(u)` for a distribution; see [`ReducedIntegrand::inner`].
pub fn inner_integral(spec: &DistributionSpec, u: f64) -> Result<f64> {
    ReducedIntegrand::new(*spec).inner(u)
}

/// `F(u) = u^2 I(u)`; see [`ReducedIntegrand::big_f`].
pub fn reduced_big_f(spec: &DistributionSpec, u: f64) -> Result<f64> {
    if !(u >= 0.0) {
        return Err(Error::domain(format!("wavenumber must be non-negative, got {u}")));
    }
    ReducedIntegrand::new(*spec).big_f(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd_inner_closed_form(lambda: f64, b: f64, u: f64) -> f64 {
        // 2/b ln(1 + e^{b (lambda - u)}), written to avoid overflow
        let y = b * (lambda - u);
        2.0 / b * (y.max(0.0) + (-y.abs()).exp().ln_1p())
    }

    #[test]
    fn sharp_cutoff_inner() {
        let spec = DistributionSpec::sharp_cutoff(25.0).unwrap();
        assert!((inner_integral(&spec, 10.0).unwrap() - 30.0).abs() < 1e-12);
        assert_eq!(inner_integral(&spec, 30.0).unwrap(), 0.0);
        assert!((reduced_big_f(&spec, 10.0).unwrap() - 3000.0).abs() < 1e-10);
    }

    #[test]
    fn fermi_dirac_inner_matches_closed_form() {
        let spec = DistributionSpec::fermi_dirac(25.0, 2.0).unwrap();
        for u in [0.0, 0.3, 10.0, 24.0, 25.0, 26.5, 40.0] {
            let got = inner_integral(&spec, u).unwrap();
            let want = fd_inner_closed_form(25.0, 2.0, u);
            assert!(
                (got - want).abs() <= 1e-12 * want.abs().max(1e-300),
                "u = {u}: {got} vs {want}"
            );
        }
        // frozen high-precision values
        assert!((inner_integral(&spec, 10.0).unwrap() - 30.000000000000093576).abs() < 1e-12);
        let at_cutoff = inner_integral(&spec, 25.0).unwrap();
        assert!((at_cutoff - std::f64::consts::LN_2).abs() < 1e-13);
        let big = reduced_big_f(&spec, 25.0).unwrap();
        assert!((big - 625.0 * std::f64::consts::LN_2).abs() < 1e-10);
    }

    #[test]
    fn big_f_at_origin_is_zero() {
        for spec in [
            DistributionSpec::fermi_dirac(25.0, 2.0).unwrap(),
            DistributionSpec::sharp_cutoff(3.0).unwrap(),
            DistributionSpec::bose_einstein(3.0, 1.0).unwrap(),
            DistributionSpec::empty(),
        ] {
            assert_eq!(reduced_big_f(&spec, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn bose_einstein_pole_in_range() {
        let spec = DistributionSpec::bose_einstein(25.0, 2.0).unwrap();
        assert_eq!(inner_integral(&spec, 10.0), Err(Error::Singularity { pole: 25.0 }));
        assert_eq!(
            inner_integral(&spec, 25.0 + 0.5 * POLE_EXCLUSION),
            Err(Error::Singularity { pole: 25.0 })
        );
        // above the pole the tail is integrable: 2/b * -ln(1 - e^{-b(u - lambda)})
        let got = inner_integral(&spec, 26.0).unwrap();
        let want = -(1.0 / 1.0) * (-(-2.0f64).exp()).ln_1p();
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn maxwell_boltzmann_inner() {
        let spec = DistributionSpec::maxwell_boltzmann(25.0, 2.0).unwrap();
        let got = inner_integral(&spec, 20.0).unwrap();
        let want = 10f64.exp();
        assert!((got - want).abs() < 1e-12 * want);
    }

    #[test]
    fn odd_difference_matches_closed_form() {
        let spec = DistributionSpec::fermi_dirac(25.0, 2.0).unwrap();
        let r = ReducedIntegrand::new(spec);
        for x in [1e-3, 2.5e-4, 0.3] {
            let big_f_minus = x * x * fd_inner_closed_form(25.0, 2.0, -x);
            let want = x * x * fd_inner_closed_form(25.0, 2.0, x) - big_f_minus;
            let got = r.odd_difference(x).unwrap();
            assert!((got - want).abs() < 1e-9 * want.abs(), "{x}: {got} vs {want}");
        }
    }

    #[test]
    fn counters_track_evaluations() {
        let r = ReducedIntegrand::new(DistributionSpec::fermi_dirac(25.0, 2.0).unwrap());
        r.big_f(3.0).unwrap();
        assert_eq!(r.big_f_evaluations(), 1);
        assert!(r.occupation_evaluations() >= 21);
        r.reset_counters();
        assert_eq!(r.occupation_evaluations(), 0);
    }

    #[test]
    fn mode_density() {
        let g = ModeGrid::new(PlateGeometry::new(1e-6, 1e-2).unwrap());
        let h = ModeGrid::new(PlateGeometry::new(3e-7, 5e-1).unwrap());
        let factor = mode_density_factor(&g);
        assert!((factor - 0.0322515).abs() < 1e-7);
        assert!((factor * PI.powi(3) - 1.0).abs() < 1e-15);
        assert_eq!(factor, mode_density_factor(&h));
        let k = g.wavevector(1, 2, 3);
        assert!((k[2] - 3.0 * PI / 1e-6).abs() < 1e-3);
        assert!((k[1] - 2.0 * PI / 1e-2).abs() < 1e-12);
    }
}
