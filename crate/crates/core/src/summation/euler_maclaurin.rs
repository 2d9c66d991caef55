//! Boundary expansion of the bracket,
//!
//! ```text
//! sum_{n>=1} F(n) - int_0^inf F = -F(0)/2 + sum_r (-1)^r B_r / (2r)! F^(2r-1)(0)
//! ```
//!
//! with `B_r` the positive coefficients of [`BernoulliTable`]. The odd
//! derivatives at the origin come from central differences, which only need
//! the odd part `F(x) - F(-x)`.

use num::{BigInt, BigRational, One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::{BernoulliTable, BracketResult, Method};
use crate::distributions::{DistributionSpec, Family};
use crate::error::{Error, Result};
use crate::spectral::ReducedIntegrand;

/// Base finite-difference step.
pub const BASE_STEP: f64 = 1e-3;

/// Relative disagreement between the last two Richardson stages above which
/// a derivative estimate is rejected.
pub const RICHARDSON_TOLERANCE: f64 = 1e-5;

/// Step balancing rounding noise `eps / h^m` against the `h^6` truncation
/// left after two Richardson stages, for a summand of unit scale.
pub fn noise_balanced_step(m: usize) -> f64 {
    2.0 * f64::EPSILON.powf(1.0 / (m as f64 + 6.0))
}

/// Step for the reduced integrand, whose odd part is computed without
/// cancellation and vanishes like `x^3`. Orders above five switch to the
/// noise-balanced step since `BASE_STEP^m` falls below rounding.
pub fn step_for_order(m: usize) -> f64 {
    if m <= 5 {
        BASE_STEP
    } else {
        BASE_STEP.max(noise_balanced_step(m))
    }
}

/// Weights `w_j`, `j = 1..=p`, such that
/// `sum_j w_j (g(jh) - g(-jh)) = h^m g^(m)(0) + O(h^(m+2))` for odd `m`.
fn odd_stencil(m: usize) -> Vec<f64> {
    let p = m.div_ceil(2);
    // rows: odd powers q = 1, 3, .., 2p-1; columns: j = 1..=p
    // entry 2 j^q / q!
    let mut rows: Vec<Vec<BigRational>> = (0..p)
        .map(|row| {
            let q = 2 * row + 1;
            let fact: BigInt = (1..=q).map(BigInt::from).product();
            let mut coeffs: Vec<BigRational> = (1..=p)
                .map(|j| BigRational::new(BigInt::from(2) * BigInt::from(j).pow(q as u32), fact.clone()))
                .collect();
            coeffs.push(if q == m {
                BigRational::one()
            } else {
                BigRational::zero()
            });
            coeffs
        })
        .collect();
    // Gauss-Jordan; the system is a scaled Vandermonde, pivots never vanish
    for col in 0..p {
        let pivot = rows[col][col].clone();
        for v in rows[col].iter_mut() {
            *v = &*v / &pivot;
        }
        let pivot_row = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &factor * pv;
                }
            }
        }
    }
    rows.iter().map(|row| row[p].to_f64().unwrap_or(f64::NAN)).collect()
}

/// Derivative estimate plus the size of the last Richardson correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeEstimate {
    pub value: f64,
    pub richardson_gap: f64,
}

/// Odd derivative `g^(m)(0)` from the odd part `delta(x) = g(x) - g(-x)`,
/// by central differences at steps `h`, `h/2`, `h/4` and two Richardson
/// extrapolations.
pub fn odd_derivative_at_origin<D>(delta: &mut D, m: usize, h: f64) -> Result<DerivativeEstimate>
where
    D: FnMut(f64) -> Result<f64>,
{
    assert!(m % 2 == 1, "odd derivative orders only");
    let weights = odd_stencil(m);
    let mut stage = |step: f64| -> Result<f64> {
        let mut acc = 0.0;
        for (j, w) in weights.iter().enumerate() {
            acc += w * delta((j + 1) as f64 * step)?;
        }
        Ok(acc / step.powi(m as i32))
    };
    let d0 = stage(h)?;
    let d1 = stage(0.5 * h)?;
    let d2 = stage(0.25 * h)?;
    let r1_coarse = (4.0 * d1 - d0) / 3.0;
    let r1_fine = (4.0 * d2 - d1) / 3.0;
    let r2 = (16.0 * r1_fine - r1_coarse) / 15.0;
    let gap = (r2 - r1_fine).abs();
    if !r2.is_finite() {
        return Err(Error::Differentiation {
            order: m,
            message: "non-finite difference quotient".into(),
        });
    }
    if gap > RICHARDSON_TOLERANCE * r2.abs().max(1.0) {
        return Err(Error::Differentiation {
            order: m,
            message: format!(
                "Richardson stages disagree by {gap:e} (estimate {r2:e}); function is not smooth at the origin"
            ),
        });
    }
    Ok(DerivativeEstimate {
        value: r2,
        richardson_gap: gap,
    })
}

/// Terms of the boundary expansion for a summand known through `F(0)` and
/// its odd part.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    /// Standard-sign value.
    pub value: f64,
    /// The same terms with the opposite sign on every derivative term.
    pub printed_sign_value: f64,
    pub f_at_zero: f64,
    /// `F^(2r-1)(0)` for `r = 1..=order`.
    pub odd_derivatives: Vec<f64>,
    /// Signed contribution of each derivative term.
    pub terms: Vec<f64>,
    pub derivative_uncertainty: f64,
}

pub fn expansion<D, S>(f_at_zero: f64, mut delta: D, order: usize, table: &BernoulliTable, step: S) -> Result<Expansion>
where
    D: FnMut(f64) -> Result<f64>,
    S: Fn(usize) -> f64,
{
    if order == 0 || order > table.len() {
        return Err(Error::domain(format!(
            "expansion order must be in 1..={}, got {order}",
            table.len()
        )));
    }
    let mut value = -0.5 * f_at_zero;
    let mut printed = -0.5 * f_at_zero;
    let mut odd_derivatives = Vec::with_capacity(order);
    let mut terms = Vec::with_capacity(order);
    let mut uncertainty = 0.0;
    let mut factorial = 1.0;
    for r in 1..=order {
        let m = 2 * r - 1;
        factorial *= (m * (m + 1)) as f64;
        let b_r = table.value(r).expect("order checked against table");
        let d = odd_derivative_at_origin(&mut delta, m, step(m))?;
        let weight = b_r / factorial;
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * weight * d.value;
        value += term;
        printed -= term;
        uncertainty += weight * d.richardson_gap;
        odd_derivatives.push(d.value);
        terms.push(term);
    }
    Ok(Expansion {
        value,
        printed_sign_value: printed,
        f_at_zero,
        odd_derivatives,
        terms,
        derivative_uncertainty: uncertainty,
    })
}

fn to_result(e: Expansion, order: usize, extra: BTreeMap<String, f64>) -> BracketResult {
    let last = e.terms.last().copied().unwrap_or(0.0).abs();
    let mut diagnostics = extra;
    diagnostics.insert("f_at_zero".into(), e.f_at_zero);
    for (r, d) in e.odd_derivatives.iter().enumerate() {
        diagnostics.insert(format!("derivative_{}", 2 * r + 1), *d);
    }
    diagnostics.insert("printed_sign_value".into(), e.printed_sign_value);
    diagnostics.insert("derivative_uncertainty".into(), e.derivative_uncertainty);
    diagnostics.insert("last_term".into(), last);
    BracketResult {
        value: e.value,
        method: Method::EulerMaclaurin,
        error_estimate: last + e.derivative_uncertainty,
        terms_used: order as u64,
        diagnostics,
        flags: vec![
            "printed-sign: the expansion with (-1)^(r-1) on the positive coefficients gives `printed_sign_value`"
                .into(),
        ],
    }
}

/// Bracket of the reduced integrand from its boundary expansion.
pub fn bracket_euler_maclaurin(
    integrand: &ReducedIntegrand,
    order: usize,
    table: &BernoulliTable,
) -> Result<BracketResult> {
    let f_before = integrand.occupation_evaluations();
    let big_before = integrand.big_f_evaluations();
    let e = expansion(
        integrand.big_f(0.0)?,
        |x| integrand.odd_difference(x),
        order,
        table,
        step_for_order,
    )?;
    let mut extra = BTreeMap::new();
    extra.insert(
        "f_evaluations".into(),
        (integrand.occupation_evaluations() - f_before) as f64,
    );
    extra.insert(
        "big_f_evaluations".into(),
        (integrand.big_f_evaluations() - big_before) as f64,
    );
    let mut result = to_result(e, order, extra);
    if let Some(knee) = knee_oscillation(integrand.spec()) {
        result
            .diagnostics
            .insert("knee_oscillation_amplitude".into(), knee.amplitude);
        result
            .diagnostics
            .insert("knee_oscillation_leading".into(), knee.leading);
        if knee.amplitude > result.error_estimate {
            result.flags.push(
                "knee-oscillation: the exact sum oscillates about this value with the cutoff; see `knee_oscillation_amplitude`".into(),
            );
        }
        result.error_estimate += knee.amplitude;
    }
    if !integrand.spec().is_smooth() {
        result
            .flags
            .push("non-smooth-occupation: the expansion remainder is not controlled by the boundary terms".into());
    }
    Ok(result)
}

/// Part of the bracket the boundary expansion cannot see: the Fermi-Dirac
/// step at `lambda` adds, through Poisson summation,
///
/// ```text
/// -sum_{j>=1} lambda^2 s_j cos(2 pi j lambda) / (pi^2 j^2),   s_j = x_j / sinh(x_j),  x_j = 2 pi^2 j / b
/// ```
///
/// to leading order in `1/lambda`. Negligible once `2 pi^2 / b` dominates
/// `ln(lambda^2)`; of order `lambda^2 / 6` as `b` grows, matching the sharp cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KneeOscillation {
    /// `sum_j lambda^2 s_j / (pi^2 j^2)`.
    pub amplitude: f64,
    /// The signed leading-order contribution.
    pub leading: f64,
}

pub fn knee_oscillation(spec: &DistributionSpec) -> Option<KneeOscillation> {
    if spec.family() != Family::FermiDirac {
        return None;
    }
    let lambda = spec.lambda();
    let scale = lambda * lambda / (PI * PI);
    let mut amplitude = 0.0;
    let mut leading = 0.0;
    for j in 1..=100_000u32 {
        let jf = f64::from(j);
        let x = 2.0 * PI * PI * jf / spec.sharpness();
        // x / sinh(x) without overflow
        let s = 2.0 * x * (-x).exp() / (1.0 - (-2.0 * x).exp());
        let a = scale * s / (jf * jf);
        amplitude += a;
        leading -= a * (2.0 * PI * jf * lambda).cos();
        if a <= 1e-17 * amplitude || a == 0.0 {
            break;
        }
    }
    Some(KneeOscillation { amplitude, leading })
}

/// Bracket of an arbitrary summand `F` given as a closure, smooth at the
/// origin and vanishing with its derivatives at infinity.
pub fn bracket_euler_maclaurin_fn<G>(big_f: G, order: usize, table: &BernoulliTable) -> Result<BracketResult>
where
    G: Fn(f64) -> Result<f64>,
{
    let e = expansion(
        big_f(0.0)?,
        |x| Ok(big_f(x)? - big_f(-x)?),
        order,
        table,
        noise_balanced_step,
    )?;
    Ok(to_result(e, order, BTreeMap::new()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summation::bernoulli;

    #[test]
    fn stencils() {
        assert_eq!(odd_stencil(1), vec![0.5]);
        assert_eq!(odd_stencil(3), vec![-1.0, 0.5]);
        let w5 = odd_stencil(5);
        let want = [2.5, -2.0, 0.5];
        for (a, b) in w5.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn derivatives_of_sine() {
        let mut delta = |x: f64| Ok(x.sin() - (-x).sin());
        for (m, want, tol) in [(1, 1.0, 1e-8), (3, -1.0, 1e-7), (5, 1.0, 1e-6), (7, -1.0, 1e-5)] {
            let d = odd_derivative_at_origin(&mut delta, m, noise_balanced_step(m)).unwrap();
            assert!((d.value - want).abs() < tol, "m = {m}: {d:?}");
        }
        // the fine fixed step is enough at low order
        let d1 = odd_derivative_at_origin(&mut delta, 1, BASE_STEP).unwrap();
        assert!((d1.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kink_is_rejected() {
        let mut delta = |x: f64| Ok(x.abs().powf(2.5) * x.signum() * 2.0);
        let err = odd_derivative_at_origin(&mut delta, 3, BASE_STEP).unwrap_err();
        assert!(matches!(err, Error::Differentiation { order: 3, .. }));
    }

    #[test]
    fn synthetic_cubic_gives_minus_one_sixtieth() {
        let table = bernoulli(3).unwrap();
        let r = bracket_euler_maclaurin_fn(|u| Ok(-2.0 * u * u * u), 2, &table).unwrap();
        assert!((r.value + 1.0 / 60.0).abs() < 1e-12, "{}", r.value);
        assert!((r.diagnostics["printed_sign_value"] - 1.0 / 60.0).abs() < 1e-12);
        assert!((r.diagnostics["derivative_3"] + 12.0).abs() < 1e-9);
    }

    #[test]
    fn geometric_series_check() {
        // sum_{n>=1} e^{-n} - int_0^inf e^{-u} du = 1/(e-1) - 1
        // truncating after order 3 leaves about B_4 / 8! = 8.3e-7
        let table = bernoulli(4).unwrap();
        let exact = 1.0 / (std::f64::consts::E - 1.0) - 1.0;
        let r3 = bracket_euler_maclaurin_fn(|u| Ok((-u).exp()), 3, &table).unwrap();
        assert!((r3.value - exact).abs() < 1e-6, "{} vs {exact}", r3.value);
        let r4 = bracket_euler_maclaurin_fn(|u| Ok((-u).exp()), 4, &table).unwrap();
        assert!((r4.value - exact).abs() < (r3.value - exact).abs());
    }

    #[test]
    fn order_validation() {
        let table = bernoulli(2).unwrap();
        assert!(bracket_euler_maclaurin_fn(Ok, 3, &table).is_err());
        assert!(bracket_euler_maclaurin_fn(Ok, 0, &table).is_err());
    }
}
