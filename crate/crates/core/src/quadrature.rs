//! Adaptive Gauss-Kronrod quadrature with mandatory breakpoints, plus a
//! compensated accumulator used wherever long sums are formed.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_977_449_838,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// 10-point Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_146,
];

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// One application of the 21-point Kronrod rule.
#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    roundoff_floor: f64,
}

fn kronrod21<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center)?;
    let mut kronrod = f_center * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = f_center.abs() * WGK[10];
    let mut values = [(0.0, 0.0); 10];
    for (j, pair) in values.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let lo = f(center - dx)?;
        let hi = f(center + dx)?;
        kronrod += WGK[j] * (lo + hi);
        abs_sum += WGK[j] * (lo.abs() + hi.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (lo + hi);
        }
        *pair = (lo, hi);
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (f_center - mean).abs();
    for (j, (lo, hi)) in values.iter().enumerate() {
        asc += WGK[j] * ((lo - mean).abs() + (hi - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if !value.is_finite() {
        return Err(Error::Convergence {
            message: format!("non-finite integrand on [{a}, {b}]"),
            error_estimate: f64::INFINITY,
            evaluations: 21,
        });
    }
    Ok(Panel {
        a,
        b,
        value,
        error,
        roundoff_floor: 50.0 * f64::EPSILON * res_abs,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: u64,
    pub panels: usize,
    /// Tolerance was not met but every panel sits at its rounding floor.
    pub roundoff_limited: bool,
}

/// Globally adaptive Gauss-Kronrod (10/21) integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrator {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_panels: usize,
}

impl Default for Integrator {
    fn default() -> Self {
        Integrator {
            abs_tol: 0.0,
            rel_tol: 1e-12,
            max_panels: 4000,
        }
    }
}

impl Integrator {
    pub fn new(abs_tol: f64, rel_tol: f64) -> Self {
        Integrator {
            abs_tol,
            rel_tol,
            ..Default::default()
        }
    }

    /// Integrates `f` over `[a, b]`, always splitting at the given interior
    /// breakpoints. Breakpoints outside `(a, b)` are ignored.
    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64, breakpoints: &[f64]) -> Result<QuadResult>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::domain("integration limits must be finite"));
        }
        if a == b {
            return Ok(QuadResult {
                value: 0.0,
                error: 0.0,
                evaluations: 0,
                panels: 0,
                roundoff_limited: false,
            });
        }
        if a > b {
            let r = self.integrate(f, b, a, breakpoints)?;
            return Ok(QuadResult { value: -r.value, ..r });
        }

        let mut edges = vec![a];
        let mut inner: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > a && x < b).collect();
        inner.sort_by(f64::total_cmp);
        inner.dedup();
        edges.extend(inner);
        edges.push(b);

        let mut evaluations = 0u64;
        let mut panels = Vec::with_capacity(64);
        for w in edges.windows(2) {
            panels.push(kronrod21(&mut f, w[0], w[1])?);
            evaluations += 21;
        }

        loop {
            let value: CompensatedSum = panels.iter().map(|p| p.value).collect();
            let value = value.value();
            let error: f64 = panels.iter().map(|p| p.error).sum();
            let tolerance = self.abs_tol.max(self.rel_tol * value.abs());
            if error <= tolerance {
                return Ok(QuadResult {
                    value,
                    error,
                    evaluations,
                    panels: panels.len(),
                    roundoff_limited: false,
                });
            }

            // worst panel that can still be refined
            let worst = panels
                .iter()
                .enumerate()
                .filter(|(_, p)| {
                    p.error > p.roundoff_floor
                        && (p.b - p.a) > 1e3 * f64::EPSILON * p.a.abs().max(p.b.abs()).max(f64::MIN_POSITIVE)
                })
                .max_by(|(_, x), (_, y)| x.error.total_cmp(&y.error))
                .map(|(i, _)| i);
            let Some(worst) = worst else {
                return Ok(QuadResult {
                    value,
                    error,
                    evaluations,
                    panels: panels.len(),
                    roundoff_limited: true,
                });
            };
            if panels.len() >= self.max_panels {
                return Err(Error::Convergence {
                    message: format!("quadrature on [{a}, {b}] exhausted {} panels", self.max_panels),
                    error_estimate: error,
                    evaluations,
                });
            }
            let p = panels.swap_remove(worst);
            let mid = 0.5 * (p.a + p.b);
            panels.push(kronrod21(&mut f, p.a, mid)?);
            panels.push(kronrod21(&mut f, mid, p.b)?);
            evaluations += 42;
            // keep panel order independent of refinement history
            panels.sort_by(|x, y| x.a.total_cmp(&y.a));
        }
    }

    /// Integrates `f` over `[a, inf)` through the map `x = a + (1 - t) / t`.
    pub fn integrate_to_infinity<F>(&self, mut f: F, a: f64) -> Result<QuadResult>
    where
        F: FnMut(f64) -> Result<f64>,
    {
        self.integrate(
            |t: f64| {
                let x = a + (1.0 - t) / t;
                Ok(f(x)? / (t * t))
            },
            0.0,
            1.0,
            &[],
        )
    }
}

/// Single 21-point Kronrod rule over `[a, b]`; exact to rounding for short
/// intervals on analytic integrands.
pub fn kronrod_rule<F>(mut f: F, a: f64, b: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    Ok(kronrod21(&mut f, a, b)?.value)
}
