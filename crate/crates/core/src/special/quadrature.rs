//! Globally adaptive Gauss–Kronrod (10/21-point) quadrature.
//!
//! The interval with the largest error estimate is bisected until the summed
//! error estimate meets `max(absolute_tolerance, relative_tolerance * |I|)`.
//! An infinite upper limit is handled by integrating geometrically growing
//! panels until a panel contributes less than `truncation_mass`.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{QoeError, Result};
use crate::sum::KahanSum;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub absolute_tolerance: f64,
    pub relative_tolerance: f64,
    pub max_subdivisions: usize,
    /// Probability mass that may be cut off when truncating an infinite domain.
    pub truncation_mass: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            absolute_tolerance: 1e-10,
            relative_tolerance: 1e-10,
            max_subdivisions: 2000,
            truncation_mass: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.absolute_tolerance > 0.0 && self.absolute_tolerance.is_finite()) {
            return Err(QoeError::domain(
                "absolute_tolerance",
                self.absolute_tolerance,
                "> 0",
            ));
        }
        if !(self.relative_tolerance > 0.0 && self.relative_tolerance.is_finite()) {
            return Err(QoeError::domain(
                "relative_tolerance",
                self.relative_tolerance,
                "> 0",
            ));
        }
        if self.max_subdivisions == 0 {
            return Err(QoeError::domain("max_subdivisions", 0.0, ">= 1"));
        }
        if !(self.truncation_mass > 0.0 && self.truncation_mass <= 1e-6) {
            return Err(QoeError::domain(
                "truncation_mass",
                self.truncation_mass,
                "0 < mass <= 1e-6",
            ));
        }
        Ok(())
    }

    pub fn with_absolute_tolerance(mut self, tolerance: f64) -> Self {
        self.absolute_tolerance = tolerance;
        self
    }

    pub fn with_relative_tolerance(mut self, tolerance: f64) -> Self {
        self.relative_tolerance = tolerance;
        self
    }

    fn tolerance_for(&self, value: f64) -> f64 {
        self.absolute_tolerance
            .max(self.relative_tolerance * value.abs())
    }
}

/// Result of a converged integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub subdivisions: usize,
}

#[allow(clippy::excessive_precision)]
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

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lower: f64,
    upper: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position for a deterministic order.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lower.total_cmp(&self.lower))
    }
}

fn sample<F>(f: &mut F, x: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let y = f(x)?;
    if y.is_finite() {
        Ok(y)
    } else {
        Err(QoeError::NonFiniteIntegrand { x })
    }
}

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod21<F>(f: &mut F, lower: f64, upper: f64) -> Result<Segment>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (lower + upper);
    let half = 0.5 * (upper - lower);

    let f_center = sample(f, center)?;
    let mut gauss = 0.0;
    let mut kronrod = WGK[10] * f_center;
    let mut res_abs = kronrod.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = sample(f, center - dx)?;
        let f2 = sample(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let value = kronrod * half;
    let res_abs = res_abs * half.abs();
    let res_asc = res_asc * half.abs();
    let mut error = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }

    Ok(Segment {
        lower,
        upper,
        value,
        error,
    })
}

fn adaptive_finite<F>(f: &mut F, lower: f64, upper: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    if lower == upper {
        return Ok(Integral {
            value: 0.0,
            error_estimate: 0.0,
            evaluations: 0,
            subdivisions: 0,
        });
    }

    let first = kronrod21(f, lower, upper)?;
    let mut evaluations = 21;
    let mut subdivisions = 0;
    let mut heap = BinaryHeap::new();
    heap.push(first);

    let totals = |heap: &BinaryHeap<Segment>| {
        let mut value = KahanSum::new();
        let mut error = KahanSum::new();
        let mut segments: Vec<&Segment> = heap.iter().collect();
        segments.sort_by(|a, b| a.lower.total_cmp(&b.lower));
        for s in segments {
            value.add(s.value);
            error.add(s.error);
        }
        (value.value(), error.value())
    };

    let (mut value, mut error) = (first.value, first.error);
    loop {
        if error <= spec.tolerance_for(value) {
            break;
        }
        if subdivisions >= spec.max_subdivisions {
            return Err(QoeError::QuadratureNotConverged {
                estimate: value,
                error_bound: error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lower + worst.upper);
        if mid <= worst.lower || mid >= worst.upper {
            // Interval can no longer be split in floating point.
            heap.push(worst);
            return Err(QoeError::QuadratureNotConverged {
                estimate: value,
                error_bound: error,
                subdivisions,
            });
        }
        let left = kronrod21(f, worst.lower, mid)?;
        let right = kronrod21(f, mid, worst.upper)?;
        evaluations += 42;
        subdivisions += 1;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Resynchronize the running totals to avoid drift.
        if subdivisions % 64 == 0 {
            (value, error) = totals(&heap);
        }
    }

    let (value, error) = totals(&heap);
    Ok(Integral {
        value,
        error_estimate: error,
        evaluations,
        subdivisions,
    })
}

/// Integrates a fallible integrand over `[lower, upper]`; `upper` may be
/// `f64::INFINITY`.
pub fn try_integrate<F>(mut f: F, lower: f64, upper: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    spec.validate()?;
    if !lower.is_finite() {
        return Err(QoeError::NonFinite("integration lower limit"));
    }
    if upper.is_nan() || upper == f64::NEG_INFINITY {
        return Err(QoeError::NonFinite("integration upper limit"));
    }
    if upper.is_finite() {
        if upper < lower {
            let r = adaptive_finite(&mut f, upper, lower, spec)?;
            return Ok(Integral {
                value: -r.value,
                ..r
            });
        }
        return adaptive_finite(&mut f, lower, upper, spec);
    }

    // Semi-infinite: panels [a, a + w], [a + w, a + 3w], ... with doubling width.
    const MAX_PANELS: usize = 128;
    let mut width = lower.abs().max(1.0);
    let mut start = lower;
    let mut value = KahanSum::new();
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut subdivisions = 0;
    for panel in 0..MAX_PANELS {
        let end = start + width;
        let r = adaptive_finite(&mut f, start, end, spec)?;
        value.add(r.value);
        error += r.error_estimate;
        evaluations += r.evaluations;
        subdivisions += r.subdivisions;
        if panel >= 1 && r.value.abs() < spec.truncation_mass {
            return Ok(Integral {
                value: value.value(),
                error_estimate: error + r.value.abs(),
                evaluations,
                subdivisions,
            });
        }
        start = end;
        width *= 2.0;
    }
    Err(QoeError::QuadratureNotConverged {
        estimate: value.value(),
        error_bound: f64::INFINITY,
        subdivisions,
    })
}

/// Integrates `f` over `[lower, upper]`; `upper` may be `f64::INFINITY`.
pub fn integrate<F>(f: F, lower: f64, upper: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    try_integrate(|x| Ok(f(x)), lower, upper, spec)
}
