// Copyright 2026 The lifshitz authors
//
// Licensed under the Apache license, version 2.0 (the "license");
// you may not use this file except in compliance with the license.
// You may obtain a copy of the license at
//
//     http://www.apache.org/licenses/license-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the license is distributed on an "as is" basis,
// without warranties or conditions of any kind, either express or implied.
// See the license for the specific language governing permissions and
// limitations under the license.

//! Globally adaptive Gauss-Kronrod quadrature on finite intervals.
//!
//! Semi-infinite integrals in this crate are mapped onto finite intervals by
//! the caller (a tangent substitution for the `k_z` integrals, a truncated
//! exponential variable for the Lifshitz integrals), so only the finite rule
//! is needed here. The 21-point Kronrod extension of the 10-point Gauss rule
//! gives the error estimate, rescaled the same way QUADPACK does it.

use alloc::vec::Vec;

use crate::error::{Error, Result};

// Abscissae of the 21-point Kronrod rule; odd indices are the 10-point Gauss nodes.
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
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_548_292_599,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Absolute and relative accuracy requested from [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn new(abs: f64, rel: f64) -> Self {
        Self { abs, rel }
    }

    /// Same absolute and relative tolerance.
    pub const fn both(tol: f64) -> Self {
        Self { abs: tol, rel: tol }
    }

    fn target(&self, value: f64) -> f64 {
        let rel = self.rel * value.abs();
        if rel > self.abs {
            rel
        } else {
            self.abs
        }
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub intervals: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = libm::pow(200.0 * scaled / res_asc, 1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        let min_err = 50.0 * f64::EPSILON * res_abs;
        if min_err > scaled {
            scaled = min_err;
        }
    }
    scaled
}

/// One application of the 21-point Gauss-Kronrod rule on `[a, b]`.
fn gk21<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut res_k = WGK[10] * f_center;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = res_k * half;
    let error = rescale_error((res_k - res_g) * half, res_abs * scale, res_asc * scale);
    Segment { a, b, value, error }
}

/// Maximum number of subintervals used by [`integrate`] unless overridden.
pub const DEFAULT_MAX_INTERVALS: usize = 2000;

/// Integrates `f` over `[a, b]` to the requested tolerance by repeated
/// bisection of the subinterval with the largest error estimate.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    integrate_with_limit(f, a, b, tol, DEFAULT_MAX_INTERVALS)
}

/// [`integrate`] with an explicit cap on the number of subintervals.
pub fn integrate_with_limit<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: Tolerance,
    max_intervals: usize,
) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            abs_error: 0.0,
            intervals: 0,
        });
    }
    let first = gk21(&mut f, a, b);
    if !first.value.is_finite() {
        return Err(Error::QuadratureNotConverged {
            estimate: first.value,
            error: f64::INFINITY,
        });
    }
    let mut segments = Vec::with_capacity(64);
    segments.push(first);
    let mut total = first.value;
    let mut total_err = first.error;

    while total_err > tol.target(total) {
        if segments.len() >= max_intervals {
            return Err(Error::QuadratureNotConverged {
                estimate: total,
                error: total_err,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, s)| {
                if s.error > acc.1 {
                    (i, s.error)
                } else {
                    acc
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a.min(seg.b) || mid >= seg.a.max(seg.b) {
            // interval exhausted at machine precision
            return Err(Error::QuadratureNotConverged {
                estimate: total,
                error: total_err,
            });
        }
        let left = gk21(&mut f, seg.a, mid);
        let right = gk21(&mut f, mid, seg.b);
        total += left.value + right.value - seg.value;
        total_err += left.error + right.error - seg.error;
        if !total.is_finite() {
            return Err(Error::QuadratureNotConverged {
                estimate: total,
                error: f64::INFINITY,
            });
        }
        segments.push(left);
        segments.push(right);
        // Incremental updates drift; resum once the estimate is near the target.
        if total_err <= 2.0 * tol.target(total) {
            total = segments.iter().map(|s| s.value).sum();
            total_err = segments.iter().map(|s| s.error).sum();
        }
    }
    Ok(Integral {
        value: total,
        abs_error: total_err,
        intervals: segments.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact_on_one_panel() {
        let r = integrate(
            |x| x.powi(7) - 3.0 * x * x,
            -1.0,
            2.0,
            Tolerance::new(0.0, 1e-12),
        )
        .unwrap();
        let exact = (2f64.powi(8) - 1.0) / 8.0 - (8.0 + 1.0);
        assert!((r.value - exact).abs() < 1e-12);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn square_root_cusp_converges() {
        let r = integrate(libm::sqrt, 0.0, 1.0, Tolerance::new(0.0, 1e-10)).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-10);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let fwd = integrate(libm::exp, 0.0, 1.0, Tolerance::both(1e-12)).unwrap();
        let rev = integrate(libm::exp, 1.0, 0.0, Tolerance::both(1e-12)).unwrap();
        assert!((fwd.value + rev.value).abs() < 1e-14);
    }

    #[test]
    fn reports_non_convergence() {
        let err =
            integrate_with_limit(|x| 1.0 / x, 1e-300, 1.0, Tolerance::both(1e-15), 5).unwrap_err();
        assert!(matches!(err, Error::QuadratureNotConverged { .. }));
    }
}
