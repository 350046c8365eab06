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

//! Casimir pressure between two identical plates from the Lifshitz formula,
//!
//! ```text
//! P(a,T) = −(k_B T/π) Σ'_l ∫₀^∞ q_l k⊥ dk⊥ Σ_α [r_α⁻² e^{2a q_l} − 1]⁻¹
//! ```
//!
//! where the prime halves the `l = 0` term. Each `k⊥` integral is done in
//! `y = 2a q_l`, so that `q_l k⊥ dk⊥ = y² dy / (8a³)`, followed by
//! `y = y_l + t²` with `y_l = 2aξ_l/c`. The second substitution removes the
//! square-root behaviour of `k⊥(y)` at the lower limit and of the nonlocal
//! zero-frequency TE coefficient at `k⊥ → 0`. The integral is cut at
//! `y = y_l + 45`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;
use crate::quad::{self, Tolerance};
use crate::reflection::{reflection_at_level, ReflectionPair, ZeroFrequency};
use crate::response::{matsubara_xi, LevelResponse, MaterialModel, MatsubaraContext};

/// Width of the `y` window past the lower limit; `e^{-45} ≈ 3e-20`.
pub const Y_WINDOW: f64 = 45.0;

/// Number of consecutive negligible terms required before the sum stops.
const QUIET_TERMS: usize = 3;

/// Plate-plate pressure request.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureQuery {
    /// Plate separation `a` [m].
    pub separation: f64,
    /// Temperature [K].
    pub temperature: f64,
    pub model: MaterialModel,
    /// Relative tolerance of each `k⊥` integral.
    pub quad_tol: f64,
    /// Relative truncation tolerance of the Matsubara sum.
    pub series_tol: f64,
    /// Keep every term in [`PressureResult::per_term`].
    pub keep_terms: bool,
}

impl PressureQuery {
    pub const DEFAULT_QUAD_TOL: f64 = 1e-8;
    pub const DEFAULT_SERIES_TOL: f64 = 1e-9;

    pub fn new(separation: f64, temperature: f64, model: MaterialModel) -> Self {
        Self {
            separation,
            temperature,
            model,
            quad_tol: Self::DEFAULT_QUAD_TOL,
            series_tol: Self::DEFAULT_SERIES_TOL,
            keep_terms: false,
        }
    }

    pub fn with_tolerances(mut self, quad_tol: f64, series_tol: f64) -> Self {
        self.quad_tol = quad_tol;
        self.series_tol = series_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        validate_common(self.separation, self.quad_tol, self.series_tol)?;
        self.model.validate()
    }
}

fn validate_common(separation: f64, quad_tol: f64, series_tol: f64) -> Result<()> {
    if !(separation.is_finite() && separation > 0.0) {
        return Err(Error::InvalidParameter {
            name: "separation",
            reason: "must be positive",
        });
    }
    if !(quad_tol > 0.0 && quad_tol <= 1e-4) {
        return Err(Error::InvalidParameter {
            name: "quad_tol",
            reason: "must lie in (0, 1e-4]",
        });
    }
    if !(series_tol > 0.0 && series_tol <= 1e-4) {
        return Err(Error::InvalidParameter {
            name: "series_tol",
            reason: "must lie in (0, 1e-4]",
        });
    }
    Ok(())
}

/// Pressure with convergence metadata. Negative pressure means attraction.
#[derive(Debug, Clone, PartialEq)]
pub struct PressureResult {
    /// Pressure [Pa].
    pub pressure: f64,
    /// Matsubara terms summed, counting `l = 0`.
    pub terms_used: usize,
    /// Bound on the truncated remainder of the series [Pa].
    pub series_tail_bound: f64,
    /// Accumulated quadrature error estimate [Pa].
    pub quad_error: f64,
    /// `(l, contribution [Pa])` when requested.
    pub per_term: Option<Vec<(u32, f64)>>,
}

/// Reflection coefficients of one plate at a fixed Matsubara index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevelReflection {
    ZeroFrequency(ZeroFrequencyReflection),
    Response(LevelResponse),
    Fixed { r_tm: f64, r_te: f64 },
}

/// Opaque zero-frequency coefficients of a material model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroFrequencyReflection(ZeroFrequency);

impl LevelReflection {
    pub fn at(&self, l: u32, k_perp: f64, ctx: &MatsubaraContext) -> ReflectionPair {
        match self {
            LevelReflection::ZeroFrequency(zero) => zero.0.at(k_perp),
            LevelReflection::Response(response) => reflection_at_level(response, l, k_perp, ctx),
            LevelReflection::Fixed { r_tm, r_te } => ReflectionPair {
                r_tm: *r_tm,
                r_te: *r_te,
                l,
                k_perp,
            },
        }
    }
}

/// Anything that can supply plate reflection coefficients at each Matsubara index.
pub trait Reflector {
    fn level(&self, l: u32, ctx: &MatsubaraContext) -> Result<LevelReflection>;
}

impl Reflector for MaterialModel {
    fn level(&self, l: u32, ctx: &MatsubaraContext) -> Result<LevelReflection> {
        if l == 0 {
            Ok(LevelReflection::ZeroFrequency(ZeroFrequencyReflection(
                ZeroFrequency::for_model(self, ctx)?,
            )))
        } else {
            Ok(LevelReflection::Response(MaterialModel::level(
                self, l, ctx,
            )?))
        }
    }
}

/// Frequency- and momentum-independent reflection coefficients.
///
/// `r_tm = 1, r_te = −1` is the ideal metal; zero is an empty interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedReflection {
    pub r_tm: f64,
    pub r_te: f64,
}

impl FixedReflection {
    pub const IDEAL_METAL: Self = Self {
        r_tm: 1.0,
        r_te: -1.0,
    };
    pub const VACUUM: Self = Self {
        r_tm: 0.0,
        r_te: 0.0,
    };
}

impl Reflector for FixedReflection {
    fn level(&self, _l: u32, _ctx: &MatsubaraContext) -> Result<LevelReflection> {
        Ok(LevelReflection::Fixed {
            r_tm: self.r_tm,
            r_te: self.r_te,
        })
    }
}

/// `x/(1−x)` with `x = r² e^{−y}`, evaluated without forming `e^{y}`.
#[inline]
fn mode_sum(r: f64, y: f64) -> f64 {
    let r2 = r * r;
    if r2 == 0.0 {
        return 0.0;
    }
    let x = r2 * math::exp(-y);
    let one_minus = (1.0 - r2) - r2 * math::expm1(-y);
    x / one_minus
}

struct Term {
    value: f64,
    error: f64,
}

fn term_with<R: Reflector + ?Sized>(
    reflector: &R,
    l: u32,
    separation: f64,
    quad_tol: f64,
    ctx: &MatsubaraContext,
) -> Result<Term> {
    let level = reflector.level(l, ctx)?;
    let xi = matsubara_xi(l, ctx);
    let two_a = 2.0 * separation;
    let y_low = two_a * xi / ctx.c;
    let t_max = math::sqrt(Y_WINDOW);
    let integrand = |t: f64| {
        let t2 = t * t;
        let y = y_low + t2;
        // k⊥ = sqrt(y² − y_l²)/(2a) = t sqrt(t² + 2 y_l)/(2a)
        let k_perp = t * math::sqrt(t2 + 2.0 * y_low) / two_a;
        let r = level.at(l, k_perp, ctx);
        let modes = mode_sum(r.r_tm, y) + mode_sum(r.r_te, y);
        y * y * modes * 2.0 * t
    };
    let integral = quad::integrate(integrand, 0.0, t_max, Tolerance::new(0.0, quad_tol))?;
    let weight = if l == 0 { 0.5 } else { 1.0 };
    let scale = -weight * ctx.k_boltzmann * ctx.temperature
        / PI
        / (8.0 * separation * separation * separation);
    Ok(Term {
        value: scale * integral.value,
        error: scale.abs() * integral.abs_error,
    })
}

/// Contribution of a single Matsubara index to the pressure [Pa], including
/// the `1/2` weight of `l = 0`.
pub fn pressure_term(
    l: u32,
    separation: f64,
    temperature: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    validate_common(separation, PressureQuery::DEFAULT_QUAD_TOL, 1e-4)?;
    let ctx = ctx.with_temperature(temperature)?;
    Ok(term_with(m, l, separation, PressureQuery::DEFAULT_QUAD_TOL, &ctx)?.value)
}

/// Upper limit on `l` for separation `a`: `ceil(20 cħ/(4π a k_B T)) + 100`,
/// further limited by `ctx.l_max_cap`.
pub fn series_cap(separation: f64, ctx: &MatsubaraContext) -> usize {
    let natural = ctx.c * ctx.hbar / (4.0 * PI * separation * ctx.k_boltzmann * ctx.temperature);
    let cap = math::ceil(20.0 * natural) as usize + 100;
    cap.min(ctx.l_max_cap)
}

/// Pressure for any [`Reflector`], summing Matsubara terms in ascending `l`.
pub fn pressure_with<R: Reflector + ?Sized>(
    reflector: &R,
    separation: f64,
    quad_tol: f64,
    series_tol: f64,
    keep_terms: bool,
    ctx: &MatsubaraContext,
) -> Result<PressureResult> {
    validate_common(separation, quad_tol, series_tol)?;
    let cap = series_cap(separation, ctx);
    let mut sum = 0.0;
    let mut quad_error = 0.0;
    let mut quiet = 0;
    let mut previous: Option<f64> = None;
    let mut per_term = if keep_terms { Some(Vec::new()) } else { None };
    let mut tail_bound = f64::INFINITY;

    for l in 0..cap as u32 {
        let term = term_with(reflector, l, separation, quad_tol, ctx)?;
        sum += term.value;
        quad_error += term.error;
        if let Some(terms) = per_term.as_mut() {
            terms.push((l, term.value));
        }

        let magnitude = term.value.abs();
        tail_bound = match previous {
            _ if magnitude == 0.0 => 0.0,
            Some(prev) if prev.abs() > magnitude => {
                let ratio = magnitude / prev.abs();
                magnitude * ratio / (1.0 - ratio)
            }
            _ => f64::INFINITY,
        };
        previous = Some(term.value);

        if l == 0 {
            continue;
        }
        if magnitude <= series_tol * sum.abs() {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_TERMS && tail_bound <= series_tol * sum.abs() {
            return Ok(PressureResult {
                pressure: sum,
                terms_used: l as usize + 1,
                series_tail_bound: tail_bound,
                quad_error,
                per_term,
            });
        }
    }
    Err(Error::SeriesNotConverged {
        partial: sum,
        tail_bound,
        terms: cap,
    })
}

/// Casimir pressure between two identical plates of `query.model`.
pub fn pressure(query: &PressureQuery, ctx: &MatsubaraContext) -> Result<PressureResult> {
    query.validate()?;
    let ctx = ctx.with_temperature(query.temperature)?;
    pressure_with(
        &query.model,
        query.separation,
        query.quad_tol,
        query.series_tol,
        query.keep_terms,
        &ctx,
    )
}

/// Pressures of several models over a separation grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioTable {
    pub separations: Vec<f64>,
    /// `pressures[i][j]` is model `j` at separation `i`.
    pub pressures: Vec<Vec<PressureResult>>,
    pub model_count: usize,
}

impl RatioTable {
    /// `P_j / P_k` at separation index `i`.
    pub fn ratio(&self, i: usize, j: usize, k: usize) -> f64 {
        self.pressures[i][j].pressure / self.pressures[i][k].pressure
    }
}

/// Evaluates every model at every separation.
pub fn pressure_ratio_table(
    separations: &[f64],
    temperature: f64,
    models: &[MaterialModel],
    ctx: &MatsubaraContext,
) -> Result<RatioTable> {
    if separations.is_empty() || models.is_empty() {
        return Err(Error::InvalidParameter {
            name: "grid",
            reason: "separations and models must be nonempty",
        });
    }
    let mut pressures = Vec::with_capacity(separations.len());
    for &a in separations {
        let mut row = Vec::with_capacity(models.len());
        for model in models {
            row.push(pressure(
                &PressureQuery::new(a, temperature, model.clone()),
                ctx,
            )?);
        }
        pressures.push(row);
    }
    Ok(RatioTable {
        separations: separations.to_vec(),
        pressures,
        model_count: models.len(),
    })
}
