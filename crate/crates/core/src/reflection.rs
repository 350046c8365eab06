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

//! TM and TE reflection coefficients on the imaginary frequency axis.
//!
//! Every coefficient here is real. For `l ≥ 1` the nonlocal closed form
//! reduces to the Fresnel coefficients when `ε_T = ε_L`, so one routine
//! ([`reflection_at_level`]) serves all three variants. The `l = 0` term has
//! no impedance representation and is handled through the exact zero-frequency
//! limits of each model.

use crate::error::{Error, Result};
use crate::impedance::{ImpedancePair, WaveNumbers};
use crate::math;
use crate::response::{matsubara_xi, LevelResponse, MaterialModel, MatsubaraContext, Variant};

/// Reflection coefficients at `(ξ_l, k⊥)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionPair {
    pub r_tm: f64,
    pub r_te: f64,
    pub l: u32,
    pub k_perp: f64,
}

/// Reflection coefficients from the surface impedances.
pub fn refl_from_impedance(
    z: &ImpedancePair,
    l: u32,
    k_perp: f64,
    ctx: &MatsubaraContext,
) -> Result<ReflectionPair> {
    if l == 0 {
        return Err(Error::ZeroFrequency);
    }
    let xi = matsubara_xi(l, ctx);
    let cq = ctx.c * WaveNumbers::new(xi, k_perp, 1.0, 1.0, ctx.c).q_l;
    let tm = xi * z.z_tm;
    let te = cq * z.z_te;
    Ok(ReflectionPair {
        r_tm: (cq - tm) / (cq + tm),
        r_te: (te - xi) / (te + xi),
        l,
        k_perp,
    })
}

/// Closed-form coefficients for a response frozen at one frequency:
///
/// ```text
/// r_TM = (q ε_T − k_μ − k⊥(ε_T − ε_L)/ε_L) / (q ε_T + k_μ + k⊥(ε_T − ε_L)/ε_L)
/// r_TE = (q μ − k_μ) / (q μ + k_μ)
/// ```
pub fn reflection_at_level(
    response: &LevelResponse,
    l: u32,
    k_perp: f64,
    ctx: &MatsubaraContext,
) -> ReflectionPair {
    let eps_t = response.eps_transverse(k_perp);
    let waves = WaveNumbers::new(response.xi, k_perp, response.mu, eps_t, ctx.c);
    let nonlocal = if response.is_local() {
        0.0
    } else {
        k_perp * response.eps_difference(k_perp) / response.eps_longitudinal(k_perp)
    };
    let q_eps = waves.q_l * eps_t;
    let q_mu = waves.q_l * response.mu;
    ReflectionPair {
        r_tm: (q_eps - waves.k_mu_tr - nonlocal) / (q_eps + waves.k_mu_tr + nonlocal),
        r_te: (q_mu - waves.k_mu_tr) / (q_mu + waves.k_mu_tr),
        l,
        k_perp,
    }
}

/// Closed-form reflection coefficients of `model` at `(ξ_l, k⊥)`, `l ≥ 1`.
pub fn refl_nonlocal_closed(
    l: u32,
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<ReflectionPair> {
    let level = m.level(l, ctx)?;
    Ok(reflection_at_level(&level, l, k_perp, ctx))
}

/// Fresnel coefficients of a local medium with constant `ε_l`, `μ_l`.
pub fn refl_fresnel(
    l: u32,
    k_perp: f64,
    eps_l: f64,
    mu_l: f64,
    ctx: &MatsubaraContext,
) -> Result<ReflectionPair> {
    if l == 0 {
        return Err(Error::ZeroFrequency);
    }
    if !(eps_l >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "eps_l",
            reason: "must be at least 1",
        });
    }
    if !(mu_l >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "mu_l",
            reason: "must be at least 1",
        });
    }
    let level = LevelResponse::local(matsubara_xi(l, ctx), eps_l, mu_l);
    Ok(reflection_at_level(&level, l, k_perp, ctx))
}

/// Exact `ξ = 0` coefficients of the nonlocal alternative response:
///
/// ```text
/// r_TM(0, k⊥) = ω_p² / (2 v_L γ k⊥ + ω_p²)
/// r_TE(0, k⊥) = (μ₀ √k⊥ − √(k⊥ + B)) / (μ₀ √k⊥ + √(k⊥ + B)),  B = μ₀ ω_p² v_T / (γ c²)
/// ```
///
/// At `k⊥ = 0` the TE value is the limit `−1` (for `B > 0`).
pub fn refl_zero_freq(
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<ReflectionPair> {
    if m.variant != Variant::NonlocalAlt {
        return Err(Error::Precondition(
            "exact zero-frequency coefficients apply to the nonlocal variant",
        ));
    }
    if !(m.gamma > 0.0) {
        return Err(Error::Precondition(
            "nonlocal zero-frequency term needs gamma > 0; use the plasma variant",
        ));
    }
    Ok(ZeroFrequency::nonlocal(m, ctx).at(k_perp))
}

/// `ξ → 0` limits of the Fresnel coefficients for the local variants.
///
/// Drude: `ξ²ε → 0`, so `r_TM = 1` and `r_TE = (μ₀ − 1)/(μ₀ + 1)`.
/// Plasma: `ξ²ε → ω_p²`, so `r_TM = 1` and
/// `r_TE = (μ₀ k⊥ − √(k⊥² + μ₀ω_p²/c²)) / (μ₀ k⊥ + √(k⊥² + μ₀ω_p²/c²))`.
pub fn refl_zero_freq_local(
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<ReflectionPair> {
    match m.variant {
        Variant::Drude | Variant::Plasma => Ok(ZeroFrequency::local(m, ctx).at(k_perp)),
        Variant::NonlocalAlt => Err(Error::Precondition(
            "local zero-frequency limits apply to the Drude and plasma variants",
        )),
    }
}

/// Zero-frequency reflection of one model, with the `k⊥`-independent pieces precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum ZeroFrequency {
    Drude { r_te: f64 },
    Plasma { mu0: f64, kappa2: f64 },
    Nonlocal { tm_scale: f64, mu0: f64, b: f64 },
}

impl ZeroFrequency {
    pub(crate) fn for_model(m: &MaterialModel, ctx: &MatsubaraContext) -> Result<Self> {
        match m.variant {
            Variant::NonlocalAlt if !(m.gamma > 0.0) => Err(Error::Precondition(
                "nonlocal zero-frequency term needs gamma > 0; use the plasma variant",
            )),
            Variant::NonlocalAlt => Ok(Self::nonlocal(m, ctx)),
            Variant::Drude | Variant::Plasma => Ok(Self::local(m, ctx)),
        }
    }

    fn nonlocal(m: &MaterialModel, ctx: &MatsubaraContext) -> Self {
        let wp2 = m.omega_p * m.omega_p;
        Self::Nonlocal {
            tm_scale: 2.0 * m.v_l * m.gamma / wp2,
            mu0: m.mu0,
            b: m.mu0 * wp2 * m.v_t / (m.gamma * ctx.c * ctx.c),
        }
    }

    fn local(m: &MaterialModel, ctx: &MatsubaraContext) -> Self {
        match m.variant {
            Variant::Plasma => Self::Plasma {
                mu0: m.mu0,
                kappa2: m.mu0 * m.omega_p * m.omega_p / (ctx.c * ctx.c),
            },
            _ => Self::Drude {
                r_te: (m.mu0 - 1.0) / (m.mu0 + 1.0),
            },
        }
    }

    pub(crate) fn at(&self, k_perp: f64) -> ReflectionPair {
        let (r_tm, r_te) = match *self {
            Self::Drude { r_te } => (1.0, r_te),
            Self::Plasma { mu0, kappa2 } => {
                let root = math::sqrt(k_perp * k_perp + kappa2);
                let mk = mu0 * k_perp;
                (1.0, (mk - root) / (mk + root))
            }
            Self::Nonlocal { tm_scale, mu0, b } => {
                let tm = 1.0 / (1.0 + tm_scale * k_perp);
                let sk = mu0 * math::sqrt(k_perp);
                let root = math::sqrt(k_perp + b);
                let te = if sk + root > 0.0 {
                    (sk - root) / (sk + root)
                } else {
                    // k⊥ = 0 and B = 0
                    (mu0 - 1.0) / (mu0 + 1.0)
                };
                (tm, te)
            }
        };
        ReflectionPair {
            r_tm,
            r_te,
            l: 0,
            k_perp,
        }
    }
}

/// Reflection coefficients of `model` at any Matsubara index.
pub fn reflection(
    l: u32,
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<ReflectionPair> {
    if l == 0 {
        Ok(ZeroFrequency::for_model(m, ctx)?.at(k_perp))
    } else {
        refl_nonlocal_closed(l, k_perp, m, ctx)
    }
}
