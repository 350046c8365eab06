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

//! Surface impedances at imaginary Matsubara frequencies.
//!
//! The exact impedances of a magnetic half-space with specular reflection of
//! electrons are one-dimensional `k_z` integrals,
//!
//! ```text
//! Z_TE = (c ξ μ / π) ∫ dk_z / (μ ε_T ξ² + c² k²)
//! Z_TM = (c ξ μ / π) ∫ dk_z / k² · [ k⊥² / (μ ξ² ε_L) + k_z² / (μ ε_T ξ² + c² k²) ]
//! ```
//!
//! with `k² = k⊥² + k_z²` and both integrals over the whole real line. When
//! the permittivities depend on `k⊥` only the integrals have closed forms;
//! both routes are provided so that one can check the other.

use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::math;
use crate::quad::{self, Tolerance};
use crate::response::{LevelResponse, MaterialModel, MatsubaraContext};

/// Tolerance of the `k_z` quadrature.
pub const KZ_TOLERANCE: Tolerance = Tolerance::new(1e-13, 1e-10);

/// TM and TE surface impedances at `(ξ_l, k⊥)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImpedancePair {
    pub z_tm: f64,
    pub z_te: f64,
    pub l: u32,
    pub k_perp: f64,
}

/// Wave numbers entering the reflection coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumbers {
    pub k_perp: f64,
    /// `q_l = sqrt(k⊥² + ξ_l²/c²)`
    pub q_l: f64,
    /// `k_μ = sqrt(k⊥² + μ ε_T ξ_l²/c²)`
    pub k_mu_tr: f64,
}

impl WaveNumbers {
    pub fn new(xi: f64, k_perp: f64, mu: f64, eps_t: f64, c: f64) -> Self {
        let xc = xi / c;
        Self {
            k_perp,
            q_l: math::sqrt(k_perp * k_perp + xc * xc),
            k_mu_tr: math::sqrt(k_perp * k_perp + mu * eps_t * xc * xc),
        }
    }
}

/// Permittivities that may depend on the full wave vector, frozen at one `ξ`.
///
/// [`LevelResponse`] implements this with `ε` depending on `k⊥` only; other
/// implementations can exercise the general `k_z` integrals.
pub trait SpatialDispersion {
    fn xi(&self) -> f64;
    fn mu(&self) -> f64;
    fn eps_transverse(&self, k_perp: f64, k_z: f64) -> f64;
    fn eps_longitudinal(&self, k_perp: f64, k_z: f64) -> f64;
}

impl SpatialDispersion for LevelResponse {
    fn xi(&self) -> f64 {
        self.xi
    }

    fn mu(&self) -> f64 {
        self.mu
    }

    fn eps_transverse(&self, k_perp: f64, _k_z: f64) -> f64 {
        LevelResponse::eps_transverse(self, k_perp)
    }

    fn eps_longitudinal(&self, k_perp: f64, _k_z: f64) -> f64 {
        LevelResponse::eps_longitudinal(self, k_perp)
    }
}

fn check_k_perp(k_perp: f64) -> Result<()> {
    if k_perp >= 0.0 && k_perp.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: "k_perp",
            reason: "must be finite and non-negative",
        })
    }
}

/// `(2/π) ∫₀^{π/2} g(s tan θ) s sec²θ dθ`, i.e. `(1/π) ∫_{-∞}^{∞} g(k_z) dk_z` for even `g`.
fn even_line_integral<G: Fn(f64) -> f64>(g: G, scale: f64) -> Result<f64> {
    let r = quad::integrate(
        |theta| {
            let (s, c) = (libm::sin(theta), libm::cos(theta));
            let k_z = scale * s / c;
            g(k_z) * scale / (c * c)
        },
        0.0,
        FRAC_PI_2,
        KZ_TOLERANCE,
    )?;
    Ok(2.0 / PI * r.value)
}

/// TE impedance of a generic response by numerical `k_z` integration.
pub fn z_te_integral_with<R: SpatialDispersion>(
    response: &R,
    k_perp: f64,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    check_k_perp(k_perp)?;
    let (xi, mu, c) = (response.xi(), response.mu(), ctx.c);
    if !(xi > 0.0) {
        return Err(Error::ZeroFrequency);
    }
    let kp2 = k_perp * k_perp;
    let eps0 = response.eps_transverse(k_perp, 0.0);
    let scale = math::sqrt(kp2 + mu * eps0 * xi * xi / (c * c));
    even_line_integral(
        |k_z| {
            let eps_t = response.eps_transverse(k_perp, k_z);
            let denom = mu * eps_t * xi * xi + c * c * (kp2 + k_z * k_z);
            debug_assert!(denom > 0.0);
            c * xi * mu / denom
        },
        scale,
    )
}

/// TM impedance of a generic response by numerical `k_z` integration.
///
/// The longitudinal part varies on the scale `k⊥` and the transverse part on
/// `k_μ`, so the two are integrated separately.
pub fn z_tm_integral_with<R: SpatialDispersion>(
    response: &R,
    k_perp: f64,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    check_k_perp(k_perp)?;
    let (xi, mu, c) = (response.xi(), response.mu(), ctx.c);
    if !(xi > 0.0) {
        return Err(Error::ZeroFrequency);
    }
    let kp2 = k_perp * k_perp;
    let prefactor = c * xi * mu;

    let longitudinal = if k_perp > 0.0 {
        even_line_integral(
            |k_z| {
                let k2 = kp2 + k_z * k_z;
                let eps_l = response.eps_longitudinal(k_perp, k_z);
                debug_assert!(eps_l > 0.0);
                prefactor * kp2 / (k2 * mu * xi * xi * eps_l)
            },
            k_perp,
        )?
    } else {
        0.0
    };

    let eps0 = response.eps_transverse(k_perp, 0.0);
    let scale = math::sqrt(kp2 + mu * eps0 * xi * xi / (c * c));
    let transverse = even_line_integral(
        |k_z| {
            let kz2 = k_z * k_z;
            let k2 = kp2 + kz2;
            let eps_t = response.eps_transverse(k_perp, k_z);
            let denom = mu * eps_t * xi * xi + c * c * k2;
            debug_assert!(denom > 0.0);
            // k_z²/k² written so that k_z = 0 at k⊥ = 0 stays finite
            let ratio = if k2 > 0.0 { kz2 / k2 } else { 1.0 };
            prefactor * ratio / denom
        },
        scale,
    )?;
    Ok(longitudinal + transverse)
}

/// Closed-form TE impedance, `ξμ / sqrt(c²k⊥² + μ ε_T(k⊥) ξ²)`.
pub fn z_te_closed_level(response: &LevelResponse, k_perp: f64, ctx: &MatsubaraContext) -> f64 {
    let (xi, mu, c) = (response.xi, response.mu, ctx.c);
    let eps_t = response.eps_transverse(k_perp);
    xi * mu / math::sqrt(c * c * k_perp * k_perp + mu * eps_t * xi * xi)
}

/// Closed-form TM impedance,
/// `(1/ξ)[c k⊥/ε_L + (sqrt(c²k⊥² + μ ε_T ξ²) − c k⊥)/ε_T]`.
pub fn z_tm_closed_level(response: &LevelResponse, k_perp: f64, ctx: &MatsubaraContext) -> f64 {
    let (xi, mu, c) = (response.xi, response.mu, ctx.c);
    let eps_t = response.eps_transverse(k_perp);
    let eps_l = response.eps_longitudinal(k_perp);
    let ck = c * k_perp;
    let mu_eps_xi2 = mu * eps_t * xi * xi;
    let root = math::sqrt(ck * ck + mu_eps_xi2);
    // root − ck rewritten to avoid cancellation at large k⊥
    let transverse = mu_eps_xi2 / (root + ck);
    (ck / eps_l + transverse / eps_t) / xi
}

/// TE impedance of `model` at `(ξ_l, k⊥)` by `k_z` quadrature.
pub fn z_te_integral(
    l: u32,
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    z_te_integral_with(&m.level(l, ctx)?, k_perp, ctx)
}

/// TM impedance of `model` at `(ξ_l, k⊥)` by `k_z` quadrature.
pub fn z_tm_integral(
    l: u32,
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    z_tm_integral_with(&m.level(l, ctx)?, k_perp, ctx)
}

/// Closed-form TE impedance of `model` at `(ξ_l, k⊥)`.
pub fn z_te_closed(l: u32, k_perp: f64, m: &MaterialModel, ctx: &MatsubaraContext) -> Result<f64> {
    check_k_perp(k_perp)?;
    Ok(z_te_closed_level(&m.level(l, ctx)?, k_perp, ctx))
}

/// Closed-form TM impedance of `model` at `(ξ_l, k⊥)`.
pub fn z_tm_closed(l: u32, k_perp: f64, m: &MaterialModel, ctx: &MatsubaraContext) -> Result<f64> {
    check_k_perp(k_perp)?;
    Ok(z_tm_closed_level(&m.level(l, ctx)?, k_perp, ctx))
}

/// Both closed-form impedances of `model`.
pub fn z_closed(
    l: u32,
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<ImpedancePair> {
    check_k_perp(k_perp)?;
    let level = m.level(l, ctx)?;
    Ok(ImpedancePair {
        z_tm: z_tm_closed_level(&level, k_perp, ctx),
        z_te: z_te_closed_level(&level, k_perp, ctx),
        l,
        k_perp,
    })
}

/// Both impedances of `model` by `k_z` quadrature.
pub fn z_integral(
    l: u32,
    k_perp: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<ImpedancePair> {
    let level = m.level(l, ctx)?;
    Ok(ImpedancePair {
        z_tm: z_tm_integral_with(&level, k_perp, ctx)?,
        z_te: z_te_integral_with(&level, k_perp, ctx)?,
        l,
        k_perp,
    })
}

/// Impedances of a local medium with constant `ε_l`, `μ_l`.
pub fn z_local(
    l: u32,
    k_perp: f64,
    eps_l: f64,
    mu_l: f64,
    ctx: &MatsubaraContext,
) -> Result<ImpedancePair> {
    if l == 0 {
        return Err(Error::ZeroFrequency);
    }
    check_k_perp(k_perp)?;
    if !(eps_l >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "eps_l",
            reason: "must be at least 1",
        });
    }
    let xi = crate::response::matsubara_xi(l, ctx);
    let c = ctx.c;
    let root = math::sqrt(c * c * k_perp * k_perp + mu_l * eps_l * xi * xi);
    Ok(ImpedancePair {
        z_tm: root / (xi * eps_l),
        z_te: xi * mu_l / root,
        l,
        k_perp,
    })
}
