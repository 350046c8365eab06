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

//! Dielectric and magnetic response on the imaginary frequency axis.
//!
//! All functions take `ξ` in rad/s and return real, dimensionless values.
//! The free-electron forms used by the three model variants are
//!
//! ```text
//! Drude:        ε(iξ)     = 1 + ω_p² / (ξ(ξ+γ))
//! plasma:       ε(iξ)     = 1 + ω_p² / ξ²
//! nonlocal, transverse:   ε_T(iξ,k⊥) = 1 + ω_p²/(ξ(ξ+γ)) · (1 + v_T k⊥/ξ)
//! nonlocal, longitudinal: ε_L(iξ,k⊥) = 1 + ω_p²/(ξ(ξ+γ)) · (1 + v_L k⊥/ξ)⁻¹
//! ```
//!
//! When a model carries an [`InterbandTable`], the leading `1` in each form is
//! replaced by the core-electron permittivity obtained from the tabulated
//! `Im ε(ω)` through the Kramers-Kronig relation (see [`eps_core_kk`]). That
//! replacement happens in [`MaterialModel::level`]; the scalar functions in
//! this module are the bare free-electron expressions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::math;
use crate::quad::{self, Tolerance};
use crate::units::{self, HBAR, K_BOLTZMANN, NICKEL_FERMI_VELOCITY, SPEED_OF_LIGHT};

/// Which dielectric description of the metal is used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Drude,
    Plasma,
    NonlocalAlt,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Drude, Variant::Plasma, Variant::NonlocalAlt];

    /// Short lowercase name used in CSV output and on the command line.
    pub fn name(self) -> &'static str {
        match self {
            Variant::Drude => "drude",
            Variant::Plasma => "plasma",
            Variant::NonlocalAlt => "nonlocal",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "drude" => Some(Variant::Drude),
            "plasma" => Some(Variant::Plasma),
            "nonlocal" => Some(Variant::NonlocalAlt),
            _ => None,
        }
    }
}

impl core::fmt::Display for Variant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Tabulated imaginary part of the measured permittivity, `Im ε(ω)`.
///
/// Rows are stored in SI (rad/s) and must be strictly increasing in `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct InterbandTable {
    omega: Vec<f64>,
    im_eps: Vec<f64>,
}

impl InterbandTable {
    /// Builds a table from `(ω [rad/s], Im ε)` rows.
    pub fn new(rows: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let (omega, im_eps): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
        if omega.len() < 2 {
            return Err(Error::InvalidParameter {
                name: "interband",
                reason: "table needs at least two rows",
            });
        }
        if omega.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidParameter {
                name: "interband.omega",
                reason: "frequencies must be positive and finite",
            });
        }
        if omega.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidParameter {
                name: "interband.omega",
                reason: "frequencies must be strictly increasing",
            });
        }
        if im_eps.iter().any(|e| !(e.is_finite() && *e >= 0.0)) {
            return Err(Error::InvalidParameter {
                name: "interband.im_eps",
                reason: "Im eps must be finite and non-negative",
            });
        }
        Ok(Self { omega, im_eps })
    }

    /// Builds a table from `(ħω [eV], Im ε)` rows.
    pub fn from_ev(rows: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(|(e, im)| (units::ev_to_rad_per_s(e), im)),
        )
    }

    pub fn len(&self) -> usize {
        self.omega.len()
    }

    pub fn is_empty(&self) -> bool {
        self.omega.is_empty()
    }

    pub fn omega_min(&self) -> f64 {
        self.omega[0]
    }

    pub fn omega_max(&self) -> f64 {
        self.omega[self.omega.len() - 1]
    }

    /// Rows as `(ω [rad/s], Im ε)`.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.omega.iter().copied().zip(self.im_eps.iter().copied())
    }

    /// Linear interpolation of `Im ε` inside the tabulated range.
    pub fn im_eps_at(&self, omega: f64) -> Option<f64> {
        if omega < self.omega_min() || omega > self.omega_max() {
            return None;
        }
        let idx = self.omega.partition_point(|w| *w <= omega);
        if idx == 0 {
            return Some(self.im_eps[0]);
        }
        if idx >= self.omega.len() {
            return Some(self.im_eps[self.omega.len() - 1]);
        }
        let (w0, w1) = (self.omega[idx - 1], self.omega[idx]);
        let (e0, e1) = (self.im_eps[idx - 1], self.im_eps[idx]);
        Some(e0 + (e1 - e0) * (omega - w0) / (w1 - w0))
    }
}

/// Free-electron parameters and the response variant of the plate metal.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialModel {
    /// Plasma frequency ω_p [rad/s].
    pub omega_p: f64,
    /// Relaxation parameter γ [rad/s]; ignored by the plasma variant.
    pub gamma: f64,
    /// Static magnetic permeability μ(0).
    pub mu0: f64,
    /// Transverse nonlocal velocity v_T [m/s].
    pub v_t: f64,
    /// Longitudinal nonlocal velocity v_L [m/s].
    pub v_l: f64,
    pub interband: Option<InterbandTable>,
    pub variant: Variant,
}

impl MaterialModel {
    /// Validated model from SI parameters.
    pub fn new(
        variant: Variant,
        omega_p: f64,
        gamma: f64,
        mu0: f64,
        v_t: f64,
        v_l: f64,
    ) -> Result<Self> {
        let model = Self {
            omega_p,
            gamma,
            mu0,
            v_t,
            v_l,
            interband: None,
            variant,
        };
        model.validate()?;
        Ok(model)
    }

    /// Validated model with `ħω_p` and `ħγ` given in eV.
    pub fn from_ev(
        variant: Variant,
        omega_p_ev: f64,
        gamma_ev: f64,
        mu0: f64,
        v_t: f64,
        v_l: f64,
    ) -> Result<Self> {
        Self::new(
            variant,
            units::ev_to_rad_per_s(omega_p_ev),
            units::ev_to_rad_per_s(gamma_ev),
            mu0,
            v_t,
            v_l,
        )
    }

    /// Unmagnetized nickel at 300 K: ħω_p = 4.89 eV, ħγ = 0.0436 eV, μ(0) = 110,
    /// v_T = v_L = 7 v_F with v_F = 1.31×10⁶ m/s.
    pub fn nickel(variant: Variant) -> Self {
        let v = 7.0 * NICKEL_FERMI_VELOCITY;
        Self::from_ev(variant, 4.89, 0.0436, 110.0, v, v).expect("nickel parameters are valid")
    }

    pub fn nickel_drude() -> Self {
        Self::nickel(Variant::Drude)
    }

    pub fn nickel_plasma() -> Self {
        Self::nickel(Variant::Plasma)
    }

    pub fn nickel_nonlocal() -> Self {
        Self::nickel(Variant::NonlocalAlt)
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_interband(mut self, table: InterbandTable) -> Self {
        self.interband = Some(table);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let check = |ok: bool, name, reason| {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter { name, reason })
            }
        };
        check(
            self.omega_p.is_finite() && self.omega_p > 0.0,
            "omega_p",
            "must be positive",
        )?;
        check(
            self.gamma.is_finite() && self.gamma >= 0.0,
            "gamma",
            "must be non-negative",
        )?;
        check(
            self.mu0.is_finite() && self.mu0 >= 1.0,
            "mu0",
            "must be at least 1",
        )?;
        check(
            self.v_t >= 0.0 && self.v_t < SPEED_OF_LIGHT,
            "v_t",
            "must lie in [0, c)",
        )?;
        check(
            self.v_l >= 0.0 && self.v_l < SPEED_OF_LIGHT,
            "v_l",
            "must lie in [0, c)",
        )
    }

    /// Free-electron excess `ε − 1` of the local part of this model at `ξ > 0`.
    fn local_excess(&self, xi: f64) -> f64 {
        match self.variant {
            Variant::Plasma => self.omega_p * self.omega_p / (xi * xi),
            Variant::Drude | Variant::NonlocalAlt => {
                self.omega_p * self.omega_p / (xi * (xi + self.gamma))
            }
        }
    }

    /// Response of this model at the Matsubara frequency `ξ_l`, `l ≥ 1`, with the
    /// interband correction evaluated once for the whole level.
    pub fn level(&self, l: u32, ctx: &MatsubaraContext) -> Result<LevelResponse> {
        if l == 0 {
            return Err(Error::ZeroFrequency);
        }
        self.at_frequency(matsubara_xi(l, ctx), mu_at(l, self), ctx)
    }

    /// Response at an arbitrary imaginary frequency `ξ > 0` with an explicit `μ`.
    pub fn at_frequency(&self, xi: f64, mu: f64, ctx: &MatsubaraContext) -> Result<LevelResponse> {
        if !(xi > 0.0) {
            return Err(Error::ZeroFrequency);
        }
        let core = match &self.interband {
            Some(table) => eps_core_kk(xi, table, self, ctx)?,
            None => 1.0,
        };
        let (v_t, v_l) = match self.variant {
            Variant::NonlocalAlt => (self.v_t, self.v_l),
            Variant::Drude | Variant::Plasma => (0.0, 0.0),
        };
        Ok(LevelResponse {
            xi,
            mu,
            core,
            excess: self.local_excess(xi),
            v_t,
            v_l,
        })
    }
}

/// Material response frozen at one imaginary frequency.
///
/// For the local variants `v_t = v_l = 0` and both permittivities coincide.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevelResponse {
    pub xi: f64,
    pub mu: f64,
    /// Core-electron permittivity replacing the leading 1 (exactly 1 without interband data).
    pub core: f64,
    /// Free-electron excess at `k⊥ = 0`.
    pub excess: f64,
    pub v_t: f64,
    pub v_l: f64,
}

impl LevelResponse {
    /// Local response with constant `ε` and `μ`, used for oracles and test fixtures.
    pub fn local(xi: f64, eps: f64, mu: f64) -> Self {
        Self {
            xi,
            mu,
            core: 1.0,
            excess: eps - 1.0,
            v_t: 0.0,
            v_l: 0.0,
        }
    }

    pub fn eps_transverse(&self, k_perp: f64) -> f64 {
        self.core + self.excess * (1.0 + self.v_t * k_perp / self.xi)
    }

    pub fn eps_longitudinal(&self, k_perp: f64) -> f64 {
        self.core + self.excess / (1.0 + self.v_l * k_perp / self.xi)
    }

    /// `ε_T − ε_L` without the cancellation of the two core terms.
    pub fn eps_difference(&self, k_perp: f64) -> f64 {
        let s = self.v_t * k_perp / self.xi;
        let u = self.v_l * k_perp / self.xi;
        self.excess * (s + u / (1.0 + u))
    }

    pub fn is_local(&self) -> bool {
        self.v_t == 0.0 && self.v_l == 0.0
    }
}

/// Temperature, physical constants and series controls for Matsubara sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatsubaraContext {
    /// Temperature [K].
    pub temperature: f64,
    pub hbar: f64,
    pub k_boltzmann: f64,
    pub c: f64,
    /// Relative accuracy target for auxiliary series and tails, in (0, 1e-3].
    pub rel_tol: f64,
    /// Hard upper limit on the number of Matsubara terms.
    pub l_max_cap: usize,
}

impl MatsubaraContext {
    pub const DEFAULT_REL_TOL: f64 = 1e-4;
    pub const DEFAULT_L_MAX_CAP: usize = 1_000_000;

    /// Context at temperature `T` with CODATA constants and default controls.
    pub fn new(temperature: f64) -> Result<Self> {
        let ctx = Self {
            temperature,
            hbar: HBAR,
            k_boltzmann: K_BOLTZMANN,
            c: SPEED_OF_LIGHT,
            rel_tol: Self::DEFAULT_REL_TOL,
            l_max_cap: Self::DEFAULT_L_MAX_CAP,
        };
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn with_temperature(mut self, temperature: f64) -> Result<Self> {
        self.temperature = temperature;
        self.validate()?;
        Ok(self)
    }

    pub fn with_rel_tol(mut self, rel_tol: f64) -> Result<Self> {
        self.rel_tol = rel_tol;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return Err(Error::InvalidParameter {
                name: "temperature",
                reason: "must be positive",
            });
        }
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::InvalidParameter {
                name: "rel_tol",
                reason: "must lie in (0, 1e-3]",
            });
        }
        if self.l_max_cap < 10 {
            return Err(Error::InvalidParameter {
                name: "l_max_cap",
                reason: "must be at least 10",
            });
        }
        Ok(())
    }

    /// First Matsubara frequency `ξ_1 = 2π k_B T / ħ`.
    pub fn xi_unit(&self) -> f64 {
        2.0 * PI * self.k_boltzmann * self.temperature / self.hbar
    }
}

/// Matsubara frequency `ξ_l = 2π k_B T l / ħ` [rad/s].
pub fn matsubara_xi(l: u32, ctx: &MatsubaraContext) -> f64 {
    ctx.xi_unit() * f64::from(l)
}

fn require_positive_xi(xi: f64) -> Result<()> {
    if xi > 0.0 {
        Ok(())
    } else {
        Err(Error::ZeroFrequency)
    }
}

/// Drude permittivity `1 + ω_p²/(ξ(ξ+γ))`.
pub fn eps_drude(xi: f64, m: &MaterialModel) -> Result<f64> {
    require_positive_xi(xi)?;
    Ok(1.0 + m.omega_p * m.omega_p / (xi * (xi + m.gamma)))
}

/// Plasma-model permittivity `1 + ω_p²/ξ²`.
pub fn eps_plasma(xi: f64, m: &MaterialModel) -> Result<f64> {
    require_positive_xi(xi)?;
    Ok(1.0 + m.omega_p * m.omega_p / (xi * xi))
}

/// Transverse permittivity of the nonlocal alternative response.
pub fn eps_transverse_nl(xi: f64, k_perp: f64, m: &MaterialModel) -> Result<f64> {
    require_positive_xi(xi)?;
    let excess = m.omega_p * m.omega_p / (xi * (xi + m.gamma));
    Ok(1.0 + excess * (1.0 + m.v_t * k_perp / xi))
}

/// Longitudinal permittivity of the nonlocal alternative response.
pub fn eps_longitudinal_nl(xi: f64, k_perp: f64, m: &MaterialModel) -> Result<f64> {
    require_positive_xi(xi)?;
    let excess = m.omega_p * m.omega_p / (xi * (xi + m.gamma));
    Ok(1.0 + excess / (1.0 + m.v_l * k_perp / xi))
}

/// Magnetic permeability at the Matsubara frequency `ξ_l`.
///
/// `μ(iξ)` of a ferromagnet falls to unity far below `ξ_1`, so only the
/// static value survives, at `l = 0`.
pub fn mu_at(l: u32, m: &MaterialModel) -> f64 {
    if l == 0 {
        m.mu0
    } else {
        1.0
    }
}

/// Drude contribution to `Im ε(ω)` on the real axis, `ω_p²γ/(ω(ω²+γ²))`.
pub(crate) fn drude_im_eps(omega: f64, m: &MaterialModel) -> f64 {
    m.omega_p * m.omega_p * m.gamma / (omega * (omega * omega + m.gamma * m.gamma))
}

/// Interband (core-electron) permittivity at `iξ` from tabulated `Im ε(ω)`:
///
/// ```text
/// ε_core(iξ) = 1 + (2/π) ∫₀^∞ ω ε″_ib(ω) / (ω² + ξ²) dω,
/// ε″_ib(ω)   = max(0, Im ε_table(ω) − ω_p²γ / (ω(ω²+γ²)))
/// ```
///
/// Below the table `ε″_ib = 0`; above it `ε″_ib(ω_max)(ω_max/ω)³`, integrated
/// analytically. Each table interval is integrated in `ln ω` with adaptive
/// Gauss-Kronrod at 1e-9. The result is rejected when the extrapolated tail
/// exceeds `ctx.rel_tol` of the integral.
pub fn eps_core_kk(
    xi: f64,
    table: &InterbandTable,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    require_positive_xi(xi)?;
    let excess = |omega: f64| -> f64 {
        let tabulated = table.im_eps_at(omega).unwrap_or(0.0);
        let ib = tabulated - drude_im_eps(omega, m);
        if ib > 0.0 {
            ib
        } else {
            0.0
        }
    };
    let xi2 = xi * xi;
    let tol = Tolerance::new(0.0, 1e-9);
    let mut body = 0.0;
    for w in table.omega.windows(2) {
        let (lo, hi) = (math::ln(w[0]), math::ln(w[1]));
        // ω dω = ω² d(ln ω)
        let panel = quad::integrate(
            |u| {
                let omega = math::exp(u);
                let omega = omega.clamp(w[0], w[1]);
                omega * omega * excess(omega) / (omega * omega + xi2)
            },
            lo,
            hi,
            tol,
        )?;
        body += panel.value;
    }

    let top = table.omega_max();
    let top_excess = excess(top);
    let tail = top_excess * cubic_tail(top, xi);
    let integral = body + tail;
    if integral > 0.0 && tail > ctx.rel_tol * integral {
        return Err(Error::KramersKronigTail {
            tail_fraction: tail / integral,
        });
    }
    Ok(1.0 + 2.0 / PI * integral)
}

/// `∫_M^∞ ω (M/ω)³ / (ω² + ξ²) dω = (M/ξ)³ (ξ/M − atan(ξ/M))`.
fn cubic_tail(top: f64, xi: f64) -> f64 {
    let u = xi / top;
    if u < 1e-2 {
        let u2 = u * u;
        // u − atan u = u³/3 − u⁵/5 + u⁷/7 − …, divided by u³
        1.0 / 3.0 - u2 / 5.0 + u2 * u2 / 7.0 - u2 * u2 * u2 / 9.0
    } else {
        (u - math::atan(u)) / (u * u * u)
    }
}
