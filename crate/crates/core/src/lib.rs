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

//! Casimir pressure between parallel magnetic metal plates.
//!
//! The crate evaluates the Lifshitz formula at imaginary Matsubara frequencies
//! for three descriptions of the metal:
//!
//! - the dissipative Drude model,
//! - the dissipationless plasma model,
//! - a spatially nonlocal ("alternative") response whose transverse and
//!   longitudinal permittivities depend on the in-plane wave number `k⊥`.
//!
//! Reflection coefficients can be built either from closed forms or from the
//! exact surface impedances, which are also available as numerical `k_z`
//! integrals for generic `ε(iξ, k)`. The sphere-plate force gradient follows
//! from the plate pressure through the proximity force approximation with
//! roughness and beyond-PFA corrections.
//!
//! Everything here is pure computation on `f64`; the crate is `no_std` with
//! `alloc` when the default `std` feature is disabled.
//!
//! ```
//! use lifshitz_core::{MaterialModel, MatsubaraContext, PressureQuery, pressure};
//!
//! let ctx = MatsubaraContext::new(300.0).unwrap();
//! let nickel = MaterialModel::nickel_nonlocal();
//! let query = PressureQuery::new(4.0e-6, 300.0, nickel);
//! let result = pressure(&query, &ctx).unwrap();
//! assert!(result.pressure < 0.0);
//! ```

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

mod error;
pub mod impedance;
pub mod lifshitz;
mod math;
pub mod quad;
pub mod reflection;
pub mod response;
pub mod sphere_plate;
pub mod units;

pub use error::{Error, Result};
pub use impedance::{
    z_local, z_te_closed, z_te_integral, z_tm_closed, z_tm_integral, ImpedancePair, WaveNumbers,
};
pub use lifshitz::{
    pressure, pressure_ratio_table, pressure_term, pressure_with, FixedReflection, PressureQuery,
    PressureResult, RatioTable,
};
pub use reflection::{
    refl_fresnel, refl_from_impedance, refl_nonlocal_closed, refl_zero_freq, refl_zero_freq_local,
    ReflectionPair,
};
pub use response::{
    eps_core_kk, eps_drude, eps_longitudinal_nl, eps_plasma, eps_transverse_nl, matsubara_xi,
    mu_at, InterbandTable, MaterialModel, MatsubaraContext, Variant,
};
pub use sphere_plate::{
    apply_pfa_correction, apply_roughness, compare, gradient_pfa, theory_gradient, ComparisonRow,
    ExperimentDataset, ExperimentPoint, GeometryParams, ThetaTable,
};
