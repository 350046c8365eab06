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

//! Physical constants (CODATA 2018, exact SI values where defined) and the
//! unit conversions used at the crate boundary.

/// Reduced Planck constant [J s].
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant [J/K].
pub const K_BOLTZMANN: f64 = 1.380_649e-23;
/// Speed of light in vacuum [m/s].
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;
/// Elementary charge [C], i.e. joules per electronvolt.
pub const ELECTRON_VOLT: f64 = 1.602_176_634e-19;

/// Fermi velocity of nickel in the spherical Fermi surface approximation [m/s].
pub const NICKEL_FERMI_VELOCITY: f64 = 1.31e6;

/// Converts an energy `ħω` in eV to the angular frequency `ω` in rad/s.
pub fn ev_to_rad_per_s(energy_ev: f64) -> f64 {
    energy_ev * ELECTRON_VOLT / HBAR
}

/// Converts an angular frequency in rad/s to the photon energy `ħω` in eV.
pub fn rad_per_s_to_ev(omega: f64) -> f64 {
    omega * HBAR / ELECTRON_VOLT
}
