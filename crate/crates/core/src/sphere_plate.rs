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

//! Sphere-plate force gradient and comparison with measured gradients.
//!
//! The theoretical gradient is built in a fixed order: the proximity force
//! approximation `F′ = −2πR P(a,T)`, then the second-order roughness factor
//! `1 + 10(δ_s² + δ_p²)/a²`, then the beyond-PFA factor `1 + θ(a,T) a/R`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::lifshitz::{pressure, PressureQuery};
use crate::math;
use crate::response::{MaterialModel, MatsubaraContext};

/// Beyond-PFA coefficients `θ(a)` on a separation grid, linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaTable {
    rows: Vec<(f64, f64)>,
}

impl ThetaTable {
    /// Rows of `(a [m], θ)`, `a` strictly increasing and `|θ| ≤ 1`.
    pub fn new(rows: Vec<(f64, f64)>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: "table must have at least one row",
            });
        }
        if rows.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidParameter {
                name: "theta.a",
                reason: "separations must be strictly increasing",
            });
        }
        if rows.iter().any(|(_, t)| !(t.abs() <= 1.0)) {
            return Err(Error::InvalidParameter {
                name: "theta",
                reason: "|theta| must not exceed 1",
            });
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[(f64, f64)] {
        &self.rows
    }

    /// `θ(a)` and whether `a` fell outside the table (nearest endpoint used).
    pub fn theta_at(&self, a: f64) -> (f64, bool) {
        let first = self.rows[0];
        let last = self.rows[self.rows.len() - 1];
        if a < first.0 {
            return (first.1, true);
        }
        if a > last.0 {
            return (last.1, true);
        }
        let idx = self.rows.partition_point(|(x, _)| *x <= a);
        if idx == 0 || idx >= self.rows.len() {
            let row = self.rows[idx.min(self.rows.len() - 1)];
            return (row.1, false);
        }
        let (a0, t0) = self.rows[idx - 1];
        let (a1, t1) = self.rows[idx];
        (t0 + (t1 - t0) * (a - a0) / (a1 - a0), false)
    }
}

/// Sphere radius, surface roughness and optional `θ(a)` table.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryParams {
    /// Sphere radius `R` [m].
    pub radius: f64,
    /// Sphere rms roughness `δ_s` [m].
    pub delta_s: f64,
    /// Plate rms roughness `δ_p` [m].
    pub delta_p: f64,
    pub theta: Option<ThetaTable>,
}

impl GeometryParams {
    pub fn new(radius: f64, delta_s: f64, delta_p: f64) -> Result<Self> {
        let geom = Self {
            radius,
            delta_s,
            delta_p,
            theta: None,
        };
        geom.validate()?;
        Ok(geom)
    }

    /// Ni-coated sphere of radius 61.71 μm; roughness 1.5 nm (sphere), 1.4 nm (plate).
    pub fn nickel_experiment() -> Self {
        Self::new(61.71e-6, 1.5e-9, 1.4e-9).expect("valid geometry")
    }

    pub fn with_theta(mut self, theta: ThetaTable) -> Self {
        self.theta = Some(theta);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidParameter {
                name: "radius",
                reason: "must be positive",
            });
        }
        if !(self.delta_s >= 0.0 && self.delta_p >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "roughness",
                reason: "must be non-negative",
            });
        }
        Ok(())
    }
}

/// PFA gradient from a known plate pressure, `−2πR P`.
pub fn gradient_from_pressure(
    pressure: f64,
    separation: f64,
    geom: &GeometryParams,
) -> Result<f64> {
    if !(separation > 0.0 && separation < geom.radius / 10.0) {
        return Err(Error::Precondition(
            "proximity force approximation needs 0 < a < R/10",
        ));
    }
    Ok(-2.0 * PI * geom.radius * pressure)
}

/// Sphere-plate force gradient [N/m] in the proximity force approximation.
pub fn gradient_pfa(
    separation: f64,
    temperature: f64,
    m: &MaterialModel,
    geom: &GeometryParams,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    geom.validate()?;
    if !(separation > 0.0 && separation < geom.radius / 10.0) {
        return Err(Error::Precondition(
            "proximity force approximation needs 0 < a < R/10",
        ));
    }
    let p = pressure(&PressureQuery::new(separation, temperature, m.clone()), ctx)?;
    gradient_from_pressure(p.pressure, separation, geom)
}

/// Multiplies by the roughness factor `1 + 10(δ_s² + δ_p²)/a²`.
pub fn apply_roughness(grad: f64, separation: f64, geom: &GeometryParams) -> Result<f64> {
    if !(separation > 10.0 * geom.delta_s.max(geom.delta_p)) {
        return Err(Error::Precondition(
            "roughness correction needs a > 10 max(delta_s, delta_p)",
        ));
    }
    Ok(grad * roughness_factor(separation, geom))
}

pub fn roughness_factor(separation: f64, geom: &GeometryParams) -> f64 {
    let d2 = geom.delta_s * geom.delta_s + geom.delta_p * geom.delta_p;
    1.0 + 10.0 * d2 / (separation * separation)
}

/// Multiplies by `1 + θ(a) a/R`; `θ = 0` without a table.
pub fn apply_pfa_correction(grad: f64, separation: f64, geom: &GeometryParams) -> Result<f64> {
    if !(separation > 0.0) {
        return Err(Error::InvalidParameter {
            name: "separation",
            reason: "must be positive",
        });
    }
    let theta = match &geom.theta {
        None => 0.0,
        Some(table) => {
            let (theta, clamped) = table.theta_at(separation);
            if clamped {
                log::warn!(
                    "separation {separation:e} m outside theta table; using nearest endpoint"
                );
            }
            theta
        }
    };
    Ok(grad * (1.0 + theta * separation / geom.radius))
}

/// Corrected theoretical gradient from a plate pressure.
pub fn theory_gradient_from_pressure(
    pressure: f64,
    separation: f64,
    geom: &GeometryParams,
) -> Result<f64> {
    let pfa = gradient_from_pressure(pressure, separation, geom)?;
    let rough = apply_roughness(pfa, separation, geom)?;
    apply_pfa_correction(rough, separation, geom)
}

/// Fully corrected theoretical gradient `F′_theor(a,T)` [N/m].
pub fn theory_gradient(
    separation: f64,
    temperature: f64,
    m: &MaterialModel,
    geom: &GeometryParams,
    ctx: &MatsubaraContext,
) -> Result<f64> {
    let pfa = gradient_pfa(separation, temperature, m, geom, ctx)?;
    let rough = apply_roughness(pfa, separation, geom)?;
    apply_pfa_correction(rough, separation, geom)
}

/// One measured gradient with its total error at 67% confidence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentPoint {
    /// Separation [m].
    pub a: f64,
    /// Measured gradient [N/m].
    pub grad: f64,
    /// Experimental error [N/m].
    pub err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentDataset {
    points: Vec<ExperimentPoint>,
}

impl ExperimentDataset {
    pub fn new(points: Vec<ExperimentPoint>) -> Result<Self> {
        if points.windows(2).any(|w| w[1].a <= w[0].a) {
            return Err(Error::InvalidParameter {
                name: "a",
                reason: "separations must be strictly increasing",
            });
        }
        if points.iter().any(|p| !(p.err > 0.0)) {
            return Err(Error::InvalidParameter {
                name: "err",
                reason: "errors must be positive",
            });
        }
        if points.iter().any(|p| !(p.a > 0.0 && p.grad.is_finite())) {
            return Err(Error::InvalidParameter {
                name: "a",
                reason: "separations must be positive and gradients finite",
            });
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[ExperimentPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Theory minus experiment at one separation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonRow {
    pub a: f64,
    pub grad_theory: f64,
    /// `F′_theor − F′_expt` [N/m].
    pub delta: f64,
    pub ci_halfwidth: f64,
    pub inside_ci: bool,
}

/// Builds comparison rows from precomputed theoretical gradients.
///
/// The confidence half-width combines the experimental error and the relative
/// theoretical error in quadrature.
pub fn compare_rows(
    data: &ExperimentDataset,
    theory: &[f64],
    err_theory_rel: f64,
) -> Result<Vec<ComparisonRow>> {
    if !(err_theory_rel >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "err_theory_rel",
            reason: "must be non-negative",
        });
    }
    if theory.len() != data.len() {
        return Err(Error::InvalidParameter {
            name: "theory",
            reason: "one theoretical value per data point is required",
        });
    }
    Ok(data
        .points
        .iter()
        .zip(theory)
        .map(|(point, &grad_theory)| {
            let delta = grad_theory - point.grad;
            let theory_err = err_theory_rel * grad_theory;
            let ci_halfwidth = math::sqrt(point.err * point.err + theory_err * theory_err);
            ComparisonRow {
                a: point.a,
                grad_theory,
                delta,
                ci_halfwidth,
                inside_ci: delta.abs() <= ci_halfwidth,
            }
        })
        .collect())
}

/// Compares measured gradients with the corrected theory of `model`.
pub fn compare(
    data: &ExperimentDataset,
    temperature: f64,
    m: &MaterialModel,
    geom: &GeometryParams,
    ctx: &MatsubaraContext,
    err_theory_rel: f64,
) -> Result<Vec<ComparisonRow>> {
    let theory = data
        .points
        .iter()
        .map(|p| theory_gradient(p.a, temperature, m, geom, ctx))
        .collect::<Result<Vec<_>>>()?;
    compare_rows(data, &theory, err_theory_rel)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pfa_linear_scaling() {
        let geom = GeometryParams::nickel_experiment();
        let g = gradient_from_pressure(-1.0, 300e-9, &geom).unwrap();
        assert!((g - 2.0 * PI * 61.71e-6).abs() < 1e-18);
        assert!((g - 3.877e-4).abs() < 1e-7);
        let mut big = geom.clone();
        big.radius *= 2.0;
        let g2 = gradient_from_pressure(-1.0, 300e-9, &big).unwrap();
        assert!((g2 - 2.0 * g).abs() < 1e-18);
        assert!(gradient_from_pressure(-1.0, 7e-6, &geom).is_err());
    }

    #[test]
    fn roughness_values() {
        let smooth = GeometryParams::new(61.71e-6, 0.0, 0.0).unwrap();
        assert_eq!(apply_roughness(2.5, 300e-9, &smooth).unwrap(), 2.5);

        let geom = GeometryParams::nickel_experiment();
        let f = roughness_factor(300e-9, &geom);
        assert!((f - (1.0 + 10.0 * (2.25 + 1.96) / 9e4)).abs() < 1e-15);
        let c1 = roughness_factor(300e-9, &geom) - 1.0;
        let c2 = roughness_factor(600e-9, &geom) - 1.0;
        assert!((c1 / c2 - 4.0).abs() < 1e-12);
        assert!(apply_roughness(1.0, 10e-9, &geom).is_err());
    }

    #[test]
    fn pfa_correction_values() {
        let geom = GeometryParams::new(100e-6, 0.0, 0.0).unwrap();
        assert_eq!(apply_pfa_correction(3.0, 500e-9, &geom).unwrap(), 3.0);
        let geom = geom.with_theta(ThetaTable::new(vec![(1e-7, -1.0), (1e-6, -1.0)]).unwrap());
        let g = apply_pfa_correction(1.0, 500e-9, &geom).unwrap();
        assert!((g - 0.995).abs() < 1e-15);
    }

    #[test]
    fn theta_interpolation_and_clamping() {
        let t = ThetaTable::new(vec![(200e-9, -0.2), (400e-9, -0.6), (600e-9, -1.0)]).unwrap();
        let (v, clamped) = t.theta_at(250e-9);
        assert!((v - (-0.2 + (-0.4) * 0.25)).abs() < 1e-15 && !clamped);
        assert_eq!(t.theta_at(100e-9), (-0.2, true));
        assert_eq!(t.theta_at(700e-9), (-1.0, true));
        assert_eq!(t.theta_at(600e-9), (-1.0, false));
        assert!(ThetaTable::new(vec![(1e-7, 1.5)]).is_err());
        assert!(ThetaTable::new(vec![(2e-7, 0.1), (1e-7, 0.1)]).is_err());
    }

    #[test]
    fn compare_flags_and_translation() {
        let data = ExperimentDataset::new(vec![
            ExperimentPoint {
                a: 2e-7,
                grad: 1.0,
                err: 0.1,
            },
            ExperimentPoint {
                a: 3e-7,
                grad: 2.0,
                err: 0.1,
            },
        ])
        .unwrap();
        let rows = compare_rows(&data, &[1.05, 2.5], 0.0).unwrap();
        assert!(rows[0].inside_ci && !rows[1].inside_ci);
        assert!((rows[1].delta - 0.5).abs() < 1e-15);

        let shifted = ExperimentDataset::new(
            data.points()
                .iter()
                .map(|p| ExperimentPoint {
                    grad: p.grad + 0.25,
                    ..*p
                })
                .collect(),
        )
        .unwrap();
        let moved = compare_rows(&shifted, &[1.05, 2.5], 0.0).unwrap();
        for (a, b) in rows.iter().zip(&moved) {
            assert!((b.delta - (a.delta - 0.25)).abs() < 1e-15);
        }
        assert!(compare_rows(&data, &[1.0], 0.0).is_err());
        assert!(compare_rows(&data, &[1.0, 2.0], -0.1).is_err());
    }

    #[test]
    fn dataset_validation() {
        let p = |a, err| ExperimentPoint { a, grad: 1.0, err };
        assert!(ExperimentDataset::new(vec![p(2e-7, 0.1), p(1e-7, 0.1)]).is_err());
        assert!(ExperimentDataset::new(vec![p(2e-7, 0.0)]).is_err());
    }
}
