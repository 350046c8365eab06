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

//! Run configuration in TOML.
//!
//! ```toml
//! temperature_k = 300.0            # optional, default 300
//! output_path = "pressure.csv"     # optional, default stdout
//!
//! [material]
//! variant = "all"                  # drude | plasma | nonlocal | all
//! omega_p_ev = 4.89
//! gamma_ev = 0.0436
//! mu0 = 110.0
//! v_t_over_vf = 7.0
//! v_l_over_vf = 7.0
//! v_f_m_s = 1.31e6
//! optical_data_path = "ni_optical.csv"   # optional interband table
//!
//! [sweep]
//! a_min_nm = 2000.0
//! a_max_nm = 7000.0
//! points = 26
//! spacing = "log"                  # linear | log
//!
//! [tolerances]                     # optional
//! quad = 1e-8
//! series = 1e-9
//! kramers_kronig = 1e-4
//!
//! [geometry]                       # optional, sphere-plate subcommands
//! radius_um = 61.71
//! delta_s_nm = 1.5
//! delta_p_nm = 1.4
//! err_theory_rel = 0.0
//!
//! [dump]                           # impedance-dump and reflect-dump
//! l = [1, 2, 10, 100]
//! k_perp_per_m = [0.0, 2e5, 2e6, 2e7]
//! method = "closed"                # closed | integral
//! ```
//!
//! Relative input paths are resolved against the directory of the config file.

use std::path::{Path, PathBuf};

use lifshitz_core::{
    GeometryParams, InterbandTable, MaterialModel, MatsubaraContext, PressureQuery, Variant,
};
use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, Result, ToolError};
use crate::formats;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModelChoice {
    Drude,
    Plasma,
    Nonlocal,
    All,
}

impl ModelChoice {
    pub fn variants(self) -> Vec<Variant> {
        match self {
            ModelChoice::Drude => vec![Variant::Drude],
            ModelChoice::Plasma => vec![Variant::Plasma],
            ModelChoice::Nonlocal => vec![Variant::NonlocalAlt],
            ModelChoice::All => Variant::ALL.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DumpMethod {
    #[default]
    Closed,
    Integral,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialConfig {
    #[serde(default = "default_variant")]
    pub variant: ModelChoice,
    pub omega_p_ev: f64,
    pub gamma_ev: f64,
    pub mu0: f64,
    pub v_t_over_vf: f64,
    pub v_l_over_vf: f64,
    pub v_f_m_s: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub optical_data_path: Option<PathBuf>,
}

impl MaterialConfig {
    /// Transverse velocity `v_T` [m/s].
    pub fn v_t(&self) -> f64 {
        self.v_t_over_vf * self.v_f_m_s
    }

    /// Longitudinal velocity `v_L` [m/s].
    pub fn v_l(&self) -> f64 {
        self.v_l_over_vf * self.v_f_m_s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub a_min_nm: f64,
    pub a_max_nm: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepConfig {
    /// Separations [m] in ascending order; a single point sits at `a_min`.
    pub fn separations(&self) -> Vec<f64> {
        let (lo, hi) = (self.a_min_nm / 1e9, self.a_max_nm / 1e9);
        if self.points == 1 {
            return vec![lo];
        }
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                let s = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => lo + s * (hi - lo),
                    Spacing::Log => lo * (hi / lo).powf(s),
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    #[serde(default = "default_quad")]
    pub quad: f64,
    #[serde(default = "default_series")]
    pub series: f64,
    #[serde(default = "default_kk")]
    pub kramers_kronig: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            quad: default_quad(),
            series: default_series(),
            kramers_kronig: default_kk(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub radius_um: f64,
    pub delta_s_nm: f64,
    pub delta_p_nm: f64,
    #[serde(default)]
    pub err_theory_rel: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        let g = GeometryParams::nickel_experiment();
        Self {
            radius_um: g.radius * 1e6,
            delta_s_nm: g.delta_s * 1e9,
            delta_p_nm: g.delta_p * 1e9,
            err_theory_rel: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpConfig {
    pub l: Vec<u32>,
    pub k_perp_per_m: Vec<f64>,
    #[serde(default)]
    pub method: DumpMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_temperature")]
    pub temperature_k: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    pub material: MaterialConfig,
    pub sweep: SweepConfig,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub geometry: Option<GeometryConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dump: Option<DumpConfig>,
}

fn default_variant() -> ModelChoice {
    ModelChoice::All
}
fn default_temperature() -> f64 {
    300.0
}
fn default_quad() -> f64 {
    PressureQuery::DEFAULT_QUAD_TOL
}
fn default_series() -> f64 {
    PressureQuery::DEFAULT_SERIES_TOL
}
fn default_kk() -> f64 {
    MatsubaraContext::DEFAULT_REL_TOL
}

/// Line (1-based) of `key = …` inside `[section]`, or at top level for an empty section.
fn line_of(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim().to_owned();
            continue;
        }
        if current == section {
            if let Some((k, _)) = line.split_once('=') {
                if k.trim() == key {
                    return Some(i + 1);
                }
            }
        }
    }
    None
}

fn line_at_offset(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

struct Checker<'a> {
    text: &'a str,
}

impl Checker<'_> {
    fn require(
        &self,
        ok: bool,
        section: &str,
        key: &str,
        message: &str,
    ) -> Result<(), ConfigError> {
        if ok {
            return Ok(());
        }
        let field = if section.is_empty() {
            key.to_owned()
        } else {
            format!("{section}.{key}")
        };
        Err(ConfigError {
            line: line_of(self.text, section, key),
            field: Some(field),
            message: message.to_owned(),
        })
    }

    fn positive(&self, value: f64, section: &str, key: &str) -> Result<(), ConfigError> {
        self.require(
            value.is_finite() && value > 0.0,
            section,
            key,
            "must be a positive number",
        )
    }
}

/// Parses and validates a TOML configuration.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let cfg: RunConfig = toml::from_str(text).map_err(|e| ConfigError {
        line: e.span().map(|s| line_at_offset(text, s.start)),
        field: None,
        message: e.message().trim().to_owned(),
    })?;
    cfg.validate_against(text)?;
    Ok(cfg)
}

/// TOML text that [`parse_config`] reads back to an equal configuration.
pub fn serialize_config(cfg: &RunConfig) -> String {
    toml::to_string(cfg).expect("configuration is representable in TOML")
}

/// Reads a config file, resolving relative input paths against its directory.
pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| ToolError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    let base = path.parent().unwrap_or(Path::new(""));
    if let Some(optical) = cfg.material.optical_data_path.as_mut() {
        if optical.is_relative() {
            *optical = base.join(&*optical);
        }
    }
    Ok(cfg)
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        self.validate_against("")
    }

    fn validate_against(&self, text: &str) -> Result<(), ConfigError> {
        let c = Checker { text };
        c.positive(self.temperature_k, "", "temperature_k")?;
        let m = &self.material;
        c.positive(m.omega_p_ev, "material", "omega_p_ev")?;
        c.require(
            m.gamma_ev.is_finite() && m.gamma_ev >= 0.0,
            "material",
            "gamma_ev",
            "must be a non-negative number",
        )?;
        c.require(
            m.mu0.is_finite() && m.mu0 >= 1.0,
            "material",
            "mu0",
            "must be at least 1",
        )?;
        c.require(
            m.v_t_over_vf.is_finite() && m.v_t_over_vf >= 0.0,
            "material",
            "v_t_over_vf",
            "must be a non-negative number",
        )?;
        c.require(
            m.v_l_over_vf.is_finite() && m.v_l_over_vf >= 0.0,
            "material",
            "v_l_over_vf",
            "must be a non-negative number",
        )?;
        c.positive(m.v_f_m_s, "material", "v_f_m_s")?;
        let light = lifshitz_core::units::SPEED_OF_LIGHT;
        c.require(
            m.v_t() < light,
            "material",
            "v_t_over_vf",
            "v_t must stay below c",
        )?;
        c.require(
            m.v_l() < light,
            "material",
            "v_l_over_vf",
            "v_l must stay below c",
        )?;

        let s = &self.sweep;
        c.positive(s.a_min_nm, "sweep", "a_min_nm")?;
        c.positive(s.a_max_nm, "sweep", "a_max_nm")?;
        c.require(
            s.a_min_nm < s.a_max_nm,
            "sweep",
            "a_max_nm",
            "must exceed a_min_nm",
        )?;
        c.require(s.points >= 1, "sweep", "points", "must be at least 1")?;

        let t = &self.tolerances;
        let in_range = |v: f64| v > 0.0 && v <= 1e-4;
        c.require(
            in_range(t.quad),
            "tolerances",
            "quad",
            "must lie in (0, 1e-4]",
        )?;
        c.require(
            in_range(t.series),
            "tolerances",
            "series",
            "must lie in (0, 1e-4]",
        )?;
        c.require(
            t.kramers_kronig > 0.0 && t.kramers_kronig <= 1e-3,
            "tolerances",
            "kramers_kronig",
            "must lie in (0, 1e-3]",
        )?;

        if let Some(g) = &self.geometry {
            c.positive(g.radius_um, "geometry", "radius_um")?;
            for (value, key) in [(g.delta_s_nm, "delta_s_nm"), (g.delta_p_nm, "delta_p_nm")] {
                c.require(
                    value.is_finite() && value >= 0.0,
                    "geometry",
                    key,
                    "must be a non-negative number",
                )?;
            }
            c.require(
                g.err_theory_rel.is_finite() && g.err_theory_rel >= 0.0,
                "geometry",
                "err_theory_rel",
                "must be a non-negative number",
            )?;
        }
        if let Some(d) = &self.dump {
            c.require(!d.l.is_empty(), "dump", "l", "must list at least one index")?;
            c.require(
                !d.k_perp_per_m.is_empty(),
                "dump",
                "k_perp_per_m",
                "must list at least one wave number",
            )?;
            c.require(
                d.k_perp_per_m.iter().all(|k| k.is_finite() && *k >= 0.0),
                "dump",
                "k_perp_per_m",
                "must be non-negative numbers",
            )?;
        }
        Ok(())
    }

    pub fn context(&self) -> Result<MatsubaraContext> {
        MatsubaraContext::new(self.temperature_k)
            .and_then(|ctx| ctx.with_rel_tol(self.tolerances.kramers_kronig))
            .map_err(|e| ToolError::compute("context", e))
    }

    pub fn interband(&self) -> Result<Option<InterbandTable>> {
        self.material
            .optical_data_path
            .as_deref()
            .map(formats::read_interband)
            .transpose()
    }

    /// One model per selected variant, in drude, plasma, nonlocal order.
    pub fn models(&self, choice: Option<ModelChoice>) -> Result<Vec<MaterialModel>> {
        let m = &self.material;
        let table = self.interband()?;
        choice
            .unwrap_or(m.variant)
            .variants()
            .into_iter()
            .map(|variant| {
                let model = MaterialModel::from_ev(
                    variant,
                    m.omega_p_ev,
                    m.gamma_ev,
                    m.mu0,
                    m.v_t(),
                    m.v_l(),
                )
                .map_err(|e| ToolError::compute("material", e))?;
                Ok(match &table {
                    Some(t) => model.with_interband(t.clone()),
                    None => model,
                })
            })
            .collect()
    }

    pub fn geometry_params(&self) -> Result<GeometryParams> {
        let g = self.geometry.clone().unwrap_or_default();
        GeometryParams::new(g.radius_um / 1e6, g.delta_s_nm / 1e9, g.delta_p_nm / 1e9)
            .map_err(|e| ToolError::compute("geometry", e))
    }

    pub fn err_theory_rel(&self) -> f64 {
        self.geometry.as_ref().map_or(0.0, |g| g.err_theory_rel)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const NICKEL: &str = r#"
[material]
omega_p_ev = 4.89
gamma_ev = 0.0436
mu0 = 110.0
v_t_over_vf = 7.0
v_l_over_vf = 7.0
v_f_m_s = 1.31e6

[sweep]
a_min_nm = 2000.0
a_max_nm = 7000.0
points = 26
spacing = "log"
"#;

    #[test]
    fn minimal_config_gets_defaults() {
        let cfg = parse_config(NICKEL).unwrap();
        assert_eq!(cfg.temperature_k, 300.0);
        assert_eq!(cfg.tolerances.quad, 1e-8);
        assert_eq!(cfg.tolerances.series, 1e-9);
        assert_eq!(cfg.material.variant, ModelChoice::All);
        assert!(cfg.output_path.is_none() && cfg.geometry.is_none() && cfg.dump.is_none());
    }

    #[test]
    fn velocities_scale_with_fermi_velocity() {
        let cfg = parse_config(NICKEL).unwrap();
        assert!((cfg.material.v_t() - 9.17e6).abs() < 1e-6);
        let models = cfg.models(Some(ModelChoice::Nonlocal)).unwrap();
        assert!((models[0].v_t - 9.17e6).abs() < 1e-6);
        assert_eq!(models[0].v_l, models[0].v_t);
    }

    #[test]
    fn negative_plasma_frequency_names_field_and_line() {
        let text = NICKEL.replace("omega_p_ev = 4.89", "omega_p_ev = -1");
        let err = parse_config(&text).unwrap_err();
        assert_eq!(err.field.as_deref(), Some("material.omega_p_ev"));
        assert_eq!(err.line, Some(3));
        assert!(err.to_string().contains("omega_p_ev"));
    }

    #[test]
    fn unknown_and_missing_keys() {
        let text = NICKEL.replace("mu0 = 110.0", "mu0 = 110.0\nmu_zero = 3");
        let err = parse_config(&text).unwrap_err();
        assert!(err.message.contains("mu_zero"), "{err}");
        assert_eq!(err.line, Some(6));

        let text = NICKEL.replace("gamma_ev = 0.0436\n", "");
        let err = parse_config(&text).unwrap_err();
        assert!(err.message.contains("gamma_ev"), "{err}");

        let text = NICKEL.replace("points = 26", "points = \"many\"");
        let err = parse_config(&text).unwrap_err();
        assert_eq!(err.line, Some(13), "{err}");
    }

    #[test]
    fn sweep_invariants() {
        let text = NICKEL.replace("a_min_nm = 2000.0", "a_min_nm = 8000.0");
        assert_eq!(
            parse_config(&text).unwrap_err().field.as_deref(),
            Some("sweep.a_max_nm")
        );
        let text = NICKEL.replace("points = 26", "points = 0");
        assert_eq!(
            parse_config(&text).unwrap_err().field.as_deref(),
            Some("sweep.points")
        );
    }

    #[test]
    fn separation_grids() {
        let mut cfg = parse_config(NICKEL).unwrap();
        let log = cfg.sweep.separations();
        assert_eq!(log.len(), 26);
        assert!((log[0] - 2e-6).abs() < 1e-20 && (log[25] - 7e-6).abs() < 1e-18);
        assert!((log[1] / log[0] - log[25] / log[24]).abs() < 1e-12);
        cfg.sweep.spacing = Spacing::Linear;
        cfg.sweep.points = 3;
        let lin = cfg.sweep.separations();
        assert!((lin[1] - 4.5e-6).abs() < 1e-18);
        cfg.sweep.points = 1;
        assert_eq!(cfg.sweep.separations(), vec![2e-6]);
    }

    #[test]
    fn serialization_round_trips() {
        let mut cfg = parse_config(NICKEL).unwrap();
        cfg.output_path = Some("out.csv".into());
        cfg.geometry = Some(GeometryConfig::default());
        cfg.dump = Some(DumpConfig {
            l: vec![1, 10],
            k_perp_per_m: vec![0.0, 2e6],
            method: DumpMethod::Integral,
        });
        let text = serialize_config(&cfg);
        assert_eq!(parse_config(&text).unwrap(), cfg);
    }
}
