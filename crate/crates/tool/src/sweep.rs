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

//! Subcommand drivers: each turns a validated configuration into a CSV document.
//!
//! Work items are evaluated in parallel; rows always come out in input order
//! and the first failing item in that order determines the error.

use lifshitz_core::impedance::{z_closed, z_integral};
use lifshitz_core::reflection::reflection;
use lifshitz_core::sphere_plate::{
    compare_rows, gradient_from_pressure, theory_gradient_from_pressure,
};
use lifshitz_core::{
    pressure, refl_from_impedance, ExperimentDataset, GeometryParams, ImpedancePair, MaterialModel,
    MatsubaraContext, PressureQuery, PressureResult, ReflectionPair, ThetaTable,
};
use rayon::prelude::*;

use crate::config::{DumpConfig, DumpMethod, RunConfig};
use crate::error::{Result, ToolError};
use crate::formats::{fmt_f64, CsvDocument};

const NM_PER_M: f64 = 1e9;
const MICRO_N_PER_N: f64 = 1e6;

fn ordered<T: Sync, U: Send>(items: Vec<T>, f: impl Fn(&T) -> Result<U> + Sync) -> Result<Vec<U>> {
    let results: Vec<Result<U>> = items.par_iter().map(&f).collect();
    results.into_iter().collect()
}

fn point_context(a: f64, m: &MaterialModel) -> String {
    format!("a = {} m, model = {}", fmt_f64(a), m.variant)
}

/// Pressures for every `(separation, model)` pair, separation-major.
fn pressures(cfg: &RunConfig, models: &[MaterialModel]) -> Result<Vec<(f64, PressureResult)>> {
    let ctx = cfg.context()?;
    let jobs: Vec<(f64, &MaterialModel)> = cfg
        .sweep
        .separations()
        .into_iter()
        .flat_map(|a| models.iter().map(move |m| (a, m)))
        .collect();
    ordered(jobs, |&(a, m)| {
        let query = PressureQuery::new(a, cfg.temperature_k, m.clone())
            .with_tolerances(cfg.tolerances.quad, cfg.tolerances.series);
        pressure(&query, &ctx)
            .map(|r| (a, r))
            .map_err(|e| ToolError::compute(point_context(a, m), e))
    })
}

fn require_models(models: &[MaterialModel]) -> Result<()> {
    if models.is_empty() {
        return Err(ToolError::Usage("no models selected".into()));
    }
    Ok(())
}

/// `a_m,model,pressure_pa,terms_used,tail_bound,quad_error`.
pub fn run_pressure_sweep(cfg: &RunConfig, models: &[MaterialModel]) -> Result<CsvDocument> {
    require_models(models)?;
    let mut doc = CsvDocument::new(vec![
        "a_m",
        "model",
        "pressure_pa",
        "terms_used",
        "tail_bound",
        "quad_error",
    ]);
    for ((a, r), m) in pressures(cfg, models)?
        .into_iter()
        .zip(models.iter().cycle())
    {
        doc.push(vec![
            fmt_f64(a),
            m.variant.name().into(),
            fmt_f64(r.pressure),
            r.terms_used.to_string(),
            fmt_f64(r.series_tail_bound),
            fmt_f64(r.quad_error),
        ]);
    }
    Ok(doc)
}

fn ratio_header(models: &[MaterialModel]) -> (Vec<String>, Vec<(usize, usize)>) {
    let mut headers = vec!["a_m".to_owned()];
    headers.extend(
        models
            .iter()
            .map(|m| format!("pressure_{}_pa", m.variant.name())),
    );
    let mut pairs = Vec::new();
    for j in 1..models.len() {
        for i in 0..j {
            pairs.push((j, i));
            headers.push(format!(
                "{}_over_{}",
                models[j].variant.name(),
                models[i].variant.name()
            ));
        }
    }
    (headers, pairs)
}

/// Per-separation pressures of each model followed by every later-over-earlier ratio.
pub fn run_ratio(cfg: &RunConfig, models: &[MaterialModel]) -> Result<CsvDocument> {
    if models.len() < 2 {
        return Err(ToolError::Usage("ratio needs at least two models".into()));
    }
    let (headers, pairs) = ratio_header(models);
    let mut doc = CsvDocument::new(headers);
    let results = pressures(cfg, models)?;
    for chunk in results.chunks(models.len()) {
        let p: Vec<f64> = chunk.iter().map(|(_, r)| r.pressure).collect();
        let mut row = vec![fmt_f64(chunk[0].0)];
        row.extend(p.iter().map(|&v| fmt_f64(v)));
        row.extend(pairs.iter().map(|&(j, i)| fmt_f64(p[j] / p[i])));
        doc.push(row);
    }
    Ok(doc)
}

fn dump_section(cfg: &RunConfig) -> Result<&DumpConfig> {
    cfg.dump
        .as_ref()
        .ok_or_else(|| ToolError::Usage("configuration has no [dump] section".into()))
}

fn dump_jobs<'m>(
    dump: &DumpConfig,
    models: &'m [MaterialModel],
) -> Vec<(&'m MaterialModel, u32, f64)> {
    models
        .iter()
        .flat_map(|m| {
            dump.l
                .iter()
                .flat_map(move |&l| dump.k_perp_per_m.iter().map(move |&k| (m, l, k)))
        })
        .collect()
}

fn impedance(
    method: DumpMethod,
    l: u32,
    k: f64,
    m: &MaterialModel,
    ctx: &MatsubaraContext,
) -> Result<ImpedancePair> {
    let z = match method {
        DumpMethod::Closed => z_closed(l, k, m, ctx),
        DumpMethod::Integral => z_integral(l, k, m, ctx),
    };
    z.map_err(|e| {
        ToolError::compute(
            format!("model = {}, l = {l}, k_perp = {}", m.variant, fmt_f64(k)),
            e,
        )
    })
}

/// `model,l,k_perp,z_tm,z_te` on the `[dump]` grid; impedances need `l >= 1`.
pub fn run_impedance_dump(cfg: &RunConfig, models: &[MaterialModel]) -> Result<CsvDocument> {
    require_models(models)?;
    let dump = dump_section(cfg)?;
    let ctx = cfg.context()?;
    let rows = ordered(dump_jobs(dump, models), |&(m, l, k)| {
        impedance(dump.method, l, k, m, &ctx)
    })?;
    let mut doc = CsvDocument::new(vec!["model", "l", "k_perp", "z_tm", "z_te"]);
    for ((m, _, _), z) in dump_jobs(dump, models).into_iter().zip(rows) {
        doc.push(vec![
            m.variant.name().into(),
            z.l.to_string(),
            fmt_f64(z.k_perp),
            fmt_f64(z.z_tm),
            fmt_f64(z.z_te),
        ]);
    }
    Ok(doc)
}

/// `model,l,k_perp,r_tm,r_te` on the `[dump]` grid; `l = 0` uses the exact static limits.
pub fn run_reflect_dump(cfg: &RunConfig, models: &[MaterialModel]) -> Result<CsvDocument> {
    require_models(models)?;
    let dump = dump_section(cfg)?;
    let ctx = cfg.context()?;
    let rows: Vec<ReflectionPair> = ordered(dump_jobs(dump, models), |&(m, l, k)| {
        let context = || format!("model = {}, l = {l}, k_perp = {}", m.variant, fmt_f64(k));
        if l == 0 || dump.method == DumpMethod::Closed {
            reflection(l, k, m, &ctx).map_err(|e| ToolError::compute(context(), e))
        } else {
            let z = impedance(dump.method, l, k, m, &ctx)?;
            refl_from_impedance(&z, l, k, &ctx).map_err(|e| ToolError::compute(context(), e))
        }
    })?;
    let mut doc = CsvDocument::new(vec!["model", "l", "k_perp", "r_tm", "r_te"]);
    for ((m, _, _), r) in dump_jobs(dump, models).into_iter().zip(rows) {
        doc.push(vec![
            m.variant.name().into(),
            r.l.to_string(),
            fmt_f64(r.k_perp),
            fmt_f64(r.r_tm),
            fmt_f64(r.r_te),
        ]);
    }
    Ok(doc)
}

fn geometry(cfg: &RunConfig, theta: Option<ThetaTable>) -> Result<GeometryParams> {
    let geom = cfg.geometry_params()?;
    Ok(match theta {
        Some(t) => geom.with_theta(t),
        None => geom,
    })
}

fn corrected(p: f64, a: f64, m: &MaterialModel, geom: &GeometryParams) -> Result<(f64, f64)> {
    let wrap = |e| ToolError::compute(point_context(a, m), e);
    let pfa = gradient_from_pressure(p, a, geom).map_err(wrap)?;
    let theory = theory_gradient_from_pressure(p, a, geom).map_err(wrap)?;
    Ok((pfa, theory))
}

/// `a_nm,model,pressure_pa,grad_pfa_uN_per_m,grad_theory_uN_per_m` over the sweep.
pub fn run_gradient(
    cfg: &RunConfig,
    models: &[MaterialModel],
    theta: Option<ThetaTable>,
) -> Result<CsvDocument> {
    require_models(models)?;
    let geom = geometry(cfg, theta)?;
    let mut doc = CsvDocument::new(vec![
        "a_nm",
        "model",
        "pressure_pa",
        "grad_pfa_uN_per_m",
        "grad_theory_uN_per_m",
    ]);
    for ((a, r), m) in pressures(cfg, models)?
        .into_iter()
        .zip(models.iter().cycle())
    {
        let (pfa, theory) = corrected(r.pressure, a, m, &geom)?;
        doc.push(vec![
            fmt_f64(a * NM_PER_M),
            m.variant.name().into(),
            fmt_f64(r.pressure),
            fmt_f64(pfa * MICRO_N_PER_N),
            fmt_f64(theory * MICRO_N_PER_N),
        ]);
    }
    Ok(doc)
}

/// Points of one model inside and outside the confidence band.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareSummary {
    pub model: &'static str,
    pub inside: usize,
    pub outside: usize,
}

/// Theory against measured gradients at the measured separations, one block of rows per model,
/// followed by `# summary` comment lines with inside/outside counts.
pub fn run_gradient_compare(
    cfg: &RunConfig,
    models: &[MaterialModel],
    data: &ExperimentDataset,
    theta: Option<ThetaTable>,
) -> Result<(CsvDocument, Vec<CompareSummary>)> {
    require_models(models)?;
    let geom = geometry(cfg, theta)?;
    let ctx = cfg.context()?;
    let jobs: Vec<(&MaterialModel, f64)> = models
        .iter()
        .flat_map(|m| data.points().iter().map(move |p| (m, p.a)))
        .collect();
    let theory = ordered(jobs, |&(m, a)| {
        let query = PressureQuery::new(a, cfg.temperature_k, m.clone())
            .with_tolerances(cfg.tolerances.quad, cfg.tolerances.series);
        let p = pressure(&query, &ctx).map_err(|e| ToolError::compute(point_context(a, m), e))?;
        Ok(corrected(p.pressure, a, m, &geom)?.1)
    })?;

    let mut doc = CsvDocument::new(vec![
        "a_nm",
        "model",
        "grad_theory_uN_per_m",
        "delta_uN_per_m",
        "ci_halfwidth_uN_per_m",
        "inside_ci",
    ]);
    let mut summaries = Vec::with_capacity(models.len());
    for (m, theory) in models.iter().zip(theory.chunks(data.len())) {
        let rows = compare_rows(data, theory, cfg.err_theory_rel())
            .map_err(|e| ToolError::compute(format!("model = {}", m.variant), e))?;
        let inside = rows.iter().filter(|r| r.inside_ci).count();
        for row in &rows {
            doc.push(vec![
                fmt_f64(row.a * NM_PER_M),
                m.variant.name().into(),
                fmt_f64(row.grad_theory * MICRO_N_PER_N),
                fmt_f64(row.delta * MICRO_N_PER_N),
                fmt_f64(row.ci_halfwidth * MICRO_N_PER_N),
                row.inside_ci.to_string(),
            ]);
        }
        let summary = CompareSummary {
            model: m.variant.name(),
            inside,
            outside: rows.len() - inside,
        };
        doc.comments.push(format!(
            "summary model={} inside={} outside={}",
            summary.model, summary.inside, summary.outside
        ));
        summaries.push(summary);
    }
    Ok((doc, summaries))
}
