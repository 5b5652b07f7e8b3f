use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::str::FromStr;

use grover_gme::oracle::{grover_trajectory, oracle_gme, MarkedBits};
use grover_gme::{
    ab_profile, gme_curve, make_schedule, scale_invariance_sweep, turning_point, CurveMode, GmeError,
    MarkedSet, Preset,
};
use serde::Serialize;

use crate::output::{emit, num, opt, sidecar_path, to_json, Table};
use crate::{CliError, Format, MarkedArgs, Mode, OutputArgs};

/// Agreement between per-qubit angles for the oracle's `alpha_star` column.
const SHARED_ANGLE_TOL: f64 = 1e-9;

struct Resolved {
    set: MarkedSet,
    /// Explicit basis states, when given as bitstrings.
    bits: Option<Vec<String>>,
}

fn resolve(args: &MarkedArgs) -> Result<Resolved, CliError> {
    let n = args.n;
    let spec = &args.spec;
    if let Some(name) = &spec.preset {
        return Ok(Resolved { set: Preset::from_str(name)?.marked(n)?, bits: None });
    }
    if let Some(items) = &spec.weights {
        let mut weights: BTreeMap<u32, u128> = BTreeMap::new();
        for item in items {
            let (w, count) = match item.split_once(':') {
                Some((w, c)) => (w, c.trim().parse::<u128>().ok()),
                None => (item.as_str(), Some(1)),
            };
            let (Ok(w), Some(count)) = (w.trim().parse::<u32>(), count) else {
                return Err(CliError::Config(format!("bad weight {item:?}; use w or w:count")));
            };
            *weights.entry(w).or_insert(0) += count;
        }
        return Ok(Resolved { set: MarkedSet::from_multiplicities(n, weights)?, bits: None });
    }
    let bits = spec.bits.clone().unwrap_or_default();
    let mut distinct = BTreeSet::new();
    for b in &bits {
        let b = b.trim();
        if b.len() != n as usize || !b.bytes().all(|c| c == b'0' || c == b'1') {
            return Err(CliError::Config(format!("{b:?} is not a {n}-bit string")));
        }
        if !distinct.insert(b.to_string()) {
            return Err(CliError::Config(format!("{b:?} listed twice")));
        }
    }
    let weights: Vec<u32> =
        distinct.iter().map(|b| b.bytes().filter(|&c| c == b'1').count() as u32).collect();
    Ok(Resolved { set: MarkedSet::new(n, &weights)?, bits: Some(distinct.into_iter().collect()) })
}

#[derive(Serialize)]
struct CurveSummary<'a> {
    n: u32,
    /// `[weight, number of marked states]`
    weights: Vec<(u32, u128)>,
    k_opt: u128,
    theta: f64,
    turning_theta: f64,
    turning_k: f64,
    turning_k_ratio: f64,
    b_max: f64,
    peak_gme: f64,
    peak_k: u64,
    mode: &'a str,
}

struct Row {
    k: u64,
    ratio: f64,
    theta_k: f64,
    gme_exact: Option<f64>,
    gme_asymptotic: Option<f64>,
    alpha_star: Option<f64>,
}

pub fn curve(args: &MarkedArgs, mode: Mode, output: &OutputArgs) -> Result<(), CliError> {
    let resolved = resolve(args)?;
    let set = &resolved.set;
    let (rows, mode_name) = match mode {
        Mode::Oracle => (oracle_rows(&resolved)?, "oracle"),
        Mode::Exact => (core_rows(set, CurveMode::Exact)?, "exact"),
        Mode::Asymptotic => (core_rows(set, CurveMode::Asymptotic)?, "asymptotic"),
        Mode::Both => (core_rows(set, CurveMode::Both)?, "both"),
    };
    let sidecar = match output.format {
        Format::Json => Some(sidecar_path(output.out.as_deref())?),
        Format::Csv => None,
    };

    let mut table = Table::new(&["k", "ratio", "theta_k", "gme_exact", "gme_asymptotic", "alpha_star"]);
    for r in &rows {
        table.row(&[
            r.k.to_string(),
            num(r.ratio),
            num(r.theta_k),
            opt(r.gme_exact),
            opt(r.gme_asymptotic),
            opt(r.alpha_star),
        ]);
    }
    emit(output.out.as_deref(), &table.into_string())?;

    if let Some(path) = sidecar {
        let schedule = make_schedule(set)?;
        let turning = turning_point(set)?;
        let gme = |r: &Row| r.gme_exact.or(r.gme_asymptotic).unwrap_or(f64::NAN);
        let peak = rows.iter().fold(&rows[0], |best, r| if gme(r) > gme(best) { r } else { best });
        let summary = CurveSummary {
            n: set.n(),
            weights: set.weights().collect(),
            k_opt: schedule.k_opt,
            theta: schedule.theta,
            turning_theta: turning.theta,
            turning_k: schedule.iteration_at(turning.theta),
            turning_k_ratio: turning.ratio(),
            b_max: turning.b_max.value,
            peak_gme: gme(peak),
            peak_k: peak.k,
            mode: mode_name,
        };
        emit(Some(&path), &to_json(&summary))?;
    }
    Ok(())
}

fn core_rows(set: &MarkedSet, mode: CurveMode) -> Result<Vec<Row>, CliError> {
    let curve = gme_curve(set, mode)?;
    Ok(curve
        .points
        .into_iter()
        .map(|p| Row {
            k: p.k,
            ratio: p.ratio,
            theta_k: p.theta_k,
            gme_exact: p.gme_exact,
            gme_asymptotic: p.gme_asymptotic,
            alpha_star: p.alpha_star,
        })
        .collect())
}

/// Dense simulation plus unrestricted product-state search at every `k`; the
/// values land in the `gme_exact` column.
fn oracle_rows(resolved: &Resolved) -> Result<Vec<Row>, CliError> {
    let set = &resolved.set;
    let bits = match &resolved.bits {
        Some(bits) => MarkedBits::parse(set.n(), bits)?,
        None => MarkedBits::from_symmetric(set).map_err(|e| match e {
            GmeError::Unsupported(_) => CliError::Config(format!("{e}; pass the marked states with --bits")),
            other => other.into(),
        })?,
    };
    let schedule = make_schedule(set)?;
    let steps = usize::try_from(schedule.k_opt)
        .map_err(|_| CliError::Resource(format!("{} iterations", schedule.k_opt)))?;
    let states = grover_trajectory(&bits, steps)?;
    states
        .iter()
        .enumerate()
        .map(|(k, state)| {
            let k = k as u64;
            let found = oracle_gme(state, false)?;
            let first = found.ansatz.angles[0].0;
            let shared = found.ansatz.angles.iter().all(|&(a, _)| (a - first).abs() <= SHARED_ANGLE_TOL);
            Ok(Row {
                k,
                ratio: schedule.ratio(u128::from(k)),
                theta_k: schedule.theta_k(u128::from(k))?,
                gme_exact: Some(found.gme),
                gme_asymptotic: None,
                alpha_star: shared.then_some(first),
            })
        })
        .collect()
}

#[derive(Serialize)]
struct TurningRecord {
    n: u32,
    k_opt: u128,
    b_max: f64,
    alpha_star: f64,
    turning_theta: f64,
    turning_k: f64,
    turning_k_ratio: f64,
    peak_gme: f64,
    final_gme: f64,
}

pub fn turning(args: &MarkedArgs, output: &OutputArgs) -> Result<(), CliError> {
    let set = resolve(args)?.set;
    let turning = turning_point(&set)?;
    let schedule = make_schedule(&set)?;
    let record = TurningRecord {
        n: set.n(),
        k_opt: schedule.k_opt,
        b_max: turning.b_max.value,
        alpha_star: turning.b_max.alpha_star,
        turning_theta: turning.theta,
        turning_k: schedule.iteration_at(turning.theta),
        turning_k_ratio: turning.ratio(),
        peak_gme: turning.peak_gme(),
        final_gme: turning.final_gme(),
    };
    let text = match output.format {
        Format::Json => to_json(&record),
        Format::Csv => {
            let mut table = Table::new(&[
                "n",
                "k_opt",
                "b_max",
                "alpha_star",
                "turning_theta",
                "turning_k",
                "turning_k_ratio",
                "peak_gme",
                "final_gme",
            ]);
            table.row(&[
                record.n.to_string(),
                record.k_opt.to_string(),
                num(record.b_max),
                num(record.alpha_star),
                num(record.turning_theta),
                num(record.turning_k),
                num(record.turning_k_ratio),
                num(record.peak_gme),
                num(record.final_gme),
            ]);
            table.into_string()
        }
    };
    emit(output.out.as_deref(), &text)
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    preset: &'a str,
    report: grover_gme::SweepReport,
}

pub fn sweep(preset: &str, (lo, hi): (u32, u32), output: &OutputArgs) -> Result<(), CliError> {
    let family = Preset::from_str(preset)?;
    let ns: Vec<u32> = (lo..=hi).collect();
    let report = scale_invariance_sweep(|n| family.marked(n), &ns)?;
    let verdict = format!("scale_invariant: {}\n", report.scale_invariant);
    let text = match output.format {
        Format::Json => to_json(&SweepDocument { preset: &family.to_string(), report }),
        Format::Csv => {
            let mut table = Table::new(&[
                "n",
                "b_max",
                "alpha_star",
                "turning_theta",
                "turning_k_ratio",
                "peak_gme",
                "final_gme",
            ]);
            for r in &report.rows {
                table.row(&[
                    r.n.to_string(),
                    num(r.b_max),
                    num(r.alpha_star),
                    num(r.turning_theta),
                    num(r.turning_ratio),
                    num(r.peak_gme),
                    num(r.final_gme),
                ]);
            }
            table.into_string()
        }
    };
    emit(output.out.as_deref(), &text)?;
    // keep the verdict out of a CSV that is going to standard output
    if output.out.is_some() {
        print!("{verdict}");
    } else {
        eprint!("{verdict}");
    }
    Ok(())
}

pub fn profile(args: &MarkedArgs, grid: usize, output: &OutputArgs) -> Result<(), CliError> {
    if grid < 2 {
        return Err(CliError::Config(format!("--grid needs at least 2 points, got {grid}")));
    }
    let set = resolve(args)?.set;
    // half-open so that an even grid lands exactly on π/2, the peak of A
    let alphas: Vec<f64> = (0..grid).map(|i| PI * i as f64 / grid as f64).collect();
    let rows = ab_profile(&set, &alphas)?;
    let text = match output.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut table = Table::new(&["alpha", "A", "B", "g"]);
            for r in &rows {
                table.row(&[num(r.alpha), num(r.a), num(r.b), num(r.g)]);
            }
            table.into_string()
        }
    };
    emit(output.out.as_deref(), &text)
}
