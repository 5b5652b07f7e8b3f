//! GME along the whole search, `k = 0..=k_opt`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::asymptotic::{turning_point, Turning};
use crate::error::{GmeError, Result};
use crate::landscape::OverlapLandscape;
use crate::marked::MarkedSet;
use crate::schedule::{make_schedule, GroverSchedule};

/// Longest curve we are willing to materialise.
pub const MAX_CURVE_POINTS: u128 = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveMode {
    Exact,
    Asymptotic,
    Both,
}

impl CurveMode {
    pub fn wants_exact(self) -> bool {
        matches!(self, CurveMode::Exact | CurveMode::Both)
    }

    pub fn wants_asymptotic(self) -> bool {
        matches!(self, CurveMode::Asymptotic | CurveMode::Both)
    }
}

impl fmt::Display for CurveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveMode::Exact => "exact",
            CurveMode::Asymptotic => "asymptotic",
            CurveMode::Both => "both",
        })
    }
}

impl FromStr for CurveMode {
    type Err = GmeError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(CurveMode::Exact),
            "asymptotic" => Ok(CurveMode::Asymptotic),
            "both" => Ok(CurveMode::Both),
            _ => Err(GmeError::InvalidInput(format!("unknown curve mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GmePoint {
    pub k: u64,
    pub ratio: f64,
    pub theta_k: f64,
    pub gme_exact: Option<f64>,
    pub gme_asymptotic: Option<f64>,
    pub alpha_star: Option<f64>,
}

impl GmePoint {
    /// The exact value when it was computed, else the asymptotic one.
    pub fn gme(&self) -> f64 {
        self.gme_exact.or(self.gme_asymptotic).unwrap_or(f64::NAN)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GmeCurve {
    pub mode: CurveMode,
    pub schedule: GroverSchedule,
    pub points: Vec<GmePoint>,
    pub b_max: f64,
    pub turning_theta: f64,
    /// `(2/π) θ_T k_opt`
    pub turning_k: f64,
    pub turning_k_nearest: u64,
    pub peak_gme: f64,
    pub peak_k: u64,
}

impl GmeCurve {
    pub fn turning_ratio(&self) -> f64 {
        self.turning_theta / std::f64::consts::FRAC_PI_2
    }

    /// Largest `|exact - asymptotic|` over points with both values, skipping
    /// iterations within `exclusion` of the real-valued turning iteration.
    pub fn max_residual(&self, exclusion: f64) -> Option<f64> {
        self.points
            .iter()
            .filter(|p| (p.k as f64 - self.turning_k).abs() >= exclusion)
            .filter_map(|p| Some((p.gme_exact? - p.gme_asymptotic?).abs()))
            .reduce(f64::max)
    }
}

pub fn gme_curve(marked: &MarkedSet, mode: CurveMode) -> Result<GmeCurve> {
    let schedule = make_schedule(marked)?;
    if schedule.k_opt >= MAX_CURVE_POINTS {
        return Err(GmeError::Resource(format!(
            "{marked} needs {} iterations; curves are limited to {MAX_CURVE_POINTS} points",
            schedule.k_opt + 1
        )));
    }
    if mode.wants_exact() && !marked.is_symmetric() {
        return Err(GmeError::Unsupported(format!(
            "exact curve needs a permutation-symmetric marked set, got {marked}"
        )));
    }
    let turning: Turning = turning_point(marked)?;
    let landscape = mode.wants_exact().then(|| OverlapLandscape::new(marked));

    let k_opt = schedule.k_opt as u64;
    let points = (0..=k_opt)
        .into_par_iter()
        .map(|k| {
            let theta_k = schedule.theta_k(u128::from(k))?;
            let exact = landscape.as_ref().map(|l| l.gme(theta_k)).transpose()?;
            Ok(GmePoint {
                k,
                ratio: schedule.ratio(u128::from(k)),
                theta_k,
                gme_exact: exact.map(|e| e.gme),
                gme_asymptotic: mode.wants_asymptotic().then(|| turning.gme_at(theta_k)),
                alpha_star: exact.map(|e| e.alpha_star),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let peak = points
        .iter()
        .fold(None::<&GmePoint>, |best, p| match best {
            Some(b) if b.gme() >= p.gme() => Some(b),
            _ => Some(p),
        })
        .expect("curve has at least one point");
    let turning_k = schedule.iteration_at(turning.theta);

    Ok(GmeCurve {
        mode,
        schedule,
        b_max: turning.b_max.value,
        turning_theta: turning.theta,
        turning_k,
        turning_k_nearest: turning_k.round() as u64,
        peak_gme: peak.gme(),
        peak_k: peak.k,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::Preset;

    #[test]
    fn two_qubit_curve() {
        let c = gme_curve(&Preset::Product.marked(2).unwrap(), CurveMode::Exact).unwrap();
        assert_eq!(c.points.len(), 2);
        assert!(c.points[0].gme() < 1e-15);
        assert!(c.points[0].gme_asymptotic.is_none());
        // the final state |00> is a product state
        assert!(c.points[1].gme() < 1e-15);
    }

    #[test]
    fn modes_fill_their_columns() {
        let marked = Preset::W.marked(8).unwrap();
        let c = gme_curve(&marked, CurveMode::Asymptotic).unwrap();
        assert!(c.points.iter().all(|p| p.gme_exact.is_none() && p.gme_asymptotic.is_some()));
        let c = gme_curve(&marked, CurveMode::Both).unwrap();
        assert!(c.points.iter().all(|p| p.gme_exact.is_some() && p.alpha_star.is_some()));
        assert!(c.points.windows(2).all(|w| w[0].k + 1 == w[1].k));
        assert_eq!(c.points.last().unwrap().k as u128, c.schedule.k_opt);
    }

    #[test]
    fn peak_is_the_largest_point() {
        let c = gme_curve(&Preset::Ghz.marked(16).unwrap(), CurveMode::Both).unwrap();
        let max = c.points.iter().map(|p| p.gme()).fold(f64::MIN, f64::max);
        assert_eq!(c.peak_gme, max);
        assert!(c.turning_theta > 0.0 && c.turning_theta < std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn asymmetric_exact_curve_is_refused() {
        let marked = MarkedSet::new(8, &[0, 1]).unwrap();
        assert!(matches!(gme_curve(&marked, CurveMode::Exact), Err(GmeError::Unsupported(_))));
        assert!(gme_curve(&marked, CurveMode::Asymptotic).is_ok());
    }

    #[test]
    fn oversized_curves_are_refused() {
        let marked = Preset::Product.marked(60).unwrap();
        assert!(matches!(gme_curve(&marked, CurveMode::Asymptotic), Err(GmeError::Resource(_))));
    }

    #[test]
    fn parallel_evaluation_is_reproducible() {
        let marked = Preset::Dicke(2).marked(18).unwrap();
        let a = gme_curve(&marked, CurveMode::Both).unwrap();
        let b = gme_curve(&marked, CurveMode::Both).unwrap();
        assert_eq!(a, b);
        let landscape = OverlapLandscape::new(&marked);
        for p in &a.points {
            let serial = landscape.gme(p.theta_k).unwrap();
            assert_eq!(p.gme_exact.unwrap().to_bits(), serial.gme.to_bits());
        }
    }
}
