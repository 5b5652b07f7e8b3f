//! Large-database (`N >> M`) behaviour: the marked-state profile maximum
//! `B_max`, the turning point, and the two-branch closed form of the GME.
//!
//! Below the turning angle the nearest product state stays close to the
//! uniform state and the GME follows the success probability `sin²θ_k`.
//! Above it the nearest product state jumps to the marked-state peak of
//! `B(α)` and the GME becomes `1 - sin²θ_k · B_max²`. The branches meet at
//! `tan θ_T = 1 / B_max`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{GmeError, Result};
use crate::landscape::OverlapLandscape;
use crate::marked::MarkedSet;
use crate::optimize::GridMaximizer;

/// Spread in `B_max` across a family below which it counts as constant.
pub const SCALE_INVARIANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BMax {
    pub value: f64,
    pub alpha_star: f64,
}

/// `max_α B(α)` with `B(α) = Σ_i cos^(n-n_i)(α/2) sin^(n_i)(α/2) / √M`,
/// optimised in the log domain.
pub fn b_max(marked: &MarkedSet) -> BMax {
    let landscape = OverlapLandscape::bare(marked);
    let best = GridMaximizer::angles().maximize(|alpha| landscape.ln_b(alpha));
    BMax { value: best.value.exp(), alpha_star: best.x }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Turning {
    /// `θ_T = arctan(1 / B_max)`
    pub theta: f64,
    pub b_max: BMax,
}

impl Turning {
    /// Fraction of `k_opt` at which the turn happens, `2θ_T/π`.
    pub fn ratio(&self) -> f64 {
        self.theta / FRAC_PI_2
    }

    /// Peak of the asymptotic curve, `sin²θ_T = 1 / (1 + B_max²)`.
    pub fn peak_gme(&self) -> f64 {
        1.0 / (1.0 + self.b_max.value * self.b_max.value)
    }

    /// GME of the final state `|S1>` in the asymptotic regime, `1 - B_max²`.
    pub fn final_gme(&self) -> f64 {
        1.0 - self.b_max.value * self.b_max.value
    }

    /// Asymptotic GME at angle `θ_k`.
    pub fn gme_at(&self, theta_k: f64) -> f64 {
        let s2 = theta_k.sin().powi(2);
        if theta_k <= self.theta {
            s2
        } else {
            1.0 - s2 * self.b_max.value * self.b_max.value
        }
    }
}

pub fn turning_point(marked: &MarkedSet) -> Result<Turning> {
    let b = b_max(marked);
    if b.value.is_nan() || b.value <= 0.0 {
        return Err(GmeError::Degenerate(format!("B_max vanishes for {marked}")));
    }
    Ok(Turning { theta: (1.0 / b.value).atan(), b_max: b })
}

/// Two-branch large-`N` GME at angle `θ_k`.
pub fn gme_asymptotic(marked: &MarkedSet, theta_k: f64) -> Result<f64> {
    Ok(turning_point(marked)?.gme_at(theta_k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: u32,
    pub b_max: f64,
    pub alpha_star: f64,
    pub turning_theta: f64,
    pub turning_ratio: f64,
    pub peak_gme: f64,
    pub final_gme: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub b_max_spread: f64,
    /// spread of the post-turn GME at `θ_k = π/2`
    pub final_gme_spread: f64,
    pub scale_invariant: bool,
}

/// Evaluates `B_max` for each qubit count of a state family. The family is
/// scale invariant exactly when `B_max` does not move with `n`.
pub fn scale_invariance_sweep<F>(family: F, n_range: &[u32]) -> Result<SweepReport>
where
    F: Fn(u32) -> Result<MarkedSet>,
{
    if n_range.is_empty() {
        return Err(GmeError::InvalidInput("empty qubit range".into()));
    }
    let rows = n_range
        .iter()
        .map(|&n| {
            let turning = turning_point(&family(n)?)?;
            Ok(SweepRow {
                n,
                b_max: turning.b_max.value,
                alpha_star: turning.b_max.alpha_star,
                turning_theta: turning.theta,
                turning_ratio: turning.ratio(),
                peak_gme: turning.peak_gme(),
                final_gme: turning.final_gme(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let spread = |f: fn(&SweepRow) -> f64| {
        let (lo, hi) =
            rows.iter().map(f).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
        hi - lo
    };
    let b_max_spread = spread(|r| r.b_max);
    let final_gme_spread = spread(|r| r.final_gme);
    Ok(SweepReport {
        rows,
        b_max_spread,
        final_gme_spread,
        scale_invariant: b_max_spread <= SCALE_INVARIANCE_TOL,
    })
}
