//! Rotation angle and iteration count of the Grover schedule.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{GmeError, Result};
use crate::marked::MarkedSet;

const TIE_SLACK: f64 = 1e-12;

/// `θ = arcsin √(M/N)` and the iteration count `k_opt` that brings
/// `θ_k = (2k + 1)θ` closest to `π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroverSchedule {
    pub theta: f64,
    pub k_opt: u128,
}

/// Schedule for a marked set. `k_opt` is the closest integer to
/// `(π/(2θ) - 1)/2`, rounding exact halves up.
pub fn make_schedule(marked: &MarkedSet) -> Result<GroverSchedule> {
    let n = marked.n();
    let m = marked.count();
    if n < 128 && m >= 1u128 << n {
        return Err(GmeError::InvalidInput(format!(
            "all {m} basis states are marked; nothing to search for"
        )));
    }

    let theta = marked.fraction().sqrt().asin();
    if theta.is_nan() || theta <= 0.0 {
        return Err(GmeError::InvalidInput(format!("search angle underflows for {marked}")));
    }

    let target = (FRAC_PI_2 / theta - 1.0) / 2.0;
    // asin can land an ulp off an exact tie (n = 1 gives 0.4999...)
    let rounded = (target + 0.5 + TIE_SLACK * target.abs().max(1.0)).floor().max(0.0);
    if rounded >= u128::MAX as f64 {
        return Err(GmeError::Resource(format!("k_opt for {marked} does not fit in 128 bits")));
    }
    Ok(GroverSchedule { theta, k_opt: rounded as u128 })
}

impl GroverSchedule {
    /// `θ_k = (2k + 1)θ` for `0 <= k <= k_opt`.
    pub fn theta_k(&self, k: u128) -> Result<f64> {
        if k > self.k_opt {
            return Err(GmeError::OutOfRange { k, k_opt: self.k_opt });
        }
        Ok((2.0 * k as f64 + 1.0) * self.theta)
    }

    /// `k / k_opt`; zero for the degenerate `k_opt = 0` schedule.
    pub fn ratio(&self, k: u128) -> f64 {
        if self.k_opt == 0 {
            0.0
        } else {
            k as f64 / self.k_opt as f64
        }
    }

    /// Real-valued iteration `(2/π)·angle·k_opt` corresponding to an angle.
    pub fn iteration_at(&self, angle: f64) -> f64 {
        angle / FRAC_PI_2 * self.k_opt as f64
    }
}
