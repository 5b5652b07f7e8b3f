//! Overlap of a Grover iterate with symmetric product states.
//!
//! With `|ψ_k> = cos θ_k |S0> + sin θ_k |S1>` and the product state
//! `|φ(α)> = (cos(α/2)|0> + sin(α/2)|1>)^⊗n`, the overlap splits as
//!
//! ```text
//! <ψ_k|φ(α)> = cos θ_k · U(α) + sin θ_k · B(α)
//! U(α) = [2^(n/2) A(α) - Σ_i D_i(α)] / √(N - M)
//! B(α) = Σ_i D_i(α) / √M
//! A(α) = sin^n(π/4 + α/2),   D_i(α) = cos^(n-n_i)(α/2) sin^(n_i)(α/2)
//! ```
//!
//! `U` and `B` do not depend on `θ_k`, so an [`OverlapLandscape`] evaluates
//! them once on the coarse grid and reuses that scan for every iteration.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{GmeError, Result};
use crate::logdomain::{check_alpha, ln_weight_term};
use crate::marked::MarkedSet;
use crate::optimize::{GridMaximizer, Maximum, ALPHA_TOL};

const PHASE_INTERVALS: usize = 128;
const PHASE_TOL: f64 = 1e-10;
/// Phase-grid maxima worth polishing; where `|overlap|` hardly depends on
/// `β` rounding noise produces many spurious ones.
const PHASE_PEAKS: usize = 4;
/// `α` grid used while ranking phases; the winner gets the full grid.
const PHASE_ALPHA_INTERVALS: usize = 256;

#[derive(Debug, Clone)]
pub struct OverlapLandscape {
    marked: MarkedSet,
    /// (weight, ln multiplicity)
    terms: Vec<(u32, f64)>,
    ln_count: f64,
    half_ln_unmarked: f64,
    /// `-½ ln(1 - M/N)`: folds `2^(n/2) / √(N - M)` into one log.
    ln_uniform_scale: f64,
    grid: GridMaximizer,
    /// `(U, B)` at every grid node.
    grid_parts: Vec<(f64, f64)>,
}

/// Result of the exact symmetric GME optimisation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactGme {
    pub gme: f64,
    pub alpha_star: f64,
    /// Zero except for iterates past `θ_k = π/2`.
    pub beta_star: f64,
    pub max_overlap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileRow {
    pub alpha: f64,
    pub a: f64,
    pub b: f64,
    pub g: f64,
}

impl OverlapLandscape {
    pub fn new(marked: &MarkedSet) -> Self {
        let mut landscape = Self::bare(marked);
        landscape.grid_parts = landscape.grid.nodes().into_iter().map(|a| landscape.parts(a)).collect();
        landscape
    }

    /// A landscape without the cached grid scan, for pointwise evaluation.
    pub(crate) fn bare(marked: &MarkedSet) -> Self {
        Self {
            marked: marked.clone(),
            terms: marked.weights().map(|(w, m)| (w, (m as f64).ln())).collect(),
            ln_count: marked.ln_count(),
            half_ln_unmarked: 0.5 * marked.ln_unmarked(),
            ln_uniform_scale: -0.5 * (-marked.fraction()).ln_1p(),
            grid: GridMaximizer::angles(),
            grid_parts: Vec::new(),
        }
    }

    pub fn marked(&self) -> &MarkedSet {
        &self.marked
    }

    /// `ln A(α) = n ln sin(π/4 + α/2)`.
    pub fn ln_a(&self, alpha: f64) -> f64 {
        f64::from(self.marked.n()) * (FRAC_PI_4 + 0.5 * alpha).sin().max(0.0).ln()
    }

    /// `ln Σ_i D_i(α)` over the marked multiset.
    pub fn ln_marked_sum(&self, alpha: f64) -> f64 {
        // hot path: one sin_cos and no allocation per evaluation
        let n = self.marked.n();
        let (s, c) = (0.5 * alpha).sin_cos();
        let (ln_c, ln_s) = (c.max(0.0).ln(), s.max(0.0).ln());
        let power = |e: u32, ln_x: f64| if e == 0 { 0.0 } else { f64::from(e) * ln_x };
        let term = |&(w, ln_mult): &(u32, f64)| ln_mult + power(n - w, ln_c) + power(w, ln_s);
        let peak = self.terms.iter().map(term).fold(f64::NEG_INFINITY, f64::max);
        if peak == f64::NEG_INFINITY {
            return peak;
        }
        peak + self.terms.iter().map(|t| (term(t) - peak).exp()).sum::<f64>().ln()
    }

    /// `ln B(α)`; `B(α) = Σ_i D_i(α) / √M`.
    pub fn ln_b(&self, alpha: f64) -> f64 {
        self.ln_marked_sum(alpha) - 0.5 * self.ln_count
    }

    /// `(U(α), B(α))`, the unmarked and marked coefficients of the overlap.
    pub fn parts(&self, alpha: f64) -> (f64, f64) {
        let ln_sum = self.ln_marked_sum(alpha);
        let unmarked =
            (self.ln_a(alpha) + self.ln_uniform_scale).exp() - (ln_sum - self.half_ln_unmarked).exp();
        let marked = (ln_sum - 0.5 * self.ln_count).exp();
        (unmarked, marked)
    }

    /// `<ψ_k|φ(α, β)>` for the symmetric product state with relative phase
    /// `β` on `|1>`. Only needed once `θ_k` passes `π/2` and the amplitudes
    /// stop being non-negative.
    pub fn overlap_with_phase(&self, theta_k: f64, alpha: f64, beta: f64) -> Complex64 {
        let n = self.marked.n();
        let half = 0.5 * alpha;
        let z = Complex64::new(half.cos(), 0.0) + Complex64::from_polar(half.sin(), beta);
        // |z|^n / √(N - M), rebased onto the β = 0 scale of A(α)
        let ln_uniform =
            0.5 * f64::from(n) * (z.norm_sqr().ln() - std::f64::consts::LN_2) + self.ln_uniform_scale;
        let uniform = Complex64::from_polar(ln_uniform.exp(), f64::from(n) * z.arg());
        let marked_sum = |ln_scale: f64| -> Complex64 {
            self.terms
                .iter()
                .map(|&(w, ln_mult)| {
                    let mag = (ln_mult + ln_weight_term(n, w, alpha) - ln_scale).exp();
                    Complex64::from_polar(mag, f64::from(w) * beta)
                })
                .sum()
        };
        let u = uniform - marked_sum(self.half_ln_unmarked);
        let b = marked_sum(0.5 * self.ln_count);
        u * theta_k.cos() + b * theta_k.sin()
    }

    /// `<ψ_k|φ(α)>` for the iterate at angle `θ_k`.
    pub fn overlap(&self, theta_k: f64, alpha: f64) -> f64 {
        let (u, b) = self.parts(alpha);
        theta_k.cos() * u + theta_k.sin() * b
    }

    /// `max_α |<ψ_k|φ(α)>|` and its argmax.
    pub fn max_overlap(&self, theta_k: f64) -> Maximum {
        let (c, s) = (theta_k.cos(), theta_k.sin());
        let scan: Vec<f64> = if self.grid_parts.is_empty() {
            self.grid.nodes().into_iter().map(|a| self.overlap(theta_k, a).abs()).collect()
        } else {
            self.grid_parts.iter().map(|&(u, b)| (c * u + s * b).abs()).collect()
        };
        self.grid.refine(&scan, |alpha| {
            let (u, b) = self.parts(alpha);
            (c * u + s * b).abs()
        })
    }

    /// Best symmetric product state as `(α, β, |overlap|)`.
    ///
    /// For `θ_k <= π/2` every amplitude is non-negative and `β = 0` is
    /// optimal. Past `π/2` the unmarked amplitudes turn negative, so the
    /// phase is optimised too: each `β` on a grid over `[0, π]` gets its own
    /// `α` search, and the best `β` is polished the same way. Negative `β`
    /// mirrors positive `β` by complex conjugation.
    pub fn max_overlap_with_phase(&self, theta_k: f64) -> (f64, f64, f64) {
        let real = self.max_overlap(theta_k);
        if theta_k <= FRAC_PI_2 {
            return (real.x, 0.0, real.value);
        }
        let best_alpha = |grid: &GridMaximizer, beta: f64| {
            grid.maximize(|alpha| self.overlap_with_phase(theta_k, alpha, beta).norm())
        };
        let ranking = GridMaximizer::new(0.0, PI, PHASE_ALPHA_INTERVALS, ALPHA_TOL);
        let phase = GridMaximizer::new(0.0, PI, PHASE_INTERVALS, PHASE_TOL)
            .maximize_top(|beta| best_alpha(&ranking, beta).value, PHASE_PEAKS);
        if phase.value > real.value {
            let alpha = best_alpha(&self.grid, phase.x);
            (alpha.x, phase.x, alpha.value)
        } else {
            (real.x, 0.0, real.value)
        }
    }

    /// GME of the iterate at `θ_k`, restricted to symmetric product states.
    pub fn gme(&self, theta_k: f64) -> Result<ExactGme> {
        if !self.marked.is_symmetric() {
            return Err(GmeError::Unsupported(format!(
                "{} is not permutation symmetric; the symmetric product-state \
                 reduction does not apply, use the dense oracle instead",
                self.marked
            )));
        }
        check_theta(theta_k)?;
        let (alpha_star, beta_star, best) = self.max_overlap_with_phase(theta_k);
        Ok(ExactGme { gme: (1.0 - best * best).max(0.0), alpha_star, beta_star, max_overlap: best })
    }

    pub fn profile_row(&self, alpha: f64) -> ProfileRow {
        let a = self.ln_a(alpha).exp();
        let b = self.ln_b(alpha).exp();
        ProfileRow { alpha, a, b, g: a + b }
    }
}

fn check_theta(theta_k: f64) -> Result<()> {
    // k_opt can overshoot π/2 slightly; n = 1 reaches 3π/4.
    if (0.0..=PI).contains(&theta_k) {
        Ok(())
    } else {
        Err(GmeError::InvalidInput(format!("iteration angle {theta_k} outside [0, π]")))
    }
}

/// Exact `<ψ_k|φ(α)>`, including the marked-state correction inside the
/// unmarked amplitude.
pub fn overlap(marked: &MarkedSet, theta_k: f64, alpha: f64) -> Result<f64> {
    check_theta(theta_k)?;
    check_alpha(alpha)?;
    Ok(OverlapLandscape::bare(marked).overlap(theta_k, alpha))
}

/// `1 - max |<ψ_k|φ>|²` over symmetric product states, for a symmetric
/// marked set.
pub fn gme_exact(marked: &MarkedSet, theta_k: f64) -> Result<ExactGme> {
    // a single evaluation does not amortise the cached scan
    OverlapLandscape::bare(marked).gme(theta_k)
}

/// `A(α)`, `B(α)` and `g(α) = A(α) + B(α)` at each requested angle.
pub fn ab_profile(marked: &MarkedSet, alphas: &[f64]) -> Result<Vec<ProfileRow>> {
    let landscape = OverlapLandscape::bare(marked);
    alphas
        .iter()
        .map(|&alpha| {
            check_alpha(alpha)?;
            Ok(landscape.profile_row(alpha))
        })
        .collect()
}
