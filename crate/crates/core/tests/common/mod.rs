//! Randomised invariants shared by the property tests and the acceptance gate.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_2, PI};

use grover_gme::{gme_exact, log_weight_term, make_schedule, turning_point, MarkedSet, OverlapLandscape};
use proptest::prelude::*;

/// Union of up to four complete weight classes, never the whole basis.
pub fn symmetric_set(max_n: u32) -> impl Strategy<Value = MarkedSet> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let classes = (n as usize).min(4);
            (Just(n), prop::collection::btree_set(0..=n, 1..=classes))
        })
        .prop_map(|(n, weights): (u32, BTreeSet<u32>)| {
            MarkedSet::from_multiplicities(
                n,
                weights.into_iter().map(|w| (w, grover_gme::marked::binomial(n, w).unwrap())),
            )
            .unwrap()
        })
}

/// Arbitrary weight multiset, symmetric or not.
pub fn any_set(max_n: u32) -> impl Strategy<Value = MarkedSet> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(0..=n, 1..=6)))
        .prop_filter_map("more marks than states", |(n, weights)| MarkedSet::new(n, &weights).ok())
}

/// Flipping every qubit maps weight `w` to `n - w` and fixes both the
/// uniform state and the set of product states.
pub fn complement_symmetry(set: &MarkedSet, theta_k: f64) -> Result<(), String> {
    let n = set.n();
    let mirrored = MarkedSet::from_multiplicities(n, set.weights().map(|(w, m)| (n - w, m)))
        .map_err(|e| e.to_string())?;
    let a = gme_exact(set, theta_k).map_err(|e| e.to_string())?.gme;
    let b = gme_exact(&mirrored, theta_k).map_err(|e| e.to_string())?.gme;
    if !(0.0..1.0).contains(&a) {
        return Err(format!("{set} θ_k={theta_k}: gme {a} out of range"));
    }
    if (a - b).abs() > 1e-9 {
        return Err(format!("{set} θ_k={theta_k}: {a} vs mirrored {b}"));
    }
    Ok(())
}

/// The closed form rises up to the turning angle and falls after it.
pub fn asymptotic_monotonicity(set: &MarkedSet, samples: &[f64]) -> Result<(), String> {
    let turning = turning_point(set).map_err(|e| e.to_string())?;
    let mut angles: Vec<f64> = samples.iter().map(|s| s * FRAC_PI_2).collect();
    angles.extend([0.0, turning.theta, FRAC_PI_2]);
    angles.sort_by(f64::total_cmp);
    for pair in angles.windows(2) {
        let (lo, hi) = (turning.gme_at(pair[0]), turning.gme_at(pair[1]));
        // a few ulps of slack for rounding in sin²θ_k near π/2
        let slack = 4.0 * f64::EPSILON;
        let ok = if pair[1] <= turning.theta { hi >= lo - slack } else { hi <= lo + slack };
        if !ok {
            return Err(format!("{set}: gme {lo} at {} then {hi} at {}", pair[0], pair[1]));
        }
    }
    Ok(())
}

/// `|ψ0>` is itself a product state.
pub fn initial_state_unentangled(set: &MarkedSet) -> Result<(), String> {
    let theta = make_schedule(set).map_err(|e| e.to_string())?.theta;
    let gme = OverlapLandscape::new(set).gme(theta).map_err(|e| e.to_string())?.gme;
    if gme < 1e-12 {
        Ok(())
    } else {
        Err(format!("{set}: gme(k=0) = {gme}"))
    }
}

/// Log-domain weight terms against plain floating point, where the latter
/// is representable.
pub fn log_domain_exactness(n: u32, w: u32, alpha: f64) -> Result<(), String> {
    let half = 0.5 * alpha;
    let direct = half.cos().powi((n - w) as i32) * half.sin().powi(w as i32);
    let logged = log_weight_term(n, w, alpha).map_err(|e| e.to_string())?.value();
    if direct < 1e-290 {
        return Ok(());
    }
    let rel = (logged - direct).abs() / direct;
    if rel <= 1e-12 {
        Ok(())
    } else {
        Err(format!("n={n} w={w} α={alpha}: {logged} vs {direct} (rel {rel:e})"))
    }
}

pub fn weight_term_args() -> impl Strategy<Value = (u32, u32, f64)> {
    (1u32..=400).prop_flat_map(|n| (Just(n), 0..=n, 0.0..=PI))
}
