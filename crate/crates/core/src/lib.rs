//! Geometric measure of entanglement (GME) of the intermediate states of
//! Grover search when the marked states form a permutation-symmetric set.
//!
//! Marked sets are described by the multiset of Hamming weights of the
//! marked basis states. For a symmetric set the nearest product state is a
//! symmetric one, so the GME reduces to a maximisation over
//! `cos(a/2)|0> + e^{ib} sin(a/2)|1>` product states. While every amplitude
//! is non-negative `b = 0` is optimal and a single angle is searched; once
//! the rotation passes `π/2` the phase is searched as well. That
//! maximisation is done exactly in [`landscape`], with the large-database
//! closed forms and the turning point in [`asymptotic`]. The [`oracle`]
//! module is an independent dense statevector check for small qubit counts.

pub mod asymptotic;
pub mod curve;
mod error;
pub mod landscape;
pub mod logdomain;
pub mod marked;
pub mod optimize;
pub mod oracle;
pub mod schedule;

pub use asymptotic::{
    b_max, gme_asymptotic, scale_invariance_sweep, turning_point, BMax, SweepReport, SweepRow, Turning,
};
pub use curve::{gme_curve, CurveMode, GmeCurve, GmePoint};
pub use error::{GmeError, Result};
pub use landscape::{ab_profile, gme_exact, overlap, ExactGme, OverlapLandscape, ProfileRow};
pub use logdomain::{log_weight_term, SignedLog};
pub use marked::{MarkedSet, Preset};
pub use schedule::{make_schedule, GroverSchedule};
