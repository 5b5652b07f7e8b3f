//! Products of large powers of `cos(α/2)` and `sin(α/2)` kept as logarithms.
//!
//! Terms like `cos^(n-w)(α/2) sin^w(α/2)` underflow a double long before `n`
//! reaches a thousand, while the quantities built from them (overlaps of a
//! few tenths) do not. Everything is therefore carried as `ln |x|` and only
//! exponentiated once the large factors have cancelled.

use std::f64::consts::PI;

use crate::error::{GmeError, Result};

/// A real number stored as a sign and the logarithm of its magnitude.
/// Zero is `ln_abs == -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    pub negative: bool,
    pub ln_abs: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog { negative: false, ln_abs: f64::NEG_INFINITY };
    pub const ONE: SignedLog = SignedLog { negative: false, ln_abs: 0.0 };

    pub fn from_value(x: f64) -> Self {
        Self { negative: x < 0.0, ln_abs: x.abs().ln() }
    }

    pub fn value(self) -> f64 {
        let mag = self.ln_abs.exp();
        if self.negative {
            -mag
        } else {
            mag
        }
    }

    pub fn is_zero(self) -> bool {
        self.ln_abs == f64::NEG_INFINITY
    }
}

impl std::ops::Mul for SignedLog {
    type Output = SignedLog;

    fn mul(self, other: SignedLog) -> SignedLog {
        SignedLog { negative: self.negative ^ other.negative, ln_abs: self.ln_abs + other.ln_abs }
    }
}

/// `ln(cos^(n-w)(α/2) · sin^w(α/2))` without range checks; `-inf` for zero.
pub(crate) fn ln_weight_term(n: u32, w: u32, alpha: f64) -> f64 {
    let half = 0.5 * alpha;
    let mut acc = 0.0;
    if w < n {
        acc += f64::from(n - w) * half.cos().max(0.0).ln();
    }
    if w > 0 {
        acc += f64::from(w) * half.sin().max(0.0).ln();
    }
    acc
}

/// `cos^(n-w)(α/2) · sin^w(α/2)` in signed-log form. Non-negative on `[0, π]`.
pub fn log_weight_term(n: u32, w: u32, alpha: f64) -> Result<SignedLog> {
    if w > n {
        return Err(GmeError::InvalidInput(format!("weight {w} exceeds qubit count {n}")));
    }
    check_alpha(alpha)?;
    Ok(SignedLog { negative: false, ln_abs: ln_weight_term(n, w, alpha) })
}

/// `ln Σ exp(x_i)`, with an empty or all `-inf` input giving `-inf`.
pub fn ln_sum_exp<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let terms: Vec<f64> = terms.into_iter().collect();
    let peak = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if peak == f64::NEG_INFINITY {
        return peak;
    }
    peak + terms.iter().map(|t| (t - peak).exp()).sum::<f64>().ln()
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=PI).contains(&alpha) {
        Ok(())
    } else {
        Err(GmeError::InvalidInput(format!("product-state angle {alpha} outside [0, π]")))
    }
}
