//! Marked sets described by the Hamming weights of their basis states.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{GmeError, Result};

/// Largest supported qubit count. Beyond this `2^-n/2` leaves the normal
/// double range and the search angle can no longer be represented.
pub const MAX_QUBITS: u32 = 2000;

/// `C(n, k)`, or `None` when it does not fit in a `u128`.
pub fn binomial(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// `ln C(n, k)` as a sum of log ratios, for sizes where `binomial` overflows.
pub fn ln_binomial(n: u32, k: u32) -> f64 {
    assert!(k <= n);
    let k = k.min(n - k);
    (0..k).map(|i| (f64::from(n - i)).ln() - (f64::from(i + 1)).ln()).sum()
}

/// The marked basis states of a search over `N = 2^n` items, kept as a
/// multiset of Hamming weights (weight -> multiplicity).
///
/// A set that marks every basis state of each weight it touches is
/// permutation symmetric; `|S1>` is then a sum of Dicke states.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkedSet {
    n: u32,
    weights: BTreeMap<u32, u128>,
    count: u128,
    is_symmetric: bool,
}

impl MarkedSet {
    /// Builds a marked set from an explicit list of Hamming weights, one
    /// entry per marked state.
    pub fn new(n: u32, weights: &[u32]) -> Result<Self> {
        let mut multiplicities = BTreeMap::new();
        for &w in weights {
            *multiplicities.entry(w).or_insert(0u128) += 1;
        }
        Self::from_multiplicities(n, multiplicities)
    }

    pub fn from_multiplicities<I>(n: u32, weights: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u32, u128)>,
    {
        if n == 0 {
            return Err(GmeError::InvalidInput("need at least one qubit".into()));
        }
        if n > MAX_QUBITS {
            return Err(GmeError::InvalidInput(format!(
                "{n} qubits exceeds the supported maximum of {MAX_QUBITS}"
            )));
        }
        let mut merged: BTreeMap<u32, u128> = BTreeMap::new();
        for (w, mult) in weights {
            if w > n {
                return Err(GmeError::InvalidInput(format!("Hamming weight {w} exceeds qubit count {n}")));
            }
            if mult == 0 {
                continue;
            }
            let slot = merged.entry(w).or_insert(0);
            *slot = slot
                .checked_add(mult)
                .ok_or_else(|| GmeError::InvalidInput("multiplicity overflow".into()))?;
        }
        if merged.is_empty() {
            return Err(GmeError::InvalidInput("marked set is empty".into()));
        }

        let mut count: u128 = 0;
        let mut is_symmetric = true;
        for (&w, &mult) in &merged {
            match binomial(n, w) {
                Some(available) if mult > available => {
                    return Err(GmeError::InvalidInput(format!(
                        "{mult} states of weight {w} marked but only {available} exist for n = {n}"
                    )));
                }
                Some(available) => is_symmetric &= mult == available,
                // More states of this weight exist than any u128 can count.
                None => is_symmetric = false,
            }
            count = count
                .checked_add(mult)
                .ok_or_else(|| GmeError::InvalidInput("marked-state count overflow".into()))?;
        }

        Ok(Self { n, weights: merged, count, is_symmetric })
    }

    /// Every basis state of weight `w`: the Dicke state `|w~>`.
    pub fn dicke(n: u32, w: u32) -> Result<Self> {
        if w > n {
            return Err(GmeError::InvalidInput(format!("Dicke weight {w} exceeds qubit count {n}")));
        }
        let mult = binomial(n, w)
            .ok_or_else(|| GmeError::InvalidInput(format!("C({n}, {w}) does not fit in 128 bits")))?;
        Self::from_multiplicities(n, [(w, mult)])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of marked states `M`.
    pub fn count(&self) -> u128 {
        self.count
    }

    pub fn ln_count(&self) -> f64 {
        (self.count as f64).ln()
    }

    /// `ln(M / N)`.
    pub fn ln_fraction(&self) -> f64 {
        self.ln_count() - f64::from(self.n) * std::f64::consts::LN_2
    }

    /// `M / N`, exact whenever `M` and `2^-n` are both representable.
    pub fn fraction(&self) -> f64 {
        if self.n <= 1000 && self.count < 1u128 << 53 {
            self.count as f64 * 0.5f64.powi(self.n as i32)
        } else {
            self.ln_fraction().exp()
        }
    }

    /// `ln(N - M)`.
    pub fn ln_unmarked(&self) -> f64 {
        f64::from(self.n) * std::f64::consts::LN_2 + (-self.fraction()).ln_1p()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_symmetric
    }

    /// `true` when every marked state has the same Hamming weight.
    pub fn is_equal_weight(&self) -> bool {
        self.weights.len() == 1
    }

    /// Distinct weights with their multiplicities, ascending by weight.
    pub fn weights(&self) -> impl Iterator<Item = (u32, u128)> + '_ {
        self.weights.iter().map(|(&w, &m)| (w, m))
    }

    /// The weight multiset with each weight `w` replaced by `n - w`, i.e. the
    /// image of the set under a global bit flip.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            weights: self.weights.iter().map(|(&w, &m)| (self.n - w, m)).collect(),
            count: self.count,
            is_symmetric: self.is_symmetric,
        }
    }
}

impl fmt::Display for MarkedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} {{", self.n)?;
        for (i, (w, m)) in self.weights().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if m == 1 {
                write!(f, "{w}")?;
            } else {
                write!(f, "{w}x{m}")?;
            }
        }
        write!(f, "}}")
    }
}

/// Named state families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `|0...0>`
    Product,
    /// `|0...0>` and `|1...1>`
    Ghz,
    /// every weight-1 state
    W,
    /// every state of the given weight
    Dicke(u32),
}

impl Preset {
    pub fn marked(self, n: u32) -> Result<MarkedSet> {
        match self {
            Preset::Product => MarkedSet::new(n, &[0]),
            Preset::Ghz => MarkedSet::new(n, &[0, n]),
            Preset::W => MarkedSet::dicke(n, 1),
            Preset::Dicke(w) => MarkedSet::dicke(n, w),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Product => write!(f, "product"),
            Preset::Ghz => write!(f, "ghz"),
            Preset::W => write!(f, "w"),
            Preset::Dicke(w) => write!(f, "dicke:{w}"),
        }
    }
}

impl FromStr for Preset {
    type Err = GmeError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "product" => Ok(Preset::Product),
            "ghz" => Ok(Preset::Ghz),
            "w" => Ok(Preset::W),
            other => match other.strip_prefix("dicke:") {
                Some(w) => w
                    .parse()
                    .map(Preset::Dicke)
                    .map_err(|_| GmeError::InvalidInput(format!("bad Dicke weight in {s:?}"))),
                None => Err(GmeError::InvalidInput(format!("unknown preset {s:?}"))),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(100, 10), Some(17_310_309_456_440));
        assert_eq!(binomial(100, 50), Some(100_891_344_545_564_193_334_812_497_256));
        assert_eq!(binomial(3, 4), Some(0));
        assert_eq!(binomial(400, 200), None);
        assert!((ln_binomial(100, 50) - (1.008_913_445_455_642e29f64).ln()).abs() < 1e-12);
    }

    #[test]
    fn presets_expand_exactly() {
        let p = Preset::Product.marked(7).unwrap();
        assert_eq!(p.weights().collect::<Vec<_>>(), vec![(0, 1)]);
        let g = Preset::Ghz.marked(7).unwrap();
        assert_eq!(g.weights().collect::<Vec<_>>(), vec![(0, 1), (7, 1)]);
        let w = Preset::W.marked(7).unwrap();
        assert_eq!(w.weights().collect::<Vec<_>>(), vec![(1, 7)]);
        let d = Preset::Dicke(3).marked(7).unwrap();
        assert_eq!(d.weights().collect::<Vec<_>>(), vec![(3, 35)]);
        for m in [p, g, w, d] {
            assert!(m.is_symmetric(), "{m}");
        }
    }

    #[test]
    fn preset_parsing() {
        assert_eq!("GHZ".parse::<Preset>().unwrap(), Preset::Ghz);
        assert_eq!("dicke:4".parse::<Preset>().unwrap(), Preset::Dicke(4));
        assert!("dicke:x".parse::<Preset>().is_err());
        assert!("cluster".parse::<Preset>().is_err());
        assert_eq!(Preset::Dicke(2).to_string(), "dicke:2");
    }

    #[test]
    fn rejects_impossible_sets() {
        assert!(MarkedSet::new(3, &[]).is_err());
        assert!(MarkedSet::new(0, &[0]).is_err());
        assert!(MarkedSet::new(3, &[4]).is_err());
        // only one all-zero state exists
        assert!(MarkedSet::new(3, &[0, 0]).is_err());
        assert!(Preset::Dicke(5).marked(4).is_err());
    }

    #[test]
    fn asymmetric_sets_are_flagged() {
        let m = MarkedSet::new(6, &[0, 1]).unwrap();
        assert_eq!(m.count(), 2);
        assert!(!m.is_symmetric());
        // n = 1: {0} and {1} are both whole weight classes
        assert!(MarkedSet::new(1, &[1]).unwrap().is_symmetric());
    }

    #[test]
    fn complement_mirrors_weights() {
        let m = MarkedSet::new(10, &[2, 2, 3]).unwrap().complement();
        assert_eq!(m.weights().collect::<Vec<_>>(), vec![(7, 1), (8, 2)]);
    }

    #[test]
    fn unmarked_log_count() {
        let m = MarkedSet::new(4, &[0, 4]).unwrap();
        assert!((m.ln_unmarked() - 14f64.ln()).abs() < 1e-14);
        assert!((m.ln_fraction() - (2.0f64 / 16.0).ln()).abs() < 1e-14);
    }
}
