use std::collections::BTreeSet;

use crate::error::{GmeError, Result};
use crate::marked::MarkedSet;

/// Largest register the dense oracle will simulate.
pub const MAX_ORACLE_QUBITS: u32 = 14;

const SYMMETRY_TOL: f64 = 1e-12;

fn check_size(n: u32) -> Result<()> {
    if n == 0 {
        return Err(GmeError::InvalidInput("need at least one qubit".into()));
    }
    if n > MAX_ORACLE_QUBITS {
        return Err(GmeError::Resource(format!(
            "dense oracle limited to {MAX_ORACLE_QUBITS} qubits, asked for {n}"
        )));
    }
    Ok(())
}

/// Real statevector over `2^n` basis states; bit `s` of the index is qubit `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    n: u32,
    amplitudes: Vec<f64>,
}

impl DenseState {
    /// `|ψ0>`, the uniform superposition.
    pub fn uniform(n: u32) -> Result<Self> {
        check_size(n)?;
        let dim = 1usize << n;
        Ok(Self { n, amplitudes: vec![(dim as f64).sqrt().recip(); dim] })
    }

    pub fn from_amplitudes(n: u32, amplitudes: Vec<f64>) -> Result<Self> {
        check_size(n)?;
        if amplitudes.len() != 1usize << n {
            return Err(GmeError::InvalidInput(format!(
                "{} amplitudes given for {n} qubits",
                amplitudes.len()
            )));
        }
        Ok(Self { n, amplitudes })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }
}

/// Explicit set of marked basis states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedBits {
    n: u32,
    indices: BTreeSet<usize>,
}

impl MarkedBits {
    pub fn new<I: IntoIterator<Item = usize>>(n: u32, indices: I) -> Result<Self> {
        check_size(n)?;
        let dim = 1usize << n;
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return Err(GmeError::InvalidInput(format!("basis index {bad} out of range for {n} qubits")));
        }
        if indices.is_empty() || indices.len() == dim {
            return Err(GmeError::InvalidInput(
                "marked states must be a nonempty proper subset of the basis".into(),
            ));
        }
        Ok(Self { n, indices })
    }

    /// Parses bitstrings written most significant qubit first, e.g. `"0001"`
    /// marks index 1.
    pub fn parse<S: AsRef<str>>(n: u32, bitstrings: &[S]) -> Result<Self> {
        let indices = bitstrings
            .iter()
            .map(|s| {
                let s = s.as_ref().trim();
                if s.len() != n as usize || !s.bytes().all(|b| b == b'0' || b == b'1') {
                    return Err(GmeError::InvalidInput(format!("{s:?} is not a {n}-bit string")));
                }
                Ok(usize::from_str_radix(s, 2).expect("validated binary digits"))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, indices)
    }

    /// Every basis state whose weight occurs in a symmetric marked set.
    pub fn from_symmetric(marked: &MarkedSet) -> Result<Self> {
        if !marked.is_symmetric() {
            return Err(GmeError::Unsupported(format!(
                "{marked} does not determine which basis states are marked"
            )));
        }
        let n = marked.n();
        check_size(n)?;
        let weights: BTreeSet<u32> = marked.weights().map(|(w, _)| w).collect();
        Self::new(n, (0..1usize << n).filter(|x| weights.contains(&x.count_ones())))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Hamming weights of the marked states as a (possibly asymmetric) set.
    pub fn weight_multiset(&self) -> Result<MarkedSet> {
        let weights: Vec<u32> = self.indices.iter().map(|x| x.count_ones()).collect();
        MarkedSet::new(self.n, &weights)
    }
}

/// One Grover iteration: phase flip on the marked states, then inversion
/// about the mean amplitude.
pub fn grover_step(state: &DenseState, marked: &MarkedBits) -> Result<DenseState> {
    if state.n != marked.n {
        return Err(GmeError::InvalidInput(format!(
            "{}-qubit state with {}-qubit marked set",
            state.n, marked.n
        )));
    }
    let mut amps = state.amplitudes.clone();
    for i in marked.indices() {
        amps[i] = -amps[i];
    }
    let mean = amps.iter().sum::<f64>() / amps.len() as f64;
    for a in &mut amps {
        *a = 2.0 * mean - *a;
    }
    Ok(DenseState { n: state.n, amplitudes: amps })
}

/// `|ψ0>, G|ψ0>, ..., G^steps |ψ0>`.
pub fn grover_trajectory(marked: &MarkedBits, steps: usize) -> Result<Vec<DenseState>> {
    let mut states = Vec::with_capacity(steps + 1);
    states.push(DenseState::uniform(marked.n)?);
    for _ in 0..steps {
        let next = grover_step(states.last().expect("nonempty"), marked)?;
        states.push(next);
    }
    Ok(states)
}

/// `true` when amplitudes agree within each Hamming-weight class, which is
/// the same as invariance under every qubit transposition.
pub fn check_permutation_symmetry(state: &DenseState) -> bool {
    let mut reference: Vec<Option<f64>> = vec![None; state.n as usize + 1];
    state.amplitudes.iter().enumerate().all(|(x, &a)| {
        let slot = &mut reference[x.count_ones() as usize];
        match *slot {
            None => {
                *slot = Some(a);
                true
            }
            Some(r) => (a - r).abs() <= SYMMETRY_TOL,
        }
    })
}
