use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::dense::DenseState;
use crate::error::Result;

/// Random starting points for the unrestricted search, on top of the two
/// symmetric seeds.
pub const RANDOM_STARTS: usize = 32;
const MAX_SWEEPS: usize = 200;
const SWEEP_TOL: f64 = 1e-13;
const SEED: u64 = 0x6d65_6173_7572_6521;

const SCAN_POINTS: usize = 4096;
const PHASE_SCAN: usize = 256;

/// Product state `⊗_s (cos(α_s/2)|0> + e^{iβ_s} sin(α_s/2)|1>)`, with qubit
/// `s` at index `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductAnsatz {
    pub angles: Vec<(f64, f64)>,
}

impl ProductAnsatz {
    pub fn symmetric(n: u32, alpha: f64) -> Self {
        Self { angles: vec![(alpha, 0.0); n as usize] }
    }

    fn from_factors(factors: &[[Complex64; 2]]) -> Self {
        let angles = factors
            .iter()
            .map(|f| {
                let alpha = 2.0 * f[1].norm().atan2(f[0].norm());
                let beta = if f[1].norm() == 0.0 || f[0].norm() == 0.0 {
                    0.0
                } else {
                    (f[1].arg() - f[0].arg()).rem_euclid(2.0 * PI)
                };
                (alpha, beta)
            })
            .collect();
        Self { angles }
    }

    fn factors(&self) -> Vec<[Complex64; 2]> {
        self.angles
            .iter()
            .map(|&(alpha, beta)| {
                [Complex64::new((0.5 * alpha).cos(), 0.0), Complex64::from_polar((0.5 * alpha).sin(), beta)]
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleGme {
    pub gme: f64,
    pub max_overlap_sq: f64,
    pub ansatz: ProductAnsatz,
    /// 0 for the real symmetric seed, 1 for the phased symmetric seed,
    /// `i + 2` for random start `i`.
    pub start_index: usize,
}

/// `<φ|ψ>` by explicit summation over the basis.
pub fn product_overlap(state: &DenseState, ansatz: &ProductAnsatz) -> Complex64 {
    let factors = ansatz.factors();
    state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(x, &a)| {
            let phi = factors
                .iter()
                .enumerate()
                .fold(Complex64::new(1.0, 0.0), |acc, (s, f)| acc * f[(x >> s) & 1]);
            phi.conj() * a
        })
        .sum()
}

/// Nearest product state by brute force.
///
/// With `restrict_symmetric` every qubit shares one real angle and the phase
/// is fixed to zero; the angle is found by a dense scan. Otherwise the
/// symmetric optimum, the best symmetric state on an `(α, β)` grid and
/// [`RANDOM_STARTS`] random product states each seed an alternating ascent
/// that replaces one qubit at a time by its best single-qubit state, and the
/// best result wins (lowest start on ties).
pub fn oracle_gme(state: &DenseState, restrict_symmetric: bool) -> Result<OracleGme> {
    let n = state.n();
    let class_sums = class_sums(state);
    let (alpha, value) = symmetric_scan(&class_sums);
    let seed = OracleGme {
        gme: (1.0 - value * value).max(0.0),
        max_overlap_sq: value * value,
        ansatz: ProductAnsatz::symmetric(n, alpha),
        start_index: 0,
    };
    if restrict_symmetric {
        return Ok(seed);
    }

    let psi: Vec<Complex64> = state.amplitudes().iter().map(|&a| Complex64::new(a, 0.0)).collect();
    let (alpha, beta) = phased_scan(&class_sums);
    let phased = ProductAnsatz { angles: vec![(alpha, beta); n as usize] };
    let starts: Vec<Vec<[Complex64; 2]>> = [seed.ansatz.factors(), phased.factors()]
        .into_iter()
        .chain((0..RANDOM_STARTS).map(|i| random_factors(n, i)))
        .collect();

    let results: Vec<(f64, Vec<[Complex64; 2]>)> =
        starts.into_par_iter().map(|start| ascend(&psi, n, start)).collect();

    let mut best = 0;
    for (i, r) in results.iter().enumerate() {
        if r.0 > results[best].0 {
            best = i;
        }
    }
    let (score, factors) = &results[best];
    Ok(OracleGme {
        gme: (1.0 - score).max(0.0),
        max_overlap_sq: *score,
        ansatz: ProductAnsatz::from_factors(factors),
        start_index: best,
    })
}

fn random_factors(n: u32, start: usize) -> Vec<[Complex64; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ start as u64);
    let angles = (0..n).map(|_| (rng.random_range(0.0..PI), rng.random_range(0.0..2.0 * PI))).collect();
    ProductAnsatz { angles }.factors()
}

/// Alternating ascent on `|<φ|ψ>|²`; returns the final score and factors.
fn ascend(psi: &[Complex64], n: u32, mut factors: Vec<[Complex64; 2]>) -> (f64, Vec<[Complex64; 2]>) {
    let mut scratch = Vec::with_capacity(psi.len() / 2);
    let mut score = f64::NEG_INFINITY;
    for _ in 0..MAX_SWEEPS {
        let mut latest = score;
        for s in 0..n as usize {
            let [v0, v1] = conditional(psi, &factors, s, &mut scratch);
            let norm = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
            if norm > 0.0 {
                factors[s] = [v0 / norm, v1 / norm];
            }
            latest = norm * norm;
        }
        let improved = latest - score;
        score = latest;
        if improved < SWEEP_TOL {
            break;
        }
    }
    (score, factors)
}

/// Contracts `psi` with the conjugated factors of every qubit except `s`,
/// leaving the two-component vector that qubit `s` sees.
fn conditional(
    psi: &[Complex64],
    factors: &[[Complex64; 2]],
    s: usize,
    scratch: &mut Vec<Complex64>,
) -> [Complex64; 2] {
    let n = factors.len();
    let mut cur: Vec<Complex64> = psi.to_vec();
    // qubits above s are the top bits: fold halves together
    for t in (s + 1..n).rev() {
        let half = cur.len() / 2;
        let [c0, c1] = [factors[t][0].conj(), factors[t][1].conj()];
        scratch.clear();
        scratch.extend((0..half).map(|i| cur[i] * c0 + cur[i + half] * c1));
        std::mem::swap(&mut cur, scratch);
    }
    // qubits below s are the low bits: fold neighbours together
    for f in factors.iter().take(s) {
        let [c0, c1] = [f[0].conj(), f[1].conj()];
        let half = cur.len() / 2;
        scratch.clear();
        scratch.extend((0..half).map(|i| cur[2 * i] * c0 + cur[2 * i + 1] * c1));
        std::mem::swap(&mut cur, scratch);
    }
    debug_assert_eq!(cur.len(), 2);
    [cur[0], cur[1]]
}

/// Amplitude sum of each Hamming-weight class.
fn class_sums(state: &DenseState) -> Vec<f64> {
    let mut sums = vec![0.0; state.n() as usize + 1];
    for (x, &a) in state.amplitudes().iter().enumerate() {
        sums[x.count_ones() as usize] += a;
    }
    sums
}

/// `Σ_w S_w cos^(n-w)(α/2) (e^{iβ} sin(α/2))^w`, the overlap with a
/// symmetric product state.
fn symmetric_overlap(class_sums: &[f64], alpha: f64, beta: f64) -> Complex64 {
    let n = class_sums.len() - 1;
    let (c, s) = ((0.5 * alpha).cos(), (0.5 * alpha).sin());
    class_sums
        .iter()
        .enumerate()
        .map(|(w, &sum)| {
            Complex64::from_polar(sum * c.powi((n - w) as i32) * s.powi(w as i32), w as f64 * beta)
        })
        .sum()
}

/// Best `|Σ_w S_w cos^(n-w)(α/2) sin^w(α/2)|`: dense scan, then ternary
/// search around the winner.
fn symmetric_scan(class_sums: &[f64]) -> (f64, f64) {
    let f = |alpha: f64| symmetric_overlap(class_sums, alpha, 0.0).re.abs();
    let step = PI / SCAN_POINTS as f64;
    let (mut best_alpha, mut best) = (0.0, f(0.0));
    for i in 1..=SCAN_POINTS {
        let alpha = if i == SCAN_POINTS { PI } else { i as f64 * step };
        let v = f(alpha);
        if v > best {
            best = v;
            best_alpha = alpha;
        }
    }
    let (mut lo, mut hi) = ((best_alpha - step).max(0.0), (best_alpha + step).min(PI));
    while hi - lo > 1e-13 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    let mid = 0.5 * (lo + hi);
    if f(mid) > best {
        (mid, f(mid))
    } else {
        (best_alpha, best)
    }
}

/// Best symmetric `(α, β)` on a plain grid; the ascent does the polishing.
fn phased_scan(class_sums: &[f64]) -> (f64, f64) {
    let mut best = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..=PHASE_SCAN {
        let alpha = PI * i as f64 / PHASE_SCAN as f64;
        for j in 0..PHASE_SCAN {
            let beta = 2.0 * PI * j as f64 / PHASE_SCAN as f64;
            let v = symmetric_overlap(class_sums, alpha, beta).norm();
            if v > best.2 {
                best = (alpha, beta, v);
            }
        }
    }
    (best.0, best.1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::dense::MarkedBits;

    fn w_state(n: u32) -> DenseState {
        let mut amps = vec![0.0; 1 << n];
        for s in 0..n {
            amps[1 << s] = 1.0 / f64::from(n).sqrt();
        }
        DenseState::from_amplitudes(n, amps).unwrap()
    }

    #[test]
    fn uniform_state_is_a_product() {
        let r = oracle_gme(&DenseState::uniform(8).unwrap(), false).unwrap();
        assert!(r.gme < 1e-12);
    }

    #[test]
    fn three_qubit_w() {
        for restrict in [true, false] {
            let r = oracle_gme(&w_state(3), restrict).unwrap();
            assert!((r.gme - 5.0 / 9.0).abs() < 1e-10, "restrict={restrict}: {}", r.gme);
        }
    }

    #[test]
    fn ghz_needs_no_phase() {
        let mut amps = vec![0.0; 1 << 5];
        amps[0] = 0.5f64.sqrt();
        amps[31] = 0.5f64.sqrt();
        let r = oracle_gme(&DenseState::from_amplitudes(5, amps).unwrap(), false).unwrap();
        assert!((r.gme - 0.5).abs() < 1e-10);
    }

    #[test]
    fn reported_ansatz_reproduces_score() {
        let marked = MarkedBits::parse(6, &["000011", "100000"]).unwrap();
        let states = crate::oracle::grover_trajectory(&marked, 2).unwrap();
        let r = oracle_gme(&states[2], false).unwrap();
        let direct = product_overlap(&states[2], &r.ansatz).norm_sqr();
        assert!((direct - r.max_overlap_sq).abs() < 1e-12);
        for &(alpha, beta) in &r.ansatz.angles {
            assert!((0.0..=PI).contains(&alpha) && (0.0..2.0 * PI).contains(&beta));
        }
    }

    #[test]
    fn contraction_matches_explicit_sum() {
        let state = w_state(4);
        let ansatz = ProductAnsatz { angles: vec![(0.3, 1.0), (1.2, 0.2), (2.0, 4.0), (0.9, 3.0)] };
        let factors = ansatz.factors();
        let psi: Vec<Complex64> = state.amplitudes().iter().map(|&a| Complex64::new(a, 0.0)).collect();
        let want = product_overlap(&state, &ansatz);
        for s in 0..4 {
            let [v0, v1] = conditional(&psi, &factors, s, &mut Vec::new());
            let got = factors[s][0].conj() * v0 + factors[s][1].conj() * v1;
            assert!((got - want).norm() < 1e-14, "qubit {s}");
        }
    }

    #[test]
    fn deterministic() {
        let marked = MarkedBits::parse(7, &["0000001", "0000010"]).unwrap();
        let states = crate::oracle::grover_trajectory(&marked, 3).unwrap();
        let a = oracle_gme(&states[3], false).unwrap();
        let b = oracle_gme(&states[3], false).unwrap();
        assert_eq!(a, b);
    }
}
