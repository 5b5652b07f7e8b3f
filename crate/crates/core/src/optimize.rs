//! One-dimensional maximisation of multimodal functions on a closed interval.
//!
//! A uniform coarse grid locates every basin, then golden-section search
//! polishes each grid local maximum inside the two cells around it. The
//! procedure is deterministic: the same function always yields the same
//! bits, which keeps parallel curve evaluation reproducible.

use std::f64::consts::PI;

/// Coarse grid resolution (number of cells) used for angles on `[0, π]`.
pub const COARSE_INTERVALS: usize = 1024;

/// Bracket width at which golden-section refinement stops.
pub const ALPHA_TOL: f64 = 1e-12;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
}

impl Maximum {
    fn take_better(&mut self, x: f64, value: f64) {
        if value > self.value {
            *self = Maximum { x, value };
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GridMaximizer {
    lo: f64,
    hi: f64,
    intervals: usize,
    tol: f64,
}

impl GridMaximizer {
    pub fn new(lo: f64, hi: f64, intervals: usize, tol: f64) -> Self {
        assert!(lo < hi && intervals >= 2 && tol > 0.0);
        Self { lo, hi, intervals, tol }
    }

    /// The product-state angle range `[0, π]`.
    pub fn angles() -> Self {
        Self::new(0.0, PI, COARSE_INTERVALS, ALPHA_TOL)
    }

    /// Number of grid nodes, endpoints included.
    pub fn node_count(&self) -> usize {
        self.intervals + 1
    }

    pub fn node(&self, i: usize) -> f64 {
        if i == self.intervals {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * i as f64 / self.intervals as f64
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.node_count()).map(|i| self.node(i)).collect()
    }

    pub fn maximize<F: Fn(f64) -> f64>(&self, f: F) -> Maximum {
        let values: Vec<f64> = self.nodes().into_iter().map(&f).collect();
        self.refine(&values, f)
    }

    /// Polishes a grid scan that the caller already evaluated at
    /// [`nodes`](Self::nodes). Ties keep the leftmost point.
    pub fn refine<F: Fn(f64) -> f64>(&self, grid_values: &[f64], f: F) -> Maximum {
        self.polish(grid_values, self.local_maxima(grid_values), f)
    }

    /// Like [`maximize`](Self::maximize), but only the `keep` highest grid
    /// maxima are polished. For expensive objectives whose flat stretches
    /// break up into many rounding-level bumps.
    pub fn maximize_top<F: Fn(f64) -> f64>(&self, f: F, keep: usize) -> Maximum {
        let values: Vec<f64> = self.nodes().into_iter().map(&f).collect();
        let mut peaks = self.local_maxima(&values);
        // stable sort: equal peaks stay in grid order
        peaks.sort_by(|&i, &j| values[j].total_cmp(&values[i]));
        peaks.truncate(keep);
        peaks.sort_unstable();
        self.polish(&values, peaks, f)
    }

    fn local_maxima(&self, grid_values: &[f64]) -> Vec<usize> {
        assert_eq!(grid_values.len(), self.node_count());
        let last = self.intervals;
        (0..=last)
            .filter(|&i| {
                let v = grid_values[i];
                let rises = i == 0 || v > grid_values[i - 1];
                let holds = i == last || v >= grid_values[i + 1];
                rises && holds
            })
            .collect()
    }

    fn polish<F: Fn(f64) -> f64>(&self, grid_values: &[f64], peaks: Vec<usize>, f: F) -> Maximum {
        let last = self.intervals;
        let mut best = Maximum { x: self.node(0), value: grid_values[0] };
        for i in peaks {
            best.take_better(self.node(i), grid_values[i]);
            let a = self.node(i.saturating_sub(1));
            let b = self.node((i + 1).min(last));
            let polished = golden_section_max(&f, a, b, self.tol);
            best.take_better(polished.x, polished.value);
        }
        best
    }
}

/// Golden-section search for a maximum of `f` on `[a, b]`, returning the
/// best point it evaluated.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Maximum {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fd > fc { Maximum { x: d, value: fd } } else { Maximum { x: c, value: fc } };
    while b - a > tol {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
            best.take_better(c, fc);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
            best.take_better(d, fd);
        }
    }
    let mid = 0.5 * (a + b);
    best.take_better(mid, f(mid));
    best
}
