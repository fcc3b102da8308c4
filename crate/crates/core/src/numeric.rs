//! Numerical kernels shared by the metric modules.
//!
//! Orbit distances reduce to minimizing a trigonometric polynomial in one
//! angle. [`minimize_periodic`] does this by branch and bound: a cell of width
//! `w` whose endpoint values are `fa`, `fb` cannot dip below
//! `min(fa, fb) - M w^2 / 8` when `|f''| <= M`, so a cell is split only while
//! that bound is below the best value found so far. The search stops once
//! every remaining cell is within `gap` of the incumbent, which certifies the
//! returned value.
//!
//! Random sampling uses ChaCha8 with one stream per trial
//! (`seed_from_u64(seed)` then `set_stream(trial)`), so trial `i` sees the same
//! numbers regardless of how trials are scheduled across threads.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Hard cap on objective evaluations for a single minimization.
pub const EVALUATION_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct PeriodicMin {
    pub arg: f64,
    pub value: f64,
    pub branch: usize,
    pub evaluations: usize,
}

struct Cell {
    lower: f64,
    branch: usize,
    a: f64,
    b: f64,
    fa: f64,
    fb: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    // BinaryHeap is a max-heap; smallest lower bound first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .lower
            .total_cmp(&self.lower)
            .then_with(|| other.branch.cmp(&self.branch))
            .then_with(|| other.a.total_cmp(&self.a))
    }
}

/// Global minimum over `branch in 0..curvature.len()` and `theta in [0, 2pi)`
/// of `f(branch, theta)`, where `f(branch, .)` is `2pi`-periodic with second
/// derivative bounded by `curvature[branch]`.
///
/// The returned value is within `gap` of the true minimum (or a few ulps of
/// it when `gap` is below floating-point resolution).
pub(crate) fn minimize_periodic<F>(
    f: F,
    curvature: &[f64],
    cells_per_branch: usize,
    gap: f64,
    budget: usize,
) -> Result<PeriodicMin>
where
    F: Fn(usize, f64) -> f64,
{
    let cells = cells_per_branch.max(4);
    let width = TAU / cells as f64;
    let mut evaluations = 0usize;
    let mut best = PeriodicMin { arg: 0.0, value: f64::INFINITY, branch: 0, evaluations: 0 };
    let mut samples = Vec::with_capacity(curvature.len());

    for branch in 0..curvature.len() {
        let values: Vec<f64> = (0..cells).map(|i| f(branch, i as f64 * width)).collect();
        evaluations += cells;
        for (i, &v) in values.iter().enumerate() {
            if v < best.value {
                best = PeriodicMin { arg: i as f64 * width, value: v, branch, evaluations: 0 };
            }
        }
        samples.push(values);
    }

    let slack = |best: f64| gap.max(8.0 * f64::EPSILON * best.abs());
    let mut heap = BinaryHeap::new();
    for (branch, values) in samples.iter().enumerate() {
        let m = curvature[branch];
        for i in 0..cells {
            let (fa, fb) = (values[i], values[(i + 1) % cells]);
            let lower = fa.min(fb) - m * width * width / 8.0;
            if lower < best.value - slack(best.value) {
                let a = i as f64 * width;
                heap.push(Cell { lower, branch, a, b: a + width, fa, fb });
            }
        }
    }

    while let Some(cell) = heap.pop() {
        if best.value - cell.lower <= slack(best.value) {
            break;
        }
        if evaluations >= budget {
            return Err(Error::Budget(budget));
        }
        let mid = 0.5 * (cell.a + cell.b);
        let fm = f(cell.branch, mid);
        evaluations += 1;
        if fm < best.value {
            best = PeriodicMin { arg: mid, value: fm, branch: cell.branch, evaluations: 0 };
        }
        let half = 0.5 * (cell.b - cell.a);
        let m = curvature[cell.branch];
        for (a, b, fa, fb) in [(cell.a, mid, cell.fa, fm), (mid, cell.b, fm, cell.fb)] {
            let lower = fa.min(fb) - m * half * half / 8.0;
            if lower < best.value - slack(best.value) {
                heap.push(Cell { lower, branch: cell.branch, a, b, fa, fb });
            }
        }
    }

    best.arg = best.arg.rem_euclid(TAU);
    best.evaluations = evaluations;
    Ok(best)
}

/// Angle between two unit vectors of `C^n = R^{2n}`, computed as
/// `2 atan2(|v - w|, |v + w|)`, which equals `arccos Re<v, w>` but keeps full
/// precision near 0 and pi.
pub(crate) fn unit_angle(v: &[Complex64], w: &[Complex64]) -> f64 {
    let diff: f64 = v.iter().zip(w).map(|(a, b)| (a - b).norm_sqr()).sum();
    let sum: f64 = v.iter().zip(w).map(|(a, b)| (a + b).norm_sqr()).sum();
    2.0 * diff.sqrt().atan2(sum.sqrt())
}

/// Angle from the squared chord length `|v - w|^2` of two unit vectors.
pub(crate) fn angle_from_chord_sq(c: f64) -> f64 {
    let c = c.clamp(0.0, 4.0);
    2.0 * c.sqrt().atan2((4.0 - c).sqrt())
}

/// Result of minimizing over a torus orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct OrbitMin {
    pub distance: f64,
    pub theta: f64,
    pub branch: usize,
}

/// `min_{j, theta} angle(x, g_theta y_j)` where `g_theta` multiplies
/// coordinate `i` by `exp(i freqs[i] theta)` and `y_j` ranges over
/// `translates`.
///
/// Minimizes the squared chord `|x - g_theta y_j|^2` (monotone in the angle,
/// smooth in theta). A chord error `eps` moves the angle by at most
/// `sqrt(2 eps)`, so `gap = tol^2 / 8` certifies the angle within `tol / 2`.
pub(crate) fn torus_orbit_distance(
    x: &[Complex64],
    translates: &[Vec<Complex64>],
    freqs: &[i64],
    tol: f64,
) -> Result<OrbitMin> {
    let kmax = freqs.iter().map(|k| k.unsigned_abs()).max().unwrap_or(0).max(1) as usize;
    let curvature: Vec<f64> = translates
        .iter()
        .map(|y| {
            2.0 * x
                .iter()
                .zip(y)
                .zip(freqs)
                .map(|((a, b), &k)| (k * k) as f64 * a.norm() * b.norm())
                .sum::<f64>()
        })
        .collect();
    let chord = |branch: usize, theta: f64| -> f64 {
        x.iter()
            .zip(&translates[branch])
            .zip(freqs)
            .map(|((a, b), &k)| (a - b * Complex64::from_polar(1.0, k as f64 * theta)).norm_sqr())
            .sum()
    };
    let found = minimize_periodic(chord, &curvature, 16 * kmax + 16, tol * tol / 8.0, EVALUATION_BUDGET)?;
    Ok(OrbitMin {
        distance: angle_from_chord_sq(found.value),
        theta: found.arg,
        branch: found.branch,
    })
}

pub(crate) fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Uniform point on the unit sphere of `R^dim` (normalized Gaussian).
pub(crate) fn unit_sphere<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// Uniform point on the unit sphere of `C^n`.
pub(crate) fn unit_complex<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let v = unit_sphere(rng, 2 * n);
    v.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect()
}

pub(crate) fn complex_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest value wins; ties go to the smaller index so the reduction does
/// not depend on evaluation order.
pub(crate) fn max_by_value<T>(a: (f64, usize, T), b: (f64, usize, T)) -> (f64, usize, T) {
    match a.0.total_cmp(&b.0) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}
