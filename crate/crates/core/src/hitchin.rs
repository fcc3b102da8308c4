//! The matrix model of `S^4` underlying the Hitchin orbifolds.
//!
//! `S^4` is the set of traceless symmetric 3x3 matrices of unit Frobenius norm,
//! with `SO(3)` acting by conjugation. The circle of rotations about the third
//! axis suspends to an action on 3-spheres, written in coordinates
//! `(t, b, c, d, h)` as
//!
//! ```text
//! [ -h/2 + t    b         c ]
//! [  b         -h/2 - t   d ]
//! [  c          d         h ]
//! ```
//!
//! with `t^2 + b^2 + c^2 + d^2 = (2 - 3h^2)/4`.

use std::f64::consts::{PI, TAU};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{check_tol, Error, Result};
use crate::numeric::{max_by_value, minimize_periodic, trial_rng, unit_sphere, EVALUATION_BUDGET};

pub const IDENTITY_TOL: f64 = 1e-9;

/// `2 / sqrt(6)`, the extreme value of the suspension parameter.
pub fn h_max() -> f64 {
    2.0 / 6f64.sqrt()
}

pub type Mat3 = [[f64; 3]; 3];

/// A point of the suspension model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HitchinPoint {
    pub t: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub h: f64,
}

impl HitchinPoint {
    pub fn new(t: f64, b: f64, c: f64, d: f64, h: f64) -> Result<Self> {
        let p = Self { t, b, c, d, h };
        p.validate()?;
        Ok(p)
    }

    /// The point at height `h` in direction `dir` of the 3-sphere slice.
    pub fn on_slice(h: f64, dir: [f64; 4]) -> Result<Self> {
        let norm = dir.iter().map(|x| x * x).sum::<f64>().sqrt();
        if h.abs() > h_max() {
            return Err(Error::Parameter(format!("h = {h} outside [-2/sqrt6, 2/sqrt6]")));
        }
        let radius = ((2.0 - 3.0 * h * h) / 4.0).max(0.0).sqrt();
        let s = if norm > 0.0 { radius / norm } else { 0.0 };
        Self::new(dir[0] * s, dir[1] * s, dir[2] * s, dir[3] * s, h)
    }

    fn validate(&self) -> Result<()> {
        if self.h.abs() > h_max() + IDENTITY_TOL {
            return Err(Error::Parameter(format!("h = {} outside [-2/sqrt6, 2/sqrt6]", self.h)));
        }
        let lhs = self.t * self.t + self.b * self.b + self.c * self.c + self.d * self.d;
        let residual = lhs - (2.0 - 3.0 * self.h * self.h) / 4.0;
        if residual.abs() > IDENTITY_TOL {
            return Err(Error::SuspensionConstraint(residual));
        }
        Ok(())
    }
}

/// A traceless symmetric 3x3 matrix of unit Frobenius norm.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SymTraceless3(Mat3);

fn frobenius(m: &Mat3) -> f64 {
    m.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

impl SymTraceless3 {
    pub fn new(m: Mat3) -> Result<Self> {
        for i in 0..3 {
            for j in 0..i {
                if (m[i][j] - m[j][i]).abs() > IDENTITY_TOL {
                    return Err(Error::NotSymTraceless(format!("entry ({i},{j}) is not symmetric")));
                }
            }
        }
        let trace = m[0][0] + m[1][1] + m[2][2];
        if trace.abs() > IDENTITY_TOL {
            return Err(Error::NotSymTraceless(format!("trace {trace:e}")));
        }
        let norm = frobenius(&m);
        if (norm - 1.0).abs() > IDENTITY_TOL {
            return Err(Error::NotSymTraceless(format!("Frobenius norm {norm}")));
        }
        Ok(Self(m))
    }

    pub fn diag(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new([[a, 0.0, 0.0], [0.0, b, 0.0], [0.0, 0.0, c]])
    }

    pub fn matrix(&self) -> &Mat3 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn norm(&self) -> f64 {
        frobenius(&self.0)
    }

    /// Frobenius distance to `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let d = self.0[i][j] - other.0[i][j];
                s += d * d;
            }
        }
        s.sqrt()
    }

    /// Suspension coordinates of this matrix (the inverse of [`embed`]).
    pub fn suspension_coordinates(&self) -> HitchinPoint {
        let m = &self.0;
        HitchinPoint { t: 0.5 * (m[0][0] - m[1][1]), b: m[0][1], c: m[0][2], d: m[1][2], h: m[2][2] }
    }
}

pub fn embed(p: &HitchinPoint) -> Result<SymTraceless3> {
    p.validate()?;
    let HitchinPoint { t, b, c, d, h } = *p;
    SymTraceless3::new([[-h / 2.0 + t, b, c], [b, -h / 2.0 - t, d], [c, d, h]])
}

fn rotation_z(theta: f64) -> Mat3 {
    let (s, c) = theta.sin_cos();
    [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
}

fn mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn transpose(a: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

fn conjugate(r: &Mat3, m: &Mat3) -> Mat3 {
    let mut out = mul(&mul(r, m), &transpose(r));
    // keep the result exactly symmetric
    for i in 0..3 {
        for j in 0..i {
            let avg = 0.5 * (out[i][j] + out[j][i]);
            out[i][j] = avg;
            out[j][i] = avg;
        }
    }
    out
}

/// `R_theta M R_theta^T` for the rotation by `theta` about the third axis.
pub fn s1_act(theta: f64, m: &SymTraceless3) -> SymTraceless3 {
    SymTraceless3(conjugate(&rotation_z(theta), &m.0))
}

/// The two matrices fixed by the circle, one on each singular `RP^2`:
/// `diag(1, 1, -2)/sqrt6` and `diag(-1, -1, 2)/sqrt6`.
pub fn fixed_points() -> [SymTraceless3; 2] {
    let s = 1.0 / 6f64.sqrt();
    [SymTraceless3([[s, 0.0, 0.0], [0.0, s, 0.0], [0.0, 0.0, -2.0 * s]]),
     SymTraceless3([[-s, 0.0, 0.0], [0.0, -s, 0.0], [0.0, 0.0, 2.0 * s]])]
}

/// Which singular `RP^2` orbit carries the cone singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularSide {
    /// Eigenvalues `(1, 1, -2)/sqrt6`.
    RepeatedPositive,
    /// Eigenvalues `(-1, -1, 2)/sqrt6`.
    RepeatedNegative,
}

/// Orbifold data of `H_k`: a `Z_k` group along one Veronese `RP^2`.
///
/// Metadata only; no metric on the cone bundle is modeled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HitchinOrbifoldTag {
    k: u32,
    side: SingularSide,
}

impl HitchinOrbifoldTag {
    pub fn new(k: u32, side: SingularSide) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("orbifold order k must be at least 1".into()));
        }
        Ok(Self { k, side })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn side(&self) -> SingularSide {
        self.side
    }

    /// The circle-fixed matrix lying on the tagged orbit.
    pub fn fixed_point(&self) -> SymTraceless3 {
        let [pos, neg] = fixed_points();
        match self.side {
            SingularSide::RepeatedPositive => pos,
            SingularSide::RepeatedNegative => neg,
        }
    }
}

/// Closed-form eigenvalues from the trigonometric solution of the
/// characteristic cubic. `None` when two eigenvalues nearly coincide, where
/// `acos` loses precision.
fn eigenvalues_trig(m: &Mat3) -> Option<[f64; 3]> {
    let q = (m[0][0] + m[1][1] + m[2][2]) / 3.0;
    let off = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let p2 = (0..3).map(|i| (m[i][i] - q).powi(2)).sum::<f64>() + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    if p < 1e-300 {
        return Some([q, q, q]);
    }
    let mut b = *m;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (*x - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = det / 2.0;
    if r.abs() > 1.0 - 1e-4 {
        return None;
    }
    let phi = r.acos() / 3.0;
    let largest = q + 2.0 * p * phi.cos();
    let smallest = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    let middle = 3.0 * q - largest - smallest;
    Some([smallest, middle, largest])
}

/// Cyclic Jacobi sweeps; eigenvalues returned ascending.
fn eigenvalues_jacobi(m: &Mat3) -> [f64; 3] {
    let mut a = *m;
    let scale = frobenius(&a).max(f64::MIN_POSITIVE);
    for _ in 0..64 {
        let off = (a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2)).sqrt();
        if off <= 1e-17 * scale {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if a[p][q] == 0.0 {
                continue;
            }
            let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            let mut r = [[0.0; 3]; 3];
            for (i, row) in r.iter_mut().enumerate() {
                row[i] = 1.0;
            }
            r[p][p] = c;
            r[q][q] = c;
            r[p][q] = s;
            r[q][p] = -s;
            a = mul(&transpose(&r), &mul(&a, &r));
            a[p][q] = 0.0;
            a[q][p] = 0.0;
        }
    }
    let mut ev = [a[0][0], a[1][1], a[2][2]];
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues in ascending order.
pub fn eigenvalue_type(m: &SymTraceless3) -> [f64; 3] {
    eigenvalues_trig(&m.0).unwrap_or_else(|| eigenvalues_jacobi(&m.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Phi12Report {
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    /// Largest coordinate deviation from the predicted weight-(2, 1) rotation.
    pub max_violation: f64,
    pub passed: bool,
}

fn rotate2(x: f64, y: f64, angle: f64) -> (f64, f64) {
    let (s, c) = angle.sin_cos();
    (c * x - s * y, s * x + c * y)
}

/// Deviation of `s1_act(theta, embed(p))` from rotating `(t, b)` by `2 theta`
/// and `(c, d)` by `theta` with `h` fixed.
pub fn phi12_deviation(theta: f64, p: &HitchinPoint) -> Result<f64> {
    let moved = s1_act(theta, &embed(p)?).suspension_coordinates();
    let (t, b) = rotate2(p.t, p.b, 2.0 * theta);
    let (c, d) = rotate2(p.c, p.d, theta);
    Ok([moved.t - t, moved.b - b, moved.c - c, moved.d - d, moved.h - p.h]
        .iter()
        .fold(0.0f64, |acc, x| acc.max(x.abs())))
}

fn random_slice_point(rng: &mut impl Rng) -> HitchinPoint {
    let h = h_max() * rng.gen_range(-1.0..1.0);
    let v = unit_sphere(rng, 4);
    HitchinPoint::on_slice(h, [v[0], v[1], v[2], v[3]]).expect("h is inside the slice range")
}

/// Checks on random angles and interior points that the circle acts on the
/// 3-sphere slices with weight 2 on `(t, b)` and weight 1 on `(c, d)`.
pub fn verify_phi12(samples: u64, tol: f64, seed: u64) -> Result<Phi12Report> {
    check_tol(tol)?;
    if samples == 0 {
        return Err(Error::Parameter("at least one sample is required".into()));
    }
    let max_violation = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let theta = rng.gen_range(0.0..TAU);
            let p = random_slice_point(&mut rng);
            phi12_deviation(theta, &p).expect("sampled points satisfy the constraint")
        })
        .reduce(|| 0.0, f64::max);
    Ok(Phi12Report { samples, seed, tol, max_violation, passed: max_violation <= tol })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointReport {
    pub fixed_points: [SymTraceless3; 2],
    pub trials: u64,
    pub seed: u64,
    /// Largest Frobenius distance between a fixed point and its image.
    pub max_deviation: f64,
}

/// Applies the circle at `trials` random angles to both fixed matrices.
pub fn fixed_point_deviation(trials: u64, seed: u64) -> FixedPointReport {
    let points = fixed_points();
    let max_deviation = (0..trials)
        .into_par_iter()
        .map(|i| {
            let theta = trial_rng(seed, i).gen_range(0.0..TAU);
            points.iter().map(|p| s1_act(theta, p).distance(p)).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    FixedPointReport { fixed_points: points, trials, seed, max_deviation }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

/// Range of the `(3,3)` entry over the `SO(3)`-orbit of `diag(1, 1, -2)/sqrt6`.
///
/// `e3^T R M R^T e3` is a Rayleigh quotient of `M`, so the range is exactly
/// `[lambda_min, lambda_max]`; the eigenvalues are computed from the matrix.
pub fn singular_slice_range() -> Interval {
    let ev = eigenvalue_type(&fixed_points()[0]);
    Interval { lo: ev[0], hi: ev[2] }
}

/// Uniform random rotation from a normalized quaternion.
fn random_rotation(rng: &mut impl Rng) -> Mat3 {
    let q = unit_sphere(rng, 4);
    let (w, x, y, z) = (q[0], q[1], q[2], q[3]);
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - z * w), 2.0 * (x * z + y * w)],
        [2.0 * (x * y + z * w), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - x * w)],
        [2.0 * (x * z - y * w), 2.0 * (y * z + x * w), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// Observed range of the `(3,3)` entry over `samples` random conjugates of
/// `diag(1, 1, -2)/sqrt6`.
pub fn sampled_slice_range(samples: u64, seed: u64) -> Result<Interval> {
    if samples == 0 {
        return Err(Error::Parameter("at least one sample is required".into()));
    }
    let model = fixed_points()[0];
    let (lo, hi) = (0..samples)
        .into_par_iter()
        .map(|i| {
            let r = random_rotation(&mut trial_rng(seed, i));
            let h = conjugate(&r, &model.0)[2][2];
            (h, h)
        })
        .reduce(|| (f64::INFINITY, f64::NEG_INFINITY), |a, b| (a.0.min(b.0), a.1.max(b.1)));
    Ok(Interval { lo, hi })
}

/// The matrix `(I - 3 u u^T)/sqrt6`: eigenvalue `-2/sqrt6` along the unit
/// vector `u` and `1/sqrt6` (twice) on its complement.
fn singular_matrix(u: [f64; 3]) -> SymTraceless3 {
    let s = 1.0 / 6f64.sqrt();
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = if i == j { s } else { 0.0 } - 3.0 * s * u[i] * u[j];
        }
    }
    SymTraceless3(m)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SliceOrbitReport {
    pub h: f64,
    pub samples: u64,
    pub seed: u64,
    pub tol: f64,
    pub reference: SymTraceless3,
    /// Largest distance from a sample to the circle orbit of `reference`.
    pub max_deviation: f64,
    pub passed: bool,
}

/// Frobenius distance from `m` to the circle orbit of `reference`, within `tol`.
pub fn circle_orbit_distance(m: &SymTraceless3, reference: &SymTraceless3, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let f = |_: usize, theta: f64| {
        let d = m.distance(&s1_act(theta, reference));
        d * d
    };
    // conjugation by exp(theta X) has second derivative [X,[X,.]], of norm at
    // most 4 times the matrix, so |f''| <= 8 |m| |reference|
    let curvature = 8.0 * m.norm() * reference.norm();
    let found = minimize_periodic(f, &[curvature], 64, tol * tol / 4.0, EVALUATION_BUDGET)?;
    Ok(found.value.max(0.0).sqrt())
}

/// Checks that the singular orbit meets the slice at height `h` in a single
/// circle orbit.
///
/// Samples are built by conjugating `diag(1, 1, -2)/sqrt6` by a random
/// rotation and then correcting the height: the `-2/sqrt6` eigenvector `u`
/// keeps its azimuth and sign of `u_3` while `u_3^2` is reset to
/// `(1 - sqrt6 h)/3`, which makes the `(3,3)` entry equal to `h`.
pub fn slice_orbit_uniqueness(h: f64, samples: u64, tol: f64, seed: u64) -> Result<SliceOrbitReport> {
    check_tol(tol)?;
    let s = 1.0 / 6f64.sqrt();
    if !(h > -2.0 * s && h < s) {
        return Err(Error::Parameter(format!("h = {h} is outside the open slice range (-2/sqrt6, 1/sqrt6)")));
    }
    if samples == 0 {
        return Err(Error::Parameter("at least one sample is required".into()));
    }
    let u3_sq = (1.0 - 6f64.sqrt() * h) / 3.0;
    let (u3, rho) = (u3_sq.sqrt(), (1.0 - u3_sq).sqrt());
    let reference = singular_matrix([rho, 0.0, u3]);

    let best = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let r = random_rotation(&mut rng);
            let u = [r[0][2], r[1][2], r[2][2]];
            let planar = u[0].hypot(u[1]);
            let azimuth = if planar > 1e-12 { u[1].atan2(u[0]) } else { rng.gen_range(0.0..TAU) };
            let sign = if u[2] < 0.0 { -1.0 } else { 1.0 };
            let corrected = [rho * azimuth.cos(), rho * azimuth.sin(), sign * u3];
            let m = singular_matrix(corrected);
            debug_assert!((m.0[2][2] - h).abs() < 1e-12);
            circle_orbit_distance(&m, &reference, tol).map(|d| (d, i as usize, ()))
        })
        .try_reduce_with(|a, b| Ok(max_by_value(a, b)))
        .expect("samples is positive")?;
    let max_deviation = best.0;
    Ok(SliceOrbitReport { h, samples, seed, tol, reference, max_deviation, passed: max_deviation <= tol })
}
