//! Metric geometry of `X_kl = S^3 / S^1_kl` and its finite cyclic quotients.
//!
//! The circle acts on the unit sphere of `C^2` by `(e^{ik theta} z1, e^{il theta} z2)`
//! and the distance between orbits is the smallest ambient angle between
//! representatives. A further cyclic group of order `n` generated by
//! `(e^{2 pi i a/n}, e^{2 pi i b/n})` commutes with the circle inside the
//! maximal torus, so its quotient distance is a minimum over the `n` translates.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::gcd;
use crate::error::{check_tol, Error, Result};
use crate::numeric::{self, max_by_value, torus_orbit_distance, trial_rng, unit_complex};

pub const UNIT_NORM_TOL: f64 = 1e-9;

/// A point of the unit sphere `S^3` in `C^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrbitPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl OrbitPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Result<Self> {
        let norm = (z1.norm_sqr() + z2.norm_sqr()).sqrt();
        if (norm - 1.0).abs() > UNIT_NORM_TOL {
            return Err(Error::NotUnit(norm));
        }
        Ok(Self { z1, z2 })
    }

    /// Real coordinates `(x1, y1, x2, y2)`; the input is not normalized.
    pub fn from_real(x1: f64, y1: f64, x2: f64, y2: f64) -> Result<Self> {
        Self::new(Complex64::new(x1, y1), Complex64::new(x2, y2))
    }

    pub(crate) fn coords(&self) -> [Complex64; 2] {
        [self.z1, self.z2]
    }
}

/// `X_kl` modulo a cyclic subgroup of the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuotientModel {
    k: i64,
    l: i64,
    gamma_order: u32,
    gamma_exponents: (i64, i64),
}

impl QuotientModel {
    pub fn new(k: i64, l: i64, gamma_order: u32, gamma_exponents: (i64, i64)) -> Result<Self> {
        if k == 0 || l == 0 {
            return Err(Error::Parameter(format!("circle weights ({k}, {l}) must be nonzero")));
        }
        if gcd(k.unsigned_abs(), l.unsigned_abs()) != 1 {
            return Err(Error::Parameter(format!("circle weights ({k}, {l}) are not coprime")));
        }
        if gamma_order == 0 {
            return Err(Error::Parameter("cyclic group order must be at least 1".into()));
        }
        Ok(Self { k, l, gamma_order, gamma_exponents })
    }

    /// `X_kl` itself.
    pub fn circle(k: i64, l: i64) -> Result<Self> {
        Self::new(k, l, 1, (0, 0))
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn gamma_order(&self) -> u32 {
        self.gamma_order
    }

    pub fn gamma_exponents(&self) -> (i64, i64) {
        self.gamma_exponents
    }

    /// The images of `y` under every element of the cyclic group.
    fn translates(&self, y: &OrbitPoint) -> Vec<Vec<Complex64>> {
        let n = self.gamma_order as f64;
        let (a, b) = self.gamma_exponents;
        (0..self.gamma_order as i64)
            .map(|j| {
                let ga = Complex64::from_polar(1.0, TAU * ((a * j) as f64) / n);
                let gb = Complex64::from_polar(1.0, TAU * ((b * j) as f64) / n);
                vec![ga * y.z1, gb * y.z2]
            })
            .collect()
    }
}

/// Angle between `v` and `w` in `C^2 = R^4`.
pub fn ambient_angle(v: &OrbitPoint, w: &OrbitPoint) -> f64 {
    numeric::unit_angle(&v.coords(), &w.coords())
}

/// Quotient distance between the orbits of `x` and `y`, within `tol` of the
/// exact minimum.
pub fn orbit_distance(model: &QuotientModel, x: &OrbitPoint, y: &OrbitPoint, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let found = torus_orbit_distance(&x.coords(), &model.translates(y), &[model.k, model.l], tol)?;
    Ok(found.distance)
}

/// Sum of the three pairwise quotient distances.
pub fn perimeter(model: &QuotientModel, points: &[OrbitPoint; 3], tol: f64) -> Result<f64> {
    let [x1, x2, x3] = points;
    Ok(orbit_distance(model, x1, x2, tol)?
        + orbit_distance(model, x2, x3, tol)?
        + orbit_distance(model, x3, x1, tol)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerimeterReport {
    pub max_perimeter: f64,
    /// Trial index and points attaining `max_perimeter`.
    pub witness_trial: u64,
    pub witness: [OrbitPoint; 3],
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    /// `max_perimeter - pi`; positive means the bound was exceeded.
    pub max_violation: f64,
    pub passed: bool,
}

fn random_point(rng: &mut impl rand::Rng) -> OrbitPoint {
    let v = unit_complex(rng, 2);
    OrbitPoint { z1: v[0], z2: v[1] }
}

/// Samples `trials` uniform triples on `S^3` and records the largest perimeter
/// in the quotient. Passes iff the maximum is at most `pi + 3 tol`.
///
/// Trial `i` draws its triple from its own random stream, so the report does
/// not depend on how trials are distributed over threads.
pub fn verify_perimeter_bound(
    model: &QuotientModel,
    trials: u64,
    seed: u64,
    tol: f64,
) -> Result<PerimeterReport> {
    check_tol(tol)?;
    if trials == 0 {
        return Err(Error::Parameter("at least one trial is required".into()));
    }
    let best = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed, trial);
            let triple = [random_point(&mut rng), random_point(&mut rng), random_point(&mut rng)];
            perimeter(model, &triple, tol).map(|p| (p, trial as usize, triple))
        })
        .try_reduce_with(|a, b| Ok(max_by_value(a, b)))
        .expect("trials is positive")?;
    let (max_perimeter, witness_trial, witness) = best;
    Ok(PerimeterReport {
        max_perimeter,
        witness_trial: witness_trial as u64,
        witness,
        trials,
        seed,
        tol,
        max_violation: max_perimeter - PI,
        passed: max_perimeter <= PI + 3.0 * tol,
    })
}

/// Three points of `X_11 = S^2(1/2)` equally spaced on a great circle, lifted to
/// `(cos a, sin a)` with `a = 0, pi/3, 2pi/3`; their perimeter is exactly `pi`.
pub fn great_circle_triple() -> [OrbitPoint; 3] {
    [0.0, PI / 3.0, 2.0 * PI / 3.0].map(|a: f64| OrbitPoint {
        z1: Complex64::new(a.cos(), 0.0),
        z2: Complex64::new(a.sin(), 0.0),
    })
}

/// Angle opposite side `a` in the unit-sphere triangle with sides `a, b, c`.
pub fn comparison_angle(a: f64, b: f64, c: f64) -> Result<f64> {
    const EDGE: f64 = 1e-9;
    for (name, side) in [("a", a), ("b", b), ("c", c)] {
        if !(side > 0.0 && side < PI) {
            return Err(Error::DegenerateTriangle(format!("side {name} = {side} is outside (0, pi)")));
        }
    }
    for (name, side) in [("b", b), ("c", c)] {
        if side < EDGE || side > PI - EDGE {
            return Err(Error::DegenerateTriangle(format!("side {name} = {side} is too close to 0 or pi")));
        }
    }
    let slack = 1e-12;
    if a > b + c + slack || b > a + c + slack || c > a + b + slack {
        return Err(Error::DegenerateTriangle(format!("sides ({a}, {b}, {c}) violate the triangle inequality")));
    }
    if a + b + c > TAU + slack {
        return Err(Error::DegenerateTriangle(format!("perimeter {} exceeds 2 pi", a + b + c)));
    }
    let cos = (a.cos() - b.cos() * c.cos()) / (b.sin() * c.sin());
    Ok(cos.clamp(-1.0, 1.0).acos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::unit_sphere;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    const TOL: f64 = 1e-6;

    fn pt(x1: f64, y1: f64, x2: f64, y2: f64) -> OrbitPoint {
        OrbitPoint::from_real(x1, y1, x2, y2).unwrap()
    }

    /// Dense-grid oracle: brute force over `steps` angles and every group element.
    fn grid_distance(model: &QuotientModel, x: &OrbitPoint, y: &OrbitPoint, steps: usize) -> f64 {
        let n = model.gamma_order();
        let (a, b) = model.gamma_exponents();
        let mut best = f64::INFINITY;
        for j in 0..n as i64 {
            for s in 0..steps {
                let t = TAU * s as f64 / steps as f64;
                let g1 = TAU * (a * j) as f64 / n as f64 + model.k() as f64 * t;
                let g2 = TAU * (b * j) as f64 / n as f64 + model.l() as f64 * t;
                let w = [y.z1 * Complex64::from_polar(1.0, g1), y.z2 * Complex64::from_polar(1.0, g2)];
                let re = (x.z1.conj() * w[0] + x.z2.conj() * w[1]).re;
                best = best.min(re.clamp(-1.0, 1.0).acos());
            }
        }
        best
    }

    #[test]
    fn ambient_angle_examples() {
        let e1 = pt(1.0, 0.0, 0.0, 0.0);
        assert_eq!(ambient_angle(&e1, &e1), 0.0);
        assert!((ambient_angle(&e1, &pt(0.0, 0.0, 1.0, 0.0)) - PI / 2.0).abs() < 1e-15);
        assert!((ambient_angle(&e1, &pt(-1.0, 0.0, 0.0, 0.0)) - PI).abs() < 1e-15);
    }

    #[test]
    fn rejects_non_unit_points() {
        assert!(matches!(OrbitPoint::from_real(1.0, 0.0, 0.1, 0.0), Err(Error::NotUnit(_))));
        assert!(OrbitPoint::from_real(1.0 + 1e-10, 0.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn model_validation() {
        assert!(QuotientModel::circle(2, 4).is_err());
        assert!(QuotientModel::circle(0, 1).is_err());
        assert!(QuotientModel::new(1, 2, 0, (1, 1)).is_err());
        assert!(QuotientModel::circle(-2, 3).is_ok());
    }

    #[test]
    fn orbit_distance_examples() {
        let e1 = pt(1.0, 0.0, 0.0, 0.0);
        let e2 = pt(0.0, 0.0, 1.0, 0.0);
        let m11 = QuotientModel::circle(1, 1).unwrap();
        assert!((orbit_distance(&m11, &e1, &e2, TOL).unwrap() - PI / 2.0).abs() <= TOL);

        let m12 = QuotientModel::circle(1, 2).unwrap();
        let diag = pt(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0);
        let oracle = grid_distance(&m12, &e1, &diag, 200_000);
        assert!((oracle - PI / 4.0).abs() < 1e-9);
        assert!((orbit_distance(&m12, &e1, &diag, TOL).unwrap() - PI / 4.0).abs() <= TOL);

        let z2 = QuotientModel::new(1, 1, 2, (1, 1)).unwrap();
        assert!(orbit_distance(&z2, &e1, &e1, TOL).unwrap() <= TOL);
    }

    #[test]
    fn orbit_distance_rejects_bad_tol() {
        let e1 = pt(1.0, 0.0, 0.0, 0.0);
        let m = QuotientModel::circle(1, 1).unwrap();
        assert_eq!(orbit_distance(&m, &e1, &e1, 0.0), Err(Error::Tolerance(0.0)));
        assert_eq!(orbit_distance(&m, &e1, &e1, -1.0), Err(Error::Tolerance(-1.0)));
    }

    #[test]
    fn same_orbit_pairs_vanish() {
        let m = QuotientModel::new(2, 3, 3, (1, 2)).unwrap();
        let x = pt(0.6, 0.0, 0.0, 0.8);
        let t = 1.234_f64;
        let g = TAU / 3.0;
        let y = OrbitPoint {
            z1: x.z1 * Complex64::from_polar(1.0, 2.0 * t + g),
            z2: x.z2 * Complex64::from_polar(1.0, 3.0 * t + 2.0 * g),
        };
        assert!(orbit_distance(&m, &x, &y, TOL).unwrap() <= TOL);
    }

    #[test]
    fn matches_grid_oracle_across_models() {
        let models = [
            QuotientModel::circle(1, 3).unwrap(),
            QuotientModel::circle(2, 3).unwrap(),
            QuotientModel::new(1, 2, 3, (1, 2)).unwrap(),
            QuotientModel::new(-1, 2, 2, (1, 1)).unwrap(),
        ];
        for (i, model) in models.iter().enumerate() {
            let mut rng = trial_rng(99, i as u64);
            for _ in 0..5 {
                let x = random_point(&mut rng);
                let y = random_point(&mut rng);
                let oracle = grid_distance(model, &x, &y, 100_000);
                let d = orbit_distance(model, &x, &y, TOL).unwrap();
                // grid spacing 6.3e-5 with Lipschitz constant 3 bounds the oracle error
                assert!(d <= oracle + TOL, "{d} > {oracle}");
                assert!(d >= oracle - 3.0 * TAU / 100_000.0 - TOL);
            }
        }
    }

    #[test]
    fn great_circle_triple_is_sharp() {
        let m = QuotientModel::circle(1, 1).unwrap();
        let p = perimeter(&m, &great_circle_triple(), TOL).unwrap();
        assert!((p - PI).abs() <= 3.0 * TOL, "{p}");
    }

    #[test]
    fn perimeter_report_is_deterministic() {
        let m = QuotientModel::new(1, 2, 3, (1, 1)).unwrap();
        let a = verify_perimeter_bound(&m, 200, 5, TOL).unwrap();
        let b = verify_perimeter_bound(&m, 200, 5, TOL).unwrap();
        assert_eq!(a, b);
        assert!(a.passed);
        let serial = (0..200)
            .map(|t| {
                let mut rng = trial_rng(5, t);
                let tri = [random_point(&mut rng), random_point(&mut rng), random_point(&mut rng)];
                perimeter(&m, &tri, TOL).unwrap()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(serial, a.max_perimeter);
        assert!(verify_perimeter_bound(&m, 0, 5, TOL).is_err());
    }

    #[test]
    fn comparison_angle_examples() {
        let h = PI / 2.0;
        assert!((comparison_angle(h, h, h).unwrap() - h).abs() < 1e-15);
        let a = PI / 3.0;
        let expected = (1.0f64 / 3.0).acos();
        assert!((comparison_angle(a, a, a).unwrap() - expected).abs() < 1e-14);
        assert!((expected - 1.230_959_417_340_774_6).abs() < 1e-15);
        assert!((comparison_angle(h, h, PI / 4.0).unwrap() - h).abs() < 1e-15);
    }

    #[test]
    fn comparison_angle_errors() {
        assert!(comparison_angle(1.0, 0.2, 0.3).is_err());
        assert!(comparison_angle(0.0, 1.0, 1.0).is_err());
        assert!(comparison_angle(1.0, 1e-12, 1.0).is_err());
        assert!(comparison_angle(1.0, PI, 1.0).is_err());
        assert!(comparison_angle(3.0, 3.0, 3.0).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn hopf_quotient_closed_form(seed in 0u64..10_000) {
            let mut rng = trial_rng(seed, 0);
            let x = random_point(&mut rng);
            let y = random_point(&mut rng);
            let m = QuotientModel::circle(1, 1).unwrap();
            let inner = (x.z1.conj() * y.z1 + x.z2.conj() * y.z2).norm();
            let closed = 0.5 * (2.0 * inner * inner - 1.0).clamp(-1.0, 1.0).acos();
            let d = orbit_distance(&m, &x, &y, TOL).unwrap();
            prop_assert!((d - closed).abs() <= 2.0 * TOL, "{} vs {}", d, closed);
        }

        #[test]
        fn quotient_is_distance_non_increasing_and_symmetric(
            seed in 0u64..10_000, model_idx in 0usize..4,
        ) {
            let models = [
                QuotientModel::circle(1, 1).unwrap(),
                QuotientModel::circle(2, 3).unwrap(),
                QuotientModel::new(1, 3, 2, (1, 1)).unwrap(),
                QuotientModel::new(1, 2, 3, (1, 2)).unwrap(),
            ];
            let m = models[model_idx];
            let mut rng = trial_rng(seed, 1);
            let x = random_point(&mut rng);
            let y = random_point(&mut rng);
            let dxy = orbit_distance(&m, &x, &y, TOL).unwrap();
            let dyx = orbit_distance(&m, &y, &x, TOL).unwrap();
            prop_assert!(dxy <= ambient_angle(&x, &y) + TOL);
            prop_assert!((dxy - dyx).abs() <= 2.0 * TOL);
        }

        #[test]
        fn comparison_angle_monotone_in_a(b in 0.1f64..3.0, c in 0.1f64..3.0) {
            let lo = (b - c).abs() + 1e-6;
            let hi = (b + c).min(TAU - b - c) - 1e-6;
            prop_assume!(hi > lo);
            let mut prev = comparison_angle(lo, b, c).unwrap();
            for i in 1..=20 {
                let a = lo + (hi - lo) * i as f64 / 20.0;
                let cur = comparison_angle(a, b, c).unwrap();
                prop_assert!(cur >= prev - 1e-12);
                prev = cur;
            }
        }

        #[test]
        fn comparison_angles_have_spherical_excess(seed in 0u64..100_000) {
            // sides of a random nondegenerate spherical triangle
            let mut rng = trial_rng(seed, 2);
            let p: Vec<Vec<f64>> = (0..3).map(|_| unit_sphere(&mut rng, 3)).collect();
            let ang = |u: &[f64], v: &[f64]| {
                u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>().clamp(-1.0, 1.0).acos()
            };
            let (a, b, c) = (ang(&p[1], &p[2]), ang(&p[0], &p[2]), ang(&p[0], &p[1]));
            prop_assume!([a, b, c].iter().all(|&s| s > 1e-3 && s < PI - 1e-3));
            prop_assume!(a < b + c - 1e-6 && b < a + c - 1e-6 && c < a + b - 1e-6);
            let sum = comparison_angle(a, b, c).unwrap()
                + comparison_angle(b, c, a).unwrap()
                + comparison_angle(c, a, b).unwrap();
            prop_assert!(sum > PI);
        }
    }
}
