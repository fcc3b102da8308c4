//! Weighted projective planes `CP^2[l0, l1, l2] = S^5 / S^1`.
//!
//! The circle acts on `S^5 ⊂ C^3` with weights `l = (l0, l1, l2)`. A circle
//! subgroup of the residual torus is encoded by an integer vector `m` acting as
//! `(z^{m0} w0, z^{m1} w1, z^{m2} w2)`; vectors differing by a multiple of `l`
//! give the same action on the quotient, and every operation here is invariant
//! under `m -> m + t l`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{euler_characteristic, gcd, FgAbelianGroup, GradedGroup};
use crate::error::{check_tol, Error, Result};
use crate::numeric::{complex_norm, torus_orbit_distance};
use crate::quotgeo::comparison_angle;

pub const UNIT_NORM_TOL: f64 = 1e-9;

/// Weights `(l0, l1, l2)` of a weighted projective plane, with `gcd = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct WeightTriple([u64; 3]);

impl WeightTriple {
    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn as_array(&self) -> [u64; 3] {
        self.0
    }

    pub fn max(&self) -> u64 {
        self.0.into_iter().max().unwrap_or(1)
    }

    fn signed(&self) -> [i128; 3] {
        self.0.map(i128::from)
    }
}

fn check_positive(a: u64, b: u64, c: u64) -> Result<()> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::NonPositiveWeight(a, b, c));
    }
    Ok(())
}

/// Accepts `(a, b, c)` only when the weights are coprime.
pub fn make_weights(a: u64, b: u64, c: u64) -> Result<WeightTriple> {
    check_positive(a, b, c)?;
    let g = gcd(gcd(a, b), c);
    if g != 1 {
        return Err(Error::WeightsNotPrimitive(a, b, c, g));
    }
    Ok(WeightTriple([a, b, c]))
}

/// Divides `(a, b, c)` by its gcd.
pub fn normalize_weights(a: u64, b: u64, c: u64) -> Result<WeightTriple> {
    check_positive(a, b, c)?;
    let g = gcd(gcd(a, b), c);
    Ok(WeightTriple([a / g, b / g, c / g]))
}

/// Integer weights `(m0, m1, m2)` of a circle in the torus acting on `CP^2[l]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct CircleWeightVector(pub [i64; 3]);

impl CircleWeightVector {
    pub fn new(m0: i64, m1: i64, m2: i64) -> Self {
        Self([m0, m1, m2])
    }

    /// `m + t l`, which describes the same action on the quotient.
    pub fn shifted(&self, weights: &WeightTriple, t: i64) -> Self {
        let l = weights.as_array();
        Self([0, 1, 2].map(|i| self.0[i] + t * l[i] as i64))
    }

    fn signed(&self) -> [i128; 3] {
        self.0.map(i128::from)
    }
}

/// The two indices other than `i`, in increasing order.
fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// `m_j l_k - m_k l_j` for `{i, j, k} = {0, 1, 2}`, `j < k`; it vanishes exactly
/// when the coordinate sphere `{w_i = 0}` is pointwise fixed.
fn sphere_minor(weights: &WeightTriple, m: &CircleWeightVector, i: usize) -> i128 {
    let (j, k) = others(i);
    let (l, m) = (weights.signed(), m.signed());
    m[j] * l[k] - m[k] * l[j]
}

fn check_nontrivial(weights: &WeightTriple, m: &CircleWeightVector) -> Result<()> {
    // l is primitive, so m is an integer multiple of l iff it is a rational one
    if (0..3).all(|i| sphere_minor(weights, m, i) == 0) {
        let [a, b, c] = m.0;
        return Err(Error::TrivialAction(a, b, c));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Locus {
    /// The point with only coordinate `i` nonzero.
    Vertex(usize),
    /// The sphere `{w_k = 0}` through vertices `i < j`.
    Edge(usize, usize),
    Regular,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Stratum {
    pub locus: Locus,
    /// Order of the cyclic orbifold group along the stratum.
    pub group_order: u64,
}

/// Strata with non-trivial orbifold group, followed by the regular stratum.
///
/// Vertex `i` has group `Z_{l_i}` and the edge through vertices `i, j` has
/// `Z_{gcd(l_i, l_j)}`.
pub fn stratification(weights: &WeightTriple) -> Vec<Stratum> {
    let l = weights.as_array();
    let vertices = (0..3).map(|i| Stratum { locus: Locus::Vertex(i), group_order: l[i] });
    let edges = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| Stratum { locus: Locus::Edge(i, j), group_order: gcd(l[i], l[j]) });
    vertices
        .chain(edges)
        .filter(|s| s.group_order > 1)
        .chain(std::iter::once(Stratum { locus: Locus::Regular, group_order: 1 }))
        .collect()
}

/// Positive `(a, b, c)` with `{ab, ac, bc} = {l0, l1, l2}` as multisets, if any;
/// the lexicographically smallest such triple is returned.
///
/// For a fixed assignment `ab = x, ac = y, bc = z` the factor `a` divides
/// `gcd(x, y)`, so every divisor of it is tried for each of the six
/// assignments.
pub fn is_product_form(weights: &WeightTriple) -> Option<(u64, u64, u64)> {
    let l = weights.as_array();
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut best: Option<(u64, u64, u64)> = None;
    for p in PERMS {
        let (x, y, z) = (l[p[0]], l[p[1]], l[p[2]]);
        let g = gcd(x, y);
        for a in (1..=g).filter(|a| g % a == 0) {
            let (b, c) = (x / a, y / a);
            if b.checked_mul(c) == Some(z) {
                let cand = (a, b, c);
                if best.map_or(true, |cur| cand < cur) {
                    best = Some(cand);
                }
            }
        }
    }
    best
}

/// Integral cohomology of the underlying space, which is that of `CP^2` for
/// every weight vector.
pub fn wps_cohomology(_weights: &WeightTriple) -> GradedGroup {
    GradedGroup::from_ranks(&[1, 0, 1, 0, 1]).expect("non-empty table")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedPointData {
    /// The three coordinate vertices, all isolated.
    ThreeVertices,
    /// Vertex `vertex` together with the opposite sphere `{w_vertex = 0}`.
    VertexAndSphere { vertex: usize },
}

impl FixedPointData {
    /// Euler characteristic of the fixed set.
    pub fn euler_characteristic(&self) -> i64 {
        match self {
            FixedPointData::ThreeVertices => 3,
            FixedPointData::VertexAndSphere { .. } => 1 + 2,
        }
    }
}

pub fn fixed_point_set(weights: &WeightTriple, m: &CircleWeightVector) -> Result<FixedPointData> {
    check_nontrivial(weights, m)?;
    let fixed: Vec<usize> = (0..3).filter(|&i| sphere_minor(weights, m, i) == 0).collect();
    // two vanishing minors with positive weights force all three to vanish
    debug_assert!(fixed.len() <= 1);
    Ok(match fixed.first() {
        Some(&vertex) => FixedPointData::VertexAndSphere { vertex },
        None => FixedPointData::ThreeVertices,
    })
}

/// Coprime circle weights `(k, l)`, `0 < k <= l`, of a slice representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct IsotropyRep {
    pub k: u64,
    pub l: u64,
}

/// Unnormalized tangent weights at vertex `i`:
/// `(m_j l_i - m_i l_j, m_k l_i - m_i l_k)` with `j < k` the other indices.
pub fn raw_isotropy_pair(weights: &WeightTriple, m: &CircleWeightVector, i: usize) -> Result<(i128, i128)> {
    if i > 2 {
        return Err(Error::VertexIndex(i));
    }
    let (j, k) = others(i);
    let (l, m) = (weights.signed(), m.signed());
    Ok((m[j] * l[i] - m[i] * l[j], m[k] * l[i] - m[i] * l[k]))
}

/// Isotropy representation at an isolated fixed vertex, reduced to an
/// effective action: the raw pair is divided by its gcd and reported as an
/// unordered positive pair.
pub fn isotropy_weights(weights: &WeightTriple, m: &CircleWeightVector, i: usize) -> Result<IsotropyRep> {
    check_nontrivial(weights, m)?;
    let (p, q) = raw_isotropy_pair(weights, m, i)?;
    let (j, k) = others(i);
    // p = 0 means the edge through i and j (the sphere {w_k = 0}) is fixed
    if p == 0 {
        return Err(Error::VertexNotIsolated { vertex: i, sphere: k });
    }
    if q == 0 {
        return Err(Error::VertexNotIsolated { vertex: i, sphere: j });
    }
    let (p, q) = (p.unsigned_abs(), q.unsigned_abs());
    let g = {
        let (mut a, mut b) = (p, q);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let (a, b) = ((p / g) as u64, (q / g) as u64);
    Ok(IsotropyRep { k: a.min(b), l: a.max(b) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KobayashiCheck {
    pub fixed_set: FixedPointData,
    pub fixed_set_euler: i64,
    pub orbifold_euler: i64,
    pub passed: bool,
}

/// Compares the Euler characteristic of the fixed set with that of
/// `|CP^2[l]|`.
pub fn kobayashi_check(weights: &WeightTriple, m: &CircleWeightVector) -> Result<KobayashiCheck> {
    let fixed_set = fixed_point_set(weights, m)?;
    let fixed_set_euler = fixed_set.euler_characteristic();
    let orbifold_euler = euler_characteristic(&wps_cohomology(weights));
    Ok(KobayashiCheck {
        fixed_set,
        fixed_set_euler,
        orbifold_euler,
        passed: fixed_set_euler == orbifold_euler,
    })
}

fn check_unit(v: &[Complex64; 3]) -> Result<()> {
    let norm = complex_norm(v);
    if (norm - 1.0).abs() > UNIT_NORM_TOL {
        return Err(Error::NotUnit(norm));
    }
    Ok(())
}

/// Distance in `S^5 / S^1_l` between the orbits of `p` and `q`: the smallest
/// angle between `p` and `z * q`, within `tol`.
pub fn wps_distance(weights: &WeightTriple, p: &[Complex64; 3], q: &[Complex64; 3], tol: f64) -> Result<f64> {
    check_unit(p)?;
    check_unit(q)?;
    check_tol(tol)?;
    let freqs = weights.as_array().map(|w| w as i64);
    Ok(torus_orbit_distance(p, &[q.to_vec()], &freqs, tol)?.distance)
}

/// The coordinate vertex `[.. : 1 : ..]` lifted to `S^5`.
pub fn vertex_point(i: usize) -> [Complex64; 3] {
    let mut v = [Complex64::new(0.0, 0.0); 3];
    v[i] = Complex64::new(1.0, 0.0);
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ToponogovWitness {
    /// Distances `(l01, l12, l20)` between the fixed vertices.
    pub distances: [f64; 3],
    /// Comparison angles at vertices 0, 1, 2.
    pub angles: [f64; 3],
    pub angle_sum: f64,
}

/// Curvature-1 comparison angles of the triangle formed by the three isolated
/// fixed vertices.
pub fn toponogov_witness(weights: &WeightTriple, m: &CircleWeightVector, tol: f64) -> Result<ToponogovWitness> {
    check_tol(tol)?;
    if fixed_point_set(weights, m)? != FixedPointData::ThreeVertices {
        return Err(Error::NotThreeVertices);
    }
    let v = [vertex_point(0), vertex_point(1), vertex_point(2)];
    let d01 = wps_distance(weights, &v[0], &v[1], tol)?;
    let d12 = wps_distance(weights, &v[1], &v[2], tol)?;
    let d20 = wps_distance(weights, &v[2], &v[0], tol)?;
    let sides = [d01, d12, d20];
    if let Some(s) = sides.iter().find(|&&s| s < tol) {
        return Err(Error::DegenerateTriangle(format!("two fixed points at distance {s}")));
    }
    // side opposite each vertex and the two adjacent sides
    let corners = [(d12, d01, d20), (d20, d01, d12), (d01, d12, d20)];
    let mut angles = [0.0; 3];
    for (slot, (opposite, b, c)) in angles.iter_mut().zip(corners) {
        let excess = opposite - (b + c);
        if excess > tol {
            return Err(Error::DegenerateTriangle(format!(
                "distances ({d01}, {d12}, {d20}) violate the triangle inequality by {excess}"
            )));
        }
        *slot = comparison_angle(opposite.min(b + c).min(PI), b, c)?;
    }
    Ok(ToponogovWitness { distances: sides, angles, angle_sum: angles.iter().sum() })
}

/// Orbifold groups along each stratum, as abelian groups.
pub fn stratum_group(stratum: &Stratum) -> FgAbelianGroup {
    FgAbelianGroup::cyclic(stratum.group_order).expect("group orders are positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{trial_rng, unit_complex};
    use proptest::prelude::*;
    use std::collections::HashSet;
    use std::f64::consts::{FRAC_1_SQRT_2, TAU};

    const TOL: f64 = 1e-6;

    fn w(a: u64, b: u64, c: u64) -> WeightTriple {
        make_weights(a, b, c).unwrap()
    }

    fn m(a: i64, b: i64, c: i64) -> CircleWeightVector {
        CircleWeightVector::new(a, b, c)
    }

    fn c3(v: [f64; 3]) -> [Complex64; 3] {
        v.map(|x| Complex64::new(x, 0.0))
    }

    #[test]
    fn make_weights_examples() {
        assert!(make_weights(1, 2, 4).is_ok());
        assert_eq!(make_weights(2, 4, 8), Err(Error::WeightsNotPrimitive(2, 4, 8, 2)));
        assert!(make_weights(6, 10, 15).is_ok());
        assert!(make_weights(0, 1, 1).is_err());
        assert_eq!(normalize_weights(2, 4, 8).unwrap(), w(1, 2, 4));
    }

    #[test]
    fn stratification_examples() {
        let s = stratification(&w(1, 2, 4));
        assert_eq!(
            s,
            vec![
                Stratum { locus: Locus::Vertex(1), group_order: 2 },
                Stratum { locus: Locus::Vertex(2), group_order: 4 },
                Stratum { locus: Locus::Edge(1, 2), group_order: 2 },
                Stratum { locus: Locus::Regular, group_order: 1 },
            ]
        );
        assert_eq!(stratification(&w(1, 1, 1)), vec![Stratum { locus: Locus::Regular, group_order: 1 }]);
        let orders: Vec<u64> = stratification(&w(6, 10, 15)).iter().map(|s| s.group_order).collect();
        assert_eq!(orders, vec![6, 10, 15, 2, 3, 5, 1]);
    }

    #[test]
    fn product_form_examples() {
        assert_eq!(is_product_form(&w(1, 1, 1)), Some((1, 1, 1)));
        assert_eq!(is_product_form(&w(2, 3, 6)), Some((1, 2, 3)));
        assert_eq!(is_product_form(&w(1, 2, 4)), None);
        assert_eq!(is_product_form(&w(6, 10, 15)), Some((2, 3, 5)));
    }

    #[test]
    fn cohomology_is_cp2() {
        let h = wps_cohomology(&w(1, 2, 4));
        assert_eq!(h.ranks(), vec![1, 0, 1, 0, 1]);
        assert_eq!(euler_characteristic(&wps_cohomology(&w(7, 11, 13))), 3);
    }

    #[test]
    fn fixed_point_examples() {
        let l = w(1, 2, 4);
        assert_eq!(fixed_point_set(&l, &m(1, 0, 0)).unwrap(), FixedPointData::VertexAndSphere { vertex: 0 });
        assert_eq!(fixed_point_set(&l, &m(2, 2, 4)).unwrap(), FixedPointData::VertexAndSphere { vertex: 0 });
        assert_eq!(fixed_point_set(&w(1, 1, 1), &m(0, 1, 2)).unwrap(), FixedPointData::ThreeVertices);
        let minors: Vec<i128> = (0..3).map(|i| sphere_minor(&w(1, 1, 1), &m(0, 1, 2), i)).collect();
        assert_eq!(minors, vec![-1, -2, -1]);
    }

    #[test]
    fn trivial_actions_rejected() {
        let l = w(1, 2, 4);
        assert_eq!(fixed_point_set(&l, &m(3, 6, 12)), Err(Error::TrivialAction(3, 6, 12)));
        assert!(fixed_point_set(&l, &m(0, 0, 0)).is_err());
        assert!(isotropy_weights(&l, &m(-1, -2, -4), 0).is_err());
    }

    #[test]
    fn isotropy_examples() {
        let l = w(1, 2, 4);
        assert_eq!(raw_isotropy_pair(&l, &m(1, 0, 0), 0).unwrap(), (-2, -4));
        assert_eq!(isotropy_weights(&l, &m(1, 0, 0), 0).unwrap(), IsotropyRep { k: 1, l: 2 });
        assert_eq!(isotropy_weights(&w(1, 1, 1), &m(0, 1, 2), 0).unwrap(), IsotropyRep { k: 1, l: 2 });
        assert!(matches!(
            isotropy_weights(&w(1, 1, 1), &m(1, 0, 0), 1),
            Err(Error::VertexNotIsolated { vertex: 1, sphere: 0 })
        ));
        assert_eq!(isotropy_weights(&l, &m(1, 0, 0), 3), Err(Error::VertexIndex(3)));
    }

    #[test]
    fn kobayashi_examples() {
        for (l, a) in [(w(1, 2, 4), m(1, 0, 0)), (w(1, 1, 1), m(0, 1, 2)), (w(3, 5, 7), m(0, 0, 1))] {
            let check = kobayashi_check(&l, &a).unwrap();
            assert!(check.passed);
            assert_eq!(check.orbifold_euler, 3);
        }
        // m = (0, 0, 1) only moves w2, so the sphere {w2 = 0} is fixed
        assert_eq!(fixed_point_set(&w(3, 5, 7), &m(0, 0, 1)).unwrap(), FixedPointData::VertexAndSphere { vertex: 2 });
        assert_eq!(fixed_point_set(&w(3, 5, 7), &m(0, 1, 3)).unwrap(), FixedPointData::ThreeVertices);
    }

    #[test]
    fn distance_examples() {
        let e0 = c3([1.0, 0.0, 0.0]);
        let e1 = c3([0.0, 1.0, 0.0]);
        for l in [w(1, 1, 1), w(1, 2, 4), w(3, 5, 7)] {
            assert!((wps_distance(&l, &e0, &e1, TOL).unwrap() - PI / 2.0).abs() <= TOL);
            assert!(wps_distance(&l, &e0, &e0, TOL).unwrap() <= TOL);
        }
        let q = c3([FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]);
        // dense-grid oracle over theta
        let l = w(1, 1, 1);
        let oracle = (0..100_000)
            .map(|s| {
                let t = TAU * s as f64 / 100_000.0;
                (e0[0].conj() * q[0] * Complex64::from_polar(1.0, t)).re.clamp(-1.0, 1.0).acos()
            })
            .fold(f64::INFINITY, f64::min);
        assert!((oracle - PI / 4.0).abs() < 1e-9);
        assert!((wps_distance(&l, &e0, &q, TOL).unwrap() - PI / 4.0).abs() <= TOL);
    }

    #[test]
    fn distance_errors() {
        let e0 = c3([1.0, 0.0, 0.0]);
        let bad = c3([1.0, 0.5, 0.0]);
        assert!(matches!(wps_distance(&w(1, 1, 1), &e0, &bad, TOL), Err(Error::NotUnit(_))));
        assert!(matches!(wps_distance(&w(1, 1, 1), &e0, &e0, -1.0), Err(Error::Tolerance(_))));
    }

    #[test]
    fn toponogov_examples() {
        let wit = toponogov_witness(&w(1, 1, 1), &m(0, 1, 2), TOL).unwrap();
        for d in wit.distances {
            assert!((d - PI / 2.0).abs() <= TOL);
        }
        for a in wit.angles {
            assert!((a - PI / 2.0).abs() <= 1e-5);
        }
        assert!((wit.angle_sum - 1.5 * PI).abs() <= 1e-5);

        // (0, 1, 2) is proportional to (1, 2, 4) on the last two coordinates
        let l = w(1, 2, 4);
        assert_eq!(fixed_point_set(&l, &m(0, 1, 2)).unwrap(), FixedPointData::VertexAndSphere { vertex: 0 });
        assert_eq!(fixed_point_set(&l, &m(0, 1, 3)).unwrap(), FixedPointData::ThreeVertices);
        assert!(toponogov_witness(&l, &m(0, 1, 3), TOL).unwrap().angle_sum > PI);

        assert_eq!(toponogov_witness(&l, &m(1, 0, 0), TOL), Err(Error::NotThreeVertices));
    }

    #[test]
    fn equilateral_reduction() {
        // equal sides d give angles arccos(cos d / (1 + cos d))
        for d in [0.3, PI / 3.0, PI / 2.0, 2.0] {
            let a = comparison_angle(d, d, d).unwrap();
            let expected = (d.cos() / (1.0 + d.cos())).acos();
            assert!((a - expected).abs() < 1e-12);
        }
    }

    /// Brute force: every `(a, b, c)` with entries up to 30 whose pairwise
    /// products stay within 30.
    fn product_form_oracle() -> HashSet<[u64; 3]> {
        let mut set = HashSet::new();
        for a in 1..=30u64 {
            for b in 1..=30 {
                for c in 1..=30 {
                    let mut t = [a * b, a * c, b * c];
                    if t.iter().all(|&x| x <= 30) {
                        t.sort_unstable();
                        set.insert(t);
                    }
                }
            }
        }
        set
    }

    #[test]
    fn product_form_agrees_with_brute_force() {
        let oracle = product_form_oracle();
        let mut checked = 0;
        for a in 1..=30 {
            for b in 1..=30 {
                for c in 1..=30 {
                    let Ok(l) = make_weights(a, b, c) else { continue };
                    let mut sorted = [a, b, c];
                    sorted.sort_unstable();
                    let found = is_product_form(&l);
                    assert_eq!(found.is_some(), oracle.contains(&sorted), "{a},{b},{c}");
                    if let Some((x, y, z)) = found {
                        let mut t = [x * y, x * z, y * z];
                        t.sort_unstable();
                        assert_eq!(t, sorted);
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 20_000);
    }

    fn arb_weights() -> impl Strategy<Value = WeightTriple> {
        (1u64..=20, 1u64..=20, 1u64..=20).prop_filter_map("gcd 1", |(a, b, c)| make_weights(a, b, c).ok())
    }

    fn arb_action() -> impl Strategy<Value = [i64; 3]> {
        [-20i64..=20, -20i64..=20, -20i64..=20]
    }

    fn permute<T: Copy>(v: [T; 3], p: [usize; 3]) -> [T; 3] {
        [v[p[0]], v[p[1]], v[p[2]]]
    }

    proptest! {
        #[test]
        fn edges_divide_vertices(l in arb_weights()) {
            let strata = stratification(&l);
            for s in &strata {
                if let Locus::Edge(i, j) = s.locus {
                    prop_assert_eq!(l.get(i) % s.group_order, 0);
                    prop_assert_eq!(l.get(j) % s.group_order, 0);
                }
            }
            prop_assert_eq!(strata.last().unwrap().locus, Locus::Regular);
        }

        #[test]
        fn stratification_is_permutation_equivariant(l in arb_weights(), p in Just([2usize, 0, 1])) {
            let lp = make_weights(l.get(p[0]), l.get(p[1]), l.get(p[2])).unwrap();
            let mut a: Vec<u64> = stratification(&l).iter().map(|s| s.group_order).collect();
            let mut b: Vec<u64> = stratification(&lp).iter().map(|s| s.group_order).collect();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn invariant_under_diagonal_shift(l in arb_weights(), a in arb_action(), t in -3i64..=3) {
            let m0 = CircleWeightVector(a);
            let m1 = m0.shifted(&l, t);
            prop_assert_eq!(fixed_point_set(&l, &m0).ok(), fixed_point_set(&l, &m1).ok());
            for i in 0..3 {
                prop_assert_eq!(isotropy_weights(&l, &m0, i).ok(), isotropy_weights(&l, &m1, i).ok());
            }
        }

        #[test]
        fn at_most_one_fixed_sphere(l in arb_weights(), a in arb_action()) {
            let mv = CircleWeightVector(a);
            let zeros = (0..3).filter(|&i| sphere_minor(&l, &mv, i) == 0).count();
            prop_assert!(zeros <= 1 || check_nontrivial(&l, &mv).is_err());
        }

        #[test]
        fn equivariant_under_coordinate_permutation(l in arb_weights(), a in arb_action()) {
            let p = [1usize, 2, 0];
            let lp = make_weights(l.get(p[0]), l.get(p[1]), l.get(p[2])).unwrap();
            let mp = CircleWeightVector(permute(a, p));
            let mv = CircleWeightVector(a);
            match (fixed_point_set(&l, &mv), fixed_point_set(&lp, &mp)) {
                (Ok(FixedPointData::VertexAndSphere { vertex }), Ok(FixedPointData::VertexAndSphere { vertex: vp })) => {
                    prop_assert_eq!(p[vp], vertex);
                }
                (x, y) => prop_assert_eq!(x.ok(), y.ok()),
            }
            for new_i in 0..3 {
                prop_assert_eq!(isotropy_weights(&lp, &mp, new_i).ok(), isotropy_weights(&l, &mv, p[new_i]).ok());
            }
        }

        #[test]
        fn kobayashi_always_holds(l in arb_weights(), a in arb_action()) {
            let mv = CircleWeightVector(a);
            if check_nontrivial(&l, &mv).is_ok() {
                prop_assert!(kobayashi_check(&l, &mv).unwrap().passed);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn metric_properties(l in arb_weights(), seed in 0u64..100_000) {
            let mut rng = trial_rng(seed, 0);
            let pts: Vec<[Complex64; 3]> = (0..3)
                .map(|_| {
                    let v = unit_complex(&mut rng, 3);
                    [v[0], v[1], v[2]]
                })
                .collect();
            let d = |a: usize, b: usize| wps_distance(&l, &pts[a], &pts[b], TOL).unwrap();
            let (d01, d10, d12, d02) = (d(0, 1), d(1, 0), d(1, 2), d(0, 2));
            prop_assert!((d01 - d10).abs() <= 2.0 * TOL);
            prop_assert!(d02 <= d01 + d12 + 3.0 * TOL);
            prop_assert!(d01 <= PI / 2.0 + TOL);
        }

        #[test]
        fn toponogov_sum_exceeds_pi(l in arb_weights(), a in arb_action()) {
            let mv = CircleWeightVector(a);
            if let Ok(FixedPointData::ThreeVertices) = fixed_point_set(&l, &mv) {
                let wit = toponogov_witness(&l, &mv, TOL).unwrap();
                prop_assert!(wit.angle_sum > PI - TOL);
            }
        }
    }
}
