//! Finitely generated abelian groups and graded (co)homology tables.
//!
//! Groups are stored in invariant-factor form `Z^r + Z_{d1} + ... + Z_{ds}` with
//! `d1 | d2 | ... | ds`, so two groups are isomorphic exactly when their
//! representations compare equal.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// A finitely generated abelian group in invariant-factor form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct FgAbelianGroup {
    rank: u32,
    torsion: Vec<u64>,
}

static TRIVIAL: FgAbelianGroup = FgAbelianGroup { rank: 0, torsion: Vec::new() };

/// Canonical invariant factors of `Z_{o1} + ... + Z_{ok}`.
///
/// Each pair `(a, b)` is replaced by `(gcd, lcm)`, which leaves the direct sum
/// unchanged; after a full pass over all pairs `i < j` the entry at `i` divides
/// every later entry. Unit factors are dropped at the end.
pub fn normalize_torsion(orders: &[u64]) -> Result<FgAbelianGroup> {
    if let Some(&bad) = orders.iter().find(|&&o| o < 2) {
        return Err(Error::TorsionOrder(bad));
    }
    let mut factors = orders.to_vec();
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let g = gcd(factors[i], factors[j]);
            let lcm = (factors[i] / g)
                .checked_mul(factors[j])
                .ok_or_else(|| Error::Parameter("torsion factor overflows u64".into()))?;
            factors[i] = g;
            factors[j] = lcm;
        }
    }
    factors.retain(|&d| d > 1);
    Ok(FgAbelianGroup { rank: 0, torsion: factors })
}

impl FgAbelianGroup {
    /// `Z^rank + Z_{o1} + ...`; the torsion orders may be given in any form.
    pub fn new(rank: u32, orders: &[u64]) -> Result<Self> {
        let mut g = normalize_torsion(orders)?;
        g.rank = rank;
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: u32) -> Self {
        Self { rank, torsion: Vec::new() }
    }

    /// The cyclic group `Z_n`; `n = 1` gives the trivial group.
    pub fn cyclic(n: u64) -> Result<Self> {
        match n {
            0 => Err(Error::TorsionOrder(0)),
            1 => Ok(Self::trivial()),
            n => Ok(Self { rank: 0, torsion: vec![n] }),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.rank == 0
    }

    /// The torsion subgroup with the free part discarded.
    pub fn torsion_part(&self) -> Self {
        Self { rank: 0, torsion: self.torsion.clone() }
    }

    /// Order of the torsion subgroup, or `None` on overflow.
    pub fn torsion_order(&self) -> Option<u64> {
        self.torsion.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    /// Elementary divisors as `(prime, exponent)` pairs, sorted.
    pub fn elementary_divisors(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = self.torsion.iter().flat_map(|&d| factorize(d)).collect();
        out.sort_unstable();
        out
    }

    fn from_elementary_divisors(divisors: &[(u64, u32)]) -> Self {
        let orders: Vec<u64> = divisors.iter().map(|&(p, e)| p.pow(e)).collect();
        // prime powers are all >= 2 and their product is already representable
        normalize_torsion(&orders).expect("prime powers are valid torsion orders")
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z_{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// A graded family of groups in degrees `0..=dimension`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedGroup {
    dimension: usize,
    groups: Vec<FgAbelianGroup>,
}

impl GradedGroup {
    /// Builds a table from the groups in degrees `0, 1, ..., n`.
    pub fn new(groups: Vec<FgAbelianGroup>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Parameter("a graded group needs at least degree 0".into()));
        }
        Ok(Self { dimension: groups.len() - 1, groups })
    }

    /// Torsion-free table with the given ranks.
    pub fn from_ranks(ranks: &[u32]) -> Result<Self> {
        Self::new(ranks.iter().map(|&r| FgAbelianGroup::free(r)).collect())
    }

    pub fn trivial(dimension: usize) -> Self {
        Self { dimension, groups: vec![FgAbelianGroup::trivial(); dimension + 1] }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// The group in degree `k`; trivial outside `0..=dimension`.
    pub fn degree(&self, k: i64) -> &FgAbelianGroup {
        usize::try_from(k).ok().and_then(|k| self.groups.get(k)).unwrap_or(&TRIVIAL)
    }

    pub fn groups(&self) -> &[FgAbelianGroup] {
        &self.groups
    }

    pub fn ranks(&self) -> Vec<u32> {
        self.groups.iter().map(FgAbelianGroup::rank).collect()
    }
}

impl fmt::Display for GradedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Alternating sum of free ranks; torsion does not contribute.
pub fn euler_characteristic(g: &GradedGroup) -> i64 {
    g.groups
        .iter()
        .enumerate()
        .map(|(k, grp)| if k % 2 == 0 { grp.rank as i64 } else { -(grp.rank as i64) })
        .sum()
}

/// Integral cohomology from integral homology:
/// `H^k = Hom(H_k, Z) + Ext(H_{k-1}, Z)`, i.e. free part of `H_k` plus torsion
/// of `H_{k-1}`.
pub fn universal_coefficients_cohomology(homology: &GradedGroup) -> Result<GradedGroup> {
    if homology.dimension < 1 {
        return Err(Error::Parameter("universal coefficients need dimension at least 1".into()));
    }
    let groups = (0..=homology.dimension as i64)
        .map(|k| {
            let below = homology.degree(k - 1);
            FgAbelianGroup { rank: homology.degree(k).rank, torsion: below.torsion.clone() }
        })
        .collect();
    GradedGroup::new(groups)
}

/// Rational cohomology ranks `(1, 0, n-2, 0, 1)` of a closed, orientable,
/// simply connected 4-dimensional space with Euler characteristic `n`.
pub fn rational_cohomology_profile(n: i64) -> Result<GradedGroup> {
    if n < 2 {
        return Err(Error::Parameter(format!("Euler characteristic {n} is below 2")));
    }
    let middle = u32::try_from(n - 2).map_err(|_| Error::Parameter(format!("n = {n} too large")))?;
    GradedGroup::from_ranks(&[1, 0, middle, 0, 1])
}

/// Orbifold fundamental group data accepted by [`validate_theorem_top_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Pi1Orb {
    Finite(u64),
    Infinite,
}

/// Clauses of the cohomology profile forced on a simply connected, compact,
/// orientable 4-orbifold, in the order they are checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TopClause {
    #[serde(rename = "H^0 = Z")]
    H0,
    #[serde(rename = "H^4 = Z")]
    H4,
    #[serde(rename = "H^1 = 0")]
    H1,
    #[serde(rename = "H^2 = Z^(n-2)")]
    H2,
    #[serde(rename = "H^3 torsion")]
    H3Torsion,
    #[serde(rename = "surjection bound")]
    SurjectionBound,
}

impl TopClause {
    pub fn name(self) -> &'static str {
        match self {
            TopClause::H0 => "H^0 = Z",
            TopClause::H4 => "H^4 = Z",
            TopClause::H1 => "H^1 = 0",
            TopClause::H2 => "H^2 = Z^(n-2)",
            TopClause::H3Torsion => "H^3 torsion",
            TopClause::SurjectionBound => "surjection bound",
        }
    }
}

impl fmt::Display for TopClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopProfileCheck {
    pub passed: bool,
    /// First clause that failed, if any.
    pub failed_clause: Option<TopClause>,
    pub diagnostic: String,
}

/// Checks a degree-4 cohomology table against
/// `H^0 = H^4 = Z, H^1 = 0, H^2 = Z^(n-2), H^3 = tau` where `tau` must be a
/// quotient of the orbifold fundamental group.
///
/// Only the order condition `|tau|` divides `|pi_1^orb|` is tested. For an
/// infinite fundamental group that clause holds vacuously.
pub fn validate_theorem_top_profile(
    cohomology: &GradedGroup,
    n: i64,
    pi1orb: Pi1Orb,
) -> Result<TopProfileCheck> {
    if cohomology.dimension != 4 {
        return Err(Error::Dimension { expected: 4, found: cohomology.dimension });
    }
    if let Pi1Orb::Finite(0) = pi1orb {
        return Err(Error::Parameter("orbifold fundamental group order must be at least 1".into()));
    }
    if n < 2 {
        return Err(Error::Parameter(format!("Euler characteristic {n} is below 2")));
    }
    let z = FgAbelianGroup::free(1);
    let h3 = cohomology.degree(3);
    let failure = |clause: TopClause, detail: String| TopProfileCheck {
        passed: false,
        failed_clause: Some(clause),
        diagnostic: format!("{clause}: {detail}"),
    };

    if cohomology.degree(0) != &z {
        return Ok(failure(TopClause::H0, format!("found {}", cohomology.degree(0))));
    }
    if cohomology.degree(4) != &z {
        return Ok(failure(TopClause::H4, format!("found {}", cohomology.degree(4))));
    }
    if !cohomology.degree(1).is_trivial() {
        return Ok(failure(TopClause::H1, format!("found {}", cohomology.degree(1))));
    }
    let expected_h2 = FgAbelianGroup::free((n - 2) as u32);
    if cohomology.degree(2) != &expected_h2 {
        return Ok(failure(
            TopClause::H2,
            format!("found {}, expected {expected_h2}", cohomology.degree(2)),
        ));
    }
    if !h3.is_torsion() {
        return Ok(failure(TopClause::H3Torsion, format!("found {h3}")));
    }
    if let Pi1Orb::Finite(order) = pi1orb {
        let tau = h3.torsion_order().unwrap_or(u64::MAX);
        if order % tau != 0 {
            return Ok(failure(
                TopClause::SurjectionBound,
                format!("|H^3| = {tau} does not divide |pi_1^orb| = {order}"),
            ));
        }
    }
    Ok(TopProfileCheck { passed: true, failed_clause: None, diagnostic: "ok".into() })
}

/// Rational Poincare duality: `rank H_k = rank H_{n-k}` for every `k`.
pub fn rational_duality_check(homology: &GradedGroup) -> bool {
    let n = homology.dimension as i64;
    (0..=n).all(|k| homology.degree(k).rank == homology.degree(n - k).rank)
}

/// Per-degree comparison of `H^{n-k}` against `H_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityDefect {
    /// Indexed by `k`: the torsion discrepancy between `H^{n-k}` and `H_k`.
    pub defects: Vec<FgAbelianGroup>,
    /// Degrees `k` where `rank H^{n-k} != rank H_k`; such input violates
    /// rational duality and is reported rather than folded into `defects`.
    pub rank_mismatches: Vec<usize>,
}

impl DualityDefect {
    pub fn is_trivial(&self) -> bool {
        self.rank_mismatches.is_empty() && self.defects.iter().all(FgAbelianGroup::is_trivial)
    }
}

/// Integral duality defect: in each degree, the elementary divisors present in
/// exactly one of `H^{n-k}` and `H_k` (multiset symmetric difference),
/// reassembled into invariant-factor form.
pub fn integer_duality_defect(
    cohomology: &GradedGroup,
    homology: &GradedGroup,
) -> Result<DualityDefect> {
    if cohomology.dimension != homology.dimension {
        return Err(Error::Dimension { expected: homology.dimension, found: cohomology.dimension });
    }
    let n = homology.dimension as i64;
    let mut defects = Vec::with_capacity(n as usize + 1);
    let mut rank_mismatches = Vec::new();
    for k in 0..=n {
        let upper = cohomology.degree(n - k);
        let lower = homology.degree(k);
        if upper.rank != lower.rank {
            rank_mismatches.push(k as usize);
        }
        let mut counts: BTreeMap<(u64, u32), i64> = BTreeMap::new();
        for d in upper.elementary_divisors() {
            *counts.entry(d).or_default() += 1;
        }
        for d in lower.elementary_divisors() {
            *counts.entry(d).or_default() -= 1;
        }
        let unmatched: Vec<(u64, u32)> = counts
            .into_iter()
            .flat_map(|(d, c)| std::iter::repeat(d).take(c.unsigned_abs() as usize))
            .collect();
        defects.push(FgAbelianGroup::from_elementary_divisors(&unmatched));
    }
    Ok(DualityDefect { defects, rank_mismatches })
}

/// Homology and cohomology of the suspension of the lens space `L^3(p; q)`:
/// `H_* = (Z, 0, Z_p, 0, Z)` and `H^* = (Z, 0, 0, Z_p, Z)`, independent of `q`.
pub fn lens_suspension_tables(p: u64, q: i64) -> Result<(GradedGroup, GradedGroup)> {
    if p < 2 {
        return Err(Error::Parameter(format!("lens order p = {p} must be at least 2")));
    }
    if gcd(q.unsigned_abs(), p) != 1 {
        return Err(Error::Parameter(format!("q = {q} is not a unit modulo p = {p}")));
    }
    let z = FgAbelianGroup::free(1);
    let zp = FgAbelianGroup::cyclic(p)?;
    let zero = FgAbelianGroup::trivial();
    let homology = GradedGroup::new(vec![z.clone(), zero.clone(), zp.clone(), zero.clone(), z.clone()])?;
    let cohomology = GradedGroup::new(vec![z.clone(), zero.clone(), zero, zp, z])?;
    Ok((homology, cohomology))
}
