//! Invariants and metric checks for compact 4-orbifolds with isometric circle
//! actions.
//!
//! - [`algebra`]: invariant-factor arithmetic, graded (co)homology tables,
//!   universal coefficients and duality checks.
//! - [`wps`]: weighted projective planes `CP^2[l]`: strata, circle-action fixed
//!   sets, isotropy weights, quotient distances and comparison triangles.
//! - [`quotgeo`]: orbit distances on `S^3 / S^1_kl` and its cyclic quotients,
//!   with the seeded perimeter verifier.
//! - [`hitchin`]: the traceless-symmetric-matrix model of `S^4` and its circle
//!   action.
//!
//! The remark that a finite, non-trivial `pi_1(|O|)` yields two torsion groups
//! (`H^3` and `H_1`) both receiving surjections from `pi_1^orb` is not
//! modeled; [`algebra::validate_theorem_top_profile`] covers the simply
//! connected case only.

pub mod algebra;
mod error;
pub mod hitchin;
mod numeric;
pub mod quotgeo;
pub mod wps;

pub use algebra::{FgAbelianGroup, GradedGroup, Pi1Orb};
pub use error::{Error, Result};
pub use hitchin::{HitchinOrbifoldTag, HitchinPoint, SymTraceless3};
pub use numeric::EVALUATION_BUDGET;
pub use quotgeo::{OrbitPoint, QuotientModel};
pub use wps::{CircleWeightVector, FixedPointData, IsotropyRep, Stratum, WeightTriple};
