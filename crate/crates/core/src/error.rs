use thiserror::Error;

/// Errors raised by the orb4kit operations.
///
/// Every variant represents invalid input; numerical routines that cannot
/// reach the requested tolerance report [`Error::Budget`].
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("torsion order {0} is not at least 2")]
    TorsionOrder(u64),

    #[error("weights ({0}, {1}, {2}) have gcd {3}; divide by it with normalize_weights")]
    WeightsNotPrimitive(u64, u64, u64, u64),

    #[error("weights must be positive, got ({0}, {1}, {2})")]
    NonPositiveWeight(u64, u64, u64),

    #[error("circle action ({0}, {1}, {2}) is an integer multiple of the weights and acts trivially")]
    TrivialAction(i64, i64, i64),

    #[error("vertex index {0} is out of range (expected 0, 1 or 2)")]
    VertexIndex(usize),

    #[error("vertex {vertex} is not an isolated fixed point: the coordinate sphere w{sphere} = 0 is fixed")]
    VertexNotIsolated { vertex: usize, sphere: usize },

    #[error("fixed point set has a 2-sphere component; three isolated vertices are required")]
    NotThreeVertices,

    #[error("degenerate triangle: {0}")]
    DegenerateTriangle(String),

    #[error("vector is not unit length (norm {0})")]
    NotUnit(f64),

    #[error("tolerance must be positive and finite, got {0}")]
    Tolerance(f64),

    #[error("graded group has dimension {found}, expected {expected}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("orbit minimization exceeded {0} evaluations before reaching the tolerance")]
    Budget(usize),

    #[error("matrix is not a unit traceless symmetric matrix: {0}")]
    NotSymTraceless(String),

    #[error("suspension coordinates violate t^2+b^2+c^2+d^2 = (2-3h^2)/4 (residual {0:e})")]
    SuspensionConstraint(f64),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Tolerance(tol))
    }
}
