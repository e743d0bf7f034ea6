//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the geometric and analytic modules.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A matrix with (numerically) vanishing determinant was offered as a
    /// Möbius map.
    #[error("matrix is singular (|det| = {0:.3e})")]
    SingularMatrix(f64),

    /// Both homogeneous coordinates of a point are zero.
    #[error("zero vector is not a point of CP1")]
    ZeroLift,

    /// The identity map was passed where a non-trivial map is required.
    #[error("map is the identity")]
    IdentityInput,

    /// An operation defined only for elliptic maps received something else.
    #[error("map is not elliptic ({0})")]
    NotElliptic(String),

    /// The supplied point is not fixed by the map.
    #[error("point is not fixed by the map (moved by {0:.3e})")]
    NotFixedPoint(f64),

    /// Two or more of the supplied points coincide.
    #[error("points coincide")]
    CoincidentPoints,

    /// The supplied circles are equal as subsets of CP1.
    #[error("circles are equal")]
    EqualCircles,

    /// A point that must lie on both circles lies on at most one.
    #[error("point does not lie on both circles (residual {0:.3e})")]
    PointNotOnCircles(f64),

    /// The circles meet in a single point, so no angle is defined there.
    #[error("circles are tangent")]
    TangentCircles,

    /// Three points that must determine a circle fail to (after deduplication
    /// fewer than three remain, or the linear system is rank-deficient).
    #[error("no circle through the given points: {0}")]
    NoCircle(String),

    /// The circle triple violates general position.
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    /// A dual circle was requested for a non-hyperbolic configuration.
    #[error("configuration is not hyperbolic")]
    NotHyperbolic,

    /// The elliptic triple is coaxial or its fixed points fail to span a
    /// configuration.
    #[error("degenerate triple: {0}")]
    DegenerateTriple(String),

    /// Map triple fails the defining constraints of an elliptic triple.
    #[error("not an elliptic triple: {0}")]
    InvalidTriple(String),

    /// Inputs that must describe the same object disagree.
    #[error("mismatched inputs: {0}")]
    MismatchedInputs(String),

    /// An angle or index lies outside the admissible open ranges.
    #[error("value out of range: {0}")]
    OutOfRange(String),

    /// The angle triple lies in the admissible ranges but matches no atomic
    /// case.
    #[error("angle triple is not atomic: {0}")]
    NotAtomic(String),

    /// Claimed vertices do not lie on the configuration's intersection pairs.
    #[error("vertices do not lie on the configuration")]
    VerticesNotOnConfiguration,

    /// The two immersions do not share target data, so they are not framings
    /// of a common holonomy.
    #[error("framings do not match: {0}")]
    MismatchedFraming(String),

    /// All framing points coincide; no atomic immersion can produce this.
    #[error("pathological framing: all framing points coincide")]
    PathologicalFraming,

    /// An index triple violates positivity or integrality constraints.
    #[error("invalid indices: {0}")]
    InvalidIndices(String),

    /// The grafting multicurve has a shape outside the supported catalogue.
    #[error("unsupported curve shape: {0}")]
    UnsupportedCurveShape(String),

    /// Equalization was attempted on decompositions with different framed
    /// holonomy.
    #[error("decompositions do not share a framed holonomy: {0}")]
    NotSameFramedHolonomy(String),

    /// The differential was evaluated at (or too close to) a pole.
    #[error("evaluation at a pole (distance {0:.3e})")]
    PoleEvaluation(f64),

    /// A singular exponent is an integer, so the requested quantity is not
    /// defined.
    #[error("integer exponent: {0}")]
    IntegerExponent(f64),

    /// The ODE integrator failed to reach the requested accuracy.
    #[error("integration failure: {0}")]
    IntegrationFailure(String),

    /// A loop passes closer to a singular point than the allowed clearance.
    #[error("path clearance violated: distance {dist:.3e} < {clearance:.3e}")]
    PathClearance { dist: f64, clearance: f64 },

    /// Input text failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
