//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Everything that can go wrong while classifying walls or building chains.
///
/// Mathematical preconditions (degenerate vectors, walls at infinity, paths
/// that miss a wall, …) are reported as dedicated variants so callers can
/// distinguish "your input is outside the theory" from "the search bound was
/// too small".
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The zero vector has no primitive part and no slope.
    #[error("zero vector is not allowed here")]
    ZeroVector,

    /// A defining vector proportional to the total Mukai vector spans no wall.
    #[error("degenerate defining vector {0}: integer multiple of {1}")]
    DegenerateDefiningVector(String, String),

    /// Slope denominator vanished: the would-be wall is the vertical line at
    /// infinity of the slice, not a semicircle.
    #[error("gamma undefined (wall at infinity) for {0}")]
    GammaAtInfinity(String),

    /// A slope outside the open movable-cone window `(0, 1/n)`.
    #[error("gamma {0} outside the open movable-cone window (0, 1/{1})")]
    GammaOutOfWindow(String, u32),

    /// A vertical line `x = x0` does not meet the given semicircle at `t > 0`.
    #[error("line x = {0} misses the wall semicircle")]
    LineMissesWall(String),

    /// Moduli dimension is only defined for primitive classes of square >= -2.
    #[error("moduli dimension undefined for {0}: {1}")]
    ModuliDimUndefined(String, String),

    /// A 3x3 matrix that fails the isometry checks (determinant +-1 and
    /// pairing preservation) for the given degree parameter.
    #[error("not a lattice isometry for d = {0}: {1}")]
    NotAnIsometry(u32, String),

    /// Two vectors that were expected to span a rank-2 hyperbolic sublattice
    /// do not (parallel vectors, or a non-hyperbolic plane).
    #[error("vectors do not span a rank-2 hyperbolic lattice: {0}")]
    NotHyperbolic(String),

    /// The Jordan–Hölder rank search exhausted its certified coefficient box
    /// without finding an admissible summand.
    #[error("rank undetermined at coefficient bound {0}")]
    RankUndetermined(u64),

    /// `is_totally_semistable` was handed a target outside the wall's lattice.
    #[error("target vector {0} does not lie in the wall's saturated lattice")]
    TargetNotInLattice(String),

    /// Exceptional-locus data requested for a decomposition with fiber
    /// dimension < 1 (no projective bundle contracted).
    #[error("not a projective-bundle wall: fiber dimension {0} < 1")]
    NotProjectiveBundle(String),

    /// The middle (Brill–Noether) wall has no two-term decomposition; its
    /// stratified multi-term family is reported by the chain builder instead.
    #[error("no two-term decomposition on the middle wall; see the stratified Brill-Noether family")]
    MiddleWallDecomposition,

    /// One of the two summands at a crossing cannot be normalized to positive
    /// imaginary part, so the vector does not genuinely destabilize there.
    #[error("decomposition not normalizable at the crossing: {0}")]
    NotACrossing(String),

    /// Wall enumeration is only certified complete for n in {1, 2}.
    #[error("wall catalog not certified complete for n = {0}; pass allow_incomplete to proceed")]
    NotCertifiedComplete(u32),

    /// Brute-force search bounds that would overflow the fixed-width fast path.
    #[error("search bound too large for the exact fast path: {0}")]
    BoundTooLarge(String),

    /// Everything else: invalid n, d, window bounds, malformed vectors, ...
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
