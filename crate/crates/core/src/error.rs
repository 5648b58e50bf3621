//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i32, strands: usize },

    #[error("strand index {index} out of range for {strands} strands")]
    StrandOutOfRange { index: usize, strands: usize },

    #[error("band generator needs 1 <= i < j, got i={i}, j={j}")]
    BadBandIndices { i: usize, j: usize },

    #[error("band generator exponent must be nonzero")]
    ZeroBandExponent,

    #[error("tuple length {tuple_len} does not match braid strand count {strands}")]
    TupleLengthMismatch { strands: usize, tuple_len: usize },

    #[error("permutation degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("image table is not a bijection on 1..={size}")]
    NotABijection { size: usize },

    #[error("orbit size cap {cap} exceeded")]
    OrbitCapExceeded { cap: usize },

    #[error("resultant of two zero polynomials is undefined")]
    BothZero,

    #[error("leading coefficient vanished at evaluation node {node}")]
    LeadingCoeffVanished { node: usize },

    #[error("degree bound too small: residual {residual:.3e} at check node")]
    BoundTooSmall { residual: f64 },

    #[error("root finder did not converge within {iterations} iterations")]
    RootsDidNotConverge { iterations: usize },

    #[error("root collision at path parameter {s:.6}: min separation {min_separation:.3e} below threshold")]
    RootCollision { s: f64, min_separation: f64 },

    #[error("root matching stayed ambiguous at minimum step near path parameter {s:.6}")]
    MatchingAmbiguous { s: f64 },

    #[error("strand cap {cap} exceeded: requested {requested} strands")]
    StrandCapExceeded { cap: usize, requested: usize },

    #[error("invalid {what} spec: {text}")]
    InvalidSpec { what: &'static str, text: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
