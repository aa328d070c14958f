use alloc::string::String;

/// Errors raised by the exactness calculus and the concrete instances.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("bound {bound} is too small: need at least {needed}")]
    BoundTooSmall { bound: usize, needed: usize },
    #[error("morphism is not a strict monomorphism")]
    NotStrictMono,
    #[error("morphism is not a strict epimorphism")]
    NotStrictEpi,
    #[error("morphism is not strict")]
    NotStrict,
    #[error("square does not commute")]
    NonCommuting,
    #[error("objects do not line up: {0}")]
    Mismatch(String),
    #[error("invalid monoid action: {0}")]
    InvalidAction(String),
    #[error("path of length {length} acts non-trivially beyond the path bound {bound}")]
    PathBoundExceeded { bound: usize, length: usize },
    #[error("not a pre-crystal morphism: {0}")]
    NotAPreCrystalMorphism(String),
    #[error("not a matroid: {0}")]
    NotAMatroid(String),
    #[error("map is not continuous")]
    NotContinuous,
    #[error("continuity conditions disagree: {0}")]
    InternalDisagreement(String),
    #[error("subset is not a submonoid")]
    NotASubmonoid,
    #[error("map is not a homomorphism")]
    NotAHomomorphism,
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid algebraic structure: {0}")]
    InvalidStructure(String),
    #[error("unsupported monad tag: {0}")]
    UnsupportedTag(String),
    #[error("monad tags do not match")]
    TagMismatch,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("substitution left the submonad: {0}")]
    ClosureViolation(String),
    #[error("no witness found for {0}")]
    WitnessSearchFailed(String),
    #[error("invalid unit ball: {0}")]
    InvalidBall(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("operation not supported by this instance: {0}")]
    Unsupported(&'static str),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
