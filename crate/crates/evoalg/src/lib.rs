//! Exact construction, classification and isomorphism testing of
//! finite-dimensional evolution algebras over Q and small finite fields.
//!
//! An evolution algebra is a commutative algebra with a *natural basis*:
//! distinct basis elements multiply to zero, so the whole product is encoded
//! by the structure matrix whose column i holds the coordinates of e_i^2.
//! This crate provides:
//!
//! - [`field`]: exact arithmetic over Q, F_p and F_{p^k} (k <= 4), plus the
//!   multiplicative-structure queries (n-th roots, unit enumeration,
//!   discrete logs, prime-exponent vectors) everything else is built on;
//! - [`algebra`]: the evolution-algebra value type with products, basis
//!   changes, the perfect/simple tests, tree ideals, line ideals and
//!   quotients by one-dimensional ideals;
//! - [`graph`]: the directed-graph kernel (strong connectivity, period,
//!   categorical products, small-graph isomorphism, DOT export);
//! - [`moduli`]: orbit-membership deciders for the group actions that
//!   parametrize isomorphism classes (scaling subgroups, inductive limits,
//!   integer exponent-matrix groups);
//! - [`classify`]: the canonical families of simple evolution algebras in
//!   dimensions 2 and 3, the classification map, the per-family isomorphism
//!   predicate, a brute-force isomorphism oracle and an exhaustive census;
//! - [`tensor`]: tensor products, simplicity prediction via graph periods,
//!   semisimple decomposition, block inflation and the quotient
//!   non-simplicity check;
//! - [`acceptance`]: the runnable acceptance suite wired into both
//!   `cargo test` and the CLI `selftest` subcommand.
//!
//! ```
//! use evoalg::algebra::EvolutionAlgebra;
//! use evoalg::classify::{are_isomorphic, classify};
//!
//! // e_1^2 = e_2 and e_2^2 = 5 e_1: the loop-free simple algebra II^{0,2}(5).
//! let a = EvolutionAlgebra::parse("Q\n2\n0 5\n1 0\n")?;
//! assert_eq!(classify(&a)?.to_string(), "II^{0,2}(5)");
//!
//! // Rescaling the basis by k = 2 multiplies the parameter by k^3.
//! let b = EvolutionAlgebra::parse("Q\n2\n0 40\n1 0\n")?;
//! assert!(are_isomorphic(&a, &b)?);
//! # Ok::<(), evoalg::Error>(())
//! ```

pub mod acceptance;
pub mod algebra;
pub mod classify;
pub mod field;
pub mod graph;
pub mod moduli;
pub mod tensor;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero cannot be raised to a negative power")]
    ZeroToNegativePower,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic {0} is too large (must be < 2^31)")]
    CharacteristicTooLarge(u64),
    #[error("defining polynomial is reducible")]
    ReduciblePolynomial,
    #[error("extension degree {0} outside the supported range 2..=4")]
    UnsupportedDegree(usize),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("operation requires the rationals")]
    NotRational,
    #[error("zero input where a nonzero element is required")]
    ZeroInput,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("zero scalar in a basis change")]
    ZeroBasisScalar,
    #[error("algebra is not perfect")]
    NotPerfect,
    #[error("algebra is not simple: {0}")]
    NotSimple(&'static str),
    #[error("classification covers dimensions 2 and 3, got {0}")]
    UnsupportedDimension(usize),
    #[error("graph is not strongly connected")]
    NotStronglyConnected,
    #[error("graph has no closed path, period undefined")]
    NoClosedPath,
    #[error("tuple length mismatch: {0} vs {1}")]
    ShapeMismatch(usize, usize),
    #[error("vector does not span a one-dimensional ideal")]
    NotAnIdeal,
    #[error("pivot {0} lies outside the support of the vector")]
    PivotOutsideSupport(usize),
    #[error("family constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("enumeration too large: {0}")]
    TooLarge(String),
    #[error("census bound exceeded: q^(n^2) = {0} > 10^7")]
    CensusTooLarge(u128),
    #[error("component {0:?} is not closed under multiplication")]
    ComponentNotClosed(Vec<usize>),
    #[error("no canonical family matches this simple algebra")]
    NoFamilyMatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Parse/input errors exit with status 2, domain errors with 1.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}
