//! Error types shared by all modules.

use thiserror::Error;

/// Every failure mode of the library.
///
/// Validation failures carry enough context to point at the offending
/// slot, axis or input. `IdentityFlip` is deliberately *not* present:
/// flipping a bundle along equal axes is a warning-level no-op, not an
/// error (see [`crate::lattice::DecomposedBundle::flip`]).
#[derive(Debug, Error)]
pub enum Error {
    /// A bundle specification did not cover some nonempty subset of axes.
    #[error("missing slot for subset {subset}")]
    MissingSlot { subset: String },

    /// Two slots of one bundle use the same atom name.
    #[error("duplicate atom name `{name}`")]
    DuplicateAtom { name: String },

    /// A face was requested over the empty set of axes.
    #[error("face requires a nonempty set of axes")]
    EmptyFace,

    /// An operation restricted to a specific arity was applied elsewhere.
    #[error("operation requires n = {expected}, bundle has n = {found}")]
    WrongArity { expected: u8, found: u8 },

    /// An axis index outside `1..=n`.
    #[error("axis {axis} out of range for an {n}-fold bundle")]
    BadAxis { axis: u8, n: u8 },

    /// Rendering is limited to small arities.
    #[error("cannot render an {n}-fold bundle (limit is n = 4)")]
    TooLargeToRender { n: u8 },

    /// Two group elements (or bundles) of different arity were combined.
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: u8, right: u8 },

    /// Group closure exceeded its element cap; the partial count is reported.
    #[error("closure exceeded cap of {cap} elements ({found} found, incomplete)")]
    ClosureCapExceeded { cap: usize, found: usize },

    /// Coset enumeration exceeded its coset cap; no index is claimed.
    #[error("coset enumeration exceeded cap of {cap} cosets")]
    EnumerationCapExceeded { cap: usize },

    /// The independence certificate failed to verify (cannot occur in a
    /// correct build; kept as a hard error rather than a panic).
    #[error("independence certificate invalid: {0}")]
    CertificateInvalid(String),

    /// Two fiber elements were combined over incompatible projections.
    #[error("incompatible fibers: {0}")]
    IncompatibleFibers(String),

    /// A candidate pairing failed the pairing axioms where they are a
    /// precondition.
    #[error("not a pairing of double vector bundles: {0}")]
    NotAPairing(String),

    /// A bundle spec file or presentation string failed to parse.
    #[error("parse error: {context}")]
    SpecParseError { context: String },
}

impl Error {
    /// Helper for parse failures.
    pub fn parse(context: impl Into<String>) -> Self {
        Error::SpecParseError {
            context: context.into(),
        }
    }
}
