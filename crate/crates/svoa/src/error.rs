//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by the algebra engine.
///
/// Most numerical routines in this crate are total on their documented
/// domains; errors arise from invalid user input (vectors outside the lattice,
/// inhomogeneous states passed where a graded state is required, unknown field
/// names) or from infeasible requests.
#[derive(Debug, Error)]
pub enum SvoaError {
    /// A vector was expected to lie in the lattice but does not.
    #[error("vector is not a lattice point: {0}")]
    NotInLattice(String),
    /// A state was expected to be homogeneous for some grading but is not.
    #[error("state is not homogeneous: {0}")]
    Inhomogeneous(String),
    /// A mode index is incompatible with the coset classes involved.
    #[error("incompatible mode index: {0}")]
    IncompatibleIndex(String),
    /// A field name was not found in the registry.
    #[error("unknown field: {0}")]
    UnknownField(String),
    /// Request cannot be satisfied (e.g. non-integral conformal weight where
    /// an integral one is required).
    #[error("infeasible request: {0}")]
    Infeasible(String),
    /// Configuration / CLI input error.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// I/O error (cache files, configuration files).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
