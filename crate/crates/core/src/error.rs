/// Errors surfaced by the exact-arithmetic operations.
///
/// Every operation in this crate is total unless listed here; the variants
/// carry enough context to reproduce the offending input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A single-bidegree query was made on an element mixing bidegrees.
    #[error("element is not bidegree-homogeneous: {0}")]
    NonHomogeneous(String),

    /// Evaluation point lies on one of the excluded divisors c=0, c=ab.
    #[error("evaluation point lies on the divisor {0}")]
    PoleAtPoint(&'static str),

    /// The coefficient triple of a general cocycle is not divergence-free.
    #[error("vector field is not divergence-free: sum of xi-divergences is {0}")]
    NotDivergenceFree(String),

    /// A bracket left the candidate span (embedded sl3 verification).
    #[error("closure failure: {0}")]
    ClosureFailure(String),

    /// A Gram block of the dual-basis solve is not uniquely solvable.
    #[error("singular Gram block: {0}")]
    SingularBlock(String),

    /// A dual-basis element provably needs support outside the window.
    #[error("closure violation: {0}")]
    ClosureViolation(String),

    /// Input support escapes the truncation covered by a delta/dual object.
    #[error("support escape: {0}")]
    SupportEscape(String),

    /// A conformal-algebra axiom failed on a concrete instance.
    #[error("conformal axiom violation: {0}")]
    AxiomViolation(String),

    /// Negative exponent requested on a non-invertible element.
    #[error("negative exponent on a non-invertible element: {0}")]
    NegativeExponent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
