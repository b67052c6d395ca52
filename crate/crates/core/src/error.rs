use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("not finite type: root count exceeds {cap}")]
    NotFiniteType { cap: usize },
    #[error("invalid generator: {0}")]
    InvalidGenerator(usize),
    #[error("incompatible root systems")]
    IncompatibleRootSystems,
    #[error("not a diagram automorphism: {0}")]
    NotDiagramAutomorphism(String),
    #[error("w is not minimal in its coset")]
    NotMinimal,
    #[error("not a boundary subset: {0}")]
    NotBoundarySubset(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("proof step failed: {0}")]
    ProofStep(String),
    #[error("parse error: {0}")]
    Parse(String),
}
