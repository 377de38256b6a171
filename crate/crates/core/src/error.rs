use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("indeterminate form: infinities of opposite effect were combined")]
    IndeterminateForm,
    #[error("profile belongs to family `{found}`, expected `{expected}`")]
    FamilyMismatch { expected: String, found: String },
    #[error("operation requires a linear family, got {0}")]
    NotLinear(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConeError {
    #[error("cone must have dimension at least 1")]
    ZeroDimension,
    #[error("vector {index} has dimension {found}, cone dimension is {expected}")]
    Dimension { index: usize, expected: usize, found: usize },
    #[error("dual generator {dual} is negative on generator {generator} (value {value})")]
    NotDual { dual: usize, generator: usize, value: f64 },
    #[error("the cone needs at least one dual generator (the whole space is not a valid ordering cone here)")]
    NoDualGenerators,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("direction {index} is not in the dual cone")]
    DirectionOutsideDual { index: usize },
    #[error("direction {index} is the zero vector")]
    ZeroDirection { index: usize },
    #[error("member {index} violates the normalization condition 0 < ψ(z̄) < +∞ (value {value})")]
    Normalization { index: usize, value: String },
    #[error("direction e must lie in C \\ (−C): {0}")]
    BadDirection(String),
    #[error("relation is not a preorder: {0}")]
    NotPreorder(String),
    #[error("family has no members")]
    Empty,
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error("invalid parameter: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("ε must be nonnegative, got {0}")]
    NegativeEpsilon(f64),
    #[error("ε must be strictly positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("the domain of f is empty")]
    EmptyDomain,
    #[error("candidate set must be nonempty")]
    EmptyCandidate,
    #[error("ε ladder must be strictly decreasing and positive")]
    BadLadder,
    #[error("grid index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("problem is malformed: {0}")]
    Malformed(String),
    #[error("postcondition violated: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StochasticError {
    #[error("α must lie in (0, 1], got {0}")]
    Alpha(f64),
    #[error("probabilities must be nonnegative and sum to 1 (sum = {0})")]
    Probabilities(f64),
    #[error("atoms and probabilities differ in length ({atoms} vs {probs})")]
    Length { atoms: usize, probs: usize },
    #[error("random variable has no atoms")]
    NoAtoms,
    #[error("expected dimension {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("direction grid is empty or contains a vector outside C⁺ \\ {{0}}")]
    DirectionGrid,
}
