use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("multiset is not the content multiset of any partition")]
    NotAContentMultiset,
    #[error("box ({row}, {col}) lies outside the diagram")]
    BoxOutsideDiagram { row: usize, col: usize },
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("the empty partition has no Wilson data")]
    EmptyPartition,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("no convergence after {iterations} iterations ({what})")]
    NoConvergence { what: &'static str, iterations: usize },
    #[error("points {i} and {j} coincide within tolerance")]
    CoincidentPoints { i: usize, j: usize },
    #[error("singular Jacobian in equilibrium refinement")]
    SingularJacobian,
    #[error("cluster of size {0} is not a triangular number")]
    NonTriangularMultiplicity(usize),
    #[error("clustered multiplicities {numeric:?} disagree with exact squarefree profile {exact:?}")]
    MultiplicityMismatch { numeric: Vec<usize>, exact: Vec<usize> },
    #[error("evaluation point is a pole of the potential")]
    EvaluationAtPole,
    #[error("potential evaluation paths disagree (relative difference {0:e})")]
    PotentialMismatch(f64),
    #[error("spectrum is not integral: max rounding residual {residual:e} exceeds {tol:e}")]
    NonIntegerSpectrum { residual: f64, tol: f64 },
    #[error("rounded spectrum {rounded:?} differs from the predicted multiset {expected:?}")]
    SpectrumMismatch { rounded: Vec<i64>, expected: Vec<i64> },
    #[error("Wronskian is not squarefree; the Moser matrix is undefined")]
    SimplicityGateFailed,
    #[error("off-diagonal block ({0}, {1}) of X has no consistent solution")]
    InconsistentBlockSystem(usize, usize),
    #[error("character is not symmetric under mu -> 1/mu")]
    AsymmetricCharacter,
    #[error("character has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("character has a negative coefficient at exponent {0}")]
    NegativeCoefficient(i64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
