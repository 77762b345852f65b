use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("missing key `{0}`")]
    MissingKey(&'static str),
    #[error("invalid value for `{key}`: {value}")]
    Value { key: String, value: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("vector {0} is not a root")]
    NotARoot(String),
    #[error("{0} is not a positive root")]
    NotPositive(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradationError {
    #[error("crossing set is empty")]
    EmptyCrossing,
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
    #[error("diagram is for {diagram}, but the algebra is {algebra}")]
    TypeMismatch { diagram: String, algebra: String },
    #[error("arrow {0}-{1} must join two distinct white nodes")]
    BadArrow(usize, usize),
    #[error("unknown Satake diagram `{0}`")]
    UnknownDiagram(String),
    #[error("Satake condition (i) violated: black node {0} is crossed")]
    BlackNodeCrossed(usize),
    #[error("Satake condition (ii) violated: nodes {0} and {1} are joined by an arrow but only one is crossed")]
    ArrowSplit(usize, usize),
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("reading {path}: {msg}")]
    Io { path: String, msg: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KoszulError {
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("element is not in the Cartan subalgebra")]
    NotCartan,
    #[error("element has dimension {got}, algebra has dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParaError {
    #[error("{0} lies on the null cone and is not invertible")]
    NullCone(String),
    #[error("point is not admissible: {0}")]
    Inadmissible(String),
    #[error("metric is singular at the sample point (det = {0:e})")]
    SingularMetric(f64),
    #[error("determinant of the metric changes sign near the sample point")]
    DeterminantSignChange,
    #[error("potential is not real: coefficient of {0} differs from its conjugate term")]
    NotReal(String),
    #[error("point has {got} coordinates, chart needs {expected}")]
    Dimension { expected: usize, got: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}
