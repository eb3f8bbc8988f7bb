use thiserror::Error;

use crate::report::Report;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix of {rows}x{cols} exceeds the cap of {cap} entries")]
    DimensionOverflow {
        rows: usize,
        cols: usize,
        cap: usize,
    },

    #[error("shape mismatch in {op}: {left:?} vs {right:?}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },

    #[error("matrix entries must be finite")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("semi-unitary check expects rows <= cols, got {rows}x{cols}")]
    Orientation { rows: usize, cols: usize },

    #[error("invalid partial permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("variable {0} appears more than once")]
    DuplicateVariable(usize),

    #[error("empty tree specification")]
    EmptySpec,

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("unknown node or unit id {0}")]
    UnknownNode(usize),

    #[error("node {0} is not an internal node")]
    NotInternal(usize),

    #[error("assignment has {got} values, circuit has {expected} variables")]
    ArityMismatch { expected: usize, got: usize },

    #[error("assignment is partial: variable {0} has no value")]
    PartialAssignment(usize),

    #[error("value {value} out of range for variable {var} with cardinality {cardinality}")]
    ValueOutOfRange {
        var: usize,
        value: usize,
        cardinality: usize,
    },

    #[error("evidence and marginalized variables must partition the variable set: {0}")]
    BadPartition(String),

    #[error("weights must be nonnegative and sum to one (sum {sum})")]
    WeightSum { sum: f64 },

    #[error("diagonal factor {index} has Tr[D D*] = {trace}, expected 1")]
    TraceCondition { index: usize, trace: f64 },

    #[error("event operator is not positive semi-definite")]
    NonPsdEvent,

    #[error("probability has imaginary residual {0:e}")]
    ComplexProbability(f64),

    #[error("not semi-unitary: {0}")]
    NotSemiUnitary(String),

    #[error("circuit has no diagonal structure: {0}")]
    NotDiagonal(String),

    #[error("partition trees differ")]
    TreeMismatch,

    #[error("normalizer {0:e} is too small to condition on")]
    ZeroNormalizer(f64),

    #[error("circuit contains a cycle through unit {0}")]
    Cycle(usize),

    #[error("circuit is not decomposable: {0}")]
    NotDecomposable(String),

    #[error("circuit is invalid:\n{0}")]
    InvalidCircuit(Report),

    #[error("state space of {states} assignments exceeds the oracle cap of {cap}")]
    StateSpaceTooLarge { states: u128, cap: usize },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported format version {0}")]
    UnknownVersion(u64),

    #[error("unknown circuit family `{0}`")]
    UnknownFamily(String),

    #[error("unknown field `{0}`")]
    UnknownField(String),

    #[error("malformed circuit file: {0}")]
    Format(String),

    #[error("conversion infeasible: {0}")]
    ConversionInfeasible(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
