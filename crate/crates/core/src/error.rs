use thiserror::Error;

use crate::algebra::JetIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("cannot parse {input:?} at byte {position}: {message}")]
pub struct ParseError {
    pub input: String,
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator depends on eps")]
    EpsInDenominator,
    #[error("expression has a symbol with no assigned value")]
    UnassignedSymbol,
    #[error("jet {0} exceeds the maximum supported order")]
    JetOrderOverflow(JetIndex),
    #[error("field is not prolonged to jet {0}")]
    InsufficientProlongation(JetIndex),
    #[error("manifold replacement mentions the solved jet family (at {0})")]
    SubstitutionCycle(JetIndex),
    #[error("equation cannot be solved for w_t: {0}")]
    NotEvolutionary(String),
    #[error("field coefficients must depend only on x, t, w (found {0})")]
    NotPointField(String),
    #[error("determining equation is not linear in the unknowns: {0}")]
    NonlinearEquation(String),
    #[error("inconsistent linear system; witness equation: {witness}")]
    Inconsistent { witness: String },
    #[error("field is not an exact symmetry of the unperturbed equation; residual {residual}")]
    NotExactSymmetry { residual: String },
    #[error("bracket [{left}, {right}] leaves the span; residual {residual}")]
    NotClosed {
        left: String,
        right: String,
        residual: String,
    },
    #[error("basis fields are linearly dependent")]
    DependentBasis,
    #[error("field has non-rational coefficients: {0}")]
    SymbolicField(String),
    #[error("adjoint series for generator {index} did not terminate within {bound} terms")]
    NonNilpotent { index: usize, bound: usize },
    #[error("algebra element has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("the ε¹ condition does not reduce to an ODE in t; leftover {0}")]
    NotReducible(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
