use thiserror::Error;

use crate::scalar::Scalar;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("evaluation at a pole (t = 0 with negative exponents present)")]
    EvalAtPole,
    #[error("operands use different generators")]
    GeneratorMismatch,
    #[error("leading coefficient of the divisor is not a unit of C[t,t^-1]")]
    NonUnitLeadingCoeff,
    #[error("invalid module data: {0}")]
    InvalidModule(String),
    #[error("basis symbol {0} is not legal for this module")]
    IllegalSymbol(String),
    #[error("this module carries no twist parameter")]
    NoTwist,
    #[error("this module is not a K-module; only the Virasoro action is defined")]
    NoKAction,
    #[error("vector has a component outside the submodule: {0}")]
    NotInSubmodule(String),
    #[error("vector is not an eigenvector of w_0")]
    NotEigenvector,
    #[error("w_0 acts as zero (b(b-1) = 0); the t-action cannot be recovered")]
    TwistDegenerate,
    #[error("zero vector not allowed here")]
    ZeroVector,
    #[error("constraint on h fails at pole index {index} (a = {pole})")]
    ConstraintViolated { index: usize, pole: Scalar },
    #[error("poles must be pairwise distinct")]
    DuplicatePoles,
    #[error("poles must be nonzero")]
    ZeroPole,
    #[error("polynomial must be nonconstant")]
    ConstantPolynomial,
    #[error("search budget of {budget} branches exceeded after {explored} branches and {subsets} pole subsets")]
    BudgetExceeded {
        budget: u64,
        explored: u64,
        subsets: u64,
    },
    #[error("result leaves the localized ring: {0}")]
    LeftLocalizedRing(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("cannot lower expression: {0}")]
    Lowering(String),
    #[error("usage: {0}")]
    Usage(String),
}
