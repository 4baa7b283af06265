use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("characteristic not set")]
    CharacteristicNotSet,

    #[error("operands live in different rings")]
    ContextMismatch,

    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),

    #[error("the defining relation must be nonzero")]
    ZeroRelation,

    #[error("the defining relation must have degree at least 1")]
    ConstantRelation,

    #[error("zero generator")]
    ZeroGenerator,

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("module is not torsionless: the bidual map has a kernel")]
    NotTorsionless,

    #[error("module is not maximal Cohen-Macaulay (depth {depth} < dim {dim})")]
    NotMaximalCohenMacaulay { depth: usize, dim: usize },

    #[error("module is free; its stable homology is trivial")]
    FreeModule,

    #[error("no periodicity found within bound {bound}")]
    NoPeriodicity { bound: usize },

    #[error("matrix factorization identity failed at index {at}")]
    FactorizationFailed { at: usize },

    #[error("theta undefined: Tor has infinite length at index {index} (bound {bound})")]
    ThetaUndefined { index: usize, bound: usize },

    #[error("theta stability check failed: {0}")]
    ThetaUnstable(String),

    #[error("resolution bound {requested} exceeds the hard cap {cap}")]
    BoundExceeded { requested: usize, cap: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parameter search failed after {attempts} attempts")]
    ParameterSearchFailed { attempts: usize },
}
