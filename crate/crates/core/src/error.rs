use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("zero exponent at position {pos}")]
    ZeroExponent { pos: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A construction or enumeration would exceed its configured size cap.
    #[error("{what} cap exceeded: limit {limit}, reached {reached}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        reached: u64,
    },

    /// An exhaustive scan would evaluate more tuples than the budget allows.
    #[error("budget exceeded: {needed} evaluations needed, budget is {budget}{hint}")]
    BudgetExceeded {
        needed: String,
        budget: u64,
        hint: &'static str,
    },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("operands belong to different parent structures")]
    MixedParents,

    #[error("division by zero in a finite field")]
    ZeroInverse,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("element set is not a subgroup")]
    NotSubgroup,

    #[error("group is not semisimple (nontrivial solvable radical of order {0})")]
    NotSemisimple(u64),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A computed object contradicts a proven structural fact; always a bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn syntax(pos: usize, msg: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            msg: msg.into(),
        }
    }

    /// True for errors that mean "could not compute within limits" rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::BudgetExceeded { .. } | Error::Unsupported(_)
        )
    }
}
