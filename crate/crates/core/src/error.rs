use thiserror::Error;

/// Everything that can go wrong while building or analysing an algebra.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("not a lattice: {a} and {b} have no {op}")]
    NotALattice {
        a: String,
        b: String,
        op: &'static str,
    },
    #[error("poset is unbounded: no global {0}")]
    Unbounded(&'static str),
    #[error("{complement} is not a complement of {element}")]
    NotAComplement { element: String, complement: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable {0} is not assigned")]
    UnboundVariable(String),
    #[error("budget exceeded: {needed} evaluations required, cap is {cap}")]
    BudgetExceeded { needed: String, cap: u64 },
    #[error("unknown formula {0}")]
    UnknownFormula(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("partition is not compatible with the operations")]
    IncompatibleCongruence,
    #[error("invalid action: S_{x}({a}) is not a complement of {a}")]
    InvalidAction { x: String, a: String },
    #[error("complementation is not action-shaped at ({a}, {x})")]
    NotActionShaped { a: String, x: String },
    #[error("{0} is not a neutral element")]
    NotNeutral(String),
    #[error("unknown fixture {0}")]
    UnknownFixture(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn budget(needed: impl ToString, cap: u64) -> Self {
        Error::BudgetExceeded {
            needed: needed.to_string(),
            cap,
        }
    }
}
