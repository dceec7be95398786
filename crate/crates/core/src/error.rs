use thiserror::Error;

use crate::term::Term;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("precedence is not irreflexive: `{0}` ends up below itself")]
    CyclicPrecedence(String),

    #[error("term uses a symbol that is not in the signature: {0}")]
    SymbolMismatch(String),

    #[error("no symbol has arity greater than 1")]
    DegenerateSignature,

    #[error("sequences of different length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("precedence synthesis limited to 8 symbols, got {0}")]
    TooManySymbols(usize),

    /// `term` names the start term when the budget ran out inside a batch.
    #[error("budget of {budget} exceeded")]
    BudgetExceeded { budget: u64, term: Option<Term> },

    /// Carries a term lying on the detected cycle.
    #[error("rewriting does not terminate (cycle detected)")]
    NonTerminating(Term),

    #[error("intermediate value exceeds the evaluation budget")]
    ValueBudgetExceeded,

    #[error("bad ordinal `{text}`: {reason}")]
    OrdinalSyntax { text: String, reason: String },

    #[error("ordinal is not a limit: {0}")]
    NotALimit(String),

    #[error("invalid rule: {0}")]
    InvalidRule(String),
}
