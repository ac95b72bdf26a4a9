use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Every variant has a stable machine-readable name returned by [`Error::code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown generator `{name}` at line {line}, column {column}")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("action `{action}` gives no image for {missing}")]
    IncompleteMap { action: String, missing: String },
    #[error("unknown catalog group `{0}`")]
    UnknownCatalogName(String),
    #[error("coset enumeration exceeded its budget ({reason}); the group may be infinite")]
    BudgetExceeded { reason: String },
    #[error("coset table is incomplete")]
    IncompleteTable,
    #[error("group order {order} exceeds the cap of {cap} elements")]
    OrderCap { order: usize, cap: usize },
    #[error("subgroup is not normal: conjugating {element} by {by} leaves it")]
    NotNormal { element: usize, by: usize },
    #[error("subgroups belong to different parent groups")]
    MixedParents,
    #[error("generator map of {actor} generator `{generator}` is not an automorphism")]
    NotAutomorphism { actor: String, generator: String },
    #[error("action of {actor} is not a homomorphism into the automorphism group")]
    NotActionHomomorphism { actor: String },
    #[error("actions are not compatible; first violation at {witness}")]
    Incompatible { witness: String },
    #[error("|G|*|H| = {product} exceeds the cap of {cap}")]
    CapExceeded { product: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("M and N do not generate G")]
    NotGeneratingPair,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    /// Stable error name for structured output and exit reporting.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownGenerator { .. } => "UnknownGenerator",
            Error::DuplicateGenerator(_) => "DuplicateGenerator",
            Error::IncompleteMap { .. } => "IncompleteMap",
            Error::UnknownCatalogName(_) => "UnknownCatalogName",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::IncompleteTable => "IncompleteTable",
            Error::OrderCap { .. } => "OrderCap",
            Error::NotNormal { .. } => "NotNormal",
            Error::MixedParents => "MixedParents",
            Error::NotAutomorphism { .. } => "NotAutomorphism",
            Error::NotActionHomomorphism { .. } => "NotActionHomomorphism",
            Error::Incompatible { .. } => "Incompatible",
            Error::CapExceeded { .. } => "CapExceeded",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::NotGeneratingPair => "NotGeneratingPair",
            Error::Undecided(_) => "Undecided",
            Error::NotHomomorphism(_) => "NotHomomorphism",
            Error::Overflow(_) => "Overflow",
            Error::Usage(_) => "UsageError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
