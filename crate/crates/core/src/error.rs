use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown group spec `{0}`")]
    UnknownGroup(String),

    #[error("unknown generator `{name}` in group {group}")]
    UnknownGenerator { group: String, name: String },

    #[error("malformed expression `{expr}`: {reason}")]
    Syntax { expr: String, reason: String },

    #[error("tuple arity mismatch: expected {expected}, found {found}")]
    Arity { expected: usize, found: usize },

    #[error("group {0} has no locally finite chain")]
    NoChain(String),

    #[error("chain of {group} has depth {depth}, need at least {required}")]
    ChainTooShallow {
        group: String,
        depth: usize,
        required: usize,
    },

    #[error("radius {radius} lies beyond the chain depth {depth}")]
    BeyondChain { radius: usize, depth: usize },

    #[error("memory cap of {cap} elements exceeded at radius {radius} (projected {projected})")]
    CapExceeded {
        cap: usize,
        radius: usize,
        projected: usize,
    },

    #[error("group {0} is not a virtually cyclic catalog entry")]
    NotVirtuallyCyclic(String),

    #[error("group {0} is not finitely generated; use its chain windows instead")]
    NotFinitelyGenerated(String),

    #[error("element {element} has finite order {order}")]
    FiniteOrder { element: String, order: usize },

    #[error("sets overlap at {0}: not a partition")]
    NotDisjoint(String),

    #[error("element {0} lies in neither part: not a partition")]
    NotCovering(String),

    #[error("invalid subset literal `{literal}`: {reason}")]
    SubsetLiteral { literal: String, reason: String },

    #[error("invalid topology literal `{0}`")]
    TopologyLiteral(String),

    #[error("explicit base has {0} generating sets, at most 64 are allowed")]
    ExplicitTooLarge(usize),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
