use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("cannot parse tree term at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("tree is not closed: edge `{0}` is a leaf")]
    NotClosed(String),
    #[error("cannot compose: target of the first map is not the source of the second")]
    SourceTargetMismatch,
    #[error("edge `{0}` is not an inner edge")]
    NotInnerEdge(String),
    #[error("subpresheaves live in different ambients")]
    AmbientMismatch,
    #[error("not a subobject of the given presheaf")]
    NotASubobject,
    #[error("the index set is empty")]
    EmptyIndexSet,
    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, limit: usize },
    #[error("integer overflow during exact elimination")]
    Overflow,
}
