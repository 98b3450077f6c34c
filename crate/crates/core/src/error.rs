use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("images do not form a permutation: {0:?}")]
    NotAPermutation(Vec<u16>),
    #[error("generators must share one degree (got {0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("group closure exceeds the order cap of {cap}")]
    OrderCap { cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a subgroup of this group")]
    NotASubgroup,
    #[error("class functions live on different groups")]
    GroupMismatch,
    #[error("character table self-check failed: {0}")]
    TableCheck(String),
    #[error("cannot lift residue {0} to a bounded integer")]
    LiftRange(u64),
    #[error("quotient projection does not match this group")]
    ProjectionMismatch,
    #[error("character must be irreducible")]
    NotIrreducible,
    #[error("unknown group spec `{0}`")]
    UnknownGroup(String),
    #[error("bad group file: {0}")]
    GroupFile(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
