use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{what} supports at most {max} vertices, got {n}")]
    Unsupported { what: &'static str, n: usize, max: usize },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("duplicate basis element {0}")]
    DuplicateBasis(String),

    #[error("stabilizer generators are linearly dependent")]
    DependentRows,

    #[error("stabilizer generators {0} and {1} do not commute")]
    NonCommuting(usize, usize),

    #[error("stabilizer generator {0} is not Hermitian")]
    NonHermitian(usize),

    #[error("coding clique is not closed under symmetric difference")]
    NotAGroup,

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("unknown graph family {0:?}")]
    InvalidFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
