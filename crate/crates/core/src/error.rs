use thiserror::Error;

use crate::bigraded::Tridegree;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^16")]
    InvalidPrime(u32),
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("monomial {mono} is not valid on the {side} side")]
    InvalidMonomial { mono: String, side: String },
    #[error("matrices do not compose: {0}")]
    Composability(String),
    #[error("d∘d ≠ 0: {0}")]
    NotAComplex(String),
    #[error("ambient map is not a chain map: {0}")]
    ChainMap(String),
    #[error("internal failure at {at}: {source}")]
    Cell {
        at: Tridegree,
        #[source]
        source: Box<Error>,
    },
    #[error("presentation is not over Z[1/2][ε]/(ε²-1): {0}")]
    Presentation(String),
    #[error("malformed payload: {0}")]
    Payload(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
