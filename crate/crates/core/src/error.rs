use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {point} does not belong to the domain of {space}")]
    DomainMismatch { space: String, point: String },
    #[error("region is empty: {0}")]
    EmptyRegion(String),
    #[error("factor {index} of an infinite product has no finite diameter")]
    MissingDiameter { index: usize },
    #[error("unknown monotone transform {0:?}")]
    UnknownTransform(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("space is not a linear metric space: {0}")]
    NotLinear(String),
    #[error("unknown gallery space {0:?}")]
    UnknownName(String),
    #[error("cannot render: {0}")]
    UnsupportedDimension(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
