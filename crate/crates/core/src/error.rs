use thiserror::Error;

/// Errors surfaced by the library. Each variant maps onto a process exit code
/// through [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("discriminant {0} is not of the shape d·f², 9·d·f² or 81·d·f²")]
    Shape(i64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("usage error: {0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("stopped after {written} records: {source}")]
    Interrupted { written: u64, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// 0 success, 1 internal inconsistency, 2 usage error, 3 resource budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Inconsistency(_) | Error::Shape(_) | Error::Io(_) => 1,
            Error::Domain(_) | Error::Usage(_) => 2,
            Error::Resource(_) => 3,
            Error::Interrupted { source, .. } => source.exit_code(),
        }
    }
}
