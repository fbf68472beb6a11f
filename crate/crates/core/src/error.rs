use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent user input (bad tables, mismatched groups, ...).
    #[error("input error: {0}")]
    Input(String),
    /// A configured size cap (group order, resolution length, dimension) was hit.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// An operation was called outside its documented domain.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A post-hoc validation of a computed object failed.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! input_err {
    ($($arg:tt)*) => { $crate::error::Error::Input(format!($($arg)*)) };
}
macro_rules! resource_err {
    ($($arg:tt)*) => { $crate::error::Error::Resource(format!($($arg)*)) };
}
macro_rules! precondition_err {
    ($($arg:tt)*) => { $crate::error::Error::Precondition(format!($($arg)*)) };
}
macro_rules! consistency_err {
    ($($arg:tt)*) => { $crate::error::Error::Consistency(format!($($arg)*)) };
}
pub(crate) use {consistency_err, input_err, precondition_err, resource_err};
