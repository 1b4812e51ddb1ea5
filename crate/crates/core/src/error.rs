use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("orientation {orient} is not canonical for a={a}, b={b}, m={m}")]
    OrientationInvalid { a: u32, b: u32, m: i32, orient: &'static str },
    #[error("rational function has no expansion in Q((q^-1))")]
    NotExpandable,
    #[error("coefficient leaves Q(q)[t]: {context}")]
    Unbounded { context: String },
    #[error("weight mismatch: {left} vs {right}")]
    WeightMismatch { left: i32, right: i32 },
    #[error("expected a single u-monomial")]
    NotMonomial,
    #[error("invalid weight parameter: p={p}, m={m}")]
    InvalidParam { p: i64, m: i32 },
}
