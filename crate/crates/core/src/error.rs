use thiserror::Error;

/// Errors raised by the special-function, closed-form and quadrature layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {order} outside supported range 0..={max}")]
    OrderOutOfRange { order: u32, max: u32 },

    #[error("argument {value} outside domain: {domain}")]
    Domain { value: f64, domain: &'static str },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integrand not integrable at the origin (r^{exponent} near 0)")]
    NotIntegrable { exponent: i32 },

    #[error("integral diverges: {0}")]
    Divergent(String),

    #[error("quadrature failed to converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
