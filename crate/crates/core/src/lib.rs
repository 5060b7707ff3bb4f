//! Closed-form Weber–Schafheitlin-type integrals over products of spherical
//! Bessel functions, together with an independent quadrature oracle.

pub mod angular;
pub mod cli;
pub mod error;
pub mod momenta;
pub mod oracle;
pub mod quadrature;
pub mod specfun;
pub mod weberschafheitlin;

pub use error::{Error, Result};
