//! Explicit capitulation of units and ideals in unramified extensions.

pub mod arith;
pub mod capitulation;
pub mod cli;
pub mod cokernel;
pub mod error;
pub mod field;
pub mod group;
pub mod kernel_group;
pub mod lambda;
pub mod noncap;
pub mod oracle;

pub use error::{Error, Result};
