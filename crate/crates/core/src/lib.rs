pub mod chirotope;
pub mod dot;
pub mod dynamics;
pub mod error;
pub mod exact;
pub mod fixed_points;
pub mod mutations;
pub mod network;
pub mod sampling;

#[cfg(test)]
mod properties;

pub use error::{Result, TlnError};
