//! Tree-decorated quadrangulations: samplers, the gluing bijection, peeling
//! explorations and a statistics harness.

pub mod error;
pub mod experiments;
pub mod gluing;
pub mod map;
pub mod peeling;
pub mod rng;
pub mod stats;
pub mod tree;
pub mod quad;

pub use error::{Error, Result};
