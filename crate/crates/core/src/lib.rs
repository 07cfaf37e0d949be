//! Function-correcting codes for b-symbol read channels: the cyclic
//! b-symbol metric, sphere profiles, function-distance matrices, irregular
//! distance codes and their length bounds, encoder search and
//! constructions, and a noisy-channel simulator.

pub mod channel;
pub mod cli;
pub mod error;
pub mod fcc;
pub mod functions;
pub mod irregular;
pub mod limits;
pub mod metric;
pub mod spheres;

pub use error::{Error, Result};
pub use limits::Limits;
