pub mod bipartite;
pub mod cycles;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod homomorphism;
pub mod pattern;
pub mod templates;
pub mod verifier;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
