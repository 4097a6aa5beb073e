//! Verified box representations of graphs and realizers of posets.

pub mod bits;
pub mod bridge;
pub mod builders;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod generate;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod lll;
pub mod options;
pub mod oracle;
pub mod pipelines;
pub mod poset;
pub mod seed;
pub mod suitable;
pub mod verify;

pub use error::{Error, Result};
