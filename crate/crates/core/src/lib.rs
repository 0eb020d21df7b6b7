pub mod analytics;
pub mod cli;
mod decimal;
pub mod error;
pub mod notation;
pub mod pipeline;
pub mod polynomial;
pub mod presentation;
pub mod report;
pub mod state_graph;
pub mod strings;

pub use error::{Error, Result};
