pub mod crystal;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod laurent;
pub mod root_data;
pub mod strategy;
pub mod trails;
pub mod tropical;
pub mod verify;
pub mod word;

pub use error::{Error, ErrorClass, Result};
