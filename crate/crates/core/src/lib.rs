//! Travelling-salesman local search guided by tour-versus-MST barcodes.

pub mod cli;
pub mod error;
pub mod exact;
pub mod graph;
pub mod io;
pub mod localsearch;
pub mod rtdl;

pub use error::{Error, Result};
pub use graph::{Instance, Tour};
