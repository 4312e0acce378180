//! File formats, figures, parallel drivers and the command-line interface
//! on top of [`stabgld_core`].

pub mod cli;
pub mod error;
pub mod formats;
pub mod output;
pub mod parallel;

pub use error::{AppError, AppResult};
pub use stabgld_core;
