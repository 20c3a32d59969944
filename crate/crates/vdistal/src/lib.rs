//! Command-line front end, file formats and experiments for `vdistal-core`.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod gen;
pub mod json;

pub use cli::run;
