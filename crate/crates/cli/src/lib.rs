//! Batch front-end: TOML configs in, CSV reports and JSON sidecars out.
//! Exit codes encode scientific outcomes: 0 pass, 1 statistical fail,
//! 2 configuration error.

pub mod commands;
pub mod config;
pub mod output;
