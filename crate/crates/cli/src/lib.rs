//! File formats, dataset plumbing, and the `fairqa` command-line front
//! end for the region quality toolkit in `fairqa-core`.
//!
//! The library half of this crate hosts everything the binary does, so
//! integration tests can drive commands and formats directly:
//!
//! - [`manifest`]: dataset manifest JSON, path resolution, group labels;
//! - [`embeddings`]: precomputed embedding CSV store;
//! - [`scores`]: the quality scores CSV read and written between runs;
//! - [`imageio`]: image, mask, and eye-landmark file handling;
//! - [`cli`] / [`commands`]: argument types and subcommand bodies.

pub mod cli;
pub mod commands;
pub mod embeddings;
pub mod error;
pub mod imageio;
pub mod manifest;
pub mod scores;
