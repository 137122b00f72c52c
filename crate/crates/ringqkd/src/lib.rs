//! File formats, configuration and the command line for the `ringqkd_core`
//! relayed-vs-switched QKD ring model.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
mod error;
pub mod grid;
pub mod keylog;

pub use error::{Error, Result};
