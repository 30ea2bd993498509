//! Command-line tool and HTTP service for the `csa_core` engine.
//!
//! Both front ends render engine results with [`csa_core::pipeline::to_json`],
//! so a file run through `csa weigh` and the same hierarchy stored in a
//! session and fetched from `GET /sessions/{id}/weights` give identical bytes.

pub mod api;
pub mod cli;
pub mod error;
pub mod render;

pub use error::ApiError;
