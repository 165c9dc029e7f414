//! Library surface of the batch CLI, exposed for integration tests.

pub mod dispatch;
pub mod expr;

pub use dispatch::{run_line, Defaults, Request};
