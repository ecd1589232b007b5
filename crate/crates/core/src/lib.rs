//! Exact computation of presentations of finite W-algebras U(g,e) and of
//! their one-dimensional representations.

pub mod arith;
pub mod basisbuilder;
pub mod catalogue;
pub mod error;
pub mod generators;
pub mod linalg;
pub mod onedim;
pub mod pipeline;
pub mod poly;
pub mod relations;
pub mod report;
pub mod rootsystem;
pub mod sl2grading;
pub mod uea;

pub use error::{Result, WalgError};
pub use pipeline::{run, Mode, RunConfig, RunResult};
