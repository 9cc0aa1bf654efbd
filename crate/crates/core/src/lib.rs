// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod coverage;
pub mod energy;
pub mod error;
pub mod harness;
pub mod planner;

pub use error::{Error, Result};
