// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod lindblad;
pub mod ode;
pub mod qcore;
pub mod gates;
pub mod budget;
pub mod jc;

pub use error::{Error, Result};
pub mod cli;
