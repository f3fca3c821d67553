// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod angular;
pub mod cli;
pub mod error;
pub mod model;
pub mod oracle;
pub mod radial;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
