pub mod algnum;
pub mod approx;
pub mod criteria;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod normform;
pub mod numeric;
pub mod poly;
pub mod serde_util;

pub use error::{Error, Result};
pub use poly::{IntPoly, RatPoly};
