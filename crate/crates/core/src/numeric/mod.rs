//! Certified numerics: exact dyadic numbers, outward-rounded enclosures,
//! root isolation and lattice reduction.

pub mod ball;
pub mod dyadic;
pub mod lattice;
pub mod roots;

pub use ball::{eval_int_poly, eval_rat_poly, CBall, Interval};
pub use dyadic::{Dyadic, Round};
pub use roots::{certified_roots, certified_roots_with, conjugate_pairing, RootConfig, RootDisk};
