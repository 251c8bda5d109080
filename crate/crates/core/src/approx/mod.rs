//! Explicit constructions and empirical approximation experiments.

pub mod exponents;
pub mod pell;
pub mod surd;
pub mod transference;

pub use exponents::{estimate_exponents, ExponentTable, ShellRow};
pub use pell::{pell_approximant, pell_solve, pell_xi, PellRecord, PellSolution, QuadSurd};
pub use surd::{surd_family, surd_field, surd_label};
pub use transference::{transference_check, TransferenceReport};
