//! Exact univariate polynomials over `Z` and `Q`.

mod factor;
mod int;
pub mod modp;
mod rat;
mod resultant;
mod sturm;

pub use factor::{factor_over_q, factor_over_q_with, has_rational_root, is_irreducible, FactorBudget, Factorization};
pub(crate) use factor::Combinations;
pub use int::IntPoly;
pub use rat::{compose_mod, RatPoly};
pub use resultant::{
    affine_image_poly, interpolate_resultant, newton_interpolate, product_roots_poly, resultant, resultant_rat,
    sum_roots_poly,
};
pub use sturm::{real_root_count, sturm_count, Endpoint, SturmChain};
