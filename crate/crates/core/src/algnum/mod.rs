//! Algebraic numbers and number fields.

pub mod field;
pub mod number;

pub use field::{express_in_field, ExprBudget, Expressed, FieldElement, NumberField};
pub use number::{identify_root, modulus_product, real_part_sum, weil_height_of_poly, AlgebraicNumber};
