//! Norm forms `Norm_{K/Q}(x_0 + x_1 ξ + … + x_n ξ^n)` and the linear relations
//! between conjugates used in the effective proofs.

pub mod norm;
pub mod relations;

pub use norm::{
    enumerate_solutions, min_norm_profile, norm_enclosure, norm_of_vector, Enumeration, MinNormProfile,
    NormFormSolution, ProfileShell, SignMode, DEFAULT_FIT_FROM,
};
pub use relations::{
    analyze_solution, conjugate_values, embedding_order, full_rank_columns, relation_matrix,
    vanishing_subsum_detect, FullRank, RelationMatrix, SolutionAnalysis, VanishingSubsum,
};
