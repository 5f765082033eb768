//! Gröbner bases of graded submodules of free modules, syzygies, minimal
//! free resolutions, Hilbert series and saturation.

pub mod buchberger;
pub mod hilbert;
pub mod ideal;
pub mod minors;
pub mod module;
pub mod syzygy;

pub use buchberger::{buchberger, groebner_basis, GroebnerBasis};
pub use hilbert::{monomial_numerator, staircase_count, HilbertPolynomial, HilbertSeries};
pub use ideal::{
    contains, ideal_quotient, ideal_sum, intersect, is_irrelevant, is_saturated, module_quotient, module_saturate_by,
    quotient_by_maximal, quotient_by_variable, saturate, saturate_by_variables, saturation, VarPower,
};
pub use minors::{generic_rank, minors, poly_det, presentation_entries, GenericRank};
pub use module::{FreeModule, ModVec};
pub use syzygy::{
    ideal_syzygies, minimize, regularity, syzygies, BettiTable, FreeResolution, GradedModulePresentation,
};
