//! Homogeneous polynomials, monomial orders and graded pieces.

pub mod monomial;
pub mod parse;
pub mod piece;
pub mod ring;

pub use monomial::{binomial, monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};
pub use parse::parse_poly;
pub use piece::{graded_piece_matrix, ideal_piece_basis, ideal_piece_dim, GradedPieceBasis};
pub use ring::{Poly, PolyRing};
