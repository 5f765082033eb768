use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};
use crate::poly::monomial::Monomial;
use crate::poly::ring::{Poly, PolyRing};

/// Standard monomial basis of `R_d`, sorted decreasing in the ring order.
#[derive(Debug, Clone)]
pub struct GradedPieceBasis {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedPieceBasis {
    pub fn new<F: Field>(ring: &PolyRing<F>, degree: u32) -> Self {
        let monomials = ring.monomials_of_degree(degree);
        let index = monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        Self {
            degree,
            monomials,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous polynomial of this degree.
    pub fn coordinates<F: Field>(&self, ring: &PolyRing<F>, p: &Poly<F>) -> Vec<F::Elem> {
        let f = ring.field();
        let mut v = vec![f.zero(); self.dim()];
        for (m, c) in p.terms() {
            let i = self.index_of(m).expect("polynomial not in this graded piece");
            v[i] = c.clone();
        }
        v
    }

    pub fn polynomial<F: Field>(&self, ring: &PolyRing<F>, coords: &[F::Elem]) -> Poly<F> {
        ring.from_terms(self.monomials.iter().copied().zip(coords.iter().cloned()))
    }
}

/// Matrix whose row space is the degree-`d` piece of the ideal generated by
/// `generators`. Rows are indexed by (generator, multiplier monomial) pairs,
/// columns by [`GradedPieceBasis`].
pub fn graded_piece_matrix<F: Field>(ring: &PolyRing<F>, generators: &[Poly<F>], d: u32) -> Result<Matrix<F>> {
    let basis = GradedPieceBasis::new(ring, d);
    let mut rows = Vec::new();
    for g in generators {
        ring.check(g)?;
        if g.is_zero() {
            continue;
        }
        if !g.is_homogeneous() {
            return Err(Error::Input(format!("{} is not homogeneous", ring.format(g))));
        }
        let e = g.degree().unwrap();
        if e > d {
            return Err(Error::DegreeTooHigh {
                generator: e as i64,
                target: d as i64,
            });
        }
        for mult in ring.monomials_of_degree(d - e) {
            let prod = ring.mul_term(g, &mult, &ring.field().one());
            rows.push(basis.coordinates(ring, &prod));
        }
    }
    Ok(Matrix::from_rows(ring.field(), basis.dim(), rows))
}

/// `dim_k (ideal generated by generators)_d`; generators of degree above `d`
/// contribute nothing.
pub fn ideal_piece_dim<F: Field>(ring: &PolyRing<F>, generators: &[Poly<F>], d: u32) -> usize {
    let low: Vec<Poly<F>> = generators
        .iter()
        .filter(|g| !g.is_zero() && g.degree().unwrap() <= d)
        .cloned()
        .collect();
    graded_piece_matrix(ring, &low, d).expect("degrees filtered").rank()
}

/// Basis of the degree-`d` piece of the ideal, as polynomials in echelon form.
pub fn ideal_piece_basis<F: Field>(ring: &PolyRing<F>, generators: &[Poly<F>], d: u32) -> Vec<Poly<F>> {
    let low: Vec<Poly<F>> = generators
        .iter()
        .filter(|g| !g.is_zero() && g.degree().unwrap() <= d)
        .cloned()
        .collect();
    let basis = GradedPieceBasis::new(ring, d);
    let m = graded_piece_matrix(ring, &low, d).expect("degrees filtered");
    m.row_space().iter().map(|r| basis.polynomial(ring, r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rationals;
    use crate::poly::{parse_poly, MonomialOrder};

    fn ring() -> PolyRing<Rationals> {
        PolyRing::new(Rationals, 3, MonomialOrder::GrevLex).unwrap()
    }

    fn polys(r: &PolyRing<Rationals>, s: &[&str]) -> Vec<Poly<Rationals>> {
        s.iter().map(|t| parse_poly(r, t).unwrap()).collect()
    }

    #[test]
    fn linear_ideal_pieces() {
        let r = ring();
        let g = polys(&r, &["x0", "x1"]);
        assert_eq!(graded_piece_matrix(&r, &g, 1).unwrap().rank(), 2);
        // x*{x,y,z} and y*{x,y,z} span everything but z^2
        assert_eq!(graded_piece_matrix(&r, &g, 2).unwrap().rank(), 5);
    }

    #[test]
    fn three_coordinate_points_in_degree_two() {
        let r = ring();
        let g = polys(&r, &["x0*x1", "x0*x2", "x1*x2"]);
        assert_eq!(graded_piece_matrix(&r, &g, 2).unwrap().rank(), 3);
    }

    #[test]
    fn generator_above_target_degree_is_an_error() {
        let r = ring();
        let g = polys(&r, &["x0^3"]);
        assert_eq!(graded_piece_matrix(&r, &g, 2).unwrap_err().code(), "DEGREE_TOO_HIGH");
    }

    #[test]
    fn full_ring_piece_dimension() {
        for nv in 2..=5usize {
            let r = PolyRing::new(Rationals, nv, MonomialOrder::GrevLex).unwrap();
            for d in 0..=12u32 {
                let b = GradedPieceBasis::new(&r, d);
                assert_eq!(b.dim() as u64, r.piece_dim(d as i64));
            }
        }
    }
}
