use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Echelon, Field};
use crate::groebner::{buchberger, ideal_quotient, ideal_sum, is_irrelevant, GroebnerBasis};
use crate::poly::{GradedPieceBasis, Poly, PolyRing};
use crate::schemes::subscheme::SubschemeData;

/// Complete-intersection curve `C = V(s_1, …, s_{n-1})` cut by forms of
/// degree `d`.
#[derive(Debug, Clone)]
pub struct CurveSection<F: Field> {
    ring: PolyRing<F>,
    d: u32,
    forms: Vec<Poly<F>>,
    ideal: GroebnerBasis<F>,
}

/// Outcome of restricting a space of sections to the curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Restriction {
    pub dim: usize,
    pub image_dim: usize,
    pub injective: bool,
}

/// A random form of degree `d` with coefficients from `rng`.
pub fn random_form<F: Field>(ring: &PolyRing<F>, d: u32, rng: &mut ChaCha8Rng) -> Poly<F> {
    let f = ring.field();
    ring.from_terms(
        ring.monomials_of_degree(d)
            .into_iter()
            .map(|m| (m, f.from_i64(rng.gen_range(0..32003)))),
    )
}

impl<F: Field> CurveSection<F> {
    /// Checks that the forms have degree `d` and form a regular sequence:
    /// `(s_1..s_i) : s_{i+1} = (s_1..s_i)` at each step.
    pub fn from_forms(ring: &PolyRing<F>, d: u32, forms: Vec<Poly<F>>) -> Result<Self> {
        let n = ring.ambient_dim();
        if forms.len() + 1 != n {
            return Err(Error::Input(format!("a curve in P^{n} needs {} forms", n - 1)));
        }
        for s in &forms {
            ring.check(s)?;
            if s.is_zero() || !s.is_homogeneous() || s.degree() != Some(d) {
                return Err(Error::Input(format!("{} is not a form of degree {d}", ring.format(s))));
            }
        }
        let mut acc = buchberger(ring, &[])?;
        for s in &forms {
            if !ideal_quotient(&acc, s)?.same_as(&acc) {
                return Err(Error::GeometricPosition(
                    "curve forms are not a regular sequence".into(),
                ));
            }
            acc = buchberger(ring, &[acc.polys(), vec![s.clone()]].concat())?;
        }
        Ok(Self {
            ring: ring.clone(),
            d,
            forms,
            ideal: acc,
        })
    }

    /// Seeded random complete intersection; retries on a non-regular draw.
    pub fn random(ring: &PolyRing<F>, d: u32, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut last = None;
        for _ in 0..8 {
            let forms: Vec<Poly<F>> = (0..ring.ambient_dim() - 1)
                .map(|_| random_form(ring, d, &mut rng))
                .collect();
            match Self::from_forms(ring, d, forms) {
                Ok(c) => return Ok(c),
                Err(e) => last = Some(e),
            }
        }
        Err(last.unwrap())
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn forms(&self) -> &[Poly<F>] {
        &self.forms
    }

    pub fn ideal(&self) -> &GroebnerBasis<F> {
        &self.ideal
    }

    /// `C ∩ Z = ∅`, i.e. `I_Z + J` cuts out the empty set.
    pub fn avoids(&self, z: &SubschemeData<F>) -> Result<bool> {
        if let Some(pts) = z.points() {
            let hit = pts.iter().any(|p| {
                self.forms
                    .iter()
                    .all(|s| self.ring.field().is_zero(&self.ring.eval_unchecked(s, p)))
            });
            if hit {
                return Ok(false);
            }
        }
        Ok(is_irrelevant(&ideal_sum(z.ideal(), &self.ideal)?))
    }

    /// `dim (R/J)_k = h^0(O_C(k))`; complete intersections are projectively
    /// normal.
    pub fn sections(&self, k: i64) -> i64 {
        self.ideal.hilbert_series().function(k)
    }
}

/// Restriction of a space `V` of degree-`k` forms in `I_Z` to `C`: image
/// dimension in `(R/J)_k` and injectivity.
pub fn restrict_to_curve<F: Field>(
    z: &SubschemeData<F>,
    curve: &CurveSection<F>,
    v: &[Poly<F>],
    k: u32,
) -> Result<Restriction> {
    if !curve.avoids(z)? {
        return Err(Error::GeometricPosition("the curve meets Z".into()));
    }
    let ring = z.ring();
    let f = ring.field();
    let basis = GradedPieceBasis::new(ring, k);
    let mut ech = Echelon::new(f, basis.dim());
    for p in v {
        ring.check(p)?;
        if !p.is_zero() && (p.degree() != Some(k) || !p.is_homogeneous()) {
            return Err(Error::Input(format!("{} is not a form of degree {k}", ring.format(p))));
        }
        if !z.ideal().contains_poly(p) {
            return Err(Error::Input(format!("{} is not a section of I_Z({k})", ring.format(p))));
        }
        ech.insert(basis.coordinates(ring, p));
    }
    let dim = ech.rank();
    let mut with_j = ech.clone();
    let mut j_only = Echelon::new(f, basis.dim());
    for s in curve.forms() {
        if s.degree().unwrap() > k {
            continue;
        }
        for m in ring.monomials_of_degree(k - s.degree().unwrap()) {
            let row = basis.coordinates(ring, &ring.mul_term(s, &m, &f.one()));
            with_j.insert(row.clone());
            j_only.insert(row);
        }
    }
    let image_dim = with_j.rank() - j_only.rank();
    Ok(Restriction {
        dim,
        image_dim,
        injective: image_dim == dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;
    use crate::poly::{ideal_piece_basis, MonomialOrder};
    use crate::schemes::polarization::Polarization;

    fn p2() -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::default(), 3, MonomialOrder::GrevLex).unwrap()
    }

    fn three_points(r: &PolyRing<PrimeField>) -> SubschemeData<PrimeField> {
        SubschemeData::from_points(r, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], "three").unwrap()
    }

    #[test]
    fn full_space_restricts_onto_curve_sections() {
        let r = p2();
        let z = three_points(&r);
        let c = CurveSection::random(&r, 3, 11).unwrap();
        let v = ideal_piece_basis(&r, &z.generators(), 6);
        assert_eq!(v.len(), 25);
        let res = restrict_to_curve(&z, &c, &v, 6).unwrap();
        let expect = Polarization::new(2, 3).unwrap().curve_sections(2).unwrap();
        assert_eq!(res.image_dim as i64, expect);
        assert_eq!(res.image_dim, 18);
        assert!(!res.injective);
        assert_eq!(c.sections(6), 18);
    }

    #[test]
    fn multiple_of_the_curve_form_is_not_injective() {
        let r = p2();
        let z = three_points(&r);
        let c = CurveSection::random(&r, 3, 5).unwrap();
        let s = r.mul(&r.var(0), &r.var(1));
        let fs = r.mul(&c.forms()[0], &s);
        let other = r.mul(&r.pow(&r.var(0), 3), &r.mul(&r.var(1), &r.var(2)));
        let res = restrict_to_curve(&z, &c, &[fs, other], 5).unwrap();
        assert_eq!(res.dim, 2);
        assert_eq!(res.image_dim, 1);
        assert!(!res.injective);
    }

    #[test]
    fn curve_through_a_point_of_z_is_rejected() {
        let r = p2();
        let z = three_points(&r);
        // x0^3 + x1^3 + x2^3 - ... choose a cubic vanishing at (0:0:1)
        let f = crate::poly::parse_poly(&r, "x0^3+x1^3+x0*x1*x2+x0^2*x2").unwrap();
        let c = CurveSection::from_forms(&r, 3, vec![f]).unwrap();
        let v = ideal_piece_basis(&r, &z.generators(), 3);
        assert_eq!(
            restrict_to_curve(&z, &c, &v, 3).unwrap_err().code(),
            "GEOMETRIC_POSITION"
        );
    }

    #[test]
    fn space_curve_is_a_complete_intersection() {
        let r = PolyRing::new(PrimeField::default(), 4, MonomialOrder::GrevLex).unwrap();
        let c = CurveSection::random(&r, 2, 3).unwrap();
        // elliptic quartic: h^0(O_C(k)) = 4k for k >= 1
        for k in 1..6 {
            assert_eq!(c.sections(k), 4 * k);
        }
    }
}
