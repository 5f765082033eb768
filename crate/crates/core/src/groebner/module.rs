use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::poly::{Monomial, Poly, PolyRing};

/// Element of a graded free module, one polynomial per basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModVec<F: Field> {
    pub comps: Vec<Poly<F>>,
}

impl<F: Field> ModVec<F> {
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }
}

/// Graded free module `⊕ R(-shifts[i])`, so the basis vector `e_i` has
/// degree `shifts[i]`. Elements are ordered position-over-term with lower
/// positions ranking higher.
#[derive(Debug, Clone, PartialEq)]
pub struct FreeModule<F: Field> {
    pub ring: PolyRing<F>,
    pub shifts: Vec<i64>,
}

/// Leading term of a module element: position, monomial, coefficient.
pub type Lead<'a, E> = (usize, Monomial, &'a E);

impl<F: Field> FreeModule<F> {
    pub fn new(ring: PolyRing<F>, shifts: Vec<i64>) -> Self {
        Self { ring, shifts }
    }

    /// The ring itself as a rank-one module.
    pub fn ring_module(ring: &PolyRing<F>) -> Self {
        Self::new(ring.clone(), vec![0])
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn zero(&self) -> ModVec<F> {
        ModVec {
            comps: vec![self.ring.zero(); self.rank()],
        }
    }

    pub fn basis_vector(&self, i: usize) -> ModVec<F> {
        let mut v = self.zero();
        v.comps[i] = self.ring.one();
        v
    }

    pub fn from_poly(&self, p: Poly<F>) -> ModVec<F> {
        assert_eq!(self.rank(), 1);
        ModVec { comps: vec![p] }
    }

    pub fn check(&self, v: &ModVec<F>) -> Result<()> {
        if v.rank() != self.rank() {
            return Err(Error::RingMismatch(format!(
                "vector of rank {} in a module of rank {}",
                v.rank(),
                self.rank()
            )));
        }
        for p in &v.comps {
            self.ring.check(p)?;
        }
        Ok(())
    }

    pub fn lead<'a>(&self, v: &'a ModVec<F>) -> Option<Lead<'a, F::Elem>> {
        v.comps
            .iter()
            .enumerate()
            .find(|(_, p)| !p.is_zero())
            .map(|(i, p)| (i, p.lm(), p.lc()))
    }

    /// Compares two (position, monomial) pairs in the module order.
    pub fn cmp_terms(&self, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
        match b.0.cmp(&a.0) {
            Ordering::Equal => self.ring.cmp(a.1, b.1),
            o => o,
        }
    }

    /// Degree of a homogeneous element; `None` for zero.
    pub fn degree(&self, v: &ModVec<F>) -> Option<i64> {
        v.comps
            .iter()
            .zip(&self.shifts)
            .find(|(p, _)| !p.is_zero())
            .map(|(p, s)| p.degree().unwrap() as i64 + s)
    }

    pub fn is_homogeneous(&self, v: &ModVec<F>) -> bool {
        let mut deg = None;
        for (p, s) in v.comps.iter().zip(&self.shifts) {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return false;
            }
            let d = p.degree().unwrap() as i64 + s;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return false,
                _ => {}
            }
        }
        true
    }

    pub fn add(&self, a: &ModVec<F>, b: &ModVec<F>) -> ModVec<F> {
        ModVec {
            comps: a.comps.iter().zip(&b.comps).map(|(x, y)| self.ring.add(x, y)).collect(),
        }
    }

    pub fn sub(&self, a: &ModVec<F>, b: &ModVec<F>) -> ModVec<F> {
        ModVec {
            comps: a.comps.iter().zip(&b.comps).map(|(x, y)| self.ring.sub(x, y)).collect(),
        }
    }

    pub fn scale(&self, a: &ModVec<F>, c: &F::Elem) -> ModVec<F> {
        ModVec {
            comps: a.comps.iter().map(|x| self.ring.scale(x, c)).collect(),
        }
    }

    pub fn mul_term(&self, a: &ModVec<F>, m: &Monomial, c: &F::Elem) -> ModVec<F> {
        ModVec {
            comps: a.comps.iter().map(|x| self.ring.mul_term(x, m, c)).collect(),
        }
    }

    pub fn mul_poly(&self, a: &ModVec<F>, p: &Poly<F>) -> ModVec<F> {
        ModVec {
            comps: a.comps.iter().map(|x| self.ring.mul(x, p)).collect(),
        }
    }

    /// `a - c * m * b`, touching only positions from `start` on.
    pub(crate) fn sub_mul_term_from(&self, a: &mut ModVec<F>, start: usize, c: &F::Elem, m: &Monomial, b: &ModVec<F>) {
        for k in start..a.comps.len() {
            if !b.comps[k].is_zero() {
                a.comps[k] = self.ring.sub_mul_term(&a.comps[k], c, m, &b.comps[k]);
            }
        }
    }

    pub fn make_monic(&self, v: &ModVec<F>) -> ModVec<F> {
        match self.lead(v) {
            None => v.clone(),
            Some((_, _, c)) => {
                let inv = self.ring.field().inv(c);
                self.scale(v, &inv)
            }
        }
    }

    /// Linear combination `sum coeffs[j] * vs[j]` with polynomial coefficients.
    pub fn combine(&self, vs: &[ModVec<F>], coeffs: &[Poly<F>]) -> ModVec<F> {
        let mut acc = self.zero();
        for (v, c) in vs.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = self.add(&acc, &self.mul_poly(v, c));
            }
        }
        acc
    }

    /// Basis of the degree-`d` piece: pairs (position, monomial).
    pub fn piece_basis(&self, d: i64) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (i, s) in self.shifts.iter().enumerate() {
            let e = d - s;
            if e >= 0 {
                for m in self.ring.monomials_of_degree(e as u32) {
                    out.push((i, m));
                }
            }
        }
        out
    }

    pub fn piece_dim(&self, d: i64) -> u64 {
        self.shifts.iter().map(|s| self.ring.piece_dim(d - s)).sum()
    }

    pub fn format(&self, v: &ModVec<F>) -> String {
        let parts: Vec<String> = v.comps.iter().map(|p| self.ring.format(p)).collect();
        format!("({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rationals;
    use crate::poly::MonomialOrder;

    #[test]
    fn position_over_term_lead() {
        let r = PolyRing::new(Rationals, 3, MonomialOrder::GrevLex).unwrap();
        let m = FreeModule::new(r.clone(), vec![1, 0]);
        let v = ModVec {
            comps: vec![r.zero(), r.mul(&r.var(0), &r.var(1))],
        };
        let (pos, mono, _) = m.lead(&v).unwrap();
        assert_eq!(pos, 1);
        assert_eq!(mono, Monomial::from_exponents(&[1, 1, 0]));
        assert_eq!(m.degree(&v), Some(2));
        let w = ModVec {
            comps: vec![r.var(2), r.mul(&r.var(0), &r.var(1))],
        };
        assert!(m.is_homogeneous(&w));
        assert_eq!(m.lead(&w).unwrap().0, 0);
        assert_eq!(m.piece_dim(2), 3 + 6);
    }
}
