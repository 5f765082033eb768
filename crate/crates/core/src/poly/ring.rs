use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::poly::monomial::{binomial, monomials_of_degree, Monomial, MonomialOrder, MAX_VARS};

/// Polynomial ring `k[x0..x_{nvars-1}]`, the homogeneous coordinate ring of
/// `P^{nvars-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    nvars: usize,
    order: MonomialOrder,
}

/// A polynomial with terms sorted strictly decreasing in the ring order and
/// no zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    nvars: u8,
    order: MonomialOrder,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> Poly<F> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading monomial. Panics on zero.
    pub fn lm(&self) -> Monomial {
        self.terms[0].0
    }

    pub fn lc(&self) -> &F::Elem {
        &self.terms[0].1
    }

    /// Degree of the leading term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&F::Elem> {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c)
    }

    pub fn var_valuation(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).min().unwrap_or(0)
    }
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, nvars: usize, order: MonomialOrder) -> Result<Self> {
        if !(2..=MAX_VARS).contains(&nvars) {
            return Err(Error::Input(format!(
                "number of variables must lie in 2..={MAX_VARS}, got {nvars}"
            )));
        }
        Ok(Self { field, nvars, order })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Dimension `n` of the projective space `P^n`.
    pub fn ambient_dim(&self) -> usize {
        self.nvars - 1
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self {
            field: self.field.clone(),
            nvars: self.nvars,
            order,
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.nvars)
    }

    pub fn check(&self, f: &Poly<F>) -> Result<()> {
        if f.nvars as usize != self.nvars || f.order != self.order {
            return Err(Error::RingMismatch(format!(
                "polynomial over {} variables ({:?}) used in a ring of {} variables ({:?})",
                f.nvars, f.order, self.nvars, self.order
            )));
        }
        Ok(())
    }

    fn wrap(&self, terms: Vec<(Monomial, F::Elem)>) -> Poly<F> {
        let p = Poly {
            nvars: self.nvars as u8,
            order: self.order,
            terms,
        };
        debug_assert!(p
            .terms
            .windows(2)
            .all(|w| self.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        p
    }

    pub fn zero(&self) -> Poly<F> {
        self.wrap(Vec::new())
    }

    pub fn one(&self) -> Poly<F> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F> {
        self.term(Monomial::one(), c)
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        assert!(i < self.nvars, "variable index out of range");
        self.term(Monomial::var(i), self.field.one())
    }

    pub fn term(&self, m: Monomial, c: F::Elem) -> Poly<F> {
        if self.field.is_zero(&c) {
            self.zero()
        } else {
            self.wrap(vec![(m, c)])
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, F::Elem)>) -> Poly<F> {
        let f = &self.field;
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert_with(|| f.zero());
            *e = f.add(e, &c);
        }
        let mut v: Vec<(Monomial, F::Elem)> = acc.into_iter().filter(|(_, c)| !f.is_zero(c)).collect();
        v.sort_by(|a, b| self.cmp(&b.0, &a.0));
        self.wrap(v)
    }

    /// Re-sorts a polynomial of another ring with the same variable count.
    pub fn import(&self, g: &Poly<F>) -> Poly<F> {
        assert_eq!(g.nvars as usize, self.nvars, "variable count mismatch");
        if g.order == self.order {
            return g.clone();
        }
        let mut v = g.terms.clone();
        v.sort_by(|a, b| self.cmp(&b.0, &a.0));
        self.wrap(v)
    }

    fn merge(
        &self,
        a: &[(Monomial, F::Elem)],
        b: impl Iterator<Item = (Monomial, F::Elem)>,
    ) -> Vec<(Monomial, F::Elem)> {
        let f = &self.field;
        let mut out = Vec::with_capacity(a.len() + 4);
        let mut ia = a.iter().peekable();
        let mut ib = b.peekable();
        loop {
            match (ia.peek(), ib.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(ia.next().unwrap().clone()),
                (None, Some(_)) => out.push(ib.next().unwrap()),
                (Some(x), Some(y)) => match self.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(ia.next().unwrap().clone()),
                    Ordering::Less => out.push(ib.next().unwrap()),
                    Ordering::Equal => {
                        let (m, c1) = ia.next().unwrap();
                        let (_, c2) = ib.next().unwrap();
                        let s = f.add(c1, &c2);
                        if !f.is_zero(&s) {
                            out.push((*m, s));
                        }
                    }
                },
            }
        }
        out
    }

    pub fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        self.wrap(self.merge(&a.terms, b.terms.iter().cloned()))
    }

    pub fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        self.wrap(self.merge(&a.terms, b.terms.iter().map(|(m, c)| (*m, f.neg(c)))))
    }

    pub fn neg(&self, a: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        self.wrap(a.terms.iter().map(|(m, c)| (*m, f.neg(c))).collect())
    }

    pub fn scale(&self, a: &Poly<F>, c: &F::Elem) -> Poly<F> {
        let f = &self.field;
        if f.is_zero(c) {
            return self.zero();
        }
        self.wrap(a.terms.iter().map(|(m, x)| (*m, f.mul(x, c))).collect())
    }

    /// `c * m * a`.
    pub fn mul_term(&self, a: &Poly<F>, m: &Monomial, c: &F::Elem) -> Poly<F> {
        let f = &self.field;
        if f.is_zero(c) {
            return self.zero();
        }
        self.wrap(a.terms.iter().map(|(t, x)| (t.mul(m), f.mul(x, c))).collect())
    }

    /// `a - c * m * b`, the reduction step.
    pub fn sub_mul_term(&self, a: &Poly<F>, c: &F::Elem, m: &Monomial, b: &Poly<F>) -> Poly<F> {
        let f = &self.field;
        let nc = f.neg(c);
        self.wrap(self.merge(&a.terms, b.terms.iter().map(|(t, x)| (t.mul(m), f.mul(x, &nc)))))
    }

    pub fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        let (small, big) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let mut acc = self.zero();
        for (m, c) in &small.terms {
            acc = self.add(&acc, &self.mul_term(big, m, c));
        }
        debug_assert!(!(a.is_homogeneous() && b.is_homogeneous()) || acc.is_homogeneous());
        acc
    }

    /// Checked product.
    pub fn multiply(&self, a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn pow(&self, a: &Poly<F>, e: u32) -> Poly<F> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn make_monic(&self, a: &Poly<F>) -> Poly<F> {
        if a.is_zero() {
            return a.clone();
        }
        let inv = self.field.inv(a.lc());
        self.scale(a, &inv)
    }

    /// Value at the affine representative `point` of a projective point.
    pub fn evaluate(&self, a: &Poly<F>, point: &[F::Elem]) -> Result<F::Elem> {
        self.check(a)?;
        if point.len() != self.nvars {
            return Err(Error::Input(format!(
                "point has {} coordinates, ring has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let f = &self.field;
        if point.iter().all(|x| f.is_zero(x)) {
            return Err(Error::ZeroPoint);
        }
        Ok(self.eval_unchecked(a, point))
    }

    pub(crate) fn eval_unchecked(&self, a: &Poly<F>, point: &[F::Elem]) -> F::Elem {
        let f = &self.field;
        let mut acc = f.zero();
        for (m, c) in &a.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = f.mul(&t, x);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    pub fn derivative(&self, a: &Poly<F>, var: usize) -> Poly<F> {
        let f = &self.field;
        self.from_terms(a.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let e = m.exp(var);
            (m.div(&Monomial::var(var)), f.mul(c, &f.from_i64(e as i64)))
        }))
    }

    pub fn swap_vars(&self, a: &Poly<F>, i: usize, j: usize) -> Poly<F> {
        self.from_terms(a.terms.iter().map(|(m, c)| (m.swap_vars(i, j), c.clone())))
    }

    /// Exact quotient by a monomial that divides every term.
    pub fn div_monomial(&self, a: &Poly<F>, m: &Monomial) -> Poly<F> {
        self.wrap(a.terms.iter().map(|(t, c)| (t.div(m), c.clone())).collect())
    }

    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut ms = monomials_of_degree(self.nvars, d);
        ms.sort_by(|a, b| self.cmp(b, a));
        ms
    }

    /// `dim_k R_d`.
    pub fn piece_dim(&self, d: i64) -> u64 {
        if d < 0 {
            0
        } else {
            binomial(d as u64 + self.nvars as u64 - 1, self.nvars as u64 - 1)
        }
    }

    pub fn format(&self, a: &Poly<F>) -> String {
        if a.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut s = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            let mut cs = f.format_elem(c);
            let neg = cs.starts_with('-');
            if neg {
                cs.remove(0);
            }
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = m.fmt_with(self.nvars);
            match (cs.as_str(), mono.as_str()) {
                (c, "1") => s.push_str(c),
                ("1", mo) => s.push_str(mo),
                (c, mo) => {
                    s.push_str(c);
                    s.push('*');
                    s.push_str(mo);
                }
            }
        }
        s
    }
}
