use crate::error::{Error, Result};
use crate::exact::Field;
use crate::groebner::module::{FreeModule, ModVec};
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

/// Reduced Gröbner basis of a graded submodule of a free module (an ideal
/// when the module has rank one).
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    module: FreeModule<F>,
    elements: Vec<ModVec<F>>,
    reduced: bool,
}

/// Monic basis elements indexed by the position of their leading term.
pub(crate) struct Reducer<'a, F: Field> {
    module: &'a FreeModule<F>,
    pub(crate) elems: Vec<ModVec<F>>,
    pub(crate) leads: Vec<(usize, Monomial)>,
    by_pos: Vec<Vec<usize>>,
}

impl<'a, F: Field> Reducer<'a, F> {
    pub(crate) fn new(module: &'a FreeModule<F>) -> Self {
        Self {
            module,
            elems: Vec::new(),
            leads: Vec::new(),
            by_pos: vec![Vec::new(); module.rank()],
        }
    }

    pub(crate) fn push(&mut self, v: ModVec<F>) -> usize {
        let (pos, m, _) = self.module.lead(&v).expect("zero basis element");
        let k = self.elems.len();
        self.leads.push((pos, m));
        self.by_pos[pos].push(k);
        self.elems.push(v);
        k
    }

    fn divisor(&self, pos: usize, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        self.by_pos[pos]
            .iter()
            .copied()
            .find(|&k| Some(k) != skip && self.leads[k].1.divides(m))
    }

    /// Full normal form. Terms already found irreducible are never revisited:
    /// a reduction step at position `c` only changes terms below the one it
    /// cancels.
    pub(crate) fn reduce(&self, mut v: ModVec<F>, skip: Option<usize>) -> ModVec<F> {
        for c in 0..v.comps.len() {
            let mut done = 0;
            while done < v.comps[c].len() {
                let (m, coef) = v.comps[c].terms()[done].clone();
                match self.divisor(c, &m, skip) {
                    Some(k) => {
                        let q = m.div(&self.leads[k].1);
                        self.module.sub_mul_term_from(&mut v, c, &coef, &q, &self.elems[k]);
                    }
                    None => done += 1,
                }
            }
        }
        v
    }

    fn spoly(&self, i: usize, j: usize, lcm: &Monomial) -> ModVec<F> {
        let one = self.module.ring.field().one();
        let a = self.module.mul_term(&self.elems[i], &lcm.div(&self.leads[i].1), &one);
        let b = self.module.mul_term(&self.elems[j], &lcm.div(&self.leads[j].1), &one);
        self.module.sub(&a, &b)
    }
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    deg: i64,
}

/// Gebauer–Möller update of the pair list when `h` joins the basis.
fn update_pairs<F: Field>(red: &Reducer<'_, F>, pairs: &mut Vec<Pair>, h: usize, shifts: &[i64]) {
    let rank_one = shifts.len() == 1;
    let (hp, hm) = red.leads[h];
    let coprime = |g: usize| rank_one && hm.is_coprime(&red.leads[g].1);
    let mut candidates: Vec<(usize, Monomial)> = (0..h)
        .filter(|&g| red.leads[g].0 == hp)
        .map(|g| (g, hm.lcm(&red.leads[g].1)))
        .collect();
    let mut kept: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g, l)) = candidates.pop() {
        let dominated = candidates.iter().chain(kept.iter()).any(|(_, l2)| l2.divides(&l));
        if coprime(g) || !dominated {
            kept.push((g, l));
        }
    }
    pairs.retain(|p| {
        if red.leads[p.i].0 != hp || !hm.divides(&p.lcm) {
            return true;
        }
        let li = hm.lcm(&red.leads[p.i].1);
        let lj = hm.lcm(&red.leads[p.j].1);
        li == p.lcm || lj == p.lcm
    });
    for (g, l) in kept {
        if !coprime(g) {
            pairs.push(Pair {
                i: g,
                j: h,
                lcm: l,
                deg: l.degree() as i64 + shifts[hp],
            });
        }
    }
}

fn check_input<F: Field>(module: &FreeModule<F>, gens: &[ModVec<F>]) -> Result<()> {
    for g in gens {
        module.check(g)?;
        if !module.is_homogeneous(g) {
            return Err(Error::Input(format!("{} is not homogeneous", module.format(g))));
        }
    }
    Ok(())
}

/// Graded Buchberger algorithm with the normal selection strategy.
pub fn groebner_basis<F: Field>(module: &FreeModule<F>, gens: &[ModVec<F>]) -> Result<GroebnerBasis<F>> {
    check_input(module, gens)?;
    let mut input: Vec<(i64, ModVec<F>)> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| (module.degree(g).unwrap(), module.make_monic(g)))
        .collect();
    input.sort_by_key(|(d, _)| *d);
    input.reverse();

    let mut red = Reducer::new(module);
    let mut pairs: Vec<Pair> = Vec::new();
    loop {
        let next_pair = pairs.iter().map(|p| p.deg).min();
        let next_gen = input.last().map(|(d, _)| *d);
        let deg = match (next_pair, next_gen) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut batch: Vec<Pair> = Vec::new();
        pairs.retain(|p| {
            if p.deg == deg {
                batch.push(p.clone());
                false
            } else {
                true
            }
        });
        batch.sort_by(|a, b| module.ring.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))));
        let mut todo: Vec<ModVec<F>> = Vec::new();
        for p in &batch {
            todo.push(red.spoly(p.i, p.j, &p.lcm));
        }
        while input.last().map(|(d, _)| *d) == Some(deg) {
            todo.push(input.pop().unwrap().1);
        }
        for v in todo {
            let h = red.reduce(v, None);
            if h.is_zero() {
                continue;
            }
            let k = red.push(module.make_monic(&h));
            update_pairs(&red, &mut pairs, k, &module.shifts);
        }
    }
    let gb = GroebnerBasis::from_unreduced(module.clone(), red.elems);
    assert!(gb.verify_s_pairs(), "Buchberger postcondition failed");
    Ok(gb)
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<GroebnerBasis<F>> {
    let module = FreeModule::ring_module(ring);
    let vs: Vec<ModVec<F>> = gens.iter().map(|g| module.from_poly(g.clone())).collect();
    groebner_basis(&module, &vs)
}

impl<F: Field> GroebnerBasis<F> {
    /// Minimalizes and interreduces a Gröbner basis.
    fn from_unreduced(module: FreeModule<F>, elems: Vec<ModVec<F>>) -> Self {
        let leads: Vec<(usize, Monomial)> = elems.iter().map(|v| lead_key(&module, v)).collect();
        let mut keep: Vec<usize> = Vec::new();
        for (k, (p, m)) in leads.iter().enumerate() {
            let redundant = leads
                .iter()
                .enumerate()
                .any(|(j, (q, l))| q == p && l.divides(m) && (l != m || j < k));
            if !redundant {
                keep.push(k);
            }
        }
        let mut red = Reducer::new(&module);
        for &k in &keep {
            red.push(elems[k].clone());
        }
        let mut out: Vec<ModVec<F>> = Vec::with_capacity(keep.len());
        for k in 0..red.elems.len() {
            let v = red.reduce(red.elems[k].clone(), Some(k));
            out.push(module.make_monic(&v));
        }
        out.sort_by(|a, b| {
            let (pa, ma) = lead_key(&module, a);
            let (pb, mb) = lead_key(&module, b);
            pa.cmp(&pb).then(module.ring.cmp(&ma, &mb))
        });
        Self {
            module,
            elements: out,
            reduced: true,
        }
    }

    pub fn module(&self) -> &FreeModule<F> {
        &self.module
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.module.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.module.ring.order()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn elements(&self) -> &[ModVec<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Generators as polynomials; only meaningful for ideals.
    pub fn polys(&self) -> Vec<Poly<F>> {
        assert_eq!(self.module.rank(), 1, "not an ideal");
        self.elements.iter().map(|v| v.comps[0].clone()).collect()
    }

    pub fn leading_terms(&self) -> Vec<(usize, Monomial)> {
        self.elements.iter().map(|v| lead_key(&self.module, v)).collect()
    }

    /// Leading monomials sitting in position `pos`.
    pub fn leading_monomials_at(&self, pos: usize) -> Vec<Monomial> {
        self.leading_terms()
            .into_iter()
            .filter(|(p, _)| *p == pos)
            .map(|(_, m)| m)
            .collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.module.rank() == 1 && self.elements.iter().any(|v| v.comps[0].degree() == Some(0))
    }

    fn reducer(&self) -> Reducer<'_, F> {
        let mut red = Reducer::new(&self.module);
        for v in &self.elements {
            red.push(v.clone());
        }
        red
    }

    pub fn normal_form(&self, v: &ModVec<F>) -> ModVec<F> {
        self.reducer().reduce(v.clone(), None)
    }

    /// Normal forms of many vectors against this basis.
    pub fn normal_forms(&self, vs: &[ModVec<F>]) -> Vec<ModVec<F>> {
        let red = self.reducer();
        vs.iter().map(|v| red.reduce(v.clone(), None)).collect()
    }

    pub fn contains(&self, v: &ModVec<F>) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn normal_form_poly(&self, p: &Poly<F>) -> Poly<F> {
        self.normal_form(&self.module.from_poly(p.clone())).comps.remove(0)
    }

    pub fn contains_poly(&self, p: &Poly<F>) -> bool {
        self.normal_form_poly(p).is_zero()
    }

    /// Buchberger's criterion over all pairs with leading terms in the same
    /// position (coprime pairs are skipped for ideals only).
    pub fn verify_s_pairs(&self) -> bool {
        let red = self.reducer();
        let rank_one = self.module.rank() == 1;
        for j in 0..red.elems.len() {
            for i in 0..j {
                let (pi, mi) = red.leads[i];
                let (pj, mj) = red.leads[j];
                if pi != pj || (rank_one && mi.is_coprime(&mj)) {
                    continue;
                }
                let s = red.spoly(i, j, &mi.lcm(&mj));
                if !red.reduce(s, None).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Same submodule, decided by comparing reduced bases.
    pub fn same_as(&self, other: &Self) -> bool {
        self.module == other.module && self.elements == other.elements
    }

    pub fn format(&self) -> Vec<String> {
        if self.module.rank() == 1 {
            self.elements
                .iter()
                .map(|v| self.module.ring.format(&v.comps[0]))
                .collect()
        } else {
            self.elements.iter().map(|v| self.module.format(v)).collect()
        }
    }
}

fn lead_key<F: Field>(module: &FreeModule<F>, v: &ModVec<F>) -> (usize, Monomial) {
    let (p, m, _) = module.lead(v).expect("zero element in basis");
    (p, m)
}
