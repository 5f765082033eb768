use crate::error::{Error, Result};
use crate::exact::Field;
use crate::groebner::buchberger::{buchberger, groebner_basis, GroebnerBasis};
use crate::groebner::module::ModVec;
use crate::groebner::syzygy::syzygies;
use crate::poly::{Monomial, MonomialOrder, Poly, PolyRing};

fn is_ideal<F: Field>(gb: &GroebnerBasis<F>) -> Result<()> {
    if gb.module().rank() != 1 {
        return Err(Error::Input("expected an ideal, got a module of higher rank".into()));
    }
    Ok(())
}

/// Whether every element of `b` lies in `a`.
pub fn contains<F: Field>(a: &GroebnerBasis<F>, b: &GroebnerBasis<F>) -> bool {
    b.elements().iter().all(|v| a.contains(v))
}

pub fn ideal_sum<F: Field>(a: &GroebnerBasis<F>, b: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    let mut gens = a.elements().to_vec();
    gens.extend_from_slice(b.elements());
    groebner_basis(a.module(), &gens)
}

/// `N :_F f = { v in F : f v in N }` for a submodule `N` given by a basis.
pub fn module_quotient<F: Field>(n: &GroebnerBasis<F>, f: &Poly<F>) -> Result<GroebnerBasis<F>> {
    let module = n.module();
    let ring = &module.ring;
    ring.check(f)?;
    if f.is_zero() {
        let all: Vec<ModVec<F>> = (0..module.rank()).map(|i| module.basis_vector(i)).collect();
        return groebner_basis(module, &all);
    }
    if !f.is_homogeneous() {
        return Err(Error::Input(format!("{} is not homogeneous", ring.format(f))));
    }
    let r = module.rank();
    let mut gens: Vec<ModVec<F>> = (0..r).map(|i| module.mul_poly(&module.basis_vector(i), f)).collect();
    gens.extend(n.elements().iter().cloned());
    let syz = syzygies(module, &gens)?;
    let quot: Vec<ModVec<F>> = syz
        .columns()
        .iter()
        .map(|c| ModVec {
            comps: c.comps[..r].to_vec(),
        })
        .filter(|v| !v.is_zero())
        .collect();
    let mut all = quot;
    all.extend(n.elements().iter().cloned());
    groebner_basis(module, &all)
}

/// `N : f^∞`, iterating quotients until the reduced basis is stable.
pub fn module_saturate_by<F: Field>(n: &GroebnerBasis<F>, f: &Poly<F>) -> Result<GroebnerBasis<F>> {
    let mut cur = n.clone();
    loop {
        let next = module_quotient(&cur, f)?;
        if next.same_as(&cur) {
            return Ok(cur);
        }
        cur = next;
    }
}

pub fn ideal_quotient<F: Field>(i: &GroebnerBasis<F>, f: &Poly<F>) -> Result<GroebnerBasis<F>> {
    is_ideal(i)?;
    module_quotient(i, f)
}

/// How much of a variable to divide out in [`quotient_by_variable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarPower {
    One,
    Infinity,
}

/// `I : x_i` or `I : x_i^∞` by Bayer's method: in grevlex with `x_i` made the
/// last variable, dividing basis elements by `x_i` gives a basis of the
/// quotient.
pub fn quotient_by_variable<F: Field>(i: &GroebnerBasis<F>, var: usize, power: VarPower) -> Result<GroebnerBasis<F>> {
    is_ideal(i)?;
    let ring = i.ring();
    let n = ring.nvars();
    if var >= n {
        return Err(Error::Input(format!("variable index {var} out of range")));
    }
    let last = n - 1;
    let grev = ring.with_order(MonomialOrder::GrevLex);
    let swapped: Vec<Poly<F>> = i.polys().iter().map(|g| grev.swap_vars(g, var, last)).collect();
    let gb = buchberger(&grev, &swapped)?;
    let divided: Vec<Poly<F>> = gb
        .polys()
        .iter()
        .map(|g| {
            let v = g.var_valuation(last);
            let e = match power {
                VarPower::One => v.min(1),
                VarPower::Infinity => v,
            };
            let mut m = Monomial::one();
            for _ in 0..e {
                m = m.mul(&Monomial::var(last));
            }
            ring.import(&grev.swap_vars(&grev.div_monomial(g, &m), var, last))
        })
        .collect();
    buchberger(ring, &divided)
}

/// `I ∩ J` from the syzygies of the concatenated generator lists.
pub fn intersect<F: Field>(a: &GroebnerBasis<F>, b: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    is_ideal(a)?;
    is_ideal(b)?;
    let ring = a.ring();
    if a.is_empty() || b.is_empty() {
        return buchberger(ring, &[]);
    }
    let module = a.module();
    let ka = a.len();
    let mut gens = a.elements().to_vec();
    gens.extend(
        b.elements()
            .iter()
            .map(|v| module.scale(v, &ring.field().neg(&ring.field().one()))),
    );
    let syz = syzygies(module, &gens)?;
    let ga = a.polys();
    let meet: Vec<Poly<F>> = syz
        .columns()
        .iter()
        .map(|c| {
            let mut acc = ring.zero();
            for (coef, g) in c.comps[..ka].iter().zip(&ga) {
                acc = ring.add(&acc, &ring.mul(coef, g));
            }
            acc
        })
        .filter(|p| !p.is_zero())
        .collect();
    buchberger(ring, &meet)
}

/// `I : m` for the irrelevant ideal `m = (x_0, …, x_n)`.
pub fn quotient_by_maximal<F: Field>(i: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    let n = i.ring().nvars();
    let mut acc = quotient_by_variable(i, 0, VarPower::One)?;
    for v in 1..n {
        let q = quotient_by_variable(i, v, VarPower::One)?;
        acc = intersect(&acc, &q)?;
    }
    Ok(acc)
}

/// Saturation `I : m^∞` by iterated quotients `I : m`. Each step contains
/// the previous one, so stability is certified by equal Hilbert series and
/// cross-checked by identical reduced bases.
pub fn saturate<F: Field>(i: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    is_ideal(i)?;
    let mut cur = i.clone();
    loop {
        let next = quotient_by_maximal(&cur)?;
        let same_series = next.hilbert_series() == cur.hilbert_series();
        let same_basis = next.same_as(&cur);
        assert_eq!(same_series, same_basis, "saturation stability checks disagree");
        if same_basis {
            return Ok(cur);
        }
        cur = next;
    }
}

/// Saturation as `∩_i (I : x_i^∞)`, an independent route.
pub fn saturate_by_variables<F: Field>(i: &GroebnerBasis<F>) -> Result<GroebnerBasis<F>> {
    let n = i.ring().nvars();
    let mut acc = quotient_by_variable(i, 0, VarPower::Infinity)?;
    for v in 1..n {
        let q = quotient_by_variable(i, v, VarPower::Infinity)?;
        acc = intersect(&acc, &q)?;
    }
    Ok(acc)
}

pub fn is_saturated<F: Field>(i: &GroebnerBasis<F>) -> Result<bool> {
    Ok(quotient_by_maximal(i)?.same_as(i))
}

/// Saturation of the ideal generated by `gens`.
pub fn saturation<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<GroebnerBasis<F>> {
    saturate(&buchberger(ring, gens)?)
}

/// Whether the ideal defines the empty subscheme of projective space.
pub fn is_irrelevant<F: Field>(i: &GroebnerBasis<F>) -> bool {
    i.krull_dim().is_none() || i.krull_dim() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{PrimeField, Rationals};
    use crate::poly::parse_poly;

    fn ring(n: usize) -> PolyRing<Rationals> {
        PolyRing::new(Rationals, n, MonomialOrder::GrevLex).unwrap()
    }

    fn gb<F: Field>(r: &PolyRing<F>, xs: &[&str]) -> GroebnerBasis<F> {
        let gens: Vec<_> = xs.iter().map(|s| parse_poly(r, s).unwrap()).collect();
        buchberger(r, &gens).unwrap()
    }

    #[test]
    fn quotient_by_a_variable() {
        let r = ring(3);
        let i = gb(&r, &["x0^2", "x0*x1"]);
        let q = quotient_by_variable(&i, 0, VarPower::One).unwrap();
        let mut f = q.format();
        f.sort();
        assert_eq!(f, vec!["x0", "x1"]);
        let q = quotient_by_variable(&i, 1, VarPower::Infinity).unwrap();
        assert_eq!(q.format(), vec!["x0"]);
    }

    #[test]
    fn general_quotient_agrees_with_bayer() {
        let r = ring(3);
        let i = gb(&r, &["x0^2*x2", "x0*x1^2", "x1^3+x2^3"]);
        for v in 0..3 {
            let a = quotient_by_variable(&i, v, VarPower::One).unwrap();
            let b = ideal_quotient(&i, &r.var(v)).unwrap();
            assert!(a.same_as(&b));
        }
    }

    #[test]
    fn intersection_of_coordinate_lines() {
        let r = ring(3);
        let a = gb(&r, &["x0"]);
        let b = gb(&r, &["x1"]);
        assert_eq!(intersect(&a, &b).unwrap().format(), vec!["x0*x1"]);
    }

    #[test]
    fn saturation_examples() {
        // (x^2, xy) in two variables is the fat origin, its saturation is (x)
        let r2 = ring(2);
        let i = gb(&r2, &["x0^2", "x0*x1"]);
        assert_eq!(saturate(&i).unwrap().format(), vec!["x0"]);
        // in three variables the embedded point (0:0:1) survives
        let r = ring(3);
        let i = gb(&r, &["x0^2", "x0*x1"]);
        let s = saturate(&i).unwrap();
        assert!(s.same_as(&i));
        let three = gb(&r, &["x1*x2", "x0*x2", "x0*x1"]);
        assert!(saturate(&three).unwrap().same_as(&three));
        let m = gb(&r, &["x0", "x1", "x2"]);
        assert!(saturate(&m).unwrap().is_unit_ideal());
    }

    #[test]
    fn embedded_component_is_removed() {
        // (x) ∩ (x, y, z)^2 saturates to (x)
        let r = ring(3);
        let i = gb(&r, &["x0^2", "x0*x1", "x0*x2"]);
        let s = saturate(&i).unwrap();
        assert_eq!(s.format(), vec!["x0"]);
        assert!(s.same_as(&saturate_by_variables(&i).unwrap()));
    }

    #[test]
    fn saturation_routes_agree_over_fp() {
        let fp = PrimeField::new(32003).unwrap();
        let r = PolyRing::new(fp, 4, MonomialOrder::GrevLex).unwrap();
        let i = gb(&r, &["x0*x3^2-x1^3", "x0*x1*x2", "x2^3+x0^2*x3"]);
        let a = saturate(&i).unwrap();
        let b = saturate_by_variables(&i).unwrap();
        assert!(a.same_as(&b));
        assert!(contains(&a, &i));
        assert!(saturate(&a).unwrap().same_as(&a));
    }
}
