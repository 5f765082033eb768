use num_integer::binomial;
use serde::Serialize;

use crate::exact::{Field, Matrix};
use crate::groebner::{
    buchberger, generic_rank, is_irrelevant, minors, presentation_entries, GradedModulePresentation,
};
use crate::poly::GradedPieceBasis;
use crate::resolver::sections::SectionSpace;

/// Default cap on the number of minors in [`certify_locally_free`].
pub const MINOR_BUDGET: usize = 20_000;

/// Default cap on the source dimension of a Hoppe contraction map.
pub const HOPPE_BUDGET: usize = 2_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LocalFreeness {
    LocallyFree { rank: usize },
    NotLocallyFree { rank: usize, locus_dim: usize },
    Inconclusive { reason: String },
}

impl LocalFreeness {
    pub fn is_locally_free(&self) -> bool {
        matches!(self, LocalFreeness::LocallyFree { .. })
    }
}

/// The cokernel of a presentation with `r` rows and generic relation rank
/// `ρ` is locally free of rank `r - ρ` exactly where some `ρ x ρ` minor is
/// nonzero; it is a vector bundle iff those minors have no common zero in
/// `P^n`.
pub fn certify_locally_free<F: Field>(p: &GradedModulePresentation<F>, budget: usize) -> LocalFreeness {
    let ring = p.ring();
    let entries = presentation_entries(p);
    let gr = match generic_rank(ring, &entries, 0x1f) {
        Ok(g) => g,
        Err(e) => return LocalFreeness::Inconclusive { reason: e.to_string() },
    };
    let rank = p.target().rank() - gr.rank;
    if gr.rank == 0 {
        return LocalFreeness::LocallyFree { rank };
    }
    let ms = match minors(ring, &entries, gr.rank, budget) {
        Ok(ms) => ms,
        Err(e) => return LocalFreeness::Inconclusive { reason: e.to_string() },
    };
    let gb = match buchberger(ring, &ms) {
        Ok(gb) => gb,
        Err(e) => return LocalFreeness::Inconclusive { reason: e.to_string() },
    };
    if is_irrelevant(&gb) {
        LocalFreeness::LocallyFree { rank }
    } else {
        LocalFreeness::NotLocallyFree {
            rank,
            locus_dim: gb.krull_dim().unwrap() - 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Stability {
    StableCertified { checked: Vec<usize> },
    Inconclusive { reason: String },
    NotApplicable { reason: String },
}

impl Stability {
    pub fn is_certified(&self) -> bool {
        matches!(self, Stability::StableCertified { .. })
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `h^0(Λ^q K(t))` for `K = ker(V ⊗ O → L)` with `V` forms of degree `e`
/// generating a rank-one `L`: the kernel of the contraction
/// `Λ^q V ⊗ R_t → Λ^(q-1) V ⊗ R_(t+e)`. Both sides are reflexive, so they
/// agree with `Λ^q K` across the codimension-two locus where `L` is not
/// invertible. Returns `None` past the budget.
pub fn exterior_sections<F: Field>(v: &SectionSpace<F>, q: usize, t: u32, budget: usize) -> Option<usize> {
    assert_eq!(v.width(), 1);
    let ring = v.ring();
    let f = ring.field();
    let n = v.len();
    let src_sets = subsets(n, q);
    let dst_sets = subsets(n, q - 1);
    let mults = ring.monomials_of_degree(t);
    if src_sets.len() * mults.len() > budget {
        return None;
    }
    let dst_index: std::collections::HashMap<Vec<usize>, usize> =
        dst_sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
    let forms = v.polys();
    let dst_basis = GradedPieceBasis::new(ring, t + v.degree());
    let b = dst_basis.dim();
    let mut rows = Vec::with_capacity(src_sets.len() * mults.len());
    for set in &src_sets {
        for mu in &mults {
            let mut row = vec![f.zero(); dst_sets.len() * b];
            for (pos, &j) in set.iter().enumerate() {
                let mut rest = set.clone();
                rest.remove(pos);
                let block = dst_index[&rest] * b;
                let sign = if pos % 2 == 0 { f.one() } else { f.neg(&f.one()) };
                for (m, c) in ring.mul_term(&forms[j], mu, &sign).terms() {
                    let k = block + dst_basis.index_of(m).unwrap();
                    row[k] = f.add(&row[k], c);
                }
            }
            rows.push(row);
        }
    }
    let cols = dst_sets.len() * b;
    let rank = Matrix::from_rows(f, cols, rows).rank();
    Some(src_sets.len() * mults.len() - rank)
}

/// Hoppe's criterion for a kernel bundle `K = ker(V ⊗ O → L)` of rank `r`
/// and `c1 = -e` on `P^n`: if `H^0(Λ^q K(t_q)) = 0` for `1 <= q < r`, where
/// `t_q = floor(q e / r)` normalizes the slope into `(-1, 0]`, then `K` is
/// stable. Nonvanishing proves nothing, so the verdict is then inconclusive.
pub fn hoppe_check<F: Field>(v: &SectionSpace<F>, rank: usize, budget: usize) -> Stability {
    if v.width() != 1 {
        return Stability::NotApplicable {
            reason: "only kernels of maps onto a rank-one sheaf are handled".into(),
        };
    }
    if rank <= 1 {
        return Stability::StableCertified { checked: vec![] };
    }
    let e = v.degree() as usize;
    let mut checked = Vec::new();
    for q in 1..rank {
        let t = (q * e / rank) as u32;
        let src = binomial(v.len(), q) * v.ring().piece_dim(t as i64) as usize;
        match exterior_sections(v, q, t, budget) {
            None => {
                return Stability::Inconclusive {
                    reason: format!("exterior power q = {q} needs a {src}-dimensional source, budget {budget}"),
                }
            }
            Some(0) => checked.push(q),
            Some(h) => {
                return Stability::Inconclusive {
                    reason: format!("h0 of the normalized exterior power q = {q} is {h}"),
                }
            }
        }
    }
    Stability::StableCertified { checked }
}
