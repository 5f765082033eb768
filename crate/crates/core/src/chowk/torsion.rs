use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chowk::classes::KClass;
use crate::error::{Error, Result};
use crate::exact::Field;
use crate::groebner::{
    generic_rank, groebner_basis, minimize, module_saturate_by, presentation_entries, FreeModule,
    GradedModulePresentation, GroebnerBasis, HilbertSeries, ModVec,
};
use crate::poly::{Poly, PolyRing};

/// `M = F_0 / N` split as `0 → T(M) → M → M/T(M) → 0`, with
/// `T(M) = (N : Δ^∞) / N` for a nonzero maximal minor `Δ` of the relation
/// matrix. Away from `Δ = 0` the module is free, so `Δ` kills all torsion.
#[derive(Debug, Clone)]
pub struct TorsionSplit<F: Field> {
    pub generic_rank: usize,
    pub nonzerodivisor: Poly<F>,
    relations: GroebnerBasis<F>,
    saturated: GroebnerBasis<F>,
    pub torsion_generators: Vec<ModVec<F>>,
    pub free_part: GradedModulePresentation<F>,
}

fn kclass_of(gb: &GroebnerBasis<impl Field>) -> KClass {
    KClass::from_hilbert_polynomial(&HilbertSeries::of_quotient(gb).polynomial())
}

impl<F: Field> TorsionSplit<F> {
    pub fn is_torsion_free(&self) -> bool {
        self.torsion_generators.is_empty()
    }

    /// Dimension of the support of `T(M)`; `None` when `T(M)` has finite
    /// length.
    pub fn torsion_support_dim(&self) -> Option<usize> {
        self.torsion_kclass().support_dim()
    }

    pub fn module_kclass(&self) -> KClass {
        kclass_of(&self.relations)
    }

    pub fn free_kclass(&self) -> KClass {
        kclass_of(&self.saturated)
    }

    pub fn torsion_kclass(&self) -> KClass {
        self.module_kclass().sub(&self.free_kclass())
    }

    /// Whether `f·t ∈ N` for every torsion generator `t`.
    pub fn annihilates_torsion(&self, f: &Poly<F>) -> bool {
        let module = self.relations.module();
        self.torsion_generators
            .iter()
            .all(|t| self.relations.contains(&module.mul_poly(t, f)))
    }
}

/// Torsion submodule and torsion-free quotient of a presented module.
pub fn torsion_split<F: Field>(m: &GradedModulePresentation<F>) -> Result<TorsionSplit<F>> {
    torsion_split_seeded(m, 0x7075)
}

pub fn torsion_split_seeded<F: Field>(m: &GradedModulePresentation<F>, seed: u64) -> Result<TorsionSplit<F>> {
    let ring = m.ring();
    let module = m.target();
    let entries = presentation_entries(m);
    let gr = generic_rank(ring, &entries, seed)?;
    let relations = groebner_basis(module, m.columns())?;
    let saturated = module_saturate_by(&relations, &gr.minor)?;
    let torsion_generators: Vec<ModVec<F>> = minimize(module, saturated.elements())
        .into_iter()
        .filter(|v| !relations.contains(v))
        .collect();
    let free_cols = minimize(module, saturated.elements());
    let free_part = GradedModulePresentation::new(module.clone(), free_cols)?;
    Ok(TorsionSplit {
        generic_rank: module.rank() - gr.rank,
        nonzerodivisor: gr.minor,
        relations,
        saturated,
        torsion_generators,
        free_part,
    })
}

/// One graded piece of the filtration, by Hilbert polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FiltrationQuotient {
    /// The torsion submodule `T(F)`.
    Torsion { kclass: KClass, dim: Option<usize> },
    /// `V ⊗ O(-m)` from `rank` generically independent sections.
    Free { rank: usize, twist: i64, kclass: KClass },
    /// Cokernel of the sections, torsion by construction.
    TorsionQuotient { kclass: KClass, dim: Option<usize> },
}

impl FiltrationQuotient {
    pub fn kclass(&self) -> &KClass {
        match self {
            Self::Torsion { kclass, .. } | Self::Free { kclass, .. } | Self::TorsionQuotient { kclass, .. } => kclass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub kclass: KClass,
    pub quotients: Vec<FiltrationQuotient>,
    pub additive: bool,
}

fn random_element<F: Field>(module: &FreeModule<F>, d: i64, rng: &mut ChaCha8Rng) -> ModVec<F> {
    let ring = &module.ring;
    let f = ring.field();
    let comps = module
        .shifts
        .iter()
        .map(|s| {
            if d < *s {
                return ring.zero();
            }
            ring.from_terms(
                ring.monomials_of_degree((d - s) as u32)
                    .into_iter()
                    .map(|m| (m, f.from_i64(rng.gen_range(1..32003)))),
            )
        })
        .collect();
    ModVec { comps }
}

/// Filtration `T(F) ⊂ F' ⊂ F` with `F'/T(F) ≅ V ⊗ O(-m)` spanned by
/// generic sections of the torsion-free part and `F/F'` torsion. Hilbert
/// polynomials of the quotients must add up to that of `F`.
pub fn filtration_report<F: Field>(m: &GradedModulePresentation<F>, seed: u64) -> Result<FiltrationReport> {
    let split = torsion_split_seeded(m, seed)?;
    let ring: &PolyRing<F> = m.ring();
    let module = m.target();
    let n = ring.ambient_dim();
    let mut quotients = Vec::new();
    if !split.is_torsion_free() {
        let kclass = split.torsion_kclass();
        quotients.push(FiltrationQuotient::Torsion {
            dim: kclass.support_dim(),
            kclass,
        });
    }
    let r = split.generic_rank;
    if r > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5ec7);
        let lo = *module.shifts.iter().min().unwrap();
        let hi = *module.shifts.iter().max().unwrap();
        let free_cols = split.free_part.columns().to_vec();
        let base = presentation_entries(&split.free_part);
        let base_rank = generic_rank(ring, &base, seed)?.rank;
        let mut found = None;
        for d in lo..=hi {
            let sections: Vec<ModVec<F>> = (0..r).map(|_| random_element(module, d, &mut rng)).collect();
            let mut cols = free_cols.clone();
            cols.extend(sections.iter().cloned());
            let cols: Vec<ModVec<F>> = cols.into_iter().filter(|c| !c.is_zero()).collect();
            let p = GradedModulePresentation::new(module.clone(), cols.clone())?;
            if generic_rank(ring, &presentation_entries(&p), seed)?.rank == base_rank + r {
                found = Some((d, cols));
                break;
            }
        }
        let (d, cols) = found.ok_or_else(|| Error::Genericity {
            seed,
            attempts: (hi - lo + 1) as u32,
            reason: "no generically independent sections in the generator degrees".into(),
        })?;
        quotients.push(FiltrationQuotient::Free {
            rank: r,
            twist: -d,
            kclass: KClass::line_bundle(n, -d).scale(r as i64),
        });
        let kclass = kclass_of(&groebner_basis(module, &cols)?);
        if !kclass.is_zero() {
            quotients.push(FiltrationQuotient::TorsionQuotient {
                dim: kclass.support_dim(),
                kclass,
            });
        }
    }
    let total = split.module_kclass();
    let sum = quotients
        .iter()
        .fold(KClass { coeffs: vec![0; n + 1] }, |acc, q| acc.add(q.kclass()));
    let additive = sum == total;
    assert!(additive, "Hilbert polynomials are not additive along the filtration");
    Ok(FiltrationReport {
        kclass: total,
        quotients,
        additive,
    })
}
