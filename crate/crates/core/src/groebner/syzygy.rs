use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Echelon, Field};
use crate::groebner::buchberger::groebner_basis;
use crate::groebner::module::{FreeModule, ModVec};
use crate::poly::{Monomial, Poly, PolyRing};

/// Coordinates of homogeneous degree-`d` elements of a free module.
pub(crate) struct PieceCoords {
    index: HashMap<(usize, Monomial), usize>,
}

impl PieceCoords {
    pub(crate) fn new<F: Field>(module: &FreeModule<F>, d: i64) -> Self {
        let index = module
            .piece_basis(d)
            .into_iter()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        Self { index }
    }

    pub(crate) fn dim(&self) -> usize {
        self.index.len()
    }

    pub(crate) fn coords<F: Field>(&self, field: &F, v: &ModVec<F>) -> Vec<F::Elem> {
        let mut out = vec![field.zero(); self.dim()];
        for (pos, p) in v.comps.iter().enumerate() {
            for (m, c) in p.terms() {
                out[self.index[&(pos, *m)]] = c.clone();
            }
        }
        out
    }
}

/// Minimal homogeneous generators of the submodule spanned by `vs`, chosen
/// among `vs` degree by degree (graded Nakayama).
pub fn minimize<F: Field>(module: &FreeModule<F>, vs: &[ModVec<F>]) -> Vec<ModVec<F>> {
    let mut items: Vec<(i64, &ModVec<F>)> = vs
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| (module.degree(v).unwrap(), v))
        .collect();
    items.sort_by_key(|(d, _)| *d);
    let field = module.ring.field();
    let one = field.one();
    let mut kept: Vec<(i64, ModVec<F>)> = Vec::new();
    let mut i = 0;
    while i < items.len() {
        let d = items[i].0;
        let coords = PieceCoords::new(module, d);
        let mut ech = Echelon::new(field, coords.dim());
        for (e, g) in &kept {
            for mono in module.ring.monomials_of_degree((d - e) as u32) {
                ech.insert(coords.coords(field, &module.mul_term(g, &mono, &one)));
            }
        }
        while i < items.len() && items[i].0 == d {
            if ech.insert(coords.coords(field, items[i].1)) {
                kept.push((d, items[i].1.clone()));
            }
            i += 1;
        }
    }
    kept.into_iter().map(|(_, v)| v).collect()
}

/// Homogeneous map `⊕ R(-column_shifts) → target` given by its columns;
/// presents the cokernel module.
#[derive(Debug)]
pub struct GradedModulePresentation<F: Field> {
    target: FreeModule<F>,
    columns: Vec<ModVec<F>>,
    column_shifts: Vec<i64>,
    betti: OnceLock<BettiTable>,
}

impl<F: Field> Clone for GradedModulePresentation<F> {
    fn clone(&self) -> Self {
        Self {
            target: self.target.clone(),
            columns: self.columns.clone(),
            column_shifts: self.column_shifts.clone(),
            betti: self.betti.clone(),
        }
    }
}

impl<F: Field> GradedModulePresentation<F> {
    /// Columns must be nonzero and homogeneous; their degrees become the
    /// source shifts.
    pub fn new(target: FreeModule<F>, columns: Vec<ModVec<F>>) -> Result<Self> {
        let mut shifts = Vec::with_capacity(columns.len());
        for c in &columns {
            target.check(c)?;
            if !target.is_homogeneous(c) {
                return Err(Error::Input(format!(
                    "relation {} is not homogeneous",
                    target.format(c)
                )));
            }
            match target.degree(c) {
                Some(d) => shifts.push(d),
                None => return Err(Error::Input("zero relation column".into())),
            }
        }
        Ok(Self {
            target,
            columns,
            column_shifts: shifts,
            betti: OnceLock::new(),
        })
    }

    pub fn target(&self) -> &FreeModule<F> {
        &self.target
    }

    pub fn source(&self) -> FreeModule<F> {
        FreeModule::new(self.target.ring.clone(), self.column_shifts.clone())
    }

    pub fn columns(&self) -> &[ModVec<F>] {
        &self.columns
    }

    pub fn column_shifts(&self) -> &[i64] {
        &self.column_shifts
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.target.ring
    }

    /// Image of an element of the source module.
    pub fn apply(&self, v: &ModVec<F>) -> ModVec<F> {
        self.target.combine(&self.columns, &v.comps)
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns
            .iter()
            .any(|c| c.comps.iter().any(|p| p.degree() == Some(0)))
    }

    /// Betti table of the cokernel; requires the cokernel generators to be
    /// minimal, i.e. no unit entries after minimizing the relations.
    pub fn betti(&self) -> Result<&BettiTable> {
        if let Some(b) = self.betti.get() {
            return Ok(b);
        }
        let res = FreeResolution::of_cokernel(self)?;
        let b = res.betti();
        Ok(self.betti.get_or_init(|| b))
    }

    pub fn format_matrix(&self) -> Vec<Vec<String>> {
        (0..self.target.rank())
            .map(|r| self.columns.iter().map(|c| self.ring().format(&c.comps[r])).collect())
            .collect()
    }
}

/// Kernel of the map `⊕ R(-deg g_j) → module` sending `e_j` to `gens[j]`,
/// minimally generated.
pub fn syzygies<F: Field>(module: &FreeModule<F>, gens: &[ModVec<F>]) -> Result<GradedModulePresentation<F>> {
    let mut degs = Vec::with_capacity(gens.len());
    for g in gens {
        module.check(g)?;
        if !module.is_homogeneous(g) {
            return Err(Error::Input(format!("{} is not homogeneous", module.format(g))));
        }
        degs.push(module.degree(g).ok_or_else(|| Error::Input("zero generator".into()))?);
    }
    let source = FreeModule::new(module.ring.clone(), degs.clone());
    let r = module.rank();
    let mut shifts = module.shifts.clone();
    shifts.extend_from_slice(&degs);
    let aug = FreeModule::new(module.ring.clone(), shifts);
    let ring = &module.ring;
    let lifted: Vec<ModVec<F>> = gens
        .iter()
        .enumerate()
        .map(|(j, g)| {
            let mut comps = g.comps.clone();
            comps.extend((0..gens.len()).map(|k| if k == j { ring.one() } else { ring.zero() }));
            ModVec { comps }
        })
        .collect();
    let gb = groebner_basis(&aug, &lifted)?;
    let syz: Vec<ModVec<F>> = gb
        .elements()
        .iter()
        .filter(|v| v.comps[..r].iter().all(|p| p.is_zero()))
        .map(|v| ModVec {
            comps: v.comps[r..].to_vec(),
        })
        .collect();
    let syz = minimize(&source, &syz);
    debug_assert!(syz.iter().all(|s| source_image_is_zero(module, gens, s)));
    GradedModulePresentation::new(source, syz)
}

fn source_image_is_zero<F: Field>(module: &FreeModule<F>, gens: &[ModVec<F>], s: &ModVec<F>) -> bool {
    module.combine(gens, &s.comps).is_zero()
}

/// Syzygies of ideal generators.
pub fn ideal_syzygies<F: Field>(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<GradedModulePresentation<F>> {
    let module = FreeModule::ring_module(ring);
    let vs: Vec<ModVec<F>> = gens.iter().map(|g| module.from_poly(g.clone())).collect();
    syzygies(&module, &vs)
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// `entries[(i, j)] = β_{i,j}`, zero entries omitted.
    pub entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_shifts(levels: &[Vec<i64>]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, shifts) in levels.iter().enumerate() {
            for s in shifts {
                *entries.entry((i, *s)).or_insert(0) += 1;
            }
        }
        Self { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn total(&self, i: usize) -> usize {
        self.entries.iter().filter(|((k, _), _)| *k == i).map(|(_, v)| v).sum()
    }

    pub fn length(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `max (j - i)` over nonzero entries.
    pub fn regularity(&self) -> Option<i64> {
        self.entries.keys().map(|(i, j)| j - *i as i64).max()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Text layout: a `total:` row, then one row per `j - i` with `.` for zero.
impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "total: 0");
        }
        let len = self.length();
        let rows: Vec<i64> = {
            let lo = self.entries.keys().map(|(i, j)| j - *i as i64).min().unwrap();
            let hi = self.regularity().unwrap();
            (lo..=hi).collect()
        };
        let label_w = rows
            .iter()
            .map(|r| format!("{r}:").len())
            .max()
            .unwrap()
            .max("total:".len());
        let cell_w = self
            .entries
            .values()
            .map(|v| v.to_string().len())
            .chain((0..=len).map(|i| self.total(i).to_string().len()))
            .max()
            .unwrap();
        write!(f, "{:>label_w$}", "")?;
        for i in 0..=len {
            write!(f, " {:>cell_w$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>label_w$}", "total:")?;
        for i in 0..=len {
            write!(f, " {:>cell_w$}", self.total(i))?;
        }
        writeln!(f)?;
        for r in rows {
            write!(f, "{:>label_w$}", format!("{r}:"))?;
            for i in 0..=len {
                let v = self.get(i, r + i as i64);
                if v == 0 {
                    write!(f, " {:>cell_w$}", ".")?;
                } else {
                    write!(f, " {:>cell_w$}", v)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Minimal graded free resolution `… → F_1 → F_0 → N → 0` of a submodule
/// `N` of a free module. `maps[0]` sends `F_0` onto `N`, `maps[i]` is
/// `F_i → F_{i-1}`.
#[derive(Debug, Clone)]
pub struct FreeResolution<F: Field> {
    maps: Vec<GradedModulePresentation<F>>,
    /// Cokernel resolutions carry the ambient module as an extra level 0.
    cokernel: bool,
}

impl<F: Field> FreeResolution<F> {
    /// Resolves the submodule generated by `gens`.
    pub fn of_submodule(module: &FreeModule<F>, gens: &[ModVec<F>]) -> Result<Self> {
        let mut maps = Vec::new();
        let mut current = GradedModulePresentation::new(module.clone(), minimize(module, gens))?;
        let nvars = module.ring.nvars();
        loop {
            let next = syzygies(current.target(), current.columns())?;
            let done = next.columns().is_empty();
            maps.push(current);
            if done {
                break;
            }
            current = next;
            if maps.len() > nvars + 1 {
                return Err(Error::Budget("resolution longer than the number of variables".into()));
            }
        }
        let res = Self { maps, cokernel: false };
        debug_assert!(res.is_complex());
        Ok(res)
    }

    /// Minimal resolution of an ideal.
    pub fn of_ideal(ring: &PolyRing<F>, gens: &[Poly<F>]) -> Result<Self> {
        let module = FreeModule::ring_module(ring);
        let vs: Vec<ModVec<F>> = gens.iter().map(|g| module.from_poly(g.clone())).collect();
        Self::of_submodule(&module, &vs)
    }

    /// Resolution of `target / image`, with `F_0` the target module.
    pub fn of_cokernel(p: &GradedModulePresentation<F>) -> Result<Self> {
        let mut inner = Self::of_submodule(p.target(), p.columns())?;
        if inner.maps[0].has_unit_entry() {
            return Err(Error::NonMinimal(
                "the presentation has a unit entry; its generators are not minimal".into(),
            ));
        }
        inner.cokernel = true;
        Ok(inner)
    }

    pub fn maps(&self) -> &[GradedModulePresentation<F>] {
        &self.maps
    }

    /// Shifts of each free module, starting from `F_0`.
    pub fn shifts(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        if self.cokernel {
            out.push(self.maps[0].target().shifts.clone());
        }
        for m in &self.maps {
            if !m.column_shifts().is_empty() {
                out.push(m.column_shifts().to_vec());
            }
        }
        out
    }

    pub fn betti(&self) -> BettiTable {
        BettiTable::from_shifts(&self.shifts())
    }

    pub fn length(&self) -> usize {
        self.shifts().len().saturating_sub(1)
    }

    /// Consecutive maps compose to zero.
    pub fn is_complex(&self) -> bool {
        self.maps
            .windows(2)
            .all(|w| w[1].columns().iter().all(|c| w[0].apply(c).is_zero()))
    }

    /// No map between free modules of the resolution has a unit entry.
    pub fn is_minimal(&self) -> bool {
        let skip = if self.cokernel { 0 } else { 1 };
        self.maps.iter().skip(skip).all(|m| !m.has_unit_entry())
    }
}

/// Castelnuovo–Mumford regularity `max (j - i)` read from a minimal
/// resolution.
pub fn regularity<F: Field>(res: &FreeResolution<F>) -> Result<i64> {
    if !res.is_minimal() {
        return Err(Error::NonMinimal("a relation matrix has a unit entry".into()));
    }
    Ok(res.betti().regularity().unwrap_or(i64::MIN))
}
