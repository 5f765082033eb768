use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};
use crate::groebner::{
    buchberger, intersect, regularity, saturate, BettiTable, FreeResolution, GroebnerBasis, HilbertSeries,
};
use crate::poly::{monomials_of_degree, Poly, PolyRing};

/// A closed subscheme `Z ⊂ P^n` of codimension at least two, held through its
/// saturated ideal.
#[derive(Debug)]
pub struct SubschemeData<F: Field> {
    label: String,
    ring: PolyRing<F>,
    ideal: GroebnerBasis<F>,
    series: HilbertSeries,
    codim: usize,
    degree: i64,
    points: Option<Vec<Vec<F::Elem>>>,
    saturated_on_input: bool,
    resolution: OnceLock<std::result::Result<(BettiTable, i64), Error>>,
}

fn codim_reason() -> String {
    "a codimension-one ideal sheaf is invertible, in particular stable; only codim >= 2 is handled".into()
}

impl<F: Field> SubschemeData<F> {
    /// Saturates the ideal generated by `gens` and records its invariants.
    pub fn from_ideal(ring: &PolyRing<F>, gens: &[Poly<F>], label: &str) -> Result<Self> {
        let gb = buchberger(ring, gens)?;
        let sat = saturate(&gb)?;
        let saturated_on_input = sat.same_as(&gb);
        Self::from_saturated(ring, sat, saturated_on_input, None, label)
    }

    fn from_saturated(
        ring: &PolyRing<F>,
        ideal: GroebnerBasis<F>,
        saturated_on_input: bool,
        points: Option<Vec<Vec<F::Elem>>>,
        label: &str,
    ) -> Result<Self> {
        let series = ideal.hilbert_series();
        let n = ring.ambient_dim();
        let (codim, degree) = match series.krull_dim() {
            None | Some(0) => (n + 1, 0),
            Some(k) => (n + 1 - k, series.multiplicity()),
        };
        if codim < 2 {
            return Err(Error::Codimension {
                codim,
                reason: codim_reason(),
            });
        }
        Ok(Self {
            label: label.to_string(),
            ring: ring.clone(),
            ideal,
            series,
            codim,
            degree,
            points,
            saturated_on_input,
            resolution: OnceLock::new(),
        })
    }

    /// Reduced set of distinct points, given by affine representatives.
    pub fn from_points(ring: &PolyRing<F>, points: &[Vec<F::Elem>], label: &str) -> Result<Self> {
        let f = ring.field();
        for p in points {
            if p.len() != ring.nvars() {
                return Err(Error::Input(format!(
                    "point has {} coordinates, P^{} needs {}",
                    p.len(),
                    ring.ambient_dim(),
                    ring.nvars()
                )));
            }
            if p.iter().all(|x| f.is_zero(x)) {
                return Err(Error::ZeroPoint);
            }
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[..i] {
                if proportional(f, p, q) {
                    return Err(Error::Input(format!("point {} repeats an earlier point", i + 1)));
                }
            }
        }
        let mut acc = buchberger(ring, &[ring.one()])?;
        for p in points {
            let pi = buchberger(ring, &point_ideal(ring, p))?;
            acc = intersect(&acc, &pi)?;
        }
        let z = Self::from_saturated(ring, acc, true, Some(points.to_vec()), label)?;
        if z.degree != points.len() as i64 && !points.is_empty() {
            return Err(Error::Input("point ideal has unexpected degree".into()));
        }
        Ok(z)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.ring.ambient_dim()
    }

    pub fn ideal(&self) -> &GroebnerBasis<F> {
        &self.ideal
    }

    pub fn generators(&self) -> Vec<Poly<F>> {
        self.ideal.polys()
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Projective dimension; `None` for the empty subscheme.
    pub fn dim(&self) -> Option<usize> {
        if self.is_empty() {
            None
        } else {
            Some(self.ambient_dim() - self.codim)
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ideal.is_unit_ideal()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.dim() == Some(0)
    }

    pub fn points(&self) -> Option<&[Vec<F::Elem>]> {
        self.points.as_deref()
    }

    pub fn saturated_on_input(&self) -> bool {
        self.saturated_on_input
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        &self.series
    }

    /// `dim (R/I_Z)_k`.
    pub fn hilbert_function(&self, k: i64) -> i64 {
        self.series.function(k)
    }

    fn resolution(&self) -> &std::result::Result<(BettiTable, i64), Error> {
        self.resolution.get_or_init(|| {
            let res = FreeResolution::of_ideal(&self.ring, &self.ideal.polys())?;
            let reg = regularity(&res)?;
            Ok((res.betti(), reg))
        })
    }

    /// Castelnuovo–Mumford regularity of `I_Z` (0 for the unit ideal).
    pub fn regularity(&self) -> Result<i64> {
        self.resolution().as_ref().map(|(_, r)| *r).map_err(|e| e.clone())
    }

    pub fn betti(&self) -> Result<BettiTable> {
        self.resolution()
            .as_ref()
            .map(|(b, _)| b.clone())
            .map_err(|e| e.clone())
    }
}

fn proportional<F: Field>(f: &F, p: &[F::Elem], q: &[F::Elem]) -> bool {
    (0..p.len()).all(|i| (i + 1..p.len()).all(|j| f.is_zero(&f.sub(&f.mul(&p[i], &q[j]), &f.mul(&p[j], &q[i])))))
}

/// Linear forms vanishing at one point.
pub fn point_ideal<F: Field>(ring: &PolyRing<F>, p: &[F::Elem]) -> Vec<Poly<F>> {
    let f = ring.field();
    let n = ring.nvars();
    let m = Matrix::from_rows(f, n, vec![p.to_vec()]);
    let (_, ker) = m.rank_and_kernel();
    ker.into_iter()
        .map(|v| ring.from_terms((0..n).map(|i| (crate::poly::Monomial::var(i), v[i].clone()))))
        .collect()
}

/// `h^0(I_Z(k)) = dim (I_Z)_k`; for point sets the value is cross-checked
/// against the evaluation matrix.
pub fn h0_ideal_twist<F: Field>(z: &SubschemeData<F>, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    let h = z.ring.piece_dim(k) as i64 - z.hilbert_function(k);
    if let Some(pts) = z.points() {
        assert_eq!(
            h,
            h0_by_evaluation(z.ring(), pts, k as u32),
            "staircase and evaluation counts disagree"
        );
    }
    h
}

/// `binom(k+n, n) - rank` of the evaluation matrix of degree-`k` monomials
/// at the points.
pub fn h0_by_evaluation<F: Field>(ring: &PolyRing<F>, points: &[Vec<F::Elem>], k: u32) -> i64 {
    let monos = monomials_of_degree(ring.nvars(), k);
    let f = ring.field();
    let rows: Vec<Vec<F::Elem>> = points
        .iter()
        .map(|p| {
            monos
                .iter()
                .map(|m| ring.eval_unchecked(&ring.term(*m, f.one()), p))
                .collect()
        })
        .collect();
    let rank = Matrix::from_rows(f, monos.len(), rows).rank();
    monos.len() as i64 - rank as i64
}

/// `h^1(I_Z(k))` for zero-dimensional `Z`, from `χ(I_Z(k)) = binom(k+n,n) - deg Z`
/// and the vanishing of the higher cohomology of `O(k)` for `k >= 0`.
pub fn h1_ideal_twist<F: Field>(z: &SubschemeData<F>, k: i64) -> Result<i64> {
    if !(z.is_zero_dimensional() || z.is_empty()) {
        return Err(Error::Unsupported(
            "h^1 of a twisted ideal sheaf is only computed for zero-dimensional subschemes".into(),
        ));
    }
    if k < 0 {
        return Err(Error::Input("twist must be non-negative".into()));
    }
    Ok(z.degree() - (z.ring.piece_dim(k) as i64 - h0_ideal_twist(z, k)))
}
