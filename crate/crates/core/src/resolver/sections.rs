use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{Echelon, Field, Matrix};
use crate::poly::{ideal_piece_basis, GradedPieceBasis, Poly, PolyRing};

/// A finite-dimensional space of sections of `O(degree)^width`, i.e. of
/// vectors of `width` forms of one degree, held as coordinate rows. Entry
/// `j·dim R_degree + i` is the coefficient of monomial `i` in component `j`.
#[derive(Debug, Clone)]
pub struct SectionSpace<F: Field> {
    ring: PolyRing<F>,
    width: usize,
    degree: u32,
    basis: GradedPieceBasis,
    rows: Vec<Vec<F::Elem>>,
}

impl<F: Field> SectionSpace<F> {
    pub fn from_rows(ring: &PolyRing<F>, width: usize, degree: u32, rows: Vec<Vec<F::Elem>>) -> Self {
        let basis = GradedPieceBasis::new(ring, degree);
        debug_assert!(rows.iter().all(|r| r.len() == width * basis.dim()));
        Self {
            ring: ring.clone(),
            width,
            degree,
            basis,
            rows,
        }
    }

    /// Forms of one degree, as sections of `O(degree)`.
    pub fn from_polys(ring: &PolyRing<F>, degree: u32, polys: &[Poly<F>]) -> Result<Self> {
        let basis = GradedPieceBasis::new(ring, degree);
        let mut rows = Vec::with_capacity(polys.len());
        for p in polys {
            ring.check(p)?;
            if !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(degree)) {
                return Err(Error::Input(format!(
                    "{} is not a form of degree {degree}",
                    ring.format(p)
                )));
            }
            rows.push(basis.coordinates(ring, p));
        }
        Ok(Self {
            ring: ring.clone(),
            width: 1,
            degree,
            basis,
            rows,
        })
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn coords_len(&self) -> usize {
        self.width * self.basis.dim()
    }

    pub fn rank(&self) -> usize {
        Matrix::from_rows(self.ring.field(), self.coords_len(), self.rows.clone()).rank()
    }

    /// Section `k` as a vector of forms.
    pub fn section(&self, k: usize) -> Vec<Poly<F>> {
        let b = self.basis.dim();
        (0..self.width)
            .map(|j| self.basis.polynomial(&self.ring, &self.rows[k][j * b..(j + 1) * b]))
            .collect()
    }

    /// Forms of a width-one space.
    pub fn polys(&self) -> Vec<Poly<F>> {
        assert_eq!(self.width, 1);
        (0..self.len()).map(|k| self.section(k).remove(0)).collect()
    }

    /// `dim · dim R_t` rows: coordinates of `μ·g_k` in degree `t + degree`.
    fn multiplication_rows(&self, t: u32) -> Vec<Vec<F::Elem>> {
        let f = self.ring.field();
        let src = &self.basis;
        let dst = GradedPieceBasis::new(&self.ring, t + self.degree);
        let mults = self.ring.monomials_of_degree(t);
        let b = src.dim();
        let bd = dst.dim();
        let mut out = Vec::with_capacity(self.len() * mults.len());
        for row in &self.rows {
            for mu in &mults {
                let mut v = vec![f.zero(); self.width * bd];
                for j in 0..self.width {
                    for (i, c) in row[j * b..(j + 1) * b].iter().enumerate() {
                        if f.is_zero(c) {
                            continue;
                        }
                        let idx = dst.index_of(&src.monomials[i].mul(mu)).unwrap();
                        v[j * bd + idx] = c.clone();
                    }
                }
                out.push(v);
            }
        }
        out
    }

    /// `dim` of the span of `R_t · V` inside `O(t + degree)^width`.
    pub fn generated_dim(&self, t: u32) -> usize {
        let cols = self.width * self.ring.piece_dim((t + self.degree) as i64) as usize;
        Matrix::from_rows(self.ring.field(), cols, self.multiplication_rows(t)).rank()
    }

    /// `H^0` of the kernel sheaf twisted by `t`: relations
    /// `sum_k a_k g_k = 0` with `a_k` forms of degree `t`, as a section space
    /// of width `len()` and degree `t`.
    pub fn kernel(&self, t: u32) -> SectionSpace<F> {
        let rows = self.multiplication_rows(t);
        let cols = self.width * self.ring.piece_dim((t + self.degree) as i64) as usize;
        let m = Matrix::from_rows(self.ring.field(), cols, rows).transpose();
        let (_, ker) = m.rank_and_kernel();
        SectionSpace::from_rows(&self.ring, self.len(), t, ker)
    }

    /// `len() · dim R_t - generated_dim(t)`.
    pub fn kernel_dim(&self, t: u32) -> usize {
        self.len() * self.ring.piece_dim(t as i64) as usize - self.generated_dim(t)
    }

    /// `k` random combinations of the rows, with coefficients in `0..32003`.
    pub fn random_subspace(&self, k: usize, rng: &mut ChaCha8Rng) -> SectionSpace<F> {
        let f = self.ring.field();
        let n = self.coords_len();
        let rows = (0..k)
            .map(|_| {
                let mut acc = vec![f.zero(); n];
                for r in &self.rows {
                    let c = f.from_i64(rng.gen_range(0..32003));
                    if f.is_zero(&c) {
                        continue;
                    }
                    for (a, x) in acc.iter_mut().zip(r) {
                        if !f.is_zero(x) {
                            *a = f.add(a, &f.mul(&c, x));
                        }
                    }
                }
                acc
            })
            .collect();
        SectionSpace::from_rows(&self.ring, self.width, self.degree, rows)
    }

    /// Values of the sections at a point: a `len() x width` matrix.
    pub fn evaluate(&self, point: &[F::Elem]) -> Matrix<F> {
        let f = self.ring.field();
        let mono_vals: Vec<F::Elem> = self
            .basis
            .monomials
            .iter()
            .map(|m| self.ring.eval_unchecked(&self.ring.term(*m, f.one()), point))
            .collect();
        let b = self.basis.dim();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                (0..self.width)
                    .map(|j| {
                        row[j * b..(j + 1) * b]
                            .iter()
                            .zip(&mono_vals)
                            .fold(f.zero(), |acc, (c, v)| f.add(&acc, &f.mul(c, v)))
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(f, self.width, rows)
    }

    /// Dimension of the image of the span in `H^0(C, O_C(degree))^width`,
    /// where `curve_forms` cut out `C` and `(R/J)` is the coordinate ring.
    pub fn restricted_dim(&self, curve_forms: &[Poly<F>]) -> usize {
        let f = self.ring.field();
        let b = self.basis.dim();
        let j_basis: Vec<Vec<F::Elem>> = ideal_piece_basis(&self.ring, curve_forms, self.degree)
            .iter()
            .map(|p| self.basis.coordinates(&self.ring, p))
            .collect();
        let mut ech = Echelon::new(f, self.coords_len());
        for j in 0..self.width {
            for r in &j_basis {
                let mut v = vec![f.zero(); self.coords_len()];
                v[j * b..(j + 1) * b].clone_from_slice(r);
                ech.insert(v);
            }
        }
        let base = ech.rank();
        for r in &self.rows {
            ech.insert(r.clone());
        }
        ech.rank() - base
    }
}
