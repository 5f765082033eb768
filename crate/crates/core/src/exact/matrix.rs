use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::field::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::exact::scalar::{common_field, lift_all, ExactScalar};

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Self {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        Self {
            field: field.clone(),
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if f.is_zero(b) {
                        continue;
                    }
                    let cur = out.get(i, j).clone();
                    out.set(i, j, f.add(&cur, &f.mul(a, b)));
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.cols);
        let f = &self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        self.field.rank_of(&mut rows, self.cols)
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = self.field.rref(&mut rows, self.cols);
        (Self::from_rows(&self.field, self.cols, rows), pivots)
    }

    /// Exact rank and a basis of the right kernel `{v : A v = 0}`.
    pub fn rank_and_kernel(&self) -> (usize, Vec<Vec<F::Elem>>) {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        let rank = pivots.len();
        assert_eq!(rank + basis.len(), self.cols, "rank-nullity violated");
        debug_assert!(basis.iter().all(|v| self.mul_vec(v).iter().all(|x| f.is_zero(x))));
        (rank, basis)
    }

    /// Basis of the row space, in reduced echelon form.
    pub fn row_space(&self) -> Vec<Vec<F::Elem>> {
        let (r, pivots) = self.rref();
        let mut rows = r.to_rows();
        rows.truncate(pivots.len());
        rows
    }

    /// A solution `x` of `A x = b`, if one exists.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = &self.field;
        let rows: Vec<Vec<F::Elem>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let aug = Self::from_rows(f, self.cols + 1, rows);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|x| self.field.to_scalar(x)).collect(),
        }
    }
}

impl Matrix<PrimeField> {
    /// Uniform entries from a seeded ChaCha stream; reproducible bit-for-bit.
    pub fn random(field: &PrimeField, rows: usize, cols: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = field.modulus();
        let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
        Self {
            field: *field,
            rows,
            cols,
            data,
        }
    }
}

/// Matrix of tagged scalars; all entries must share one field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<ExactScalar>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactScalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Input(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn field(&self) -> Result<Option<FieldDescriptor>> {
        common_field(&self.entries)
    }

    fn typed<F: Field>(&self, field: &F) -> Result<Matrix<F>> {
        let data = lift_all(field, &self.entries)?;
        Ok(Matrix {
            field: field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Exact rank and right-kernel basis.
    ///
    /// An empty matrix is treated as rational.
    pub fn rank_and_kernel(&self) -> Result<(usize, Vec<Vec<ExactScalar>>)> {
        fn run<F: Field>(m: &ExactMatrix, f: &F) -> Result<(usize, Vec<Vec<ExactScalar>>)> {
            let t = m.typed(f)?;
            let (r, ker) = t.rank_and_kernel();
            let ker = ker
                .into_iter()
                .map(|v| v.iter().map(|x| f.to_scalar(x)).collect())
                .collect();
            Ok((r, ker))
        }
        match self.field()? {
            None | Some(FieldDescriptor::Rational) => run(self, &Rationals),
            Some(FieldDescriptor::Prime(p)) => run(self, &PrimeField::new(p)?),
        }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.rank_and_kernel()?.0)
    }

    pub fn mul_vec(&self, v: &[ExactScalar]) -> Result<Vec<ExactScalar>> {
        if v.len() != self.cols {
            return Err(Error::Input("vector length mismatch".into()));
        }
        (0..self.rows)
            .map(|r| {
                let mut acc: Option<ExactScalar> = None;
                for (e, x) in self.entries[r * self.cols..(r + 1) * self.cols].iter().zip(v) {
                    let t = e.try_mul(x)?;
                    acc = Some(match acc {
                        None => t,
                        Some(a) => a.try_add(&t)?,
                    });
                }
                acc.ok_or_else(|| Error::Input("empty row".into()))
            })
            .collect()
    }
}

/// Seeded uniform matrix over F_p. Rational requests are rejected: there is
/// no uniform distribution to sample from.
pub fn random_matrix(rows: usize, cols: usize, field: FieldDescriptor, seed: u64) -> Result<ExactMatrix> {
    match field {
        FieldDescriptor::Rational => Err(Error::UnsupportedField(
            "random sampling is only defined over F_p".into(),
        )),
        FieldDescriptor::Prime(p) => {
            let f = PrimeField::new(p)?;
            Ok(Matrix::random(&f, rows, cols, seed).to_exact())
        }
    }
}
