use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix};
use crate::groebner::syzygy::GradedModulePresentation;
use crate::poly::{Poly, PolyRing};

/// Largest square size handled by [`poly_det`].
pub const MAX_MINOR_SIZE: usize = 16;

/// Determinant of a square polynomial matrix by expansion over column
/// subsets, `O(2^k k)` ring operations.
pub fn poly_det<F: Field>(ring: &PolyRing<F>, m: &[Vec<Poly<F>>]) -> Result<Poly<F>> {
    let k = m.len();
    if k == 0 {
        return Ok(ring.one());
    }
    if k > MAX_MINOR_SIZE {
        return Err(Error::Budget(format!(
            "{k}x{k} determinant exceeds the minor size budget"
        )));
    }
    let full = 1usize << k;
    let mut dp: Vec<Option<Poly<F>>> = vec![None; full];
    dp[0] = Some(ring.one());
    for s in 0..full {
        let Some(cur) = dp[s].take() else { continue };
        if cur.is_zero() {
            continue;
        }
        let row = s.count_ones() as usize;
        if row == k {
            dp[s] = Some(cur);
            continue;
        }
        for j in 0..k {
            if s & (1 << j) != 0 || m[row][j].is_zero() {
                continue;
            }
            let above = (s >> (j + 1)).count_ones();
            let mut t = ring.mul(&m[row][j], &cur);
            if above % 2 == 1 {
                t = ring.neg(&t);
            }
            let slot = &mut dp[s | (1 << j)];
            *slot = Some(match slot.take() {
                Some(p) => ring.add(&p, &t),
                None => t,
            });
        }
    }
    Ok(dp[full - 1].take().unwrap_or_else(|| ring.zero()))
}

/// Entries `a[row][col]` of a presentation matrix.
pub fn presentation_entries<F: Field>(p: &GradedModulePresentation<F>) -> Vec<Vec<Poly<F>>> {
    (0..p.target().rank())
        .map(|r| p.columns().iter().map(|c| c.comps[r].clone()).collect())
        .collect()
}

/// Rank of a polynomial matrix over the fraction field, with the rows and
/// columns of a nonzero maximal minor.
#[derive(Debug, Clone)]
pub struct GenericRank<F: Field> {
    pub rank: usize,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub minor: Poly<F>,
}

fn random_point<F: Field>(ring: &PolyRing<F>, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    let f = ring.field();
    (0..ring.nvars()).map(|_| f.from_i64(rng.gen_range(1..32003))).collect()
}

/// Rank at a random point, which equals the generic rank unless the point
/// lies on a proper subvariety; the selected minor is then computed exactly
/// and confirmed nonzero.
pub fn generic_rank<F: Field>(ring: &PolyRing<F>, m: &[Vec<Poly<F>>], seed: u64) -> Result<GenericRank<F>> {
    let f = ring.field();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pt = random_point(ring, &mut rng);
    let vals: Vec<Vec<F::Elem>> = m
        .iter()
        .map(|r| r.iter().map(|p| ring.eval_unchecked(p, &pt)).collect())
        .collect();
    let mat = Matrix::from_rows(f, cols, vals);
    let (_, col_piv) = mat.rref();
    let (_, row_piv) = mat.transpose().rref();
    debug_assert_eq!(col_piv.len(), row_piv.len());
    let sub: Vec<Vec<Poly<F>>> = row_piv
        .iter()
        .map(|&r| col_piv.iter().map(|&c| m[r][c].clone()).collect())
        .collect();
    let minor = poly_det(ring, &sub)?;
    assert!(!minor.is_zero(), "minor nonzero at a point vanished identically");
    if rows == 0 || cols == 0 {
        return Ok(GenericRank {
            rank: 0,
            rows: vec![],
            cols: vec![],
            minor: ring.one(),
        });
    }
    Ok(GenericRank {
        rank: col_piv.len(),
        rows: row_piv,
        cols: col_piv,
        minor,
    })
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All nonzero `k x k` minors, refusing more than `budget` determinants.
pub fn minors<F: Field>(ring: &PolyRing<F>, m: &[Vec<Poly<F>>], k: usize, budget: usize) -> Result<Vec<Poly<F>>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if k == 0 {
        return Ok(vec![ring.one()]);
    }
    if k > rows || k > cols {
        return Ok(vec![]);
    }
    let rs = subsets(rows, k);
    let cs = subsets(cols, k);
    if rs.len().saturating_mul(cs.len()) > budget {
        return Err(Error::Budget(format!(
            "{} minors of size {k} exceed the budget of {budget}",
            rs.len() * cs.len()
        )));
    }
    let mut out = Vec::new();
    for r in &rs {
        for c in &cs {
            let sub: Vec<Vec<Poly<F>>> = r
                .iter()
                .map(|&i| c.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            let d = poly_det(ring, &sub)?;
            if !d.is_zero() {
                out.push(d);
            }
        }
    }
    Ok(out)
}
