use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, PrimeField};
use crate::groebner::{buchberger, is_irrelevant, minors, regularity, FreeResolution, GroebnerBasis};
use crate::poly::{ideal_piece_dim, MonomialOrder, Poly, PolyRing};

/// Outcome of a generation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// Proven by exact computation.
    Certified,
    /// Agreement observed where checked, short of the certification bound.
    CheckedUncertified,
    /// Observed at sampled points only.
    Sampled,
    /// Taken from a recorded hypothesis, not checked.
    Assumed,
    /// A discrepancy was found.
    Failed,
}

impl Certification {
    pub fn passed(&self) -> bool {
        !matches!(self, Certification::Failed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenerationCheck {
    pub status: Certification,
    /// Degrees compared by explicit ranks run from the generator degree up to here.
    pub max_checked_degree: i64,
    /// Degree needed for a certificate.
    pub certification_degree: i64,
    /// First degree where the graded pieces differ.
    pub first_gap: Option<i64>,
    /// `Some(true)` when every point of a reduced zero-dimensional `I` is a
    /// point where the Jacobian of `V` has full rank.
    pub fiberwise: Option<bool>,
}

/// Whether the forms `v` (all of degree `m`, contained in the saturated
/// ideal `i`) generate `I~` as a sheaf.
///
/// Since `(V) ⊂ I`, equal Hilbert polynomials mean `I/(V)` has finite length,
/// so `(V)` and `I` have the same saturation. The certificate is that
/// equality plus explicit rank agreement in degree
/// `max(reg I + 1, regularity index of R/(V))`, where both sides agree with
/// their polynomials. `t_max` below that degree yields
/// [`Certification::CheckedUncertified`].
pub fn check_generation<F: Field>(
    v: &[Poly<F>],
    i: &GroebnerBasis<F>,
    t_max: Option<i64>,
    points: Option<&[Vec<F::Elem>]>,
) -> Result<GenerationCheck> {
    let ring = i.ring();
    let m = match v.iter().find(|p| !p.is_zero()) {
        Some(p) => p.degree().unwrap() as i64,
        None => return Err(Error::Input("empty generator list".into())),
    };
    for p in v {
        ring.check(p)?;
        if !p.is_zero() && (p.degree() != Some(m as u32) || !p.is_homogeneous()) {
            return Err(Error::Input("generators must be forms of one degree".into()));
        }
        if !i.contains_poly(p) {
            return Err(Error::Input(format!("{} is not in the target ideal", ring.format(p))));
        }
    }
    let reg = regularity(&FreeResolution::of_ideal(ring, &i.polys())?)?.max(0);
    let gv = buchberger(ring, v)?;
    let hs_v = gv.hilbert_series();
    let hs_i = i.hilbert_series();
    let cert_deg = (reg + 1)
        .max(hs_v.regularity_index())
        .max(hs_i.regularity_index())
        .max(m);
    let top = t_max.unwrap_or(cert_deg);
    let target_dim = |k: i64| ring.piece_dim(k) as i64 - hs_i.function(k);
    let mut first_gap = None;
    let scan_top = top.max(if hs_v.polynomial() != hs_i.polynomial() {
        cert_deg
    } else {
        m
    });
    for k in m..=scan_top {
        let have = ideal_piece_dim(ring, v, k as u32) as i64;
        if have != target_dim(k) {
            first_gap = Some(k);
            break;
        }
    }
    let fiberwise = points.map(|pts| pts.iter().all(|p| jacobian_rank(ring, v, p) == ring.ambient_dim()));
    let same_poly = hs_v.polynomial() == hs_i.polynomial();
    let status = if !same_poly || fiberwise == Some(false) {
        Certification::Failed
    } else if top < cert_deg {
        Certification::CheckedUncertified
    } else {
        let have = ideal_piece_dim(ring, v, cert_deg as u32) as i64;
        assert_eq!(
            have,
            target_dim(cert_deg),
            "Hilbert polynomials agree but ranks differ past regularity"
        );
        Certification::Certified
    };
    Ok(GenerationCheck {
        status,
        max_checked_degree: scan_top,
        certification_degree: cert_deg,
        first_gap,
        fiberwise,
    })
}

/// Rank of the Jacobian matrix of `v` at `p`.
pub fn jacobian_rank<F: Field>(ring: &PolyRing<F>, v: &[Poly<F>], p: &[F::Elem]) -> usize {
    let rows: Vec<Vec<F::Elem>> = v
        .iter()
        .map(|g| {
            (0..ring.nvars())
                .map(|j| ring.eval_unchecked(&ring.derivative(g, j), p))
                .collect()
        })
        .collect();
    Matrix::from_rows(ring.field(), ring.nvars(), rows).rank()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenericityReport {
    pub r: usize,
    pub n: usize,
    pub v: usize,
    pub trials: usize,
    pub failures: usize,
    /// Whether `v >= r + n`.
    pub hypothesis: bool,
    /// Crude bound `trials · r(n+1)/p` on the expected failures when the
    /// hypothesis holds, `trials` otherwise.
    pub expected_failures_bound: f64,
    pub seed: u64,
}

/// Draws `trials` random `v`-dimensional spaces of sections of `O(1)^r` on
/// `P^n` over `F_p` and counts those that fail to generate, i.e. whose
/// `r x r` minors have a common zero.
pub fn genericity_experiment(
    field: &PrimeField,
    r: usize,
    n: usize,
    v: usize,
    trials: usize,
    seed: u64,
) -> Result<GenericityReport> {
    if r == 0 || n == 0 || v < r {
        return Err(Error::Input(format!(
            "need 1 <= r <= v and n >= 1, got r={r}, n={n}, v={v}"
        )));
    }
    let ring = PolyRing::new(*field, n + 1, MonomialOrder::GrevLex)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..trials {
        let mat: Vec<Vec<Poly<PrimeField>>> = (0..r)
            .map(|_| {
                (0..v)
                    .map(|_| {
                        ring.from_terms((0..=n).map(|i| {
                            (
                                crate::poly::Monomial::var(i),
                                field.from_i64(rng.gen_range(0..field.modulus() as i64)),
                            )
                        }))
                    })
                    .collect()
            })
            .collect();
        let ms = minors(&ring, &mat, r, 100_000)?;
        if !is_irrelevant(&buchberger(&ring, &ms)?) {
            failures += 1;
        }
    }
    let hypothesis = v >= r + n;
    let bound = if hypothesis {
        trials as f64 * (r * (n + 1)) as f64 / field.modulus() as f64
    } else {
        trials as f64
    };
    Ok(GenericityReport {
        r,
        n,
        v,
        trials,
        failures,
        hypothesis,
        expected_failures_bound: bound,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::schemes::SubschemeData;

    fn p2() -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::default(), 3, MonomialOrder::GrevLex).unwrap()
    }

    fn polys(r: &PolyRing<PrimeField>, xs: &[&str]) -> Vec<Poly<PrimeField>> {
        xs.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn coordinate_points() {
        let r = p2();
        let pts = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let z = SubschemeData::from_points(&r, &pts, "three").unwrap();
        let all = check_generation(&polys(&r, &["x0*x1", "x0*x2", "x1*x2"]), z.ideal(), None, Some(&pts)).unwrap();
        assert_eq!(all.status, Certification::Certified);
        assert_eq!(all.first_gap, None);
        assert_eq!(all.fiberwise, Some(true));
        let two = check_generation(&polys(&r, &["x0*x1", "x0*x2"]), z.ideal(), None, Some(&pts)).unwrap();
        assert_eq!(two.status, Certification::Failed);
        assert_eq!(two.first_gap, Some(2));
        let short = check_generation(&polys(&r, &["x0*x1", "x0*x2", "x1*x2"]), z.ideal(), Some(2), None).unwrap();
        assert_eq!(short.status, Certification::CheckedUncertified);
    }

    #[test]
    fn principal_ideal() {
        let r = p2();
        let f = polys(&r, &["x0^2+x1*x2"]);
        let i = buchberger(&r, &f).unwrap();
        assert_eq!(
            check_generation(&f, &i, None, None).unwrap().status,
            Certification::Certified
        );
    }

    #[test]
    fn generation_needs_enough_sections() {
        let fp = PrimeField::default();
        let ok = genericity_experiment(&fp, 1, 2, 3, 20, 1).unwrap();
        assert_eq!(ok.failures, 0);
        let bad = genericity_experiment(&fp, 1, 2, 2, 10, 1).unwrap();
        assert_eq!(bad.failures, 10);
        assert!(!bad.hypothesis);
    }
}
