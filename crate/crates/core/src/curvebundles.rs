//! Riemann–Roch arithmetic for evaluation-kernel bundles on curves and the
//! restriction of surface and threefold kernels to the curve `C`.

use num_rational::BigRational;
use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::field::format_rational;
use crate::exact::Field;
use crate::resolver::KernelStage;
use crate::schemes::Polarization;

fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(q))
}

fn q(a: i64) -> BigRational {
    BigRational::from_integer(a.into())
}

/// Numeric data of a vector bundle on a smooth curve of genus `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveBundleInvariants {
    pub genus: i64,
    pub rank: i64,
    pub degree: i64,
    #[serde(serialize_with = "ser_rational")]
    pub slope: BigRational,
    pub h0: Option<i64>,
    /// Semistability is taken as a hypothesis, not checked.
    pub semistable: bool,
    pub stable_by_butler: bool,
}

impl CurveBundleInvariants {
    /// A semistable bundle; `h0` is filled in when `μ > 2g - 2` forces
    /// `h^1 = 0`.
    pub fn semistable(genus: i64, rank: i64, degree: i64) -> Result<Self> {
        let mut e = Self::new(genus, rank, degree)?;
        e.semistable = true;
        if e.slope > q(2 * genus - 2) {
            e.h0 = Some(e.euler_characteristic());
        }
        Ok(e)
    }

    /// No stability hypothesis: only `χ` is known.
    pub fn new(genus: i64, rank: i64, degree: i64) -> Result<Self> {
        if genus < 0 || rank < 1 {
            return Err(Error::Input(format!(
                "need g >= 0 and rank >= 1, got g={genus}, r={rank}"
            )));
        }
        Ok(Self {
            genus,
            rank,
            degree,
            slope: BigRational::new(degree.into(), rank.into()),
            h0: None,
            semistable: false,
            stable_by_butler: false,
        })
    }

    /// `χ = deg + r(1 - g)`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degree + self.rank * (1 - self.genus)
    }
}

/// `M_E = ker(H^0(E) ⊗ O_C → E)` for semistable `E` with `μ(E) > 2g`,
/// stable by Butler's theorem. `h0(M_E) = 0` since `H^0(E) ⊗ H^0(O_C) → H^0(E)`
/// is the identity.
pub fn butler_kernel_invariants(e: &CurveBundleInvariants) -> Result<CurveBundleInvariants> {
    if e.genus < 1 {
        return Err(Error::Input("g >= 1 required".into()));
    }
    let two_g = q(2 * e.genus);
    if e.slope <= two_g {
        return Err(Error::Hypothesis {
            slope: format_rational(&e.slope),
            two_g: 2 * e.genus,
            margin: format_rational(&(&e.slope - &two_g)),
        });
    }
    let h0 = e.euler_characteristic();
    if h0 <= e.rank {
        return Err(Error::DegenerateKernel { h0, rank: e.rank });
    }
    let rank = h0 - e.rank;
    let m = CurveBundleInvariants {
        genus: e.genus,
        rank,
        degree: -e.degree,
        slope: BigRational::new((-e.degree).into(), rank.into()),
        h0: Some(0),
        semistable: true,
        stable_by_butler: true,
    };
    debug_assert!(m.slope.is_negative() && e.slope.is_positive());
    debug_assert_eq!(
        m.slope,
        BigRational::new((-e.degree).into(), (e.degree - e.rank * e.genus).into())
    );
    Ok(m)
}

/// A term of a short exact sequence: on `X` with `c1` in units of `L`, or
/// on `C` with its degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceTerm {
    pub name: String,
    pub rank: i64,
    pub c1: Option<i64>,
    pub degree: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortExactSequence {
    pub on: String,
    /// `sub → middle → quotient`.
    pub terms: [SequenceTerm; 3],
}

impl ShortExactSequence {
    /// Ranks and first Chern classes or degrees add up.
    pub fn balanced(&self) -> bool {
        let [a, b, c] = &self.terms;
        let add = |x: Option<i64>, y: Option<i64>, z: Option<i64>| match (x, y, z) {
            (Some(x), Some(y), Some(z)) => x + z == y,
            _ => true,
        };
        a.rank + c.rank == b.rank && add(a.c1, b.c1, c.c1) && add(a.degree, b.degree, c.degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RestrictionReport {
    pub stage: usize,
    pub genus: i64,
    pub sequences: Vec<ShortExactSequence>,
    /// `M|_C` from the stage's Chern data.
    pub restricted: CurveBundleInvariants,
    /// `M_E` for `E = K_(i-1)(m_i H)|_C`; absent when Butler does not apply.
    pub butler: Option<CurveBundleInvariants>,
    pub agree: Option<bool>,
    pub notes: Vec<String>,
}

fn x_term(name: &str, rank: i64, c1: i64) -> SequenceTerm {
    SequenceTerm {
        name: name.into(),
        rank,
        c1: Some(c1),
        degree: None,
    }
}

fn c_term(name: &str, rank: i64, degree: i64) -> SequenceTerm {
    SequenceTerm {
        name: name.into(),
        rank,
        c1: None,
        degree: Some(degree),
    }
}

/// The kernel sequence of a stage, its restriction to `C`, and the
/// comparison with the Butler sequence of `E = K_(i-1)(m_i H)|_C` when `V`
/// maps isomorphically onto `H^0(C, E)`.
pub fn restriction_bookkeeping<F: Field>(stage: &KernelStage<F>, pol: &Polarization) -> Result<RestrictionReport> {
    if !stage.flags.restriction_injective {
        return Err(Error::Input("restriction of V to C is not injective".into()));
    }
    let deg_c = pol.curve_degree();
    let prev = if stage.index == 0 {
        "I_Z".to_string()
    } else {
        format!("K_{}", stage.index - 1)
    };
    let target_name = format!("{prev}({}L)", stage.twist);
    let i = stage.index;
    let r = stage.rank();
    let v = stage.dim_v() as i64;
    let c1 = stage.chern.c_i64(1);
    let t_rank = stage.target.rank;
    let t_c1 = stage.target.c_i64(1);
    let on_x = ShortExactSequence {
        on: "X".into(),
        terms: [
            x_term(&format!("K_{i}"), r, c1),
            x_term("V ⊗ O_X", v, 0),
            x_term(&target_name, t_rank, t_c1),
        ],
    };
    let on_c = ShortExactSequence {
        on: "C".into(),
        terms: [
            c_term(&format!("K_{i}|C"), r, c1 * deg_c),
            c_term("V ⊗ O_C", v, 0),
            c_term(&format!("{target_name}|C"), t_rank, t_c1 * deg_c),
        ],
    };
    assert!(on_x.balanced() && on_c.balanced(), "ranks and degrees must add up");
    let mut sequences = vec![on_x, on_c];
    let restricted = CurveBundleInvariants::new(pol.genus, r, c1 * deg_c)?;
    let mut notes = Vec::new();
    let mut butler = None;
    let mut agree = None;
    if pol.genus < 1 {
        notes.push("Butler check skipped: g >= 1 required".into());
    } else if v != stage.curve_sections {
        notes.push(format!(
            "Butler check skipped: dim V = {v} differs from h0(C, E) = {}",
            stage.curve_sections
        ));
    } else {
        let e = CurveBundleInvariants::semistable(pol.genus, t_rank, t_c1 * deg_c)?;
        match butler_kernel_invariants(&e) {
            Ok(m) => {
                let ok = m.rank == restricted.rank && m.degree == restricted.degree;
                assert!(ok, "restricted kernel disagrees with Butler's M_E");
                sequences.push(ShortExactSequence {
                    on: "C".into(),
                    terms: [
                        c_term("M_E", m.rank, m.degree),
                        c_term("H^0(E) ⊗ O_C", e.h0.unwrap(), 0),
                        c_term("E", e.rank, e.degree),
                    ],
                });
                agree = Some(ok);
                butler = Some(m);
            }
            Err(err) => notes.push(format!("Butler check skipped: {err}")),
        }
    }
    Ok(RestrictionReport {
        stage: i,
        genus: pol.genus,
        sequences,
        restricted,
        butler,
        agree,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;
    use crate::resolver::{build_surface_kernel, ChainConfig};
    use crate::schemes::builtin;

    fn butler(g: i64, r: i64, deg: i64) -> Result<CurveBundleInvariants> {
        butler_kernel_invariants(&CurveBundleInvariants::semistable(g, r, deg)?)
    }

    #[test]
    fn elliptic_examples() {
        let m = butler(1, 1, 3).unwrap();
        assert_eq!((m.rank, m.degree), (2, -3));
        assert_eq!(format_rational(&m.slope), "-3/2");
        let m = butler(1, 1, 9).unwrap();
        assert_eq!((m.rank, m.degree), (8, -9));
        assert_eq!(format_rational(&m.slope), "-9/8");
    }

    #[test]
    fn higher_rank_example() {
        let e = CurveBundleInvariants::semistable(2, 3, 15).unwrap();
        assert_eq!(e.h0, Some(12));
        let m = butler_kernel_invariants(&e).unwrap();
        assert_eq!((m.rank, m.degree), (9, -15));
        assert_eq!(format_rational(&m.slope), "-5/3");
    }

    #[test]
    fn boundary_slopes_are_refused() {
        match butler(2, 2, 8).unwrap_err() {
            Error::Hypothesis { slope, two_g, margin } => {
                assert_eq!((slope.as_str(), two_g, margin.as_str()), ("4", 4, "0"));
            }
            e => panic!("unexpected {e}"),
        }
        assert_eq!(butler(1, 1, 2).unwrap_err().code(), "HYPOTHESIS");
        assert_eq!(butler(0, 1, 5).unwrap_err().code(), "INPUT");
    }

    #[test]
    fn h0_needs_the_slope_bound() {
        assert_eq!(CurveBundleInvariants::semistable(3, 1, 4).unwrap().h0, None);
        assert_eq!(CurveBundleInvariants::semistable(3, 1, 5).unwrap().h0, Some(3));
        assert_eq!(CurveBundleInvariants::new(3, 1, 9).unwrap().h0, None);
    }

    #[test]
    fn one_point_surface_stage_matches_butler() {
        let z = builtin("one-point", PrimeField::default(), None).unwrap();
        let stage = build_surface_kernel(&z, &ChainConfig::new(3).with_m(1)).unwrap();
        let pol = Polarization::new(2, 3).unwrap();
        let rep = restriction_bookkeeping(&stage, &pol).unwrap();
        assert_eq!(rep.agree, Some(true));
        assert_eq!((rep.restricted.rank, rep.restricted.degree), (8, -9));
        assert_eq!(rep.butler.as_ref().unwrap(), &butler(1, 1, 9).unwrap());
        assert_eq!(rep.sequences.len(), 3);
    }

    #[test]
    fn koszul_stage_skips_butler() {
        let z = builtin("one-point", PrimeField::default(), None).unwrap();
        let stage = build_surface_kernel(&z, &ChainConfig::new(1).with_m(1)).unwrap();
        let rep = restriction_bookkeeping(&stage, &Polarization::new(2, 1).unwrap()).unwrap();
        assert_eq!(rep.agree, None);
        assert!(rep.notes[0].contains("g >= 1 required"));
        assert_eq!(rep.sequences.len(), 2);
    }

    #[test]
    fn three_points_restriction() {
        let z = builtin("three-points", PrimeField::default(), None).unwrap();
        let stage = build_surface_kernel(&z, &ChainConfig::new(3).with_m(2)).unwrap();
        let rep = restriction_bookkeeping(&stage, &Polarization::new(2, 3).unwrap()).unwrap();
        assert_eq!((rep.restricted.rank, rep.restricted.degree), (17, -18));
        assert_eq!(format_rational(&rep.restricted.slope), "-18/17");
        assert_eq!(rep.agree, Some(true));
    }
}
