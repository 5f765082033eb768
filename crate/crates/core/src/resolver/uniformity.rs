use serde::Serialize;

use crate::error::Result;
use crate::exact::Field;
use crate::poly::{MonomialOrder, PolyRing};
use crate::resolver::stage::{build_surface_kernel, ChainConfig};
use crate::schemes::{random_point_coords, SubschemeData};

/// `(dim V, rank, c1, c2)` of a surface kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantTuple {
    pub dim_v: usize,
    pub rank: i64,
    pub c1: i64,
    pub c2: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SampleOutcome {
    Built {
        point: Vec<String>,
        invariants: InvariantTuple,
    },
    Failed {
        point: Vec<String>,
        code: String,
    },
}

impl SampleOutcome {
    fn key(&self) -> std::result::Result<&InvariantTuple, &str> {
        match self {
            SampleOutcome::Built { invariants, .. } => Ok(invariants),
            SampleOutcome::Failed { code, .. } => Err(code),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    pub d: u32,
    pub m: u32,
    pub seed: u64,
    pub samples: Vec<SampleOutcome>,
    /// All samples built with one tuple, or all failed with one error code.
    pub uniform: bool,
}

/// Builds `M_(p,m)` for the point `(0:0:1)` and `count` seeded random points
/// of `P^2` and compares their invariants.
pub fn uniformity_experiment<F: Field>(field: F, d: u32, m: u32, count: usize, seed: u64) -> Result<UniformityReport> {
    let ring = PolyRing::new(field.clone(), 3, MonomialOrder::GrevLex)?;
    let mut points = vec![vec![field.zero(), field.zero(), field.one()]];
    points.extend(random_point_coords(&field, 2, count, seed));
    let cfg = ChainConfig::new(d).with_m(m).with_seed(seed);
    let samples: Vec<SampleOutcome> = std::thread::scope(|s| {
        let handles: Vec<_> = points
            .iter()
            .map(|p| {
                let ring = &ring;
                let cfg = &cfg;
                s.spawn(move || -> Result<SampleOutcome> {
                    let label: Vec<String> = p.iter().map(|x| ring.field().format_elem(x)).collect();
                    let z = SubschemeData::from_points(ring, std::slice::from_ref(p), "point")?;
                    Ok(match build_surface_kernel(&z, cfg) {
                        Ok(stage) => SampleOutcome::Built {
                            point: label,
                            invariants: InvariantTuple {
                                dim_v: stage.dim_v(),
                                rank: stage.rank(),
                                c1: stage.chern.c_i64(1),
                                c2: stage.chern.c_i64(2),
                            },
                        },
                        Err(e) => SampleOutcome::Failed {
                            point: label,
                            code: e.code().to_string(),
                        },
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sample thread panicked"))
            .collect::<Result<_>>()
    })?;
    let uniform = samples.windows(2).all(|w| w[0].key() == w[1].key());
    Ok(UniformityReport {
        d,
        m,
        seed,
        samples,
        uniform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;

    #[test]
    fn coordinate_and_random_points_agree() {
        let rep = uniformity_experiment(PrimeField::default(), 3, 1, 3, 7).unwrap();
        assert!(rep.uniform);
        assert_eq!(rep.samples.len(), 4);
        let SampleOutcome::Built { invariants, .. } = &rep.samples[0] else {
            panic!("coordinate point failed")
        };
        assert_eq!(
            invariants,
            &InvariantTuple {
                dim_v: 9,
                rank: 8,
                c1: -3,
                c2: 8
            }
        );
    }

    #[test]
    fn below_threshold_fails_everywhere() {
        let rep = uniformity_experiment(PrimeField::default(), 3, 0, 2, 7).unwrap();
        assert!(rep.uniform);
        assert!(rep
            .samples
            .iter()
            .all(|s| matches!(s, SampleOutcome::Failed { code, .. } if code == "THRESHOLD")));
    }
}
