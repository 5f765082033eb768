use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::Field;
use crate::poly::{parse_poly, MonomialOrder, PolyRing};
use crate::schemes::subscheme::SubschemeData;

/// Names accepted by [`builtin`].
pub const BUILTINS: &[&str] = &[
    "three-points",
    "one-point",
    "empty",
    "collinear-points",
    "line-p3",
    "twisted-cubic",
];

/// Ambient dimension of a builtin instance (`empty` defaults to the plane).
pub fn builtin_ambient(name: &str) -> Result<usize> {
    match name {
        "three-points" | "one-point" | "empty" | "collinear-points" => Ok(2),
        "line-p3" | "twisted-cubic" => Ok(3),
        _ => Err(unknown(name)),
    }
}

fn unknown(name: &str) -> Error {
    Error::Input(format!(
        "unknown builtin '{name}'; expected one of {}",
        BUILTINS.join(", ")
    ))
}

fn ints<F: Field>(f: &F, rows: &[&[i64]]) -> Vec<Vec<F::Elem>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
        .collect()
}

/// Builds a named test subscheme. `ambient` overrides the dimension of
/// `empty` only.
pub fn builtin<F: Field>(name: &str, field: F, ambient: Option<usize>) -> Result<SubschemeData<F>> {
    let n = match (name, ambient) {
        ("empty", Some(n)) => n,
        (_, Some(n)) if n != builtin_ambient(name)? => {
            return Err(Error::Input(format!(
                "builtin '{name}' lives in P^{}",
                builtin_ambient(name)?
            )))
        }
        _ => builtin_ambient(name)?,
    };
    let ring = PolyRing::new(field.clone(), n + 1, MonomialOrder::GrevLex)?;
    let polys = |xs: &[&str]| -> Result<Vec<_>> { xs.iter().map(|s| parse_poly(&ring, s)).collect() };
    match name {
        "three-points" => SubschemeData::from_points(&ring, &ints(&field, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]), name),
        "one-point" => SubschemeData::from_points(&ring, &ints(&field, &[&[0, 0, 1]]), name),
        "collinear-points" => {
            SubschemeData::from_points(&ring, &ints(&field, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]), name)
        }
        "empty" => SubschemeData::from_ideal(&ring, &[ring.one()], name),
        "line-p3" => SubschemeData::from_ideal(&ring, &polys(&["x0", "x1"])?, name),
        "twisted-cubic" => {
            SubschemeData::from_ideal(&ring, &polys(&["x0*x2-x1^2", "x0*x3-x1*x2", "x1*x3-x2^2"])?, name)
        }
        _ => Err(unknown(name)),
    }
}

/// Seeded random affine representatives with coordinates in `[0, 32003)`.
pub fn random_point_coords<F: Field>(field: &F, n: usize, count: usize, seed: u64) -> Vec<Vec<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| loop {
            let p: Vec<i64> = (0..=n).map(|_| rng.gen_range(0..32003)).collect();
            if p.iter().any(|&x| x != 0) {
                break p.iter().map(|&x| field.from_i64(x)).collect();
            }
        })
        .collect()
}

/// `count` seeded random points of `P^n`.
pub fn random_points<F: Field>(field: F, n: usize, count: usize, seed: u64) -> Result<SubschemeData<F>> {
    let ring = PolyRing::new(field.clone(), n + 1, MonomialOrder::GrevLex)?;
    let pts = random_point_coords(&field, n, count, seed);
    SubschemeData::from_points(&ring, &pts, &format!("random-points-{count}-seed-{seed}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::PrimeField;
    use crate::schemes::subscheme::h0_ideal_twist;

    #[test]
    fn all_builtins_construct() {
        for name in BUILTINS {
            let z = builtin(name, PrimeField::default(), None).unwrap();
            assert_eq!(z.ambient_dim(), builtin_ambient(name).unwrap());
            assert!(z.codim() >= 2);
        }
        let line = builtin("line-p3", PrimeField::default(), None).unwrap();
        assert_eq!(h0_ideal_twist(&line, 4), 30);
        let cubic = builtin("twisted-cubic", PrimeField::default(), None).unwrap();
        assert_eq!(h0_ideal_twist(&cubic, 4), 22);
        assert!(builtin("nope", PrimeField::default(), None).is_err());
        let e3 = builtin("empty", PrimeField::default(), Some(3)).unwrap();
        assert_eq!(e3.ambient_dim(), 3);
    }

    #[test]
    fn random_points_match_evaluation_counts() {
        for (count, seed) in [(4usize, 1u64), (7, 2), (10, 3)] {
            let z = random_points(PrimeField::default(), 2, count, seed).unwrap();
            assert_eq!(z.degree(), count as i64);
            for k in 0..=8 {
                // h0_ideal_twist asserts agreement with the evaluation matrix
                let h = h0_ideal_twist(&z, k);
                assert!(h >= 0);
            }
        }
    }
}
