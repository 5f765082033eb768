use num_bigint::BigInt;
use proptest::prelude::*;

use syzchain::exact::field::bareiss;
use syzchain::exact::{ExactMatrix, ExactScalar, Field, Matrix, PrimeField, Rationals};
use syzchain::Error;

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=20, 1usize..=20)
}

fn fp_matrix() -> impl Strategy<Value = (usize, Vec<Vec<u64>>)> {
    dims().prop_flat_map(|(r, c)| {
        // low-rank products show up often enough to exercise nontrivial kernels
        let inner = 1usize..=c.min(r).max(1);
        (
            Just(c),
            inner,
            prop::collection::vec(prop::collection::vec(0u64..32003, c), r),
        )
            .prop_flat_map(move |(c, k, full)| {
                let left = prop::collection::vec(prop::collection::vec(0u64..32003, k), r);
                let right = prop::collection::vec(prop::collection::vec(0u64..32003, c), k);
                (Just(c), Just(full), left, right, any::<bool>())
            })
            .prop_map(|(c, full, left, right, use_full)| {
                if use_full {
                    return (c, full);
                }
                let f = PrimeField::default();
                let prod = left
                    .iter()
                    .map(|lrow| {
                        (0..c)
                            .map(|j| {
                                lrow.iter()
                                    .zip(&right)
                                    .fold(0, |acc, (a, rrow)| f.add(&acc, &f.mul(a, &rrow[j])))
                            })
                            .collect()
                    })
                    .collect();
                (c, prod)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity_over_fp((cols, rows) in fp_matrix()) {
        let f = PrimeField::default();
        let m = Matrix::from_rows(&f, cols, rows.clone());
        let (rank, kernel) = m.rank_and_kernel();
        prop_assert!(rank <= rows.len().min(cols));
        prop_assert_eq!(rank + kernel.len(), cols);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == 0));
        }
        // kernel vectors are independent
        prop_assert_eq!(Matrix::from_rows(&f, cols, kernel.clone()).rank(), kernel.len());
        prop_assert_eq!(m.transpose().rank(), rank);
    }

    #[test]
    fn rank_over_fp_never_exceeds_rank_over_q(
        (cols, rows) in dims().prop_flat_map(|(r, c)| (Just(c), prop::collection::vec(prop::collection::vec(-5i64..=5, c), r)))
    ) {
        let q = Matrix::from_rows(&Rationals, cols, rows.iter().map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect()).collect());
        let f = PrimeField::default();
        let p = Matrix::from_rows(&f, cols, rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect());
        let rq = q.rank();
        prop_assert!(p.rank() <= rq);
        // fraction-free elimination is an independent route to the rational rank
        let mut ints: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        prop_assert_eq!(bareiss(&mut ints, cols).len(), rq);
    }

    #[test]
    fn scalars_stay_normalized(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
        let x = ExactScalar::rational(a, -b);
        let y = ExactScalar::rational(c, d);
        for s in [x.try_add(&y).unwrap(), x.try_mul(&y).unwrap(), x.try_sub(&y).unwrap()] {
            match s {
                ExactScalar::Rational(q) => {
                    prop_assert!(q.denom() > &BigInt::from(0));
                    let g = num_integer::Integer::gcd(q.numer(), q.denom());
                    prop_assert!(q.numer() == &BigInt::from(0) || g == BigInt::from(1));
                }
                _ => prop_assert!(false),
            }
        }
        let u = ExactScalar::mod_p(a, 32003).unwrap();
        let v = ExactScalar::mod_p(c, 32003).unwrap();
        for s in [u.try_add(&v).unwrap(), u.try_mul(&v).unwrap(), u.try_sub(&v).unwrap()] {
            match s {
                ExactScalar::ModP { value, p } => prop_assert!(value < p && p == 32003),
                _ => prop_assert!(false),
            }
        }
        prop_assert!(matches!(x.try_add(&u), Err(Error::VariantMismatch(_))));
    }
}

#[test]
fn integer_matrices_keep_their_rank_mod_p() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let f = PrimeField::default();
    let mut agree = 0;
    for _ in 0..200 {
        let r = rng.gen_range(1..=12);
        let c = rng.gen_range(1..=12);
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let q = Matrix::from_rows(
            &Rationals,
            c,
            rows.iter()
                .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
                .collect(),
        );
        let p = Matrix::from_rows(
            &f,
            c,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        );
        let (rq, rp) = (q.rank(), p.rank());
        assert!(rp <= rq);
        agree += usize::from(rp == rq);
    }
    assert!(agree >= 190, "{agree}/200");
}

#[test]
fn tagged_matrices_reject_mixed_entries() {
    let entries = vec![ExactScalar::integer(1), ExactScalar::mod_p(1, 32003).unwrap()];
    let m = ExactMatrix::new(1, 2, entries).unwrap();
    assert!(matches!(m.rank(), Err(Error::VariantMismatch(_))));
    let ok = ExactMatrix::new(1, 2, vec![ExactScalar::rational(1, 2), ExactScalar::integer(3)]).unwrap();
    let (rank, kernel) = ok.rank_and_kernel().unwrap();
    assert_eq!(rank, 1);
    assert_eq!(kernel.len(), 1);
    assert!(ok.mul_vec(&kernel[0]).unwrap().iter().all(|x| x.is_zero()));
}
