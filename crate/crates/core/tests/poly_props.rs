use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syzchain::exact::{Field, PrimeField};
use syzchain::poly::{graded_piece_matrix, parse_poly, GradedPieceBasis, MonomialOrder, Poly, PolyRing};
use syzchain::schemes::random_form;

fn ring(nvars: usize) -> PolyRing<PrimeField> {
    PolyRing::new(PrimeField::default(), nvars, MonomialOrder::GrevLex).unwrap()
}

fn sparse_form(r: &PolyRing<PrimeField>, d: u32, rng: &mut ChaCha8Rng) -> Poly<PrimeField> {
    let f = r.field();
    let mut terms = Vec::new();
    for m in r.monomials_of_degree(d) {
        if rng.gen_bool(0.4) {
            terms.push((m, f.from_i64(rng.gen_range(-20..=20))));
        }
    }
    r.from_terms(terms)
}

#[test]
fn full_pieces_have_binomial_dimension() {
    for n in 1..=4usize {
        let r = ring(n + 1);
        for d in 0..=12u32 {
            let expected = num_integer::binomial(d as u64 + n as u64, n as u64);
            let basis = GradedPieceBasis::new(&r, d);
            assert_eq!(basis.dim() as u64, expected, "n = {n}, d = {d}");
            assert_eq!(r.piece_dim(d as i64), expected);
            let ms = r.monomials_of_degree(d);
            assert!(ms
                .windows(2)
                .all(|w| r.cmp(&w[0], &w[1]) == std::cmp::Ordering::Greater));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn piece_rank_grows_with_generators(seed in any::<u64>(), nvars in 2usize..=4, target in 2u32..=4) {
        let r = ring(nvars);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens = Vec::new();
        let mut last = 0;
        for _ in 0..5 {
            let e = rng.gen_range(1..=target);
            gens.push(sparse_form(&r, e, &mut rng));
            let rank = graded_piece_matrix(&r, &gens, target).unwrap().rank();
            prop_assert!(rank >= last);
            prop_assert!(rank as u64 <= r.piece_dim(target as i64));
            last = rank;
        }
    }

    #[test]
    fn products_commute_with_evaluation(seed in any::<u64>(), nvars in 2usize..=4, d1 in 0u32..=3, d2 in 0u32..=3) {
        let r = ring(nvars);
        let f = *r.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = sparse_form(&r, d1, &mut rng);
        let b = sparse_form(&r, d2, &mut rng);
        let ab = r.mul(&a, &b);
        let sum = r.add(&a, &r.scale(&b, &f.from_i64(0)));
        prop_assert!(ab.is_homogeneous() && sum.is_homogeneous());
        prop_assert!(r.sub(&a, &a).is_zero());
        for _ in 0..50 {
            let p: Vec<u64> = (0..nvars).map(|_| rng.gen_range(0..32003)).collect();
            let lhs = r.evaluate(&ab, &p).unwrap();
            let rhs = f.mul(&r.evaluate(&a, &p).unwrap(), &r.evaluate(&b, &p).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn terms_stay_sorted_and_nonzero(seed in any::<u64>(), d in 1u32..=4) {
        let r = ring(3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_form(&r, d, &mut rng);
        let b = sparse_form(&r, d, &mut rng);
        for p in [r.add(&a, &b), r.sub(&a, &b), r.mul(&a, &b), r.pow(&b, 2)] {
            prop_assert!(p.terms().iter().all(|(_, c)| *c != 0));
            prop_assert!(p.terms().windows(2).all(|w| r.cmp(&w[0].0, &w[1].0) == std::cmp::Ordering::Greater));
            prop_assert!(p.is_homogeneous());
        }
    }
}

#[test]
fn display_roundtrip_on_random_forms() {
    let r = ring(4);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 0..=4 {
        let p = sparse_form(&r, d, &mut rng);
        assert_eq!(parse_poly(&r, &r.format(&p)).unwrap(), p);
    }
}
