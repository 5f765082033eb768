use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syzchain::exact::{Field, PrimeField, Rationals};
use syzchain::groebner::{
    buchberger, contains, regularity, saturate, saturate_by_variables, FreeResolution, GroebnerBasis,
};
use syzchain::poly::{ideal_piece_dim, Monomial, MonomialOrder, Poly, PolyRing};
use syzchain::schemes::{builtin, BUILTINS};

fn ring(nvars: usize) -> PolyRing<PrimeField> {
    PolyRing::new(PrimeField::default(), nvars, MonomialOrder::GrevLex).unwrap()
}

fn sparse_form<F: Field>(r: &PolyRing<F>, d: u32, rng: &mut ChaCha8Rng) -> Poly<F> {
    let f = r.field();
    let mut terms = Vec::new();
    for m in r.monomials_of_degree(d) {
        if rng.gen_bool(0.5) {
            terms.push((m, f.from_i64(rng.gen_range(-9..=9))));
        }
    }
    r.from_terms(terms)
}

fn random_ideal<F: Field>(r: &PolyRing<F>, count: usize, max_deg: u32, rng: &mut ChaCha8Rng) -> Vec<Poly<F>> {
    (0..count)
        .map(|_| {
            let d = rng.gen_range(1..=max_deg);
            sparse_form(r, d, rng)
        })
        .filter(|p| !p.is_zero())
        .collect()
}

fn random_monomial(nvars: usize, max_deg: u32, rng: &mut ChaCha8Rng) -> Monomial {
    let d = rng.gen_range(1..=max_deg);
    let mut exps = vec![0u16; nvars];
    for _ in 0..d {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

/// S-polynomials formed and reduced by hand, without the engine's reducer.
fn s_pairs_reduce_to_zero<F: Field>(gb: &GroebnerBasis<F>) -> bool {
    let r = gb.ring();
    let f = r.field();
    let polys = gb.polys();
    for j in 0..polys.len() {
        for i in 0..j {
            let (a, b) = (&polys[i], &polys[j]);
            let l = a.lm().lcm(&b.lm());
            let left = r.mul_term(a, &l.div(&a.lm()), &f.inv(a.lc()));
            let right = r.mul_term(b, &l.div(&b.lm()), &f.inv(b.lc()));
            if !gb.normal_form_poly(&r.sub(&left, &right)).is_zero() {
                return false;
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn buchberger_postcondition(seed in any::<u64>(), nvars in 2usize..=4, count in 1usize..=4) {
        let r = ring(nvars);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_ideal(&r, count, 3, &mut rng);
        let gb = buchberger(&r, &gens).unwrap();
        prop_assert!(gb.verify_s_pairs());
        prop_assert!(s_pairs_reduce_to_zero(&gb));
        prop_assert!(gb.is_reduced());
        for g in &gens {
            prop_assert!(gb.contains_poly(g));
        }
        // reduced bases are unique: shuffled generators give the same basis
        let mut shuffled = gens.clone();
        shuffled.reverse();
        shuffled.extend(gb.polys());
        prop_assert!(buchberger(&r, &shuffled).unwrap().same_as(&gb));
    }

    #[test]
    fn staircase_matches_piece_rank(seed in any::<u64>(), nvars in 3usize..=4, count in 2usize..=4) {
        let r = ring(nvars);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_ideal(&r, count, 2, &mut rng);
        let gb = buchberger(&r, &gens).unwrap();
        let reg = regularity(&FreeResolution::of_ideal(&r, &gb.polys()).unwrap()).unwrap().max(0);
        for k in 0..=(2 * reg + 2) {
            let expected = r.piece_dim(k) - ideal_piece_dim(&r, &gens, k as u32) as u64;
            prop_assert_eq!(gb.hilbert_function(k), expected, "k = {}", k);
        }
    }

    #[test]
    fn resolutions_are_complexes(seed in any::<u64>(), nvars in 2usize..=4, count in 1usize..=4) {
        let r = ring(nvars);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = random_ideal(&r, count, 2, &mut rng);
        let res = FreeResolution::of_ideal(&r, &gens).unwrap();
        prop_assert!(res.is_complex());
        prop_assert!(res.is_minimal());
        prop_assert!(res.length() <= nvars);
        for w in res.maps().windows(2) {
            for col in w[1].columns() {
                prop_assert!(w[0].apply(col).is_zero());
            }
        }
    }
}

#[test]
fn saturation_is_idempotent_and_extensive() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for instance in 0..20 {
        let nvars = 3 + instance % 2;
        let r = ring(nvars);
        let count = rng.gen_range(2..=5);
        let mut gens: Vec<Poly<PrimeField>> = (0..count)
            .map(|_| r.term(random_monomial(nvars, 4, &mut rng), 1))
            .collect();
        // an embedded m-primary piece so saturation has work to do
        if instance % 3 == 0 {
            gens.extend((0..nvars).map(|v| r.pow(&r.var(v), 5)));
        }
        let i = buchberger(&r, &gens).unwrap();
        let sat = saturate(&i).unwrap();
        assert!(contains(&sat, &i), "instance {instance}: not extensive");
        assert!(
            saturate(&sat).unwrap().same_as(&sat),
            "instance {instance}: not idempotent"
        );
        assert!(
            saturate_by_variables(&i).unwrap().same_as(&sat),
            "instance {instance}: routes disagree"
        );
    }
}

#[test]
fn betti_numbers_do_not_depend_on_the_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for instance in 0..16 {
        let nvars = 3 + instance % 2;
        let grevlex = PolyRing::new(Rationals, nvars, MonomialOrder::GrevLex).unwrap();
        let lex = grevlex.with_order(MonomialOrder::Lex);
        let gens: Vec<Poly<Rationals>> = if instance % 2 == 0 {
            (0..rng.gen_range(2..=4))
                .map(|_| {
                    let a = grevlex.term(random_monomial(nvars, 4, &mut rng), Rationals.one());
                    let d = a.degree().unwrap();
                    let mut exps = vec![0u16; nvars];
                    for _ in 0..d {
                        exps[rng.gen_range(0..nvars)] += 1;
                    }
                    let b = grevlex.term(
                        Monomial::from_exponents(&exps),
                        Rationals.from_i64(rng.gen_range(-3..=3)),
                    );
                    grevlex.add(&a, &b)
                })
                .filter(|p| !p.is_zero())
                .collect()
        } else {
            random_ideal(&grevlex, rng.gen_range(2..=3), 2, &mut rng)
        };
        let a = FreeResolution::of_ideal(&grevlex, &gens).unwrap().betti();
        let lex_gens: Vec<_> = gens.iter().map(|g| lex.import(g)).collect();
        let b = FreeResolution::of_ideal(&lex, &lex_gens).unwrap().betti();
        assert_eq!(a, b, "instance {instance}");
    }
}

#[test]
fn builtin_staircases_match_linear_algebra() {
    for name in BUILTINS {
        let z = builtin(name, PrimeField::default(), None).unwrap();
        let r = z.ring();
        let gens = z.generators();
        for k in 0..=8i64 {
            let expected = r.piece_dim(k) - ideal_piece_dim(r, &gens, k as u32) as u64;
            assert_eq!(z.ideal().hilbert_function(k), expected, "{name}, k = {k}");
            assert_eq!(z.hilbert_function(k), expected as i64, "{name}, k = {k}");
        }
    }
}
