use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syzchain::chowk::{
    bezout_h2, c_from_ch, ch_from_c, filtration_report, torsion_split, ChernVector, ChowClass, KClass,
};
use syzchain::exact::{Field, PrimeField, Rationals};
use syzchain::groebner::{groebner_basis, ideal_syzygies, FreeModule, GradedModulePresentation, ModVec};
use syzchain::poly::{MonomialOrder, Poly, PolyRing};
use syzchain::resolver::{build_chain, build_surface_kernel, ChainConfig, KernelStage, Mode, VPolicy};
use syzchain::schemes::{builtin, random_form, SubschemeData};
use syzchain::Error;

fn class(n: usize, coeffs: &[i64]) -> ChowClass {
    ChowClass::from_ints(n, coeffs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn chow_ring_is_commutative_and_associative(
        n in 1usize..=4,
        a in prop::collection::vec(-20i64..=20, 5),
        b in prop::collection::vec(-20i64..=20, 5),
        c in prop::collection::vec(-20i64..=20, 5),
    ) {
        let (x, y, z) = (class(n, &a[..=n]), class(n, &b[..=n]), class(n, &c[..=n]));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
        prop_assert!(x.mul(&y).is_integral());
        // truncation: L^(n+1) = 0
        prop_assert!(ChowClass::line(n, 1).pow(n as u32 + 1).is_zero());
    }

    #[test]
    fn character_of_a_split_bundle(n in 1usize..=4, twists in prop::collection::vec(-6i64..=6, 1..=5)) {
        // c = prod (1 + a_i L), ch = sum exp(a_i L): both routes independent of ch_from_c
        let mut c = ChernVector::trivial(n, 0);
        let mut ch = ChowClass::zero(n);
        for &a in &twists {
            c = c.whitney(&ChernVector::line_bundle(n, a));
            ch = ch.add(&ChowClass::exp_line(n, a));
        }
        prop_assert_eq!(c.rank, twists.len() as i64);
        prop_assert_eq!(ch_from_c(&c), ch.clone());
        prop_assert_eq!(c_from_ch(&ch).unwrap(), c);
    }

    #[test]
    fn bundle_k_classes_are_additive(n in 1usize..=3, a in -4i64..=4, b in -4i64..=4) {
        let sum = ChernVector::line_bundle(n, a).whitney(&ChernVector::line_bundle(n, b));
        let k = KClass::from_ch(&sum.ch()).unwrap();
        prop_assert_eq!(k, KClass::line_bundle(n, a).add(&KClass::line_bundle(n, b)));
        prop_assert_eq!(KClass::line_bundle(n, a).ch(), ChowClass::exp_line(n, a));
    }
}

#[test]
fn chern_character_roundtrip_on_random_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let n = rng.gen_range(1..=4usize);
        let mut coeffs = vec![1i64];
        coeffs.extend((0..n).map(|_| rng.gen_range(-30..=30)));
        let c = ChernVector::new(rng.gen_range(0..=12), class(n, &coeffs)).unwrap();
        let ch = ch_from_c(&c);
        assert_eq!(c_from_ch(&ch).unwrap(), c);
        assert_eq!(ch.coeff(0), &BigRational::from_integer(BigInt::from(c.rank)));
    }
}

#[test]
fn bezout_certificates_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let (mut coprime, mut refused) = (0, 0);
    while coprime < 200 {
        let (m1, m2) = (rng.gen_range(2..=2000i64), rng.gen_range(2..=2000i64));
        let g = num_integer::Integer::gcd(&(m1 * m1 - 1), &(m2 * m2 - 1));
        match bezout_h2(m1, m2) {
            Ok(cert) => {
                assert_eq!(g, 1);
                assert!(cert.holds());
                assert_eq!(cert.a * (m1 * m1 - 1) + cert.b * (m2 * m2 - 1), 1);
                coprime += 1;
            }
            Err(Error::Coprimality { gcd }) => {
                assert_eq!(gcd, g);
                refused += 1;
            }
            Err(e) => panic!("{e}"),
        }
    }
    assert!(refused > 0);
}

/// `x(x-1)...(x-k+1)/k!` for any integer `x`.
fn binomial_polynomial(x: i64, k: usize) -> BigRational {
    (0..k as i64).fold(BigRational::from_integer(BigInt::from(1)), |acc, j| {
        acc * BigRational::new(BigInt::from(x - j), BigInt::from(j + 1))
    })
}

fn stage_sequences_balance<F: Field>(z: &SubschemeData<F>, stage: &KernelStage<F>) -> bool {
    let n = z.ambient_dim();
    let sub = KClass::from_ch(&stage.chern.ch()).unwrap();
    let quot = KClass::from_ch(&stage.target.ch()).unwrap();
    let middle = KClass::line_bundle(n, 0).scale(stage.dim_v() as i64);
    assert_eq!(sub.add(&quot), middle, "{} stage {}", z.label(), stage.index);
    assert_eq!(stage.chern.ch().add(&stage.target.ch()).coeffs(), middle.ch().coeffs());
    if stage.index == 0 {
        // I_Z(t) from the Hilbert polynomial of R/I_Z
        let t = stage.twist;
        let hp = z.ideal().hilbert_polynomial();
        let iz = KClass::from_values(n, |s| {
            binomial_polynomial(s + t + n as i64, n) - BigRational::from_integer(BigInt::from(hp.eval(s + t)))
        })
        .unwrap();
        assert_eq!(quot, iz, "{}", z.label());
    }
    if let Some(p) = &stage.presentation {
        let module =
            KClass::from_hilbert_polynomial(&groebner_basis(p.target(), p.columns()).unwrap().hilbert_polynomial());
        let expected = KClass::from_ch(&stage.chern.twist(-stage.cumulative_twist).ch()).unwrap();
        assert_eq!(module, expected, "{} module stage", z.label());
    }
    stage.presentation.is_some()
}

#[test]
fn k_classes_add_up_across_recorded_sequences() {
    let f = PrimeField::default();
    let cases: Vec<(&str, ChainConfig)> = vec![
        ("three-points", ChainConfig::new(3).with_m(2)),
        ("one-point", ChainConfig::new(3).with_m(1)),
        ("one-point", ChainConfig::new(1).with_m(1).with_mode(Mode::Module)),
        (
            "empty",
            ChainConfig::new(1)
                .with_m(1)
                .with_policy(VPolicy::Full)
                .with_mode(Mode::Module),
        ),
        (
            "three-points",
            ChainConfig::new(1)
                .with_m(2)
                .with_policy(VPolicy::Full)
                .with_mode(Mode::Module),
        ),
        ("collinear-points", ChainConfig::new(3)),
    ];
    let mut modules = 0;
    for (name, cfg) in cases {
        let z = builtin(name, f, Some(2)).unwrap();
        let stage = build_surface_kernel(&z, &cfg).unwrap();
        modules += usize::from(stage_sequences_balance(&z, &stage));
    }
    assert_eq!(modules, 3);
    let z = builtin("line-p3", f, None).unwrap();
    let chain = build_chain(&z, &ChainConfig::new(2)).unwrap();
    for s in &chain.stages {
        stage_sequences_balance(&z, s);
    }
}

fn test_modules() -> Vec<GradedModulePresentation<Rationals>> {
    let r = PolyRing::new(Rationals, 3, MonomialOrder::GrevLex).unwrap();
    let p = |s: &str| syzchain::poly::parse_poly(&r, s).unwrap();
    let mut out = Vec::new();
    let f2 = FreeModule::new(r.clone(), vec![0, 0]);
    out.push(
        GradedModulePresentation::new(
            f2.clone(),
            vec![ModVec {
                comps: vec![p("x0"), p("0")],
            }],
        )
        .unwrap(),
    );
    out.push(
        GradedModulePresentation::new(
            FreeModule::new(r.clone(), vec![0, 1]),
            vec![ModVec {
                comps: vec![p("x0^2"), p("0")],
            }],
        )
        .unwrap(),
    );
    out.push(ideal_syzygies(&r, &[p("x0*x1"), p("x0*x2"), p("x1*x2")]).unwrap());
    let unit = FreeModule::ring_module(&r);
    out.push(
        GradedModulePresentation::new(
            unit.clone(),
            vec![unit.from_poly(p("x0*x1")), unit.from_poly(p("x0*x2"))],
        )
        .unwrap(),
    );
    // torsion on a line plus a point-supported piece
    out.push(
        GradedModulePresentation::new(
            f2,
            vec![
                ModVec {
                    comps: vec![p("x0"), p("0")],
                },
                ModVec {
                    comps: vec![p("x1"), p("x2")],
                },
            ],
        )
        .unwrap(),
    );
    // random cokernels O(-1)^a -> O^b
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (a, b) in [(1, 2), (2, 3), (1, 3)] {
        let f = FreeModule::new(r.clone(), vec![0; b]);
        let cols = (0..a)
            .map(|_| ModVec {
                comps: (0..b)
                    .map(|_| random_form(&r, 1, &mut rng))
                    .collect::<Vec<Poly<Rationals>>>(),
            })
            .collect();
        out.push(GradedModulePresentation::new(f, cols).unwrap());
    }
    out
}

#[test]
fn torsion_free_parts_have_no_torsion() {
    for (i, m) in test_modules().iter().enumerate() {
        let split = torsion_split(m).unwrap();
        let again = torsion_split(&split.free_part).unwrap();
        assert!(again.is_torsion_free(), "module {i}");
        assert!(again.torsion_kclass().is_zero(), "module {i}");
        assert_eq!(again.free_kclass(), split.free_kclass(), "module {i}");
        assert!(split.annihilates_torsion(&split.nonzerodivisor));
    }
}

#[test]
fn filtrations_add_up_to_the_module() {
    for (i, m) in test_modules().iter().enumerate() {
        let hp = groebner_basis(m.target(), m.columns()).unwrap().hilbert_polynomial();
        let whole = KClass::from_hilbert_polynomial(&hp);
        let rep = filtration_report(m, 17).unwrap();
        assert!(rep.additive, "module {i}");
        assert_eq!(rep.kclass, whole, "module {i}");
        let sum = rep
            .quotients
            .iter()
            .fold(KClass { coeffs: vec![0; 3] }, |acc, q| acc.add(q.kclass()));
        assert_eq!(sum, whole, "module {i}");
    }
}
