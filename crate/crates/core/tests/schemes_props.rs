use proptest::prelude::*;

use syzchain::exact::PrimeField;
use syzchain::poly::{MonomialOrder, PolyRing};
use syzchain::schemes::{
    builtin, h0_by_evaluation, h0_ideal_twist, h1_ideal_twist, random_points, CurveSection, Polarization, SubschemeData,
};

fn zero_dimensional_instances() -> Vec<SubschemeData<PrimeField>> {
    let f = PrimeField::default();
    let mut out: Vec<_> = ["three-points", "one-point", "collinear-points"]
        .iter()
        .map(|n| builtin(n, f, None).unwrap())
        .collect();
    for (count, seed) in [(2, 1), (5, 2), (7, 3), (10, 4)] {
        out.push(random_points(f, 2, count, seed).unwrap());
    }
    out.push(random_points(f, 3, 4, 5).unwrap());
    out
}

#[test]
fn euler_characteristic_of_twisted_ideal_sheaves() {
    for z in zero_dimensional_instances() {
        let n = z.ambient_dim() as u64;
        let pts = z.points().unwrap().to_vec();
        assert_eq!(z.degree(), pts.len() as i64, "{}", z.label());
        for k in 0..=8i64 {
            let h0 = h0_ideal_twist(&z, k);
            let h1 = h1_ideal_twist(&z, k).unwrap();
            assert_eq!(h0, h0_by_evaluation(z.ring(), &pts, k as u32));
            assert!(h1 >= 0);
            assert_eq!(
                h0 - h1,
                num_integer::binomial(k as u64 + n, n) as i64 - z.degree(),
                "{} k = {k}",
                z.label()
            );
        }
        assert_eq!(z.hilbert_function(20), z.degree());
    }
}

#[test]
fn h1_vanishes_from_the_regularity_on() {
    for z in zero_dimensional_instances() {
        let reg = z.regularity().unwrap();
        for k in (reg - 1).max(0)..=reg + 4 {
            assert_eq!(h1_ideal_twist(&z, k).unwrap(), 0, "{} k = {k} reg = {reg}", z.label());
        }
        if reg >= 2 {
            // the regularity is sharp: h1 is nonzero one step earlier
            assert!(h1_ideal_twist(&z, reg - 2).unwrap() > 0, "{}", z.label());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn random_point_sets_agree_with_evaluation(count in 1usize..=10, seed in any::<u64>()) {
        let z = random_points(PrimeField::default(), 2, count, seed).unwrap();
        let pts = z.points().unwrap().to_vec();
        for k in 0..=8u32 {
            prop_assert_eq!(h0_ideal_twist(&z, k as i64), h0_by_evaluation(z.ring(), &pts, k));
        }
    }
}

#[test]
fn curve_sections_grow_linearly_and_match_the_curve_ring() {
    for d in 3..=5u32 {
        let pol = Polarization::new(2, d).unwrap();
        let ring = PolyRing::new(PrimeField::default(), 3, MonomialOrder::GrevLex).unwrap();
        let c = CurveSection::random(&ring, d, 7).unwrap();
        let mut prev = None;
        for m in 1..=4i64 {
            let rr = pol.curve_sections(m).unwrap();
            // Riemann-Roch against the Hilbert function of the plane curve
            assert_eq!(rr, c.sections(m * d as i64), "d = {d}, m = {m}");
            if let Some(p) = prev {
                assert_eq!(rr - p, (d * d) as i64);
            }
            prev = Some(rr);
        }
    }
    let pol = Polarization::new(3, 2).unwrap();
    let ring = PolyRing::new(PrimeField::default(), 4, MonomialOrder::GrevLex).unwrap();
    let c = CurveSection::random(&ring, 2, 3).unwrap();
    for m in 1..=3i64 {
        assert_eq!(pol.curve_sections(m).unwrap(), c.sections(2 * m));
    }
}
