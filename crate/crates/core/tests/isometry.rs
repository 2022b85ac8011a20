use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lpcat::adversarial::{FiniteAtomicOracle, LeftCEReal};
use lpcat::arith::rational::ratio;
use lpcat::arith::{Exponent, GaussianRational};
use lpcat::chains::{extract_atoms, partition_chains, Projector};
use lpcat::isometry::{
    build_t1, build_t2, glue, random_standard_vector, verify_isometry, Generator, PartialIsometry,
};
use lpcat::tree::{PresentationOracle, StandardPresentation};
use lpcat::vectors::{Dim, HybridVector};

fn synthesize<O: PresentationOracle>(o: &O, n: usize, depth: usize, level: u32) -> PartialIsometry {
    let eps = ratio(1, 8);
    let part = partition_chains(o, depth, 0).unwrap();
    let atoms = extract_atoms(o, &part, &eps, 20).unwrap();
    let proj = Projector::new(o, &part, &eps, 20).unwrap();
    let t1 = build_t1(o, &part, &atoms.candidates, Some(n), 20).unwrap();
    let t2 = build_t2(&proj, depth, level, 20).unwrap();
    glue(&t1, &t2).unwrap()
}

#[test]
fn self_map_is_identity() {
    let s = StandardPresentation::new(3, Exponent::integer(3).unwrap());
    let t = synthesize(&s, 3, 6, 4);
    assert_eq!(t.images.len(), 3 + 16);
    assert!(t.is_identity());
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..10 {
        let v = random_standard_vector(&mut rng, 3, 5);
        assert_eq!(t.apply(&v).unwrap(), v.to_approx());
    }
}

#[test]
fn finite_atomic_target() {
    let p = Exponent::integer(3).unwrap();
    let o = FiniteAtomicOracle::with_truth(3, p, &LeftCEReal::seed()).unwrap();
    let t = synthesize(&o, 3, 10, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let samples: Vec<HybridVector> = (0..20).map(|_| random_standard_vector(&mut rng, 3, 4)).collect();
    let rep = verify_isometry(&t, &samples, 6).unwrap();
    assert!(rep.passed(), "{rep:?}");

    let half = HybridVector::indicator(&ratio(0, 1), &ratio(1, 2), GaussianRational::one(), Dim::Finite(3)).unwrap();
    let img = t.apply(&half).unwrap();
    assert!(img.norm_p(&t.p, 10).contains_rational(&ratio(1, 2)));
    let e0 = Generator::Atom(0).vector(Dim::Finite(3)).unwrap();
    assert_eq!(t.apply(&e0).unwrap(), t.images[&Generator::Atom(0)]);

    let json = serde_json::to_string(&t).unwrap();
    let back: PartialIsometry = serde_json::from_str(&json).unwrap();
    assert_eq!(back, t);
}

#[test]
fn too_few_atoms() {
    let s = StandardPresentation::new(2, Exponent::integer(2).unwrap());
    let part = partition_chains(&s, 4, 0).unwrap();
    let atoms = extract_atoms(&s, &part, &ratio(1, 8), 10).unwrap();
    assert!(build_t1(&s, &part, &atoms.candidates, Some(3), 10).is_err());
}

fn finite_target(depth: usize) -> (FiniteAtomicOracle, lpcat::chains::ChainPartition) {
    let o = FiniteAtomicOracle::with_truth(3, Exponent::integer(3).unwrap(), &LeftCEReal::seed()).unwrap();
    let part = partition_chains(&o, depth, 0).unwrap();
    (o, part)
}

#[test]
fn atomic_part_is_normalized_and_disjoint() {
    let (o, part) = finite_target(12);
    let atoms = extract_atoms(&o, &part, &ratio(1, 8), 20).unwrap();
    let t1 = build_t1(&o, &part, &atoms.candidates, Some(3), 20).unwrap();
    let p = t1.p.clone();
    let imgs: Vec<_> = (0..3).map(|i| t1.images[&Generator::Atom(i)].clone()).collect();
    for img in &imgs {
        assert!(img.norm(&p, 16).contains_rational(&ratio(1, 1)), "{}", img.norm(&p, 16));
    }
    for (i, a) in imgs.iter().enumerate() {
        for b in &imgs[i + 1..] {
            assert!(a.support_disjoint(b));
        }
    }
    // ||T1(2 e_0 - 3 e_1)||^p = 2^3 + 3^3
    let v = HybridVector::atom(0, GaussianRational::real(ratio(2, 1)), Dim::Finite(3))
        .unwrap()
        .add(&HybridVector::atom(1, GaussianRational::real(ratio(-3, 1)), Dim::Finite(3)).unwrap())
        .unwrap();
    assert!(t1.apply(&v).unwrap().norm_p(&p, 16).contains_rational(&ratio(35, 1)));
}

#[test]
fn glue_keeps_both_factors() {
    let (o, part) = finite_target(8);
    let eps = ratio(1, 8);
    let atoms = extract_atoms(&o, &part, &eps, 20).unwrap();
    let t1 = build_t1(&o, &part, &atoms.candidates, Some(3), 20).unwrap();
    let proj = Projector::new(&o, &part, &eps, 20).unwrap();
    let t2 = build_t2(&proj, 8, 3, 20).unwrap();
    let t = glue(&t1, &t2).unwrap();
    for (g, img) in t1.images.iter().chain(&t2.images) {
        assert_eq!(&t.images[g], img);
    }
    let e0 = Generator::Atom(0).vector(Dim::Finite(3)).unwrap();
    assert_eq!(t.apply(&e0).unwrap(), t1.apply(&e0).unwrap());
    let whole = HybridVector::indicator(&ratio(0, 1), &ratio(1, 1), GaussianRational::one(), Dim::Finite(3)).unwrap();
    let img = t.apply(&whole).unwrap();
    assert_eq!(img, t2.apply(&whole).unwrap());
    assert!(img.norm(&t.p, 16).contains_rational(&ratio(1, 1)));
    assert!(t.apply(&HybridVector::zero(Dim::Finite(3))).unwrap().is_zero());
    assert!(glue(&t1, &t1).is_err());
    assert!(build_t2(&proj, 9, 3, 20).is_err());
}

mod properties {
    use std::sync::OnceLock;

    use proptest::prelude::*;

    use super::*;

    fn target() -> &'static PartialIsometry {
        static T: OnceLock<PartialIsometry> = OnceLock::new();
        T.get_or_init(|| {
            let (o, _) = finite_target(8);
            synthesize(&o, 3, 8, 3)
        })
    }

    fn sample() -> impl Strategy<Value = HybridVector> {
        any::<u64>().prop_map(|seed| random_standard_vector(&mut ChaCha8Rng::seed_from_u64(seed), 3, 3))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn images_are_linear(u in sample(), v in sample(), c in -5i64..6) {
            let t = target();
            let c = GaussianRational::real(ratio(c, 2));
            let lhs = t.apply(&u.scale(&c).add(&v).unwrap()).unwrap();
            let rhs = t.apply(&u).unwrap().scale(&c).add(&t.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn norms_are_preserved(v in sample()) {
            let t = target();
            let rep = verify_isometry(t, std::slice::from_ref(&v), 6).unwrap();
            prop_assert!(rep.samples[0].ok, "{:?}", rep.samples[0]);
        }

        #[test]
        fn disjoint_inputs_have_disjoint_images(v in sample(), cut in 1i64..8) {
            let t = target();
            let m = ratio(cut, 8);
            let left = HybridVector::continuous(v.steps().restrict(&ratio(0, 1), &m), Dim::Finite(3));
            let right = HybridVector::continuous(v.steps().restrict(&m, &ratio(1, 1)), Dim::Finite(3));
            prop_assert!(t.apply(&left).unwrap().support_disjoint(&t.apply(&right).unwrap()));
        }
    }
}
