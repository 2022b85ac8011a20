mod common;

use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{bisect_pow, exponent};
use lpcat::adversarial::{
    decode_fin, decode_gamma, decode_membership, left_ce_from_schedule, CESetSchedule, Complement, FiniteAtomicOracle,
    GroundTruthProjection, InfiniteAtomicOracle, LeftCEReal, ProjectionKind,
};
use lpcat::arith::rational::{int, pow2, powi, ratio};
use lpcat::arith::{Dyadic, GaussianRational, Rational, Surd};
use lpcat::chains::{partition_chains, Projector};
use lpcat::error::Error;
use lpcat::tree::{materialize, Membership, NodePath, PresentationOracle};

fn p3() -> lpcat::arith::Exponent {
    exponent("3")
}

fn spine(len: usize) -> NodePath {
    NodePath(vec![0; len])
}

/// Base-3 digit of `x` at position `pos` (`pos = 1` is the first after the point).
fn ternary_digit(x: &Rational, pos: u32) -> i64 {
    let scaled = x * powi(&int(3), pos as i64);
    let d = scaled.floor().to_integer() % 3;
    i64::try_from(d).unwrap()
}

#[test]
fn single_element_schedule_codes_gamma() {
    let s = CESetSchedule::finite([(0, 0)]).unwrap();
    let (g, q) = left_ce_from_schedule(&s, 20).unwrap();
    assert_eq!(*g.gamma(), ratio(35, 108));
    assert!(q.windows(2).all(|w| w[0] < w[1]));
    assert!(q.iter().all(|x| x < g.gamma()));
    assert!(matches!(left_ce_from_schedule(&CESetSchedule::empty(), 5), Err(Error::EmptySchedule)));
}

#[test]
fn finite_masses_have_closed_forms() {
    let p = p3();
    let lce = LeftCEReal::seed();
    let o = FiniteAtomicOracle::with_truth(3, p.clone(), &lce).unwrap();
    let q = |j| lce.q(j);
    assert_eq!(o.mass(&NodePath::root()), Some(int(4) - q(0)));
    for j in 0..6u64 {
        assert_eq!(o.mass(&spine(j as usize + 1)), Some(Rational::one() - q(j)));
    }
    for mu in [vec![1], vec![1, 0], vec![1, 1, 0], vec![1, 0, 1, 1]] {
        let len = mu.len() as i64;
        assert_eq!(o.mass(&NodePath(mu)), Some(pow2(-len + 1)));
    }
    // the seed values: 1 - q_1 = 1/2, q_1 - q_0 = 1/6
    assert_eq!(o.mass(&NodePath::from([0, 0])), Some(ratio(1, 2)));
    assert_eq!(o.mass(&NodePath::from([0, 1])), Some(ratio(1, 6)));
    let tree = materialize(&o, 8, 0).unwrap();
    for (node, label) in tree.labels() {
        let want = o.mass(node).unwrap();
        assert!(label.norm_p(&p, 24).contains_rational(&want), "{node}");
        assert!(o.node_norm_p(node, 24).unwrap().contains_rational(&want), "{node}");
    }
}

#[test]
fn spine_approximates_the_atom_linearly() {
    // ||e_0 - (1 - gamma)^{-1/p} phi((0)^{K+1})||^p = (gamma - q_K) / (1 - gamma)
    let p = p3();
    let lce = LeftCEReal::seed();
    let gamma = lce.gamma().clone();
    let o = FiniteAtomicOracle::with_truth(3, p.clone(), &lce).unwrap();
    let s = Surd::radical(GaussianRational::one(), &(Rational::one() - &gamma), &-p.recip()).unwrap();
    let e0 = lpcat::vectors::ApproxVector::atom(0, Surd::one(), o.dim()).unwrap();
    for big_k in 0..6u64 {
        let label = o.label(&spine(big_k as usize + 1)).unwrap();
        let d = e0.sub(&label.map(|c| c.mul(&s))).unwrap();
        let want = (&gamma - lce.q(big_k)) / (Rational::one() - &gamma);
        assert!(d.norm_p(&p, 30).contains_rational(&want), "K = {big_k}");
    }
}

#[test]
fn infinite_masses_halve() {
    let p = p3();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let schedules: Vec<CESetSchedule> = (0..5).map(|i| CESetSchedule::random(&mut rng, 5, 5, 3, i % 2 == 0)).collect();
    let o = InfiniteAtomicOracle::with_truth(p.clone(), schedules);
    let stage = 8;
    for e in 0..5u64 {
        let node = NodePath::from([e]);
        let m = o.node_norm_p(&node, 30).unwrap();
        assert!(m.contains_rational(&pow2(-3 * (e as i64 + 1))));
        let mut frontier = vec![node];
        while let Some(n) = frontier.pop() {
            if n.len() > 4 {
                continue;
            }
            let parent = o.node_norm_p(&n, 40).unwrap();
            for c in o.children(&n, stage) {
                let child = o.node_norm_p(&c, 40).unwrap();
                assert!(child.mul_pow2(1).overlaps(&parent), "{c}");
                frontier.push(c);
            }
        }
    }
}

#[test]
fn infinite_membership_follows_the_schedule() {
    let s = CESetSchedule::finite([(4, 2), (7, 5)]).unwrap();
    let o = InfiniteAtomicOracle::new(p3(), vec![s]);
    let depth1 = NodePath::from([0, 1]);
    let depth2 = NodePath::from([0, 1, 0]);
    assert_eq!(o.member(&NodePath::from([0]), 0), Membership::In);
    assert_eq!(o.member(&depth1, 1), Membership::Unknown);
    assert_eq!(o.member(&depth1, 2), Membership::In);
    assert_eq!(o.member(&depth2, 4), Membership::Unknown);
    assert_eq!(o.member(&depth2, 5), Membership::In);
}

#[test]
fn ground_truth_projection_norms() {
    let p = p3();
    let schedules = vec![
        CESetSchedule::finite([(1, 0), (2, 1)]).unwrap(),
        CESetSchedule::new(vec![(0, 0)], true).unwrap(),
        CESetSchedule::empty(),
        CESetSchedule::new(vec![], true).unwrap(),
    ];
    let o = InfiniteAtomicOracle::with_truth(p.clone(), schedules);
    let po = GroundTruthProjection::new(&o, ProjectionKind::Continuous);
    for e in 0..4u64 {
        let n = lpcat::adversarial::ProjectionOracle::projected_norm(&po, &NodePath::from([e]), 30).unwrap();
        let want = if o.in_fin(e) { Rational::zero() } else { pow2(-(e as i64 + 1)) };
        assert!(n.contains_rational(&want), "e = {e}: {n}");
    }

    let lce = LeftCEReal::seed();
    let f = FiniteAtomicOracle::with_truth(3, p.clone(), &lce).unwrap();
    let axis = GroundTruthProjection::new(&f, ProjectionKind::Axis(0));
    let n = lpcat::adversarial::ProjectionOracle::projected_norm(&axis, &NodePath::from([0]), 30).unwrap();
    let (lo, hi) = bisect_pow(&(Rational::one() - lce.gamma()), 1, 3, 60);
    assert!(n.lo().to_rational() <= hi && lo <= n.hi().to_rational());
}

#[test]
fn gamma_is_decoded_and_refined() {
    let s = CESetSchedule::finite([(0, 0)]).unwrap();
    let lce = LeftCEReal::from_schedule(&s).unwrap();
    let o = FiniteAtomicOracle::with_truth(3, p3(), &lce).unwrap();
    let po = GroundTruthProjection::new(&o, ProjectionKind::Axis(0));
    let g20 = decode_gamma(&po, 20).unwrap();
    let g25 = decode_gamma(&po, 25).unwrap();
    assert!(g20.contains_rational(&ratio(35, 108)));
    assert!(g20.width() < Dyadic::pow2(-20));
    assert!(g25.is_subset_of(&g20));
}

#[test]
fn membership_bits_through_chains() {
    let s = CESetSchedule::finite([(0, 1), (3, 4)]).unwrap();
    let lce = LeftCEReal::from_schedule(&s).unwrap();
    let o = FiniteAtomicOracle::with_truth(2, p3(), &lce).unwrap();
    let part = partition_chains(&o, 10, 0).unwrap();
    let proj = Projector::new(&o, &part, &ratio(1, 8), 24).unwrap();
    let g = decode_gamma(&Complement::new(&o, &proj), 20).unwrap();
    assert_eq!(decode_membership(&g, 3).unwrap(), vec![true, false, false, true]);
}

#[test]
fn fin_threshold_margins() {
    let p = p3();
    let schedules = vec![
        CESetSchedule::finite([(0, 0), (1, 0)]).unwrap(),
        CESetSchedule::new(vec![(0, 0)], true).unwrap(),
        CESetSchedule::finite([(5, 1)]).unwrap(),
        CESetSchedule::new(vec![], true).unwrap(),
    ];
    let o = InfiniteAtomicOracle::with_truth(p, schedules);
    let po = GroundTruthProjection::new(&o, ProjectionKind::Continuous);
    for e in 0..4u64 {
        let dec = decode_fin(&po, e).unwrap();
        assert_eq!(dec.in_fin, o.in_fin(e), "e = {e}");
        let q = Dyadic::parse(&dec.q).unwrap().to_rational();
        let margin = (q - pow2(-(e as i64 + 2))).abs();
        assert!(margin >= pow2(-(e as i64 + 3)), "e = {e}: margin {margin}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gamma_digits_code_the_set(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = CESetSchedule::random(&mut rng, 9, 8, 4, false);
        prop_assume!(!s.elements().is_empty());
        let (g, q) = left_ce_from_schedule(&s, 20).unwrap();
        prop_assert!(q.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(q.iter().all(|x| x < g.gamma()));
        let members = s.members();
        for n in 0..10u64 {
            let d = ternary_digit(&(g.gamma() - ratio(1, 4)), n as u32 + 3);
            prop_assert_eq!(d == 2, members.contains(&n));
            prop_assert!(d != 1);
        }
    }

    #[test]
    fn decoded_bits_match_ground_truth(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = CESetSchedule::random(&mut rng, 7, 6, 4, false);
        prop_assume!(!s.elements().is_empty());
        let lce = LeftCEReal::from_schedule(&s).unwrap();
        let o = FiniteAtomicOracle::with_truth(2, p3(), &lce).unwrap();
        let g = decode_gamma(&GroundTruthProjection::new(&o, ProjectionKind::Axis(0)), 24).unwrap();
        prop_assert!(g.contains_rational(lce.gamma()));
        let bits = decode_membership(&g, 7).unwrap();
        let want: Vec<bool> = (0..=7).map(|x| s.members().contains(&x)).collect();
        prop_assert_eq!(bits, want);
    }

    #[test]
    fn constructions_materialize_validly(seed in any::<u64>(), n in 1u64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = CESetSchedule::random(&mut rng, 6, 6, 3, false);
        prop_assume!(!s.elements().is_empty());
        let lce = LeftCEReal::from_schedule(&s).unwrap();
        let o = FiniteAtomicOracle::with_truth(n, p3(), &lce).unwrap();
        prop_assert!(materialize(&o, 6, 0).unwrap().validate(&p3()).passed());
        let schedules: Vec<CESetSchedule> = (0..4).map(|i| CESetSchedule::random(&mut rng, 5, 5, 3, i % 2 == 1)).collect();
        let inf = InfiniteAtomicOracle::with_truth(p3(), schedules);
        prop_assert!(materialize(&inf, 5, 6).unwrap().validate(&p3()).passed());
    }
}
