mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{bisect_pow, enumerate, exponent, random_coeffs, random_disintegration};
use lpcat::adversarial::{CESetSchedule, FiniteAtomicOracle, InfiniteAtomicOracle, LeftCEReal};
use lpcat::arith::rational::{int, pow2, ratio};
use lpcat::arith::{GaussianRational, Rational, Surd};
use lpcat::tree::{
    downset, materialize, rational_vector_norm, rational_vector_norm_p, ConcreteDisintegration, ConcreteOracle,
    Membership, NodePath, PresentationOracle, StandardPresentation, TreeJson,
};
use lpcat::vectors::{ApproxVector, Dim};

fn chi(a: Rational, b: Rational) -> ApproxVector {
    ApproxVector::indicator(&a, &b, Surd::one(), Dim::Finite(0)).unwrap()
}

fn path(s: &str) -> NodePath {
    s.parse().unwrap()
}

fn coeffs(pairs: &[(&str, i64)]) -> BTreeMap<NodePath, GaussianRational> {
    pairs.iter().map(|(n, c)| (path(n), GaussianRational::real(int(*c)))).collect()
}

#[test]
fn finite_construction_truncation_is_valid() {
    let p = exponent("3");
    let o = FiniteAtomicOracle::with_truth(3, p.clone(), &LeftCEReal::seed()).unwrap();
    let tree = materialize(&o, 6, 0).unwrap();
    let rep = tree.validate(&p);
    assert!(rep.passed(), "{:?}", rep.violations);
    assert!(rep.summative && rep.separating && rep.injective && rep.non_vanishing);
}

#[test]
fn equal_siblings_are_not_separated() {
    let labels = BTreeMap::from([
        (NodePath::root(), chi(Rational::zero(), Rational::one())),
        (path("0"), chi(Rational::zero(), Rational::one())),
        (path("1"), chi(Rational::zero(), Rational::one())),
    ]);
    let tree = ConcreteDisintegration::new(labels, BTreeSet::new()).unwrap();
    let rep = tree.validate(&exponent("3"));
    assert!(!rep.separating);
    assert!(!rep.passed());
}

#[test]
fn missing_mass_breaks_summativity_unless_on_frontier() {
    let labels = BTreeMap::from([
        (NodePath::root(), chi(Rational::zero(), Rational::one())),
        (path("0"), chi(Rational::zero(), ratio(1, 2))),
    ]);
    let tree = ConcreteDisintegration::new(labels.clone(), BTreeSet::new()).unwrap();
    assert!(!tree.validate(&exponent("3")).summative);
    let tree = ConcreteDisintegration::new(labels, BTreeSet::from([NodePath::root()])).unwrap();
    assert!(tree.validate(&exponent("3")).passed());
}

#[test]
fn infinite_construction_root_norm() {
    // p-masses 2^{-3(e+1)} over the root's children sum to 1/7
    let p = exponent("3");
    let schedules = vec![CESetSchedule::empty(); 4];
    let o = InfiniteAtomicOracle::with_truth(p, schedules);
    let enc = rational_vector_norm(&o, &coeffs(&[("", 1)]), 0, 20).unwrap();
    assert!(enc.width_le_pow2(20));
    let (lo, hi) = bisect_pow(&ratio(1, 7), 1, 3, 60);
    assert!(enc.lo().to_rational() <= hi && lo <= enc.hi().to_rational());
}

#[test]
fn standard_dyadic_norms() {
    for p in ["1", "3/2", "3"] {
        let p = exponent(p);
        let o = StandardPresentation::dyadic(p.clone());
        let n = rational_vector_norm_p(&o, &coeffs(&[("0", 1), ("1", -1)]), 0, 20).unwrap();
        assert!(n.contains_rational(&int(1)));
        // ||2 chi_[0,1/2) + chi_[1/2,1)||^p = 2^p/2 + 1/2
        let n = rational_vector_norm_p(&o, &coeffs(&[("", 1), ("0", 1)]), 0, 20).unwrap();
        let direct = (chi(Rational::zero(), ratio(1, 2)).scale(&GaussianRational::real(int(2))))
            .add(&chi(ratio(1, 2), Rational::one()))
            .unwrap()
            .norm_p(&p, 20);
        assert!(n.overlaps(&direct), "{n} vs {direct}");
        assert!(o.node_norm_p(&NodePath::root(), 10).unwrap().contains_rational(&int(1)));
        assert!(o.node_norm_p(&path("0.1"), 10).unwrap().contains_rational(&ratio(1, 4)));
    }
    let p = exponent("3");
    let o = StandardPresentation::dyadic(p.clone());
    // exact for integer p
    let n = rational_vector_norm_p(&o, &coeffs(&[("", 1), ("0", 1)]), 0, 20).unwrap();
    assert!(n.contains_rational(&(int(4) + ratio(1, 2))));
    assert!(materialize(&o, 5, 0).unwrap().validate(&p).passed());
}

#[test]
fn downsets() {
    let set = |xs: &[&str]| xs.iter().map(|s| path(s)).collect::<BTreeSet<_>>();
    assert_eq!(downset(&set(&["0.1"])), set(&["", "0", "0.1"]));
    assert!(downset(&set(&[])).is_empty());
    assert_eq!(downset(&set(&["2", "0.0"])), set(&["", "2", "0", "0.0"]));
}

#[test]
fn reveal_stages_gate_membership() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let tree = random_disintegration(&mut rng, 3, 3);
    let reveal: BTreeMap<NodePath, u64> = tree.nodes().map(|n| (n.clone(), n.len() as u64 * 2)).collect();
    let o = ConcreteOracle::new(tree.clone(), exponent("3")).with_reveal(reveal);
    for n in tree.nodes() {
        let at = n.len() as u64 * 2;
        if at > 0 {
            assert_eq!(o.member(n, at - 1), Membership::Unknown);
        }
        assert_eq!(o.member(n, at), Membership::In);
    }
    assert_eq!(o.member(&path("9.9.9"), 100), Membership::Out);
}

#[test]
fn unknown_nodes_are_rejected() {
    let o = StandardPresentation::dyadic(exponent("3"));
    assert!(o.node_norm_p(&path("2"), 10).is_err());
    assert!(rational_vector_norm(&o, &coeffs(&[("3", 1)]), 0, 10).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn random_trees_validate_and_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_disintegration(&mut rng, 4, 3);
        let rep = tree.validate(&exponent("3/2"));
        prop_assert!(rep.passed(), "{:?}", rep.violations);
        let text = serde_json::to_string(&tree.to_json()).unwrap();
        let back = ConcreteDisintegration::from_json(&serde_json::from_str::<TreeJson>(&text).unwrap()).unwrap();
        prop_assert_eq!(back.to_json(), tree.to_json());
    }

    #[test]
    fn perturbed_labels_break_summativity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_disintegration(&mut rng, 3, 3);
        let internal: Vec<NodePath> = tree.nodes().filter(|n| !tree.children(n).is_empty()).cloned().collect();
        prop_assume!(!internal.is_empty());
        let target = internal[rng.gen_range(0..internal.len())].clone();
        let mut labels = tree.labels().clone();
        let bumped = labels[&target].scale(&GaussianRational::real(ratio(3, 2)));
        labels.insert(target, bumped);
        let bad = ConcreteDisintegration::new(labels, BTreeSet::new()).unwrap();
        prop_assert!(!bad.validate(&exponent("3")).summative);
    }

    #[test]
    fn formula_matches_materialized_norm(seed in any::<u64>(), p in prop::sample::select(vec!["1", "3/2", "3"])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tree = random_disintegration(&mut rng, 3, 3);
        let nodes: Vec<NodePath> = tree.nodes().cloned().collect();
        let c = random_coeffs(&mut rng, &nodes);
        let p = exponent(p);
        let direct = tree.combine(&c).unwrap().norm(&p, 16);
        let o = ConcreteOracle::new(tree, p);
        let formula = rational_vector_norm(&o, &c, 0, 16).unwrap();
        prop_assert!(formula.width_le_pow2(16));
        prop_assert!(formula.overlaps(&direct), "{} vs {}", formula, direct);
    }

    #[test]
    fn path_text_round_trip(xs in prop::collection::vec(0u64..20, 0..6)) {
        let n = NodePath(xs);
        prop_assert_eq!(path(&n.to_string()), n.clone());
        for pre in n.prefixes() {
            prop_assert!(pre.is_prefix_of(&n));
        }
        if let Some(parent) = n.parent() {
            prop_assert_eq!(parent.child(n.last().unwrap()), n);
        }
    }

    #[test]
    fn standard_masses_halve(level in 0u32..8, seed in any::<u64>()) {
        let o = StandardPresentation::new(2, exponent("3"));
        let index = seed % (1u64 << level);
        let node = o.dyadic_node(level, index);
        let m = o.node_norm_p(&node, 20).unwrap();
        prop_assert!(m.contains_rational(&pow2(-(level as i64))));
        let kids = o.children(&node, 0);
        prop_assert_eq!(kids.len(), 2);
        for kid in kids {
            prop_assert!(o.node_norm_p(&kid, 20).unwrap().contains_rational(&pow2(-(level as i64) - 1)));
        }
    }

    #[test]
    fn enumeration_is_monotone_in_stage(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sched: Vec<CESetSchedule> = (0..4).map(|i| CESetSchedule::random(&mut rng, 5, 5, 3, i == 3)).collect();
        let o = InfiniteAtomicOracle::new(exponent("3"), sched);
        let mut prev: BTreeSet<NodePath> = BTreeSet::new();
        for stage in 0..8 {
            let now: BTreeSet<NodePath> = enumerate(&o, 4, stage).into_iter().collect();
            prop_assert!(prev.is_subset(&now));
            prev = now;
        }
    }
}

#[test]
fn node_paths_order_breadth_first() {
    let mut v = vec![path("1"), path("0.0"), path(""), path("0")];
    v.sort_by(|a, b| a.bfs_cmp(b));
    assert_eq!(v, vec![path(""), path("0"), path("1"), path("0.0")]);
}
