mod common;

use common::V;
use homog_core::verify::{replay, run_suite, Mutation, SuiteConfig, VerifyReport};
use homog_core::{star, Domain, Element, Ideal, StarOp};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gen_pair() -> impl Strategy<Value = V> {
    (-4i64..=4, -4i64..=4).prop_filter("nonzero", |v| *v != (0, 0))
}

fn quad_ideal() -> impl Strategy<Value = Vec<V>> {
    prop::collection::vec(gen_pair(), 1..=3)
}

fn lift(dom: &Domain, g: &[V]) -> Ideal {
    dom.ideal_from_generators(&g.iter().map(|&v| common::to_element(v)).collect::<Vec<_>>())
        .unwrap()
}

fn divisor() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(0i64..=4, 3)
}

fn monoid() -> Domain {
    Domain::krull_monoid(&[2, 2], &[("p", &[1, 0]), ("q", &[0, 1]), ("r", &[1, 1])]).unwrap()
}

fn div_ideal(dom: &Domain, e: &[i64]) -> Ideal {
    dom.divisor_ideal(&[("p", e[0]), ("q", e[1]), ("r", e[2])]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_agrees(seed in any::<u64>(), k in 0usize..8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = common::ORACLE_DISCRIMINANTS[k];
        prop_assert_eq!(common::check_instance(&mut rng, d), Ok(()));
    }

    #[test]
    fn ideal_semiring_laws(d in prop::sample::select(vec![-5i64, -6, 10, -3]), a in quad_ideal(), b in quad_ideal(), c in quad_ideal()) {
        let dom = Domain::quadratic(d, 1).unwrap();
        let (i, j, k) = (lift(&dom, &a), lift(&dom, &b), lift(&dom, &c));
        prop_assert_eq!(dom.product(&i, &j).unwrap(), dom.product(&j, &i).unwrap());
        prop_assert_eq!(
            dom.product(&dom.product(&i, &j).unwrap(), &k).unwrap(),
            dom.product(&i, &dom.product(&j, &k).unwrap()).unwrap()
        );
        prop_assert_eq!(
            dom.product(&i, &dom.sum(&j, &k).unwrap()).unwrap(),
            dom.sum(&dom.product(&i, &j).unwrap(), &dom.product(&i, &k).unwrap()).unwrap()
        );
        prop_assert_eq!(dom.product(&i, &dom.one()).unwrap(), i.clone());
        let meet = dom.intersect(&i, &j).unwrap();
        prop_assert!(dom.contains(&i, &meet).unwrap() && dom.contains(&j, &meet).unwrap());
        prop_assert!(dom.contains(&meet, &dom.product(&i, &j).unwrap()).unwrap());
    }

    #[test]
    fn colon_adjunction(d in prop::sample::select(vec![-5i64, -6, 10, -3]), a in quad_ideal(), b in quad_ideal(), c in quad_ideal()) {
        let dom = Domain::quadratic(d, 1).unwrap();
        let (i, j, k) = (lift(&dom, &a), lift(&dom, &b), lift(&dom, &c));
        let lhs = dom.contains(&k, &dom.product(&i, &j).unwrap()).unwrap();
        let rhs = dom.contains(&dom.colon(&k, &j).unwrap(), &i).unwrap();
        prop_assert_eq!(lhs, rhs);
        // (K : J)·J ⊆ K always
        prop_assert!(dom.contains(&k, &dom.product(&dom.colon(&k, &j).unwrap(), &j).unwrap()).unwrap());
    }

    #[test]
    fn norms_multiply(d in prop::sample::select(vec![-5i64, -6, 10, -1, 5]), a in quad_ideal(), b in quad_ideal()) {
        let dom = Domain::quadratic(d, 1).unwrap();
        let (i, j) = (lift(&dom, &a), lift(&dom, &b));
        prop_assert_eq!(dom.product(&i, &j).unwrap().size(), i.size() * j.size());
        let x = common::to_element(a[0]);
        let n = dom.element_norm(&x).unwrap();
        prop_assert_eq!(dom.principal(&x).unwrap().size(), if n < BigRational::from_integer(0.into()) { -n } else { n });
    }

    #[test]
    fn generators_are_canonical(d in prop::sample::select(vec![-5i64, -3, 10, 5]), a in quad_ideal(), extra in gen_pair()) {
        let dom = Domain::quadratic(d, 1).unwrap();
        let i = lift(&dom, &a);
        let mut rev = a.clone();
        rev.reverse();
        prop_assert_eq!(lift(&dom, &rev), i.clone());
        // adding a member of I changes nothing
        let member = common::mul(d, a[0], extra);
        let mut more = a.clone();
        more.push(member);
        prop_assert_eq!(lift(&dom, &more), i.clone());
        prop_assert_eq!(dom.ideal_from_generators(&dom.generators(&i).unwrap()).unwrap(), i.clone());
        prop_assert_eq!(dom.parse_ideal(&dom.ideal_literal(&i)).unwrap(), i);
    }

    #[test]
    fn monoid_lattice_laws(a in divisor(), b in divisor(), c in divisor()) {
        let dom = monoid();
        let (i, j, k) = (div_ideal(&dom, &a), div_ideal(&dom, &b), div_ideal(&dom, &c));
        prop_assert_eq!(
            dom.product(&i, &dom.sum(&j, &k).unwrap()).unwrap(),
            dom.sum(&dom.product(&i, &j).unwrap(), &dom.product(&i, &k).unwrap()).unwrap()
        );
        let lhs = dom.contains(&k, &dom.product(&i, &j).unwrap()).unwrap();
        prop_assert_eq!(lhs, dom.contains(&dom.colon(&k, &j).unwrap(), &i).unwrap());
        prop_assert_eq!(dom.product(&i, &dom.inverse(&i).unwrap()).unwrap(), dom.one());
        prop_assert_eq!(dom.parse_ideal(&dom.ideal_literal(&i)).unwrap(), i.clone());
        for s in StarOp::ALL {
            prop_assert_eq!(star::closure(&dom, &i, s).unwrap(), i.clone());
        }
    }

    #[test]
    fn element_round_trip(u in -20i64..20, v in -20i64..20, q in 1i64..6) {
        prop_assume!((u, v) != (0, 0));
        let dom = Domain::quadratic(-7, 1).unwrap();
        let x = dom.parse_element(&format!("{u}/{q}{v:+}*w")).unwrap();
        prop_assert_eq!(dom.parse_element(&dom.format_element(&x)).unwrap(), x);
    }
}

#[test]
fn oracle_detects_differences() {
    let d = -5;
    let dom = Domain::quadratic(d, 1).unwrap();
    let p = common::ring_span(d, &[(2, 0), (1, 1)]);
    let q = common::ring_span(d, &[(3, 0), (1, 1)]);
    assert_eq!(common::index(&p), 2);
    assert_eq!(common::index(&q), 3);
    let pq = common::product(d, &p, &q);
    assert_eq!(common::index(&pq), 6);
    let lib_p = lift(&dom, &[(2, 0), (1, 1)]);
    assert!(common::agrees(&dom, &lib_p, 2, &common::residues(&p, 2), 2));
    let lib_q = lift(&dom, &[(3, 0), (1, 1)]);
    assert!(!common::agrees(&dom, &lib_q, 2, &common::residues(&p, 2), 2));
    let qbar = common::ring_span(d, &[(3, 0), (1, -1)]);
    assert!(!common::agrees(&dom, &lib_q, 3, &common::residues(&qbar, 3), 3));
}

fn small_config(seed: u64) -> SuiteConfig {
    SuiteConfig {
        seed,
        trials: 12,
        stars: vec![StarOp::D, StarOp::T],
        ..Default::default()
    }
}

#[test]
fn reports_are_deterministic() {
    for dom in [Domain::quadratic(-5, 1).unwrap(), monoid()] {
        let a = serde_json::to_string(&run_suite(&dom, &small_config(3)).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite(&dom, &small_config(3)).unwrap()).unwrap();
        assert_eq!(a, b);
        let back: VerifyReport = serde_json::from_str(&a).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), a);
        assert!(back.passed);
    }
}

#[test]
fn mutation_is_caught_and_replays() {
    for dom in [Domain::quadratic(-5, 1).unwrap(), monoid()] {
        let cfg = SuiteConfig {
            mutation: Some(Mutation::SkipMergeInRegroup),
            only: vec!["regroup-unique".into()],
            ..small_config(7)
        };
        let r = run_suite(&dom, &cfg).unwrap();
        assert!(!r.passed);
        let cx = r.checks.iter().find_map(|c| c.counterexample.clone()).unwrap();
        let text = serde_json::to_string(&cx).unwrap();
        let cx = serde_json::from_str(&text).unwrap();
        assert!(replay(&dom, &cfg, &cx).unwrap());
        let clean = SuiteConfig { mutation: None, ..cfg };
        assert!(!replay(&dom, &clean, &cx).unwrap());
    }
}

#[test]
fn rational_elements_scale_ideals() {
    let dom = Domain::quadratic(-5, 1).unwrap();
    let p = lift(&dom, &[(2, 0), (1, 1)]);
    let half = dom.parse_element("1/2").unwrap();
    let scaled = dom.scale(&p, &half).unwrap();
    assert!(!scaled.is_integral());
    assert_eq!(dom.scale(&scaled, &Element::integer(2)).unwrap(), p);
}
