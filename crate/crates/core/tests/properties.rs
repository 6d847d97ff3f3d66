use proptest::prelude::*;

use decograph::graph::{build_decoration_graph, BuildLimits};
use decograph::root_data::RootDatum;
use decograph::strategy::StrategyRegistry;
use decograph::tropical::{binfinity_cone, ConeOptions};
use decograph::verify::verify_instance;
use decograph::word::random_words;

fn minuscule_case() -> impl Strategy<Value = (&'static str, usize)> {
    prop::sample::select(vec![
        ("A2", 1),
        ("A3", 2),
        ("A5", 3),
        ("B4", 4),
        ("C4", 1),
        ("D5", 1),
        ("D5", 4),
        ("D5", 5),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graph_equals_oracle((ty, node) in minuscule_case(), seed in any::<u64>(), moves in 0usize..80) {
        let datum: RootDatum = ty.parse().unwrap();
        let w = random_words(&datum, 1, moves, seed).pop().unwrap();
        let r = verify_instance(&w, node, BuildLimits::default()).unwrap();
        prop_assert!(r.passed(), "{ty} {w} i={node}: {:?}", r.failures());
    }

    #[test]
    fn builds_are_deterministic((ty, node) in minuscule_case(), seed in any::<u64>()) {
        let datum: RootDatum = ty.parse().unwrap();
        let w = random_words(&datum, 1, 30, seed).pop().unwrap();
        let a = build_decoration_graph(&w, node, BuildLimits::default()).unwrap();
        let b = build_decoration_graph(&w, node, BuildLimits::default()).unwrap();
        prop_assert_eq!(a.to_json(), b.to_json());
        prop_assert_eq!(a.to_dot(), b.to_dot());
    }

    #[test]
    fn cone_contains_origin_and_is_closed_under_addition(
        seed in any::<u64>(),
        a in prop::collection::vec(0i64..4, 10),
        b in prop::collection::vec(0i64..4, 10),
    ) {
        let datum: RootDatum = "A4".parse().unwrap();
        let w = random_words(&datum, 1, 40, seed).pop().unwrap();
        let cone = binfinity_cone(&w, &StrategyRegistry::default(), &ConeOptions::default()).unwrap();
        prop_assert!(cone.contains(&[0; 10]).unwrap().contained);
        if cone.contains(&a).unwrap().contained && cone.contains(&b).unwrap().contained {
            let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            prop_assert!(cone.contains(&sum).unwrap().contained);
        }
    }
}
