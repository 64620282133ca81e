use std::collections::BTreeMap;

use num_bigint::BigUint;
use proptest::prelude::*;

use loopcard::catalog::{catalog_groups_up_to, resolve_name};
use loopcard::spacexpr::{evaluate, parse};
use loopcard::{
    commuting_classes_bruteforce, commuting_classes_recursive, en_cardinality, morava_euler, ExactRational,
    FiniteGroup, FiniteGroupoid, Limits, Prime, Space,
};

fn eval(src: &str) -> Space {
    evaluate(&parse(src).unwrap(), &Limits::default()).unwrap().space
}

fn small_group() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["C1", "C2", "C3", "C4", "S3", "D8", "Q8", "C5", "D10", "A4"])
}

fn expr() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        Just("pt".to_string()),
        (1u64..4).prop_map(|m| format!("Discrete({m})")),
        small_group().prop_map(|g| format!("B({g})")),
        (2u32..4, prop::sample::select(vec!["C2", "C3", "C4"])).prop_map(|(d, g)| format!("B^{d}({g})")),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| format!("L({e})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) x ({b})")),
            (inner.clone(), inner).prop_map(|(a, b)| format!("{a} + {b}")),
        ]
    })
}

fn order_multiset(space: &Space) -> Option<BTreeMap<usize, BigUint>> {
    match space {
        Space::Groupoid(g) => Some(g.order_multiset()),
        Space::Stable(_) => None,
    }
}

#[test]
fn stable_coercion_agrees_on_abelian_catalog() {
    let l = Limits::default();
    for (name, g) in catalog_groups_up_to(30).into_iter().filter(|(_, g)| g.is_abelian()) {
        let a = eval(&format!("B({name})"));
        let b = eval(&format!("stable(B({name}))"));
        for n in 0..=5 {
            assert_eq!(morava_euler(&a, n, &l).unwrap(), morava_euler(&b, n, &l).unwrap(), "{name} n={n}");
            if let Some(p) = (2..=g.order() as u64).find(|&p| Prime::new(p).is_ok_and(|p| g.is_p_group(p))) {
                let p = Prime::new(p).unwrap();
                assert_eq!(en_cardinality(&a, n, p, &l).unwrap(), en_cardinality(&b, n, p, &l).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pretty_print_is_idempotent(src in expr()) {
        if let Ok(e) = parse(&src) {
            let once = e.to_string();
            let twice = parse(&once).unwrap().to_string();
            prop_assert_eq!(once, twice);
        }
    }

    #[test]
    fn products_commute(a in expr(), b in expr()) {
        let l = Limits::default();
        let ab = parse(&format!("({a}) x ({b})")).ok().and_then(|e| evaluate(&e, &l).ok());
        let ba = parse(&format!("({b}) x ({a})")).ok().and_then(|e| evaluate(&e, &l).ok());
        prop_assert_eq!(ab.is_some(), ba.is_some());
        if let (Some(ab), Some(ba)) = (ab, ba) {
            prop_assert_eq!(ab.space.homotopy_cardinality(), ba.space.homotopy_cardinality());
            prop_assert_eq!(order_multiset(&ab.space), order_multiset(&ba.space));
            prop_assert_eq!(morava_euler(&ab.space, 1, &l).unwrap(), morava_euler(&ba.space, 1, &l).unwrap());
        }
    }

    #[test]
    fn unions_are_associative(a in small_group(), b in small_group(), c in small_group()) {
        let left = eval(&format!("(B({a}) + B({b})) + B({c})"));
        let right = eval(&format!("B({a}) + (B({b}) + B({c}))"));
        prop_assert_eq!(order_multiset(&left), order_multiset(&right));
    }

    #[test]
    fn hcard_of_loop_counts_components(names in prop::collection::vec(small_group(), 0..5)) {
        let l = Limits::default();
        let g = FiniteGroupoid::from_components(names.iter().map(|n| resolve_name(n, &l).unwrap()));
        prop_assert_eq!(
            g.loop_groupoid().homotopy_cardinality(),
            ExactRational::from_natural(BigUint::from(names.len()))
        );
    }

    #[test]
    fn commuting_counts_multiply(a in small_group(), b in small_group(), n in 0u32..=3) {
        let l = Limits::default();
        let (g, h) = (resolve_name(a, &l).unwrap(), resolve_name(b, &l).unwrap());
        let gh = g.direct_product(&h, &l).unwrap();
        let count = |x: &FiniteGroup| commuting_classes_recursive(x, n, &l).unwrap().count;
        prop_assert_eq!(count(&gh), count(&g) * count(&h));
    }

    #[test]
    fn relabelled_tables_count_the_same(perm_seed in any::<u64>(), n in 1u32..=2) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let l = Limits::default();
        let g = resolve_name("D8", &l).unwrap();
        let mut relabel: Vec<usize> = (1..g.order()).collect();
        relabel.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        relabel.insert(0, 0);
        let mut back = vec![0; g.order()];
        for (i, &r) in relabel.iter().enumerate() {
            back[r] = i;
        }
        let table: Vec<Vec<usize>> = (0..g.order())
            .map(|x| (0..g.order()).map(|y| relabel[g.mul(back[x], back[y])]).collect())
            .collect();
        let h = FiniteGroup::from_table(&table).unwrap();
        prop_assert_eq!(
            commuting_classes_bruteforce(&h, n, &l).unwrap().count,
            commuting_classes_recursive(&g, n, &l).unwrap().count
        );
    }
}
