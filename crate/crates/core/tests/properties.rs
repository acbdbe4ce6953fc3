mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use moufang_core::constructions::{build, build_cml, ConstructionSpec};
use moufang_core::loops::{
    direct_product, generate, identity2_holds_at, identity3_holds_at, Cml, Subloop,
};
use moufang_core::mult_group::{
    inner_mapping_group, is_normal, left_translation, multiplication_group,
};
use moufang_core::perm::{center, centralizer_in, upper_central_series_group, PermutationGroup};
use moufang_core::structure::{
    centralizer, loop_center, maximal_subloops, min_generators, special_rank,
    upper_central_series_loop,
};
use moufang_core::{FiniteLoop, Permutation};
use proptest::prelude::*;
use proptest::sample::subsequence;

const LIMIT: usize = 1_000_000;

fn cml81() -> &'static Cml {
    static L: OnceLock<Cml> = OnceLock::new();
    L.get_or_init(|| build_cml(&ConstructionSpec::Cml81).unwrap())
}

fn small_spec() -> impl Strategy<Value = ConstructionSpec> {
    let leaf = prop_oneof![
        (1usize..=12).prop_map(ConstructionSpec::Cyclic),
        (1u32..=3).prop_map(ConstructionSpec::ElementaryAbelian3),
    ];
    leaf.prop_recursive(2, 4, 2, |inner| {
        (inner.clone(), inner)
            .prop_map(|(a, b)| ConstructionSpec::Product(Box::new(a), Box::new(b)))
    })
    .prop_filter("small enough to scan", |s| {
        s.resolved_order().is_some_and(|n| n <= 200)
    })
}

fn latin(l: &FiniteLoop) -> bool {
    let n = l.order();
    let rows = l.rows();
    (0..n).all(|i| {
        let r: BTreeSet<usize> = rows[i].iter().copied().collect();
        let c: BTreeSet<usize> = (0..n).map(|j| rows[j][i]).collect();
        r.len() == n && c.len() == n
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_are_cmls(spec in small_spec()) {
        let l = build(&spec).unwrap();
        prop_assert!(latin(&l));
        prop_assert!(l.is_cml().passed());
        prop_assert_eq!(build(&spec).unwrap().rows(), l.rows());
        prop_assert_eq!(spec.to_string().parse::<ConstructionSpec>().unwrap(), spec);
    }

    #[test]
    fn division_inverts_multiplication(a in 0usize..81, b in 0usize..81) {
        let l = cml81();
        prop_assert_eq!(l.mul(a, l.left_div(a, b)), b);
        prop_assert_eq!(l.left_div(a, l.mul(a, b)), b);
    }

    #[test]
    fn associator_symmetries(x in 0usize..81, y in 0usize..81, z in 0usize..81) {
        let l = cml81();
        let e = l.identity();
        prop_assert_eq!(l.associator(x, x, y), e);
        prop_assert_eq!(l.associator(e, x, y), e);
        prop_assert_eq!(l.associator(x, y, z), l.inverse(l.associator(y, x, z)));
        prop_assert_eq!(l.associator(x, y, z), l.associator(y, z, x));
        prop_assert!(identity3_holds_at(l, x, y, z));
        let t = common::cml81_table();
        prop_assert_eq!(l.associator(x, y, z), common::associator(&t, x, y, z));
    }

    #[test]
    fn associator_expansion(x in 0usize..81, y in 0usize..81, u in 0usize..81, v in 0usize..81) {
        prop_assert!(identity2_holds_at(cml81(), x, y, u, v));
    }

    #[test]
    fn generate_is_monotone_and_idempotent(gens in subsequence((0usize..81).collect::<Vec<_>>(), 0..4), extra in 0usize..81) {
        let l = cml81();
        let s = generate(l, &gens);
        prop_assert_eq!(generate(l, s.members()), s.clone());
        let mut more = gens.clone();
        more.push(extra);
        prop_assert!(s.is_subset_of(&generate(l, &more)));
        let oracle = common::closure(&common::cml81_table(), &gens);
        let oracle: Vec<usize> = oracle.into_iter().collect();
        prop_assert_eq!(s.members(), &oracle[..]);
    }

    #[test]
    fn quotient_projection_is_a_morphism(gens in subsequence((0usize..81).collect::<Vec<_>>(), 1..3)) {
        let l = cml81();
        let h = generate(l, &gens);
        match l.quotient(&h) {
            Ok((q, proj)) => {
                prop_assert!(is_normal(l, &h));
                prop_assert!(latin(&q));
                prop_assert_eq!(q.order() * h.order(), 81);
                prop_assert_eq!(proj.violation(l, &q), None);
            }
            Err(_) => prop_assert!(!is_normal(l, &h)),
        }
    }

    #[test]
    fn center_lies_in_every_centralizer(m in subsequence((0usize..81).collect::<Vec<_>>(), 0..4)) {
        let l = cml81();
        let z = loop_center(l);
        let c = centralizer(l, &Subloop::whole(l), &m).unwrap();
        prop_assert!(z.is_subset_of(&c));
        let oracle = common::loop_centralizer(&common::cml81_table(), &m);
        let oracle: Vec<usize> = oracle.into_iter().collect();
        prop_assert_eq!(c.members(), &oracle[..]);
    }

    #[test]
    fn translations_match_multiplication(x in 0usize..81, y in 0usize..81) {
        let l = cml81();
        prop_assert_eq!(left_translation(l, x).perm.apply(y), l.mul(x, y));
    }

    #[test]
    fn group_membership_of_random_words(word in proptest::collection::vec(0usize..81, 0..12)) {
        let l = cml81();
        let mg = multiplication_group(l);
        let g = word.iter().fold(Permutation::identity(81), |acc, &x| acc.then(&left_translation(l, x).perm));
        prop_assert!(mg.contains(&g));
        let inner = inner_mapping_group(l);
        prop_assert_eq!(inner.contains(&g), g.apply(l.identity()) == l.identity());
    }
}

#[test]
fn loop_center_is_centralizer_of_everything() {
    for s in ["cyclic(6)", "ea3(2)", "cml81"] {
        let l = build_cml(&s.parse().unwrap()).unwrap();
        let all: Vec<usize> = l.elements().collect();
        assert_eq!(
            loop_center(&l),
            centralizer(&l, &Subloop::whole(&l), &all).unwrap()
        );
    }
}

#[test]
fn loop_series_is_ascending_and_normal() {
    for s in ["cyclic(9)", "ea3(3)", "cml81", "product(cml81, cyclic(2))"] {
        let l = build_cml(&s.parse().unwrap()).unwrap();
        let series = upper_central_series_loop(&l);
        for w in series.chain.windows(2) {
            assert!(w[0].is_subset_of(&w[1]) && w[0] != w[1]);
        }
        for z in &series.chain {
            assert!(is_normal(&l, z));
        }
        let abelian = l.is_associative().passed() && l.is_commutative().passed();
        assert_eq!(series.class == Some(1), abelian, "{s}");
        assert_eq!(
            series.class,
            common::loop_class(&l.rows(), &l.elements().collect()),
            "{s}"
        );
    }
}

#[test]
fn group_series_is_strictly_increasing_and_normal() {
    let mg = multiplication_group(cml81());
    let series = upper_central_series_group(&mg, LIMIT).unwrap();
    for w in series.chain.windows(2) {
        assert!(w[0].is_subgroup_of(&w[1]));
        assert!(w[0].order() < w[1].order());
    }
    for z in &series.chain {
        for g in mg.generators() {
            for h in z.generators() {
                let conj = g.inverse().then(h).then(g);
                assert!(z.contains(&conj));
            }
        }
    }
    let z = center(&mg, LIMIT).unwrap();
    for c in z.generators() {
        assert!(mg.generators().iter().all(|g| c.commutes_with(g)));
    }
    let s = &mg.generators()[..2];
    let c = centralizer_in(&mg, s, LIMIT).unwrap();
    for x in c.elements(LIMIT).unwrap() {
        assert!(s.iter().all(|g| x.commutes_with(g)));
    }
}

#[test]
fn inner_mappings_fix_the_identity() {
    let l = cml81();
    let inner = inner_mapping_group(l);
    for phi in inner.elements(LIMIT).unwrap() {
        assert_eq!(phi.apply(l.identity()), l.identity());
    }
}

#[test]
fn non_member_is_rejected() {
    let l = cml81();
    let mg = multiplication_group(l);
    // A transposition fixes 79 points, which no element of a transitive
    // 3-group of degree 81 does.
    let t = Permutation::from_cycles(81, &[&[0, 1]]).unwrap();
    assert!(!mg.contains(&t));
}

#[test]
fn rank_of_products_dominates_factors() {
    let pairs = [
        ("cyclic(3)", "ea3(2)"),
        ("cyclic(9)", "cyclic(3)"),
        ("ea3(2)", "cyclic(2)"),
    ];
    for (a, b) in pairs {
        let la = build(&a.parse().unwrap()).unwrap();
        let lb = build(&b.parse().unwrap()).unwrap();
        let p = direct_product(&la, &lb, 2048).unwrap();
        let ra = special_rank(&la).unwrap().special_rank;
        let rb = special_rank(&lb).unwrap().special_rank;
        assert!(special_rank(&p).unwrap().special_rank >= ra.max(rb));
    }
}

#[test]
fn maximal_subloops_of_three_loops_have_index_three() {
    for s in ["ea3(3)", "cyclic(27)", "product(cyclic(9), cyclic(3))"] {
        let l = build_cml(&s.parse().unwrap()).unwrap();
        for m in maximal_subloops(&l).unwrap() {
            assert!(is_normal(&l, &m));
            assert_eq!(l.order() / m.order(), 3, "{s}");
        }
    }
}

#[test]
fn min_generators_certified_both_ways() {
    let l = cml81();
    let whole = Subloop::whole(l);
    let mg = min_generators(l, &whole);
    assert_eq!(mg.count, 3);
    assert!(generate(l, &mg.generators).is_whole());
    let t = common::cml81_table();
    for a in 0..81 {
        for b in a..81 {
            assert!(common::closure(&t, &[a, b]).len() < 81);
        }
    }
}

#[test]
fn group_from_elements_matches() {
    let mg = multiplication_group(&build(&"ea3(2)".parse().unwrap()).unwrap());
    let els = mg.elements(LIMIT).unwrap();
    let again = PermutationGroup::from_elements(9, els.iter());
    assert_eq!(again.order(), mg.order());
}

#[test]
fn products_match_the_table_oracle() {
    let cases = [(3, 4), (2, 2), (5, 1), (1, 6)];
    for (a, b) in cases {
        let spec: ConstructionSpec = format!("product(cyclic({a}), cyclic({b}))").parse().unwrap();
        let expected = common::product_table(&common::cyclic_table(a), &common::cyclic_table(b));
        assert_eq!(build(&spec).unwrap().rows(), expected);
    }
}

#[test]
fn identities_on_the_order_243_product() {
    use moufang_core::loops::{check_identity2, check_identity3};
    use moufang_core::report::{CheckConfig, Mode};
    let l = build_cml(&"product(cyclic(3), cml81)".parse().unwrap()).unwrap();
    assert_eq!(l.order(), 243);
    assert!(check_identity3(&l).passed());
    let cfg = CheckConfig::default();
    let r = check_identity2(&l, &cfg);
    assert!(r.passed());
    assert_eq!(r.mode, Mode::Sampled { seed: 42, count: 1_000_000 });
}
