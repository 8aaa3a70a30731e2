use gammaring_core::laws::{check_difference_law, enumerate_laws, LawKind};
use gammaring_core::maps::{build_map, canonical_witness_hz, random_witness, Variant};
use gammaring_core::ring::IntegerModel;
use gammaring_core::skeleton::{
    adjacent_transpositions, all_permutations, factor_map, group_closure, parity_split,
    special_generators,
};
use gammaring_core::{make_model, Element, GammaRing, PointedMap};
use proptest::prelude::*;
use rand::SeedableRng;

fn pointed_map(n: usize, m: usize) -> impl Strategy<Value = PointedMap> {
    proptest::collection::vec(0..=m, n).prop_map(move |images| PointedMap::new(m, images).unwrap())
}

fn chain() -> impl Strategy<Value = (PointedMap, PointedMap, PointedMap)> {
    (0usize..5, 0usize..5, 0usize..5, 0usize..5)
        .prop_flat_map(|(a, b, c, d)| (pointed_map(a, b), pointed_map(b, c), pointed_map(c, d)))
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in chain()) {
        let left = h.compose(&g).unwrap().compose(&f).unwrap();
        let right = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn factorisations_evaluate_back(f in (0usize..6, 0usize..6).prop_flat_map(|(n, m)| pointed_map(n, m))) {
        let word = factor_map(&f);
        prop_assert_eq!(word.evaluate(), f);
    }

    #[test]
    fn hz_is_functorial(
        (f, g, _) in chain(),
        seed in any::<u64>(),
    ) {
        let hz = IntegerModel::hz();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let x = hz.random_element(f.source(), 5, &mut rng);
        let direct = hz.induce(&g.compose(&f).unwrap(), &x).unwrap();
        let stepwise = hz.induce(&g, &hz.induce(&f, &x).unwrap()).unwrap();
        prop_assert_eq!(direct, stepwise);
    }

    #[test]
    fn hz_identity_map_ignores_the_witness(
        target in proptest::collection::vec(-4i64..=4, 1..4),
        extra in 0u32..2,
        seed in any::<u64>(),
    ) {
        prop_assume!(target.iter().any(|&t| t != 0));
        let phi = build_map(make_model("hz").unwrap(), Element::integers(vec![1, -1]), Variant::Hz, 3).unwrap();
        let n = canonical_witness_hz(&target).unwrap().n + extra;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let w = random_witness(Variant::Hz, &target, n, &mut rng).unwrap().unwrap();
        prop_assert_eq!(phi.eval_with(&w).unwrap(), Element::integers(target));
    }
}

#[test]
fn adjacent_transpositions_detect_full_symmetry() {
    // invariance under generators agrees with invariance under all of Σ_4
    let model = make_model("hmod:2").unwrap();
    let everything = all_permutations(4);
    for x in model.enumerate(4).unwrap() {
        let by_generators = adjacent_transpositions(4)
            .iter()
            .all(|t| model.induce(t, &x).unwrap() == x);
        let by_group = everything.iter().all(|p| model.induce(p, &x).unwrap() == x);
        assert_eq!(by_generators, by_group, "{}", model.render(&x));
    }
}

#[test]
fn special_generators_span_the_special_group() {
    for k in 1..=2u32 {
        let n = 1 << k;
        let split = parity_split(k);
        let preserving: Vec<PointedMap> = all_permutations(n)
            .into_iter()
            .filter(|p| split.plus.iter().all(|&i| split.plus.contains(&p.apply(i))))
            .collect();
        let mut closure = group_closure(n, &special_generators(k));
        let mut expected = preserving;
        closure.sort_by(|a, b| a.images().cmp(b.images()));
        expected.sort_by(|a, b| a.images().cmp(b.images()));
        assert_eq!(closure, expected, "k = {k}");
    }
}

#[test]
fn certificates_are_monotone_in_k() {
    let model = make_model("end:2,2").unwrap();
    for r in model.enumerate(2).unwrap() {
        let low = check_difference_law(model.as_ref(), &r, 1).unwrap();
        let high = check_difference_law(model.as_ref(), &r, 2).unwrap();
        if high.passed() {
            assert!(low.passed(), "{}", model.render(&r));
        }
        for (a, b) in low.conditions.iter().zip(&high.conditions) {
            assert!(a.count <= b.count && a.violations <= b.violations);
        }
    }
    let at_one = enumerate_laws(model.as_ref(), LawKind::Difference, 1).unwrap();
    let at_two = enumerate_laws(model.as_ref(), LawKind::Difference, 2).unwrap();
    assert!(at_two
        .iter()
        .all(|(r, _)| at_one.iter().any(|(s, _)| s == r)));
}
