mod common;

use common::{lens, normalized_oracle};
use lensgrid::random::{min_grid_number, random_diagram, random_moves, rng_from_seed};
use lensgrid::{
    apply, apply_word, canonical_form, diffeo_orbit, diffeotopy_case, expected_homology_action, homology_classes,
    homology_multiset, isotopy_search, kauffman_bracket, kauffman_bracket_exhaustive, lift_component_count_formula,
    lift_grid, mirror, normalized_poly, parse, parse_catalog, planar_diagram, serialize, tabulate, tau,
    trace_components, translate, validate, verify_report, BracketConfig, DiffeoElement, Exec, GridDiagram, LaurentPoly,
    MoveKind, SearchConfig,
};
use proptest::prelude::*;

const LENSES: [(u32, u32); 9] = [(1, 0), (2, 1), (3, 1), (4, 1), (5, 2), (7, 2), (8, 3), (10, 3), (13, 5)];

fn diagram(max_n: u32) -> impl Strategy<Value = GridDiagram> {
    (0..LENSES.len(), any::<u64>()).prop_flat_map(move |(i, seed)| {
        let l = lens(LENSES[i].0, LENSES[i].1);
        (min_grid_number(l)..=max_n.max(min_grid_number(l)))
            .prop_map(move |n| random_diagram(l, n, &mut rng_from_seed(seed)))
    })
}

fn sphere_grid(max_n: u32) -> impl Strategy<Value = GridDiagram> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_diagram(lens(1, 0), n, &mut rng_from_seed(seed)))
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-5i64..=5, -12i32..=12), 0..6).prop_map(LaurentPoly::from_terms)
}

fn eval_at_one(f: &LaurentPoly) -> i64 {
    f.terms().map(|(_, c)| c).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn text_round_trip(g in diagram(5)) {
        prop_assert!(validate(&g.to_marking_set()).is_ok());
        prop_assert_eq!(parse(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_translation(g in diagram(4), dr in -20i64..20, dx in -40i64..40) {
        let h = translate(&g, dr, dx);
        prop_assert_eq!(canonical_form(&h), canonical_form(&g));
        let c = canonical_form(&g);
        prop_assert_eq!(canonical_form(c.diagram()).shift(), (0, 0));
    }

    #[test]
    fn moves_preserve_homology_and_lift_count(g in diagram(3), seed in any::<u64>(), k in 1usize..6) {
        let (path, h) = random_moves(&g, k, g.n() + 1, &mut rng_from_seed(seed));
        prop_assert_eq!(path.len(), k);
        prop_assert!(validate(&h.to_marking_set()).is_ok());
        prop_assert_eq!(homology_multiset(&h), homology_multiset(&g));
        prop_assert_eq!(lift_component_count_formula(&h), lift_component_count_formula(&g));
    }

    #[test]
    fn move_text_round_trip(g in diagram(3), seed in any::<u64>()) {
        let (path, _) = random_moves(&g, 4, g.n() + 1, &mut rng_from_seed(seed));
        for mv in path {
            prop_assert_eq!(mv.to_string().parse::<MoveKind>().unwrap(), mv);
        }
    }

    #[test]
    fn tau_is_an_involution(g in diagram(5)) {
        prop_assert_eq!(tau(&tau(&g)), g);
    }

    #[test]
    fn orbit_matches_group_and_homology_action(g in diagram(3)) {
        let Ok(case) = diffeotopy_case(g.lens()) else { return Ok(()) };
        let orbit = diffeo_orbit(&g).unwrap();
        prop_assert_eq!(orbit.len(), case.order());
        let classes = homology_classes(&g);
        for (e, h) in &orbit {
            prop_assert!(validate(&h.to_marking_set()).is_ok());
            let mut expected: Vec<u32> = classes.iter().map(|&d| expected_homology_action(*e, d, g.lens())).collect();
            expected.sort_unstable();
            prop_assert_eq!(homology_multiset(h), expected, "{}", e);
        }
    }

    #[test]
    fn words_reduce_to_elements(g in diagram(3), word in prop::collection::vec(0usize..3, 0..6)) {
        let Ok(case) = diffeotopy_case(g.lens()) else { return Ok(()) };
        let gens = case.generators();
        let word: Vec<_> = word.iter().map(|&i| gens[i % gens.len()]).collect();
        let element = DiffeoElement::from_word(&word).unwrap();
        let literal = apply_word(&g, &word).unwrap();
        let reduced = apply(&g, element).unwrap();
        prop_assert_eq!(canonical_form(&literal), canonical_form(&reduced));
    }

    #[test]
    fn lift_components_follow_gcd_law(g in diagram(4)) {
        let lift = lift_grid(&g);
        prop_assert!(validate(&lift.to_marking_set()).is_ok());
        prop_assert_eq!(trace_components(&lift).len() as u32, lift_component_count_formula(&g));
    }

    #[test]
    fn bracket_methods_agree(g in sphere_grid(9)) {
        let pd = planar_diagram(&g).unwrap();
        prop_assume!(pd.crossing_count() <= 20);
        let seq = BracketConfig { exec: Exec::Sequential, ..BracketConfig::with_cap(20) };
        let dp = kauffman_bracket(&pd, &seq).unwrap();
        prop_assert_eq!(&dp, &kauffman_bracket_exhaustive(&pd, &seq).unwrap());
        prop_assert_eq!(&dp, &kauffman_bracket(&pd, &BracketConfig::with_cap(20)).unwrap());
    }

    #[test]
    fn normalized_bracket_at_one_counts_components(g in sphere_grid(12)) {
        let pd = planar_diagram(&g).unwrap();
        let f = normalized_poly(&pd, &BracketConfig::with_cap(200)).unwrap();
        prop_assert_eq!(eval_at_one(&f), (-2i64).pow(pd.component_count as u32 - 1));
    }

    #[test]
    fn mirror_inverts_the_variable(g in sphere_grid(8)) {
        let cfg = BracketConfig::with_cap(200);
        let m = mirror(&g).unwrap();
        let f = normalized_poly(&planar_diagram(&g).unwrap(), &cfg).unwrap();
        prop_assert_eq!(normalized_poly(&planar_diagram(&m).unwrap(), &cfg).unwrap(), f.mirror());
    }

    #[test]
    fn small_lifts_match_oracle(g in diagram(2)) {
        let lift = lift_grid(&g);
        let pd = planar_diagram(&lift).unwrap();
        prop_assume!(pd.crossing_count() <= 14);
        prop_assert_eq!(normalized_poly(&pd, &BracketConfig::default()).unwrap(), normalized_oracle(&lift));
    }

    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).mirror(), &a.mirror() * &b.mirror());
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_is_sound_and_deterministic(g in diagram(2), seed in any::<u64>(), k in 1usize..4) {
        let (_, h) = random_moves(&g, k, g.n() + 1, &mut rng_from_seed(seed));
        let seq = SearchConfig { exec: Exec::Sequential, ..SearchConfig::default() };
        let a = isotopy_search(&g, &h, &seq).unwrap();
        let b = isotopy_search(&g, &h, &SearchConfig::default()).unwrap();
        prop_assert!(a.is_equivalent());
        prop_assert!(verify_report(&g, &h, &a));
        prop_assert_eq!(a, b);
    }
}

#[test]
fn catalogs_round_trip() {
    for (p, q, n) in [(2, 1, 2), (3, 1, 2), (4, 1, 1), (5, 2, 1), (7, 2, 1), (1, 0, 2)] {
        let catalog = tabulate(lens(p, q), n, 20_000, &SearchConfig::default());
        let text = catalog.to_string();
        assert_eq!(parse_catalog(&text).unwrap(), catalog, "{text}");
        for class in &catalog.classes {
            assert!(validate(&class.representative.to_marking_set()).is_ok());
        }
    }
}
