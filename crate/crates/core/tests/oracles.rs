//! Library results checked against the reference implementations in `common`.

mod common;

use std::collections::BTreeSet;

use common::{bracket_oracle, brute_force_diagrams, grid, lens, normalized_oracle, total_class_by_strips};
use lensgrid::random::{random_corpus, random_diagram, rng_from_seed};
use lensgrid::{
    canonical_form, diffeo_classify, enumerate_diagrams, homology_classes, kauffman_bracket, lift_grid,
    lift_normalized_poly, normalized_poly, planar_diagram, serialize, tabulate, translate, BracketConfig, Exec,
    LaurentPoly, LensSpace, SearchConfig, Verdict, Witness,
};

const LENSES: [(u32, u32); 7] = [(1, 0), (2, 1), (3, 1), (4, 1), (5, 2), (7, 2), (8, 3)];

#[test]
fn enumeration_matches_brute_force() {
    let cases = [(2, 1, 3), (3, 1, 2), (4, 1, 2), (5, 2, 2), (1, 0, 3), (7, 2, 1)];
    for (p, q, n_max) in cases {
        for n in 1..=n_max {
            let mine: BTreeSet<String> = enumerate_diagrams(lens(p, q), n).iter().map(serialize).collect();
            let brute: BTreeSet<String> = brute_force_diagrams(lens(p, q), n).iter().map(serialize).collect();
            assert_eq!(mine.len(), enumerate_diagrams(lens(p, q), n).len(), "duplicates in L({p},{q}) n={n}");
            assert_eq!(mine, brute, "L({p},{q}) n={n}");
        }
    }
}

#[test]
fn catalog_counts_match_brute_force() {
    for (p, q) in [(2, 1), (3, 1), (5, 2)] {
        let catalog = tabulate(lens(p, q), 2, 50_000, &SearchConfig::default());
        let all: Vec<_> = (1..=2).flat_map(|n| brute_force_diagrams(lens(p, q), n)).collect();
        let forms: BTreeSet<String> = all
            .iter()
            .map(|g| {
                (0..g.n() as i64)
                    .flat_map(|dr| (0..g.width() as i64).map(move |dx| (dr, dx)))
                    .map(|(dr, dx)| serialize(&translate(g, dr, dx)))
                    .min()
                    .unwrap()
            })
            .collect();
        assert_eq!(catalog.diagrams, all.len());
        assert_eq!(catalog.canonical, forms.len());
        assert_eq!(catalog.classes.iter().map(|c| c.members).sum::<usize>(), forms.len());
    }
}

#[test]
fn bracket_matches_state_sum_on_square_grids() {
    let mut rng = rng_from_seed(21);
    let mut checked = 0;
    for size in 2..=8 {
        for _ in 0..40 {
            let g = random_diagram(LensSpace::sphere(), size, &mut rng);
            let pd = planar_diagram(&g).unwrap();
            if pd.crossing_count() > 14 {
                continue;
            }
            let (raw, writhe) = bracket_oracle(&g);
            assert_eq!(pd.writhe(), writhe, "{}", serialize(&g));
            let cfg = BracketConfig::default();
            assert_eq!(kauffman_bracket(&pd, &cfg).unwrap(), raw, "{}", serialize(&g));
            assert_eq!(normalized_poly(&pd, &cfg).unwrap(), normalized_oracle(&g));
            checked += 1;
        }
    }
    assert!(checked > 150, "only {checked} diagrams checked");
}

#[test]
fn lift_brackets_match_state_sum() {
    let mut checked = 0;
    for (i, &(p, q)) in LENSES.iter().enumerate().skip(1) {
        for g in random_corpus(lens(p, q), 2, 25, i as u64) {
            let lift = lift_grid(&g);
            let pd = planar_diagram(&lift).unwrap();
            if pd.crossing_count() > 16 {
                continue;
            }
            let cfg = BracketConfig::default();
            assert_eq!(normalized_poly(&pd, &cfg).unwrap(), normalized_oracle(&lift), "{}", serialize(&g));
            checked += 1;
        }
    }
    assert!(checked > 50, "only {checked} lifts checked");
}

#[test]
fn trefoil_chirality_follows_writhe() {
    let right = LaurentPoly::from_terms([(-1, -16), (1, -12), (1, -4)]);
    let mut rng = rng_from_seed(8);
    let mut trefoils = [0, 0];
    for _ in 0..3000 {
        let g = random_diagram(LensSpace::sphere(), 5, &mut rng);
        let pd = planar_diagram(&g).unwrap();
        if pd.component_count != 1 || pd.crossing_count() != 3 {
            continue;
        }
        let (_, writhe) = bracket_oracle(&g);
        let f = normalized_oracle(&g);
        if f == LaurentPoly::one() {
            continue;
        }
        match writhe {
            3 => {
                assert_eq!(f, right, "{}", serialize(&g));
                trefoils[0] += 1;
            }
            -3 => {
                assert_eq!(f, right.mirror(), "{}", serialize(&g));
                trefoils[1] += 1;
            }
            w => panic!("3-crossing knot with writhe {w} and polynomial {f}"),
        }
    }
    assert!(trefoils[0] > 0 && trefoils[1] > 0, "{trefoils:?}");
}

#[test]
fn homology_matches_strip_count() {
    for (i, &(p, q)) in LENSES.iter().enumerate() {
        for g in random_corpus(lens(p, q), 4, 200, 100 + i as u64) {
            let total: u32 = homology_classes(&g).iter().sum();
            assert_eq!(total % p, total_class_by_strips(&g), "{}", serialize(&g));
        }
    }
}

#[test]
fn hand_traced_values() {
    let e1 = grid("lens 2 1\ngrid 1\nXO\n");
    assert_eq!(homology_classes(&e1), [1]);
    assert_eq!(serialize(&lift_grid(&e1)), serialize(&grid("lens 1 0\ngrid 2\nXO\nOX\n")),);
    let e3 = grid("lens 5 2\ngrid 1\nXO...\n");
    assert_eq!(homology_classes(&e3), [3]);
    assert_eq!(total_class_by_strips(&e3), 3);

    // Rows t of the lift carry X at 2t and O at 1 + 2t once the rows are
    // listed bottom to top.
    let expected = "lens 1 0\ngrid 5\n".to_string()
        + &(0..5u32)
            .rev()
            .map(|t| {
                let mut row = vec!['.'; 5];
                row[(2 * t % 5) as usize] = 'X';
                row[((1 + 2 * t) % 5) as usize] = 'O';
                row.into_iter().collect::<String>() + "\n"
            })
            .collect::<String>();
    assert_eq!(canonical_form(&lift_grid(&e3)), canonical_form(&grid(&expected)));
}

#[test]
fn execution_modes_agree() {
    for (p, q) in [(3, 1), (5, 2), (8, 3)] {
        for g in random_corpus(lens(p, q), 2, 10, 4) {
            let lift = lift_grid(&g);
            let pd = planar_diagram(&lift).unwrap();
            let seq = BracketConfig { cap: 200, exec: Exec::Sequential };
            let par = BracketConfig { cap: 200, exec: Exec::Parallel };
            assert_eq!(kauffman_bracket(&pd, &seq).unwrap(), kauffman_bracket(&pd, &par).unwrap());
        }
    }
    let seq = SearchConfig { exec: Exec::Sequential, ..SearchConfig::default() };
    let par = SearchConfig { exec: Exec::Parallel, ..SearchConfig::default() };
    let a = tabulate(lens(3, 1), 2, 20_000, &seq);
    let b = tabulate(lens(3, 1), 2, 20_000, &par);
    assert_eq!(a.to_string(), b.to_string());
}

/// The cores of the two Heegaard solid tori of L(7,2): the vertical-arc knot
/// `XO` has class q⁻¹ = 4, and the classes ±1 and ±4 are the n = 1 knots
/// with trivial lift. Their orbits are disjoint since 2² ≢ ±1 (mod 7).
#[test]
fn axes_of_l72_lift_trivially_and_are_distinct() {
    let l72 = lens(7, 2);
    let core = grid("lens 7 2\ngrid 1\nXO.....\n");
    assert_eq!(homology_classes(&core), [4]);
    let cfg = BracketConfig::default();
    for g in enumerate_diagrams(l72, 1) {
        let delta = homology_classes(&g)[0];
        let trivial = lift_normalized_poly(&g, &cfg).unwrap() == LaurentPoly::one();
        assert_eq!(trivial, [1, 3, 4, 6].contains(&delta), "{}", serialize(&g));
    }
    let other = enumerate_diagrams(l72, 1).into_iter().find(|g| homology_classes(g) == [1]).unwrap();
    let report = diffeo_classify(&other, &core, &SearchConfig::default()).unwrap();
    let Verdict::DistinctCertified(Witness::HomologyOrbit { a, orbit }) = report.verdict else {
        panic!("{:?}", report.verdict);
    };
    assert_eq!(a, [1]);
    assert_eq!(orbit, [vec![4], vec![3]]);
}
