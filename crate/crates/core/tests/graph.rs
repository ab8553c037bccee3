mod common;

use common::{corpus, naive_closure, random_graph, random_uniform_graph};
use lrc_core::bounds::{
    closure_lower_bound, coloring_probability, expansion_constant, integer, ratio,
};
use lrc_core::graph::{
    build_expander_set, closure, color_by_permutation, cycle_witness, cycle_witness_with_coloring,
    distance_bound_coloring, exhaustive_coloring, expansion_ratio, find_large_colored_set,
    recovery_elimination_order, trial_permutation, Coloring,
};
use lrc_core::{CoordSet, Error, Rational, RecoveringGraph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph_of(family: &lrc_core::RecoveringFamily, n: usize) -> RecoveringGraph {
    RecoveringGraph::from_family(family, n).unwrap()
}

/// `e_t` as the series `sum_{i <= t} r^-i`, valid for `r = 1` as well.
fn series_constant(r: usize, t: usize) -> Rational {
    (0..=t)
        .map(|i| ratio(1, (r as i64).pow(i as u32)))
        .fold(integer(0), |a, b| a + b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_laws(seed in any::<u64>(), a in any::<u16>(), b in any::<u16>()) {
        let g = random_graph(seed);
        let n = g.n();
        let full = (1u128 << n) - 1;
        let s = CoordSet::from_mask(a as u128 & full);
        let bigger = s.union(&CoordSet::from_mask(b as u128 & full));
        let cs = closure(&g, &s).unwrap();
        prop_assert_eq!(&cs, &naive_closure(&g, &s));
        prop_assert!(s.is_subset(&cs));
        prop_assert_eq!(closure(&g, &cs).unwrap(), cs.clone());
        prop_assert!(cs.is_subset(&closure(&g, &bigger).unwrap()));
    }

    #[test]
    fn permutation_sets_eliminate(seed in any::<u64>(), trial in 0u64..1000) {
        let g = random_graph(seed);
        let tau = trial_permutation(g.n(), seed, trial);
        let coloring = color_by_permutation(&g, &tau).unwrap();
        let u = coloring.colored();
        let order = recovery_elimination_order(&g, &u).unwrap().expect("permutation sets eliminate");
        prop_assert_eq!(CoordSet::new(order.iter().copied()), u.clone());
        // Every colored vertex beats its whole colored set under tau.
        for v in u.iter() {
            let c = coloring.color(v).unwrap();
            prop_assert!(g.recovering_set(v, c).iter().all(|m| tau[v - 1] > tau[m - 1]));
        }
        prop_assert!(matches!(cycle_witness(&g, &u, &tau), Err(Error::Precondition(_))));
    }

    #[test]
    fn expander_postconditions_random(seed in any::<u64>()) {
        let g = random_graph(seed);
        for v in 1..=g.n() {
            for colors in 0..=g.t() {
                let s = build_expander_set(&g, v, colors).unwrap();
                prop_assert!(s.len() as u128 <= (g.r() as u128).pow(colors as u32));
                prop_assert!(closure(&g, &s).unwrap().contains(v));
                prop_assert!(expansion_ratio(&g, &s).unwrap() >= series_constant(g.r(), colors));
            }
        }
    }

    #[test]
    fn distance_coloring_random(seed in any::<u64>(), k in 2usize..12) {
        let g = random_graph(seed);
        let k = k.min(g.n());
        let out = distance_bound_coloring(&g, k).unwrap();
        prop_assert!(out.seed.len() < k);
        prop_assert_eq!(closure(&g, &out.seed).unwrap(), out.closure.clone());
        prop_assert!(out.closure.len() >= closure_lower_bound(k - 1, g.r(), g.t()).min(g.n()));
    }
}

#[test]
fn expander_postconditions_on_corpus() {
    for (name, code, family) in corpus() {
        let g = graph_of(&family, code.length());
        for v in 1..=g.n() {
            for colors in 0..=g.t() {
                let s = build_expander_set(&g, v, colors).unwrap();
                assert!(
                    s.len() <= g.r().pow(colors as u32),
                    "{name} v={v} t'={colors}"
                );
                assert!(
                    closure(&g, &s).unwrap().contains(v),
                    "{name} v={v} t'={colors}"
                );
                let e = series_constant(g.r(), colors);
                if g.r() >= 2 {
                    assert_eq!(expansion_constant(g.r(), colors).unwrap(), e);
                }
                assert!(
                    expansion_ratio(&g, &s).unwrap() >= e,
                    "{name} v={v} t'={colors}"
                );
            }
        }
    }
}

#[test]
fn distance_coloring_on_corpus() {
    for (name, code, family) in corpus() {
        let g = graph_of(&family, code.length());
        for k in 2..=code.dimension() {
            let out = distance_bound_coloring(&g, k).unwrap();
            assert!(out.seed.len() < k, "{name} k={k}");
            let need = closure_lower_bound(k - 1, g.r(), g.t());
            assert!(
                out.closure.len() >= need,
                "{name} k={k}: {} < {need}",
                out.closure.len()
            );
        }
    }
}

#[test]
fn colored_sets_leave_room_for_an_information_set() {
    // The complement of U determines the code, so k <= n - |U|.
    for (name, code, family) in corpus() {
        let g = graph_of(&family, code.length());
        for trial in 0..200 {
            let tau = trial_permutation(g.n(), 11, trial);
            let u = color_by_permutation(&g, &tau).unwrap().colored();
            assert!(code.dimension() <= g.n() - u.len(), "{name} trial {trial}");
            assert!(recovery_elimination_order(&g, &u).unwrap().is_some());
        }
    }
}

#[test]
fn exhaustive_mean_matches_formula_on_small_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (n, r, t) in [(4, 1, 1), (5, 2, 2), (6, 1, 3), (7, 3, 2), (5, 4, 1)] {
        let g = random_uniform_graph(&mut rng, n, r, t);
        let stats = exhaustive_coloring(&g).unwrap();
        let expected = integer(n as i64) * coloring_probability(r, t).unwrap();
        assert_eq!(stats.mean, expected, "n={n} r={r} t={t}");
        assert!(stats.all_eliminate);
    }
}

#[test]
fn random_search_is_seeded_and_parallel_safe() {
    let (code, family) = lrc_core::constructions::parity_product_code(2, 2).unwrap();
    let g = graph_of(&family, code.length());
    let a = find_large_colored_set(&g, 500, 7, 1).unwrap();
    let b = find_large_colored_set(&g, 500, 7, 4).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.target, ratio(21, 5));
    assert!(a.size >= 5 && a.meets_target);
    let mut tau = trial_permutation(9, 7, 3);
    tau.sort();
    assert_eq!(tau, (1..=9).collect::<Vec<_>>());
}

fn follows_colors(g: &RecoveringGraph, coloring: &Coloring, u: &CoordSet, cycle: &[usize]) {
    assert!(cycle.len() >= 2);
    assert_eq!(cycle.first(), cycle.last());
    for w in cycle.windows(2) {
        assert!(u.contains(w[0]) && u.contains(w[1]));
        let c = coloring.color(w[0]).unwrap();
        assert!(
            g.recovering_set(w[0], c).contains(w[1]),
            "{} -> {} is not color {c}",
            w[0],
            w[1]
        );
    }
}

#[test]
fn forged_colorings_give_cycles() {
    let (code, family) = lrc_core::constructions::parity_product_code(2, 2).unwrap();
    let g = graph_of(&family, code.length());
    let all = CoordSet::full(9);
    for color in 1..=2 {
        let forged = Coloring {
            colors: vec![Some(color); 9],
        };
        assert_eq!(recovery_elimination_order(&g, &all).unwrap(), None);
        let cycle = cycle_witness_with_coloring(&g, &all, &forged).unwrap();
        follows_colors(&g, &forged, &all, &cycle);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let g = random_graph(rand::Rng::random(&mut rng));
        let mut colors: Vec<Option<usize>> = (0..g.n())
            .map(|_| Some(1 + rand::Rng::random_range(&mut rng, 0..g.t())))
            .collect();
        colors.shuffle(&mut rng);
        let forged = Coloring { colors };
        let all = CoordSet::full(g.n());
        let cycle = cycle_witness_with_coloring(&g, &all, &forged).unwrap();
        follows_colors(&g, &forged, &all, &cycle);
    }
}

#[test]
fn cycle_witness_preconditions() {
    let (code, family) = lrc_core::constructions::parity_product_code(2, 2).unwrap();
    let g = graph_of(&family, code.length());
    let partial = Coloring {
        colors: (0..9).map(|v| (v != 4).then_some(1)).collect(),
    };
    assert!(matches!(
        cycle_witness_with_coloring(&g, &CoordSet::full(9), &partial),
        Err(Error::Precondition(_))
    ));
    let short = Coloring {
        colors: vec![Some(1); 3],
    };
    assert!(cycle_witness_with_coloring(&g, &CoordSet::full(9), &short).is_err());
}

#[test]
fn residual_semantics() {
    let (code, family) = lrc_core::constructions::parity_product_code(2, 2).unwrap();
    let g = graph_of(&family, code.length());
    // With the top row closed, each remaining vertex's column set shrinks.
    let survivors: CoordSet = (4..=9).collect();
    let h = g.residual(&survivors).unwrap();
    assert_eq!(
        closure(&h, &CoordSet::from([4, 5])).unwrap(),
        CoordSet::from([4, 5, 6, 7, 8, 9])
    );
    assert_eq!(h.survivors(), survivors);
}
