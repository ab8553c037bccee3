mod common;

use common::{corpus, naive_availability, naive_codewords, naive_recovers, random_code};
use lrc_core::recovery::{
    find_disjoint_recovering_sets, find_family, is_recovering_set, locality_profile,
    recovers_by_dual, recovers_by_enumeration, recovers_by_rank,
};
use lrc_core::{CoordSet, LocalityTable, RecoveringFamily};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn three_routes_agree_with_naive(seed in any::<u64>(), n in 2usize..8, rows in 1usize..5, qi in 0usize..3, mask in any::<u8>(), i in 1usize..8) {
        let q = [2, 3, 4][qi];
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), q);
        let i = i.min(n);
        let set = CoordSet::from_mask((mask as u128) & ((1u128 << n) - 1)).without(i);
        let words = naive_codewords(&code);
        let expected = naive_recovers(&words, i, &set);
        prop_assert_eq!(recovers_by_enumeration(&code, i, &set).unwrap(), expected);
        prop_assert_eq!(recovers_by_dual(&code, i, &set).unwrap(), expected);
        prop_assert_eq!(recovers_by_rank(&code, i, &set).unwrap(), expected);
        prop_assert_eq!(is_recovering_set(&code, i, &set).unwrap(), expected);
        if expected {
            for extra in 1..=n {
                if extra != i {
                    prop_assert!(is_recovering_set(&code, i, &set.with(extra)).unwrap());
                }
            }
        }
    }

    #[test]
    fn locality_tables_agree(seed in any::<u64>(), n in 2usize..9, rows in 1usize..6, max_size in 1usize..4) {
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), 2);
        let a = LocalityTable::from_dual(&code, max_size).unwrap();
        let b = LocalityTable::from_rank(&code, max_size).unwrap();
        prop_assert_eq!(&a, &b);
        let words = naive_codewords(&code);
        for i in 1..=n {
            for set in a.minimal_sets(i) {
                prop_assert!(naive_recovers(&words, i, &set));
                for j in set.iter() {
                    prop_assert!(!naive_recovers(&words, i, &set.without(j)));
                }
            }
        }
    }

    #[test]
    fn found_families_are_valid(seed in any::<u64>(), n in 3usize..9, rows in 1usize..5, r in 1usize..4, t in 1usize..3) {
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), 2);
        let profile = locality_profile(&code, r).unwrap();
        match find_family(&code, r, t).unwrap() {
            Some(family) => {
                prop_assert!(profile.iter().all(|&p| p >= t));
                family.validate_for_code(&code).unwrap();
                let words = naive_codewords(&code);
                for i in 1..=n {
                    let sets = family.sets_of(i);
                    prop_assert_eq!(sets.len(), t);
                    for (a, s) in sets.iter().enumerate() {
                        prop_assert!(s.len() <= r && !s.contains(i));
                        prop_assert!(naive_recovers(&words, i, s));
                        for other in &sets[a + 1..] {
                            prop_assert!(s.is_disjoint(other));
                        }
                    }
                }
            }
            None => prop_assert!(profile.iter().any(|&p| p < t)),
        }
    }
}

#[test]
fn corpus_families_recover() {
    for (name, code, family) in corpus() {
        family.validate_for_code(&code).unwrap();
        let profile = locality_profile(&code, family.r).unwrap();
        assert!(
            profile.iter().all(|&p| p >= family.t),
            "{name}: {profile:?}"
        );
        assert!(
            find_family(&code, family.r, family.t).unwrap().is_some(),
            "{name}"
        );
    }
}

#[test]
fn lexicographic_first_choice() {
    let (code, _, _) = {
        let (c, f) = lrc_core::constructions::shortened_hamming_6_3();
        (c, f, ())
    };
    let sets = find_disjoint_recovering_sets(&code, 1, 2, 2)
        .unwrap()
        .unwrap();
    assert_eq!(sets, vec![CoordSet::from([2, 4]), CoordSet::from([3, 5])]);
    assert_eq!(find_disjoint_recovering_sets(&code, 1, 2, 3).unwrap(), None);
    assert!(find_disjoint_recovering_sets(&code, 7, 2, 1).is_err());
}

#[test]
fn family_json_round_trip() {
    let (_, family) = lrc_core::constructions::shortened_hamming_6_3();
    let json = family.to_json();
    assert!(json.starts_with(r#"{"r":2,"t":2,"sets":[[[2,4],[3,5]],"#));
    assert_eq!(RecoveringFamily::from_json(&json).unwrap(), family);
}

#[test]
fn invalid_families_rejected() {
    let bad_overlap = RecoveringFamily {
        r: 2,
        t: 2,
        sets: vec![
            vec![CoordSet::from([2]), CoordSet::from([2])],
            vec![CoordSet::from([1]), CoordSet::from([1])],
        ],
    };
    assert!(bad_overlap.validate(2).is_err());
    let self_loop = RecoveringFamily {
        r: 1,
        t: 1,
        sets: vec![vec![CoordSet::from([1])], vec![CoordSet::from([1])]],
    };
    assert!(self_loop.validate(2).is_err());
    let (code, mut family) = lrc_core::constructions::shortened_hamming_6_3();
    family.sets[0][0] = CoordSet::from([2, 3]);
    assert!(family.validate_for_code(&code).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profile_matches_brute_force(seed in any::<u64>(), n in 2usize..7, rows in 1usize..5, r in 1usize..4) {
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), 2);
        let words = naive_codewords(&code);
        let profile = locality_profile(&code, r).unwrap();
        for i in 1..=n {
            let expected = naive_availability(&words, n, i, r.min(n - 1));
            prop_assert_eq!(profile[i - 1], expected, "coordinate {}", i);
            let found = find_disjoint_recovering_sets(&code, i, r, expected.max(1)).unwrap();
            prop_assert_eq!(found.is_some(), expected >= 1);
            prop_assert_eq!(find_disjoint_recovering_sets(&code, i, r, expected + 1).unwrap(), None);
        }
    }
}

#[test]
fn zero_coordinate() {
    let code = lrc_core::LinearCode::parse("q 2\nn 3 k 1\nmatrix generator\n0 0 1\n").unwrap();
    let table = LocalityTable::build(&code, 2).unwrap();
    assert_eq!(table.minimal_sets(1), vec![CoordSet::empty()]);
    assert_eq!(table, LocalityTable::from_rank(&code, 2).unwrap());
    assert_eq!(locality_profile(&code, 1).unwrap(), vec![2, 2, 0]);
    assert_eq!(
        find_disjoint_recovering_sets(&code, 1, 1, 2).unwrap(),
        Some(vec![CoordSet::from([2]), CoordSet::from([3])])
    );
}
