mod common;

use common::{naive_codewords, naive_distance, random_code, random_matrix};
use lrc_core::{CoordSet, Field, LinearCode, Matrix, MatrixForm};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const ORDERS: [u32; 12] = [2, 3, 4, 5, 7, 8, 11, 16, 31, 64, 128, 256];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms_sampled(qi in 0..ORDERS.len(), a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
        let f = Field::new(ORDERS[qi]).unwrap();
        let q = ORDERS[qi] as u16;
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_and_nullspace(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..8, qi in 0usize..6) {
        let q = ORDERS[qi];
        let field = Field::new(q).unwrap();
        let m = random_matrix(&mut ChaCha8Rng::seed_from_u64(seed), rows, cols, q);
        let reduced = m.rref(&field);
        prop_assert_eq!(reduced.rref(&field), reduced.clone());
        prop_assert_eq!(reduced.rank(&field), m.rank(&field));
        let null = m.nullspace_basis(&field);
        prop_assert_eq!(null.rows() + m.rank(&field), cols);
        if null.rows() > 0 {
            prop_assert!(m.mul(&field, &null.transpose()).unwrap().is_zero());
        }
    }

    #[test]
    fn code_distance_oracles_agree(seed in any::<u64>(), n in 2usize..8, rows in 1usize..5, qi in 0usize..3) {
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), ORDERS[qi]);
        let d = code.minimum_distance().unwrap();
        prop_assert_eq!(d, naive_distance(&code));
        prop_assert_eq!(d, code.distance_via_restriction().unwrap());
        prop_assert!(d <= n - code.dimension() + 1);
    }

    #[test]
    fn codewords_match_direct_encoding(seed in any::<u64>(), n in 2usize..7, rows in 1usize..4, qi in 0usize..3) {
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), ORDERS[qi]);
        let mut fast = code.codewords().unwrap();
        let mut slow = naive_codewords(&code);
        fast.sort();
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn generator_parity_orthogonal(seed in any::<u64>(), n in 2usize..9, rows in 1usize..6, qi in 0usize..6) {
        let q = ORDERS[qi];
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), q);
        let h = code.parity_check();
        prop_assert_eq!(h.rows(), n - code.dimension());
        if h.rows() > 0 {
            prop_assert!(code.generator().mul(code.field(), &h.transpose()).unwrap().is_zero());
        }
        for word in code.dual_codewords().unwrap().iter().take(50) {
            for c in code.codewords().unwrap().iter().take(50) {
                let dot = (0..n).fold(0, |acc, j| code.field().add(acc, code.field().mul(word[j], c[j])));
                prop_assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn restriction_is_monotone(seed in any::<u64>(), n in 2usize..8, rows in 1usize..4, mask in any::<u8>(), extra in 1usize..8) {
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), 2);
        let small = CoordSet::from_mask((mask as u128) & ((1u128 << n) - 1));
        let large = small.with(extra.min(n));
        let a = code.restrict(&small).unwrap().len();
        let b = code.restrict(&large).unwrap().len();
        prop_assert!(a <= b);
        prop_assert!(b <= a * 2);
        prop_assert_eq!(code.restrict(&CoordSet::full(n)).unwrap().len() as u128, code.size().unwrap());
    }

    #[test]
    fn file_round_trip(seed in any::<u64>(), n in 2usize..9, rows in 1usize..6, qi in 0usize..6, parity in any::<bool>()) {
        let code = random_code(&mut ChaCha8Rng::seed_from_u64(seed), n, rows.min(n), ORDERS[qi]);
        let form = if parity { MatrixForm::Parity } else { MatrixForm::Generator };
        let back = LinearCode::parse(&code.to_code_file(form, Some("round trip"))).unwrap();
        let f = code.field();
        prop_assert_eq!(back.dimension(), code.dimension());
        prop_assert_eq!(back.generator().row_space_basis(f), code.generator().row_space_basis(f));
    }
}

#[test]
fn parity_input_with_dependent_rows() {
    let text = "q 2\nn 4 k 2\nmatrix parity\n1 1 0 0\n0 0 1 1\n1 1 1 1\n";
    let code = LinearCode::parse(text).unwrap();
    assert_eq!(code.dimension(), 2);
    assert_eq!(code.parity_check().rows(), 2);
    assert!(code.is_codeword(&[1, 1, 1, 1]));
}

#[test]
fn parse_errors_name_lines() {
    let cases = [
        ("", 1),
        ("q 6\n", 1),
        ("q 2\nn 3 k 4\n", 2),
        ("q 2\nn 3 k 1\nmatrix sideways\n", 3),
        ("# c\nq 2\nn 3 k 1\nmatrix generator\n1 2 0\n", 5),
        ("q 2\nn 3 k 1\nmatrix generator\n1 1\n", 4),
        ("q 2\nn 3 k 2\nmatrix generator\n1 1 0\n1 1 0\n", 3),
    ];
    for (text, line) in cases {
        match LinearCode::parse(text) {
            Err(lrc_core::Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
            other => panic!("{text:?}: {other:?}"),
        }
    }
}

#[test]
fn kronecker_dimensions() {
    let f = Field::binary();
    let a = Matrix::from_rows(&[vec![1, 0, 1], vec![0, 1, 1]], 3).unwrap();
    let k = a.kronecker(&f, &a);
    assert_eq!((k.rows(), k.cols()), (4, 9));
    assert_eq!(k.rank(&f), 4);
}
