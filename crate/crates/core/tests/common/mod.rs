#![allow(dead_code)]

use lrc_core::constructions::{parity_product_code, shortened_hamming_6_3};
use lrc_core::{CoordSet, Elem, Field, LinearCode, Matrix, RecoveringFamily, RecoveringGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Codes with known uniform families: (name, code, family).
pub fn corpus() -> Vec<(&'static str, LinearCode, RecoveringFamily)> {
    let (h, hf) = shortened_hamming_6_3();
    let mut out = vec![("hamming63", h, hf)];
    for (name, r, t) in [
        ("pp21", 2, 1),
        ("pp22", 2, 2),
        ("pp32", 3, 2),
        ("pp23", 2, 3),
        ("pp12", 1, 2),
        ("pp13", 1, 3),
    ] {
        let (c, f) = parity_product_code(r, t).unwrap();
        out.push((name, c, f));
    }
    out
}

/// Random graph on `n` vertices where every vertex has `t` pairwise disjoint
/// sets of exactly `r` other vertices.
pub fn random_uniform_graph(rng: &mut ChaCha8Rng, n: usize, r: usize, t: usize) -> RecoveringGraph {
    assert!(r * t < n);
    let sets = (1..=n)
        .map(|v| {
            let mut others: Vec<usize> = (1..=n).filter(|&u| u != v).collect();
            others.shuffle(rng);
            others
                .chunks(r)
                .take(t)
                .map(|c| CoordSet::new(c.iter().copied()))
                .collect()
        })
        .collect();
    RecoveringGraph::from_sets(sets).unwrap()
}

/// Seeded random uniform graph with random parameters and `n <= 12`.
pub fn random_graph(seed: u64) -> RecoveringGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = rng.random_range(1..=3);
    let t = rng.random_range(1..=3);
    let n = rng.random_range(r * t + 1..=12.max(r * t + 1));
    random_uniform_graph(&mut rng, n, r, t)
}

/// Fixed-point closure by repeated full scans.
pub fn naive_closure(g: &RecoveringGraph, seed: &CoordSet) -> CoordSet {
    let mut inside: Vec<bool> = (1..=g.n()).map(|v| seed.contains(v)).collect();
    loop {
        let mut changed = false;
        for v in 1..=g.n() {
            if !inside[v - 1]
                && (1..=g.t()).any(|c| g.recovering_set(v, c).iter().all(|u| inside[u - 1]))
            {
                inside[v - 1] = true;
                changed = true;
            }
        }
        if !changed {
            return (1..=g.n()).filter(|&v| inside[v - 1]).collect();
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, q: u32) -> Matrix {
    let data: Vec<Vec<Elem>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.random_range(0..q) as Elem).collect())
        .collect();
    Matrix::from_rows(&data, cols).unwrap()
}

/// Random code over GF(q) with the requested length; the dimension is the
/// rank of a random `rows x n` matrix (at least 1).
pub fn random_code(rng: &mut ChaCha8Rng, n: usize, rows: usize, q: u32) -> LinearCode {
    let field = Field::new(q).unwrap();
    loop {
        let m = random_matrix(rng, rows, n, q);
        let basis = m.row_space_basis(&field);
        if basis.rows() > 0 {
            return LinearCode::from_generator(field, basis).unwrap();
        }
    }
}

/// Every codeword by direct matrix-vector products over all messages.
pub fn naive_codewords(code: &LinearCode) -> Vec<Vec<Elem>> {
    let f = code.field();
    let q = f.order() as usize;
    let (k, n) = (code.dimension(), code.length());
    let g = code.generator();
    let total = q.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            let mut msg = vec![0; k];
            for x in msg.iter_mut().rev() {
                *x = (idx % q) as Elem;
                idx /= q;
            }
            (0..n)
                .map(|j| (0..k).fold(0, |acc, i| f.add(acc, f.mul(msg[i], g.get(i, j)))))
                .collect()
        })
        .collect()
}

pub fn naive_distance(code: &LinearCode) -> usize {
    naive_codewords(code)
        .iter()
        .map(|c| c.iter().filter(|&&x| x != 0).count())
        .filter(|&w| w > 0)
        .min()
        .unwrap_or(code.length())
}

/// Coordinate `i` is determined by `set` exactly when no codeword vanishes on
/// `set` but not at `i`.
pub fn naive_recovers(words: &[Vec<Elem>], i: usize, set: &CoordSet) -> bool {
    !words
        .iter()
        .any(|c| c[i - 1] != 0 && set.iter().all(|j| c[j - 1] == 0))
}

/// Largest number of pairwise disjoint nonempty recovering sets of size at
/// most `r`, by brute force over all candidate subsets.
pub fn naive_availability(words: &[Vec<Elem>], n: usize, i: usize, r: usize) -> usize {
    let cands: Vec<u128> = (1u128..1 << n)
        .filter(|m| m >> (i - 1) & 1 == 0 && m.count_ones() as usize <= r)
        .filter(|&m| naive_recovers(words, i, &CoordSet::from_mask(m)))
        .collect();
    fn best(cands: &[u128], used: u128) -> usize {
        cands
            .iter()
            .enumerate()
            .filter(|(_, &m)| m & used == 0)
            .map(|(idx, &m)| 1 + best(&cands[idx + 1..], used | m))
            .max()
            .unwrap_or(0)
    }
    best(&cands, 0)
}
