//! Exhaustive search over all `[n, k]` linear codes of a small field.
//!
//! Each code is visited once through its unique reduced row-echelon generator.
//! Work is split by pivot pattern; per-pattern results are merged in pattern
//! order, so every output is independent of the number of worker threads.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::distance_bound;
use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::Matrix;
use crate::recovery::LocalityTable;

/// Largest number of subspaces a search will enumerate.
pub const SUBSPACE_GUARD: u64 = 10_000_000;

/// Number of `k`-dimensional subspaces of `GF(q)^n`.
pub fn gaussian_binomial(n: usize, k: usize, q: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow(i as u32 + 1) - 1;
    }
    num / den
}

/// Pivot columns of a reduced row-echelon matrix together with the positions
/// that are free to take any field value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PivotPattern {
    pub pivots: Vec<usize>,
    pub free: Vec<(usize, usize)>,
}

impl PivotPattern {
    fn new(n: usize, pivots: Vec<usize>) -> Self {
        let free = pivots
            .iter()
            .enumerate()
            .flat_map(|(row, &p)| {
                let pivots = &pivots;
                (p + 1..n)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (row, c))
            })
            .collect();
        PivotPattern { pivots, free }
    }

    pub fn count(&self, q: u32) -> u64 {
        (q as u64).pow(self.free.len() as u32)
    }

    /// The `index`-th matrix of this pattern; free entries read `index` in
    /// base `q`, first free position most significant.
    pub fn matrix(&self, n: usize, q: u32, mut index: u64) -> Matrix {
        let mut m = Matrix::zeros(self.pivots.len(), n);
        for (row, &p) in self.pivots.iter().enumerate() {
            m.set(row, p, 1);
        }
        for &(row, col) in self.free.iter().rev() {
            m.set(row, col, (index % q as u64) as Elem);
            index /= q as u64;
        }
        m
    }
}

/// All `k`-subsets of `0..n` in lexicographic order, as pivot patterns.
pub fn pivot_patterns(n: usize, k: usize) -> Vec<PivotPattern> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(PivotPattern::new(n, idx.clone()));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] != p + n - k) else {
            return out;
        };
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

fn check_search(n: usize, k: usize, q: u32) -> Result<Field> {
    if k == 0 || k > n {
        return Err(Error::Domain(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let field = Field::new(q)?;
    let count = gaussian_binomial(n, k, q);
    if count > BigInt::from(SUBSPACE_GUARD) {
        return Err(Error::guard("subspace count", count, SUBSPACE_GUARD));
    }
    Ok(field)
}

/// Every `[n, k]` code over GF(q) exactly once, in lexicographic pivot order.
pub fn enumerate_codes(n: usize, k: usize, q: u32) -> Result<impl Iterator<Item = LinearCode>> {
    let field = check_search(n, k, q)?;
    Ok(pivot_patterns(n, k).into_iter().flat_map(move |pattern| {
        let field = field.clone();
        (0..pattern.count(q)).map(move |i| {
            LinearCode::from_generator(field.clone(), pattern.matrix(n, q, i))
                .expect("reduced row-echelon matrices have full rank")
        })
    }))
}

fn run_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    Ok(pool.install(work))
}

/// Folds over every `[n, k]` code in parallel by pivot pattern. `fold` sees
/// each code with its global enumeration index; partial results are merged
/// in pattern order.
fn fold_codes<T, F, M>(
    n: usize,
    k: usize,
    q: u32,
    jobs: usize,
    init: impl Fn() -> T + Sync,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    F: Fn(&mut T, u64, LinearCode) + Sync,
    M: Fn(T, T) -> T,
{
    let field = check_search(n, k, q)?;
    let patterns = pivot_patterns(n, k);
    let mut offsets = Vec::with_capacity(patterns.len());
    let mut total = 0u64;
    for p in &patterns {
        offsets.push(total);
        total += p.count(q);
    }
    let per_pattern = |(pattern, &offset): (&PivotPattern, &u64)| {
        let mut acc = init();
        for i in 0..pattern.count(q) {
            let code = LinearCode::from_generator(field.clone(), pattern.matrix(n, q, i))
                .expect("reduced row-echelon matrices have full rank");
            fold(&mut acc, offset + i, code);
        }
        acc
    };
    let parts: Vec<T> = if jobs > 1 {
        run_pool(jobs, || {
            patterns
                .par_iter()
                .zip(offsets.par_iter())
                .map(per_pattern)
                .collect()
        })?
    } else {
        patterns
            .iter()
            .zip(offsets.iter())
            .map(per_pattern)
            .collect()
    };
    Ok(parts.into_iter().fold(init(), merge))
}

/// Best code found so far: larger distance wins, then earlier index.
#[derive(Debug, Clone)]
struct Best {
    distance: usize,
    index: u64,
    code: LinearCode,
}

fn pick_best(a: Option<Best>, b: Option<Best>) -> Option<Best> {
    match (a, b) {
        (Some(a), Some(b)) => {
            if b.distance > a.distance || (b.distance == a.distance && b.index < a.index) {
                Some(b)
            } else {
                Some(a)
            }
        }
        (a, b) => a.or(b),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub r: usize,
    pub t: usize,
    pub codes_examined: u64,
    pub qualifying: u64,
    pub best_distance: Option<usize>,
    pub witness_index: Option<u64>,
    /// Reduced row-echelon generator of the first code reaching
    /// `best_distance`.
    pub witness_generator: Option<Vec<Vec<Elem>>>,
    pub bound: i64,
    #[serde(skip)]
    pub witness: Option<LinearCode>,
}

fn effective_r(r: usize, n: usize) -> usize {
    r.min(n.saturating_sub(1)).max(1)
}

/// Largest minimum distance among `[n, k]` codes over GF(q) in which every
/// coordinate has `t` pairwise disjoint recovering sets of size at most `r`.
pub fn max_distance_with_locality(
    n: usize,
    k: usize,
    q: u32,
    r: usize,
    t: usize,
    jobs: usize,
) -> Result<SearchOutcome> {
    let bound = distance_bound(n, k, r, t)?;
    let r_eff = effective_r(r, n);
    type Acc = (u64, u64, Option<Best>);
    let (examined, qualifying, best) = fold_codes(
        n,
        k,
        q,
        jobs,
        || (0, 0, None),
        |acc: &mut Acc, index, code| {
            acc.0 += 1;
            if n < 2 {
                return;
            }
            let table = LocalityTable::build(&code, r_eff).expect("n within mask limits");
            if !table.all_have_disjoint(r_eff, t) {
                return;
            }
            acc.1 += 1;
            let distance = code.minimum_distance().expect("searched codes are small");
            acc.2 = pick_best(
                acc.2.take(),
                Some(Best {
                    distance,
                    index,
                    code,
                }),
            );
        },
        |a: Acc, b: Acc| (a.0 + b.0, a.1 + b.1, pick_best(a.2, b.2)),
    )?;
    Ok(SearchOutcome {
        n,
        k,
        q,
        r,
        t,
        codes_examined: examined,
        qualifying,
        best_distance: best.as_ref().map(|b| b.distance),
        witness_index: best.as_ref().map(|b| b.index),
        witness_generator: best.as_ref().map(|b| b.code.generator().to_rows()),
        bound,
        witness: best.map(|b| b.code),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SweepFlag {
    /// The best qualifying code meets the bound.
    Tight,
    /// The best qualifying code falls short of the bound.
    Gap,
    /// No code has the requested locality.
    Infeasible,
    /// A code beats the bound; never expected.
    Violation,
    /// The cell exceeded the enumeration guard.
    Guard,
}

impl SweepFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepFlag::Tight => "TIGHT",
            SweepFlag::Gap => "GAP",
            SweepFlag::Infeasible => "INFEASIBLE",
            SweepFlag::Violation => "VIOLATION",
            SweepFlag::Guard => "GUARD",
        }
    }
}

impl std::fmt::Display for SweepFlag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub t: usize,
    pub q: u32,
    pub bound: i64,
    pub oracle: Option<usize>,
    pub flag: SweepFlag,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// Inclusive parameter ranges for [`bound_sweep`]. Cells with `k > n` are
/// skipped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRanges {
    pub n: (usize, usize),
    pub k: (usize, usize),
    pub r: (usize, usize),
    pub t: (usize, usize),
    pub q: u32,
}

fn span((lo, hi): (usize, usize)) -> std::ops::RangeInclusive<usize> {
    lo..=hi
}

fn flag_for(bound: i64, oracle: Option<usize>) -> SweepFlag {
    match oracle {
        None => SweepFlag::Infeasible,
        Some(d) if (d as i64) == bound => SweepFlag::Tight,
        Some(d) if (d as i64) < bound => SweepFlag::Gap,
        Some(_) => SweepFlag::Violation,
    }
}

/// Oracle distance against the distance bound for every cell in range. Each
/// `(n, k)` pair enumerates its codes once and scores all `(r, t)` cells.
pub fn bound_sweep(ranges: &SweepRanges, jobs: usize) -> Result<Vec<SweepRow>> {
    let q = ranges.q;
    Field::new(q)?;
    let cells: Vec<(usize, usize)> = span(ranges.r)
        .flat_map(|r| span(ranges.t).map(move |t| (r, t)))
        .filter(|&(r, t)| r >= 1 && t >= 1)
        .collect();
    let mut rows = Vec::new();
    for n in span(ranges.n).filter(|&n| n >= 1) {
        for k in span(ranges.k).filter(|&k| k >= 1 && k <= n) {
            let max_r = cells
                .iter()
                .map(|&(r, _)| effective_r(r, n))
                .max()
                .unwrap_or(1);
            let outcome = fold_codes(
                n,
                k,
                q,
                jobs,
                || vec![None::<usize>; cells.len()],
                |best: &mut Vec<Option<usize>>, _, code| {
                    if n < 2 {
                        return;
                    }
                    let table = LocalityTable::build(&code, max_r).expect("n within mask limits");
                    let mut distance = None;
                    for (slot, &(r, t)) in best.iter_mut().zip(&cells) {
                        let r_eff = effective_r(r, n);
                        if table.all_have_disjoint(r_eff, t) {
                            let d = *distance.get_or_insert_with(|| {
                                code.minimum_distance().expect("searched codes are small")
                            });
                            *slot = Some(slot.map_or(d, |s: usize| s.max(d)));
                        }
                    }
                },
                |a, b| a.into_iter().zip(b).map(|(x, y)| x.max(y)).collect(),
            );
            for (idx, &(r, t)) in cells.iter().enumerate() {
                let bound = distance_bound(n, k, r, t)?;
                let row = match &outcome {
                    Ok(best) => SweepRow {
                        n,
                        k,
                        r,
                        t,
                        q,
                        bound,
                        oracle: best[idx],
                        flag: flag_for(bound, best[idx]),
                        note: None,
                    },
                    Err(e @ Error::GuardExceeded { .. }) => SweepRow {
                        n,
                        k,
                        r,
                        t,
                        q,
                        bound,
                        oracle: None,
                        flag: SweepFlag::Guard,
                        note: Some(e.to_string()),
                    },
                    Err(e) => return Err(e.clone()),
                };
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

#[derive(Serialize)]
struct CsvRow {
    n: usize,
    k: usize,
    r: usize,
    t: usize,
    q: u32,
    bound: i64,
    oracle: Option<usize>,
    flag: &'static str,
}

/// CSV with header `n,k,r,t,q,bound,oracle,flag`; an empty oracle field
/// means no qualifying code (or a guard error).
pub fn sweep_to_csv(rows: &[SweepRow]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        writer
            .write_record(["n", "k", "r", "t", "q", "bound", "oracle", "flag"])
            .expect("in-memory write");
    }
    for row in rows {
        writer
            .serialize(CsvRow {
                n: row.n,
                k: row.k,
                r: row.r,
                t: row.t,
                q: row.q,
                bound: row.bound,
                oracle: row.oracle,
                flag: row.flag.as_str(),
            })
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// Convenience for callers that only need the number of codes.
pub fn code_count(n: usize, k: usize, q: u32) -> Option<u64> {
    gaussian_binomial(n, k, q).to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(6, 3, 2), BigInt::from(1395));
        assert_eq!(gaussian_binomial(3, 1, 2), BigInt::from(7));
        assert_eq!(gaussian_binomial(4, 2, 2), BigInt::from(35));
        assert_eq!(gaussian_binomial(4, 4, 5), BigInt::from(1));
        assert_eq!(gaussian_binomial(4, 2, 3), BigInt::from(130));
    }

    #[test]
    fn enumeration_counts_match() {
        for (n, k, q) in [
            (6, 3, 2),
            (3, 1, 2),
            (4, 2, 2),
            (4, 2, 3),
            (5, 5, 2),
            (3, 3, 7),
        ] {
            let count = enumerate_codes(n, k, q).unwrap().count() as u64;
            assert_eq!(Some(count), code_count(n, k, q), "n={n} k={k} q={q}");
        }
    }

    #[test]
    fn enumeration_has_distinct_row_spaces() {
        for (n, k, q) in [(5, 2, 2), (4, 2, 3), (3, 1, 4)] {
            let field = Field::new(q).unwrap();
            let canon: HashSet<Matrix> = enumerate_codes(n, k, q)
                .unwrap()
                .map(|c| c.generator().row_space_basis(&field))
                .collect();
            assert_eq!(Some(canon.len() as u64), code_count(n, k, q));
        }
    }

    #[test]
    fn search_guards() {
        assert!(matches!(
            enumerate_codes(40, 20, 2),
            Err(Error::GuardExceeded { .. })
        ));
        assert!(enumerate_codes(3, 4, 2).is_err());
        assert!(enumerate_codes(3, 1, 6).is_err());
    }

    #[test]
    fn hamming_cell_is_tight() {
        let outcome = max_distance_with_locality(6, 3, 2, 2, 2, 1).unwrap();
        assert_eq!(outcome.codes_examined, 1395);
        assert_eq!(outcome.best_distance, Some(3));
        assert_eq!(outcome.bound, 3);
        let witness = outcome.witness.unwrap();
        assert_eq!(witness.minimum_distance().unwrap(), 3);
    }

    #[test]
    fn vacuous_locality_gives_classical_optimum() {
        // Any code with d >= 2 has locality n - 1 with t = 1; the best binary
        // [5, 2] code has d = 3.
        let outcome = max_distance_with_locality(5, 2, 2, 4, 1, 1).unwrap();
        assert_eq!(outcome.best_distance, Some(3));
    }

    #[test]
    fn singleton_availability() {
        let outcome = max_distance_with_locality(4, 2, 2, 1, 2, 1).unwrap();
        assert_eq!(outcome.codes_examined, 35);
        // Two disjoint singletons per coordinate force every coordinate to be
        // repeated at least three times, impossible with k = 2, n = 4.
        assert_eq!(outcome.best_distance, None);
    }

    #[test]
    fn parallel_search_matches_sequential() {
        let a = max_distance_with_locality(6, 3, 2, 2, 2, 1).unwrap();
        let b = max_distance_with_locality(6, 3, 2, 2, 2, 4).unwrap();
        assert_eq!(a.witness_index, b.witness_index);
        assert_eq!(a.qualifying, b.qualifying);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn sweep_small() {
        let ranges = SweepRanges {
            n: (4, 6),
            k: (2, 3),
            r: (1, 2),
            t: (1, 2),
            q: 2,
        };
        let rows = bound_sweep(&ranges, 1).unwrap();
        assert_eq!(rows.len(), 3 * 2 * 4);
        assert!(rows.iter().all(|r| r.flag != SweepFlag::Violation));
        let hamming = rows
            .iter()
            .find(|r| (r.n, r.k, r.r, r.t) == (6, 3, 2, 2))
            .unwrap();
        assert_eq!(hamming.flag, SweepFlag::Tight);
        assert_eq!(rows, bound_sweep(&ranges, 3).unwrap());

        let csv = sweep_to_csv(&rows);
        assert!(csv.starts_with("n,k,r,t,q,bound,oracle,flag\n"));
        assert!(csv.contains("6,3,2,2,2,3,3,TIGHT\n"));
    }

    #[test]
    fn empty_sweep() {
        let ranges = SweepRanges {
            n: (5, 4),
            k: (1, 2),
            r: (1, 1),
            t: (1, 1),
            q: 2,
        };
        let rows = bound_sweep(&ranges, 1).unwrap();
        assert!(rows.is_empty());
        assert_eq!(sweep_to_csv(&rows), "n,k,r,t,q,bound,oracle,flag\n");
    }
}
