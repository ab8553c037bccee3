//! Recovering sets and families of disjoint recovering sets.
//!
//! A set `R` (not containing `i`) recovers coordinate `i` when no two
//! codewords agree on `R` but differ at `i`. For a linear code this holds iff
//! some dual codeword is supported inside `R ∪ {i}` and is nonzero at `i`, and
//! also iff column `i` of the generator lies in the span of the columns in `R`.
//! All three checks are implemented here.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::code::{checked_power, LinearCode, DEFAULT_GUARD};
use crate::coords::CoordSet;
use crate::error::{Error, Result};
use crate::field::Elem;

/// Codes longer than this cannot be handled by the bitmask-based searches.
pub const MAX_MASK_LENGTH: usize = 128;

/// Dual enumeration is preferred over subset scanning up to this many words.
const DUAL_TABLE_LIMIT: u128 = 1 << 16;

/// Per-coordinate lists of `t` pairwise disjoint recovering sets of size at
/// most `r`, with 1-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveringFamily {
    pub r: usize,
    pub t: usize,
    pub sets: Vec<Vec<CoordSet>>,
}

impl RecoveringFamily {
    /// Builds a family and checks its structure for `sets.len()` coordinates.
    pub fn new(r: usize, t: usize, sets: Vec<Vec<CoordSet>>) -> Result<Self> {
        let family = RecoveringFamily { r, t, sets };
        family.validate(family.sets.len())?;
        Ok(family)
    }

    pub fn length(&self) -> usize {
        self.sets.len()
    }

    /// The recovering sets of coordinate `i` (1-based).
    pub fn sets_of(&self, i: usize) -> &[CoordSet] {
        &self.sets[i - 1]
    }

    /// Structural invariants: `n` coordinates, `t` sets each, every set
    /// nonempty, of size at most `r`, inside `[n] \ {i}`, and pairwise
    /// disjoint.
    pub fn validate(&self, n: usize) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidFamily(msg));
        if self.r == 0 || self.t == 0 {
            return fail(format!(
                "need r, t >= 1, got r = {}, t = {}",
                self.r, self.t
            ));
        }
        if self.sets.len() != n {
            return fail(format!(
                "{} coordinates listed, expected {n}",
                self.sets.len()
            ));
        }
        for (idx, sets) in self.sets.iter().enumerate() {
            let i = idx + 1;
            if sets.len() != self.t {
                return fail(format!(
                    "coordinate {i} has {} sets, expected {}",
                    sets.len(),
                    self.t
                ));
            }
            for (j, set) in sets.iter().enumerate() {
                set.check_within(n)?;
                if set.is_empty() || set.len() > self.r {
                    return fail(format!(
                        "set {} of coordinate {i} has size {}, expected 1..={}",
                        j + 1,
                        set.len(),
                        self.r
                    ));
                }
                if set.contains(i) {
                    return fail(format!("set {} of coordinate {i} contains {i}", j + 1));
                }
                if let Some(other) = sets[..j].iter().position(|s| !s.is_disjoint(set)) {
                    return fail(format!(
                        "sets {} and {} of coordinate {i} intersect",
                        other + 1,
                        j + 1
                    ));
                }
            }
        }
        Ok(())
    }

    /// Structural validation plus recoverability of every set in `code`.
    pub fn validate_for_code(&self, code: &LinearCode) -> Result<()> {
        self.validate(code.length())?;
        for (idx, sets) in self.sets.iter().enumerate() {
            for set in sets {
                if !recovers_by_rank(code, idx + 1, set)? {
                    return Err(Error::InvalidFamily(format!(
                        "{set} does not recover coordinate {}",
                        idx + 1
                    )));
                }
            }
        }
        Ok(())
    }

    /// True when some set is smaller than `r`; the bound formulas assume
    /// every set has size exactly `r`.
    pub fn has_undersized_sets(&self) -> bool {
        self.sets.iter().flatten().any(|s| s.len() < self.r)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let family: RecoveringFamily =
            serde_json::from_str(text).map_err(|e| Error::InvalidFamily(e.to_string()))?;
        family.validate(family.sets.len())?;
        Ok(family)
    }
}

fn check_query(code: &LinearCode, i: usize, set: &CoordSet) -> Result<()> {
    let n = code.length();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    set.check_within(n)?;
    if set.contains(i) {
        return Err(Error::Precondition(format!(
            "{set} contains the coordinate {i} itself"
        )));
    }
    Ok(())
}

/// Definitional check: no two codewords agree on `set` while differing at `i`.
pub fn recovers_by_enumeration(code: &LinearCode, i: usize, set: &CoordSet) -> Result<bool> {
    check_query(code, i, set)?;
    let idx = set.zero_based();
    let mut seen: HashMap<Vec<Elem>, Elem> = HashMap::new();
    let mut ok = true;
    code.for_each_codeword(DEFAULT_GUARD, |w| {
        if !ok {
            return;
        }
        let key: Vec<Elem> = idx.iter().map(|&j| w[j]).collect();
        match seen.get(&key) {
            Some(&v) if v != w[i - 1] => ok = false,
            Some(_) => {}
            None => {
                seen.insert(key, w[i - 1]);
            }
        }
    })?;
    Ok(ok)
}

/// Some dual codeword is nonzero at `i` and supported inside `set ∪ {i}`.
pub fn recovers_by_dual(code: &LinearCode, i: usize, set: &CoordSet) -> Result<bool> {
    check_query(code, i, set)?;
    let allowed = set.with(i).zero_based();
    let mut inside = vec![false; code.length()];
    for j in allowed {
        inside[j] = true;
    }
    let mut found = false;
    code.for_each_dual_codeword(DEFAULT_GUARD, |w| {
        found = found || (w[i - 1] != 0 && w.iter().enumerate().all(|(j, &x)| x == 0 || inside[j]));
    })?;
    Ok(found)
}

/// Column `i` of the generator lies in the span of the columns in `set`.
pub fn recovers_by_rank(code: &LinearCode, i: usize, set: &CoordSet) -> Result<bool> {
    check_query(code, i, set)?;
    Ok(recovers_by_rank_unchecked(code, i - 1, &set.zero_based()))
}

fn recovers_by_rank_unchecked(code: &LinearCode, i0: usize, cols: &[usize]) -> bool {
    let g = code.generator();
    let field = code.field();
    let base = g.select_columns(cols).rank(field);
    let mut extended = cols.to_vec();
    extended.push(i0);
    g.select_columns(&extended).rank(field) == base
}

/// Runs the enumeration and dual-codeword checks and requires them to agree.
pub fn is_recovering_set(code: &LinearCode, i: usize, set: &CoordSet) -> Result<bool> {
    let by_enumeration = recovers_by_enumeration(code, i, set)?;
    let by_dual = recovers_by_dual(code, i, set)?;
    if by_enumeration != by_dual {
        return Err(Error::InternalMismatch(format!(
            "coordinate {i}, set {set}: enumeration says {by_enumeration}, dual says {by_dual}"
        )));
    }
    Ok(by_enumeration)
}

/// Visits every `size`-subset of `items` in lexicographic order.
fn for_each_combination(items: &[usize], size: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let n = items.len();
    if size > n {
        return;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf = vec![0; size];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        if !visit(&buf) {
            return;
        }
        let Some(pos) = (0..size).rev().find(|&p| idx[p] != p + n - size) else {
            return;
        };
        idx[pos] += 1;
        for p in pos + 1..size {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

fn mask_of(items: &[usize]) -> u128 {
    items.iter().fold(0, |m, &i| m | 1 << i)
}

/// Minimal recovering sets of size at most `max_size`, per coordinate, as
/// bitmasks over zero-based coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalityTable {
    n: usize,
    max_size: usize,
    minimal: Vec<Vec<u128>>,
}

impl LocalityTable {
    /// Picks dual enumeration when the dual code is small, otherwise scans
    /// subsets with the rank criterion. Both give the same table.
    pub fn build(code: &LinearCode, max_size: usize) -> Result<Self> {
        let small_dual = checked_power(code.field().order(), code.length() - code.dimension())
            .is_some_and(|c| c <= DUAL_TABLE_LIMIT);
        if small_dual {
            Self::from_dual(code, max_size)
        } else {
            Self::from_rank(code, max_size)
        }
    }

    fn check_length(code: &LinearCode) -> Result<()> {
        if code.length() > MAX_MASK_LENGTH {
            return Err(Error::Domain(format!(
                "locality search supports n <= {MAX_MASK_LENGTH}, got {}",
                code.length()
            )));
        }
        Ok(())
    }

    pub fn from_dual(code: &LinearCode, max_size: usize) -> Result<Self> {
        Self::check_length(code)?;
        let n = code.length();
        let mut supports: HashSet<u128> = HashSet::new();
        code.for_each_dual_codeword(DEFAULT_GUARD, |w| {
            let s = w
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .fold(0u128, |m, (j, _)| m | 1 << j);
            if s != 0 && s.count_ones() as usize <= max_size + 1 {
                supports.insert(s);
            }
        })?;
        let mut supports: Vec<u128> = supports.into_iter().collect();
        supports.sort_unstable_by_key(|&s| (s.count_ones(), s));
        let minimal = (0..n)
            .map(|i| {
                let mut keep: Vec<u128> = Vec::new();
                for s in supports.iter().filter(|&&s| s >> i & 1 == 1) {
                    let m = s & !(1 << i);
                    if !keep.iter().any(|&k| k & !m == 0) {
                        keep.push(m);
                    }
                }
                keep
            })
            .collect();
        Ok(LocalityTable {
            n,
            max_size,
            minimal,
        })
    }

    pub fn from_rank(code: &LinearCode, max_size: usize) -> Result<Self> {
        Self::check_length(code)?;
        let n = code.length();
        let minimal = (0..n)
            .map(|i| {
                let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                let mut keep: Vec<u128> = Vec::new();
                for size in 0..=max_size.min(n - 1) {
                    for_each_combination(&others, size, |cols| {
                        let m = mask_of(cols);
                        if !keep.iter().any(|&k| k & !m == 0)
                            && recovers_by_rank_unchecked(code, i, cols)
                        {
                            keep.push(m);
                        }
                        true
                    });
                }
                keep.sort_unstable_by_key(|&s| (s.count_ones(), s));
                keep
            })
            .collect();
        Ok(LocalityTable {
            n,
            max_size,
            minimal,
        })
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    /// Minimal recovering sets of coordinate `i` (1-based), ordered by size
    /// and then by bitmask.
    pub fn minimal_sets(&self, i: usize) -> Vec<CoordSet> {
        self.minimal[i - 1]
            .iter()
            .map(|&m| CoordSet::from_mask(m))
            .collect()
    }

    /// Whether the zero-based `mask` recovers zero-based coordinate `i0`.
    /// Exact for masks with at most `max_size` members.
    pub fn recovers(&self, i0: usize, mask: u128) -> bool {
        self.minimal[i0].iter().any(|&k| k & !mask == 0)
    }

    /// Whether coordinate `i0` has `t` pairwise disjoint recovering sets of
    /// size at most `r`. Shrinking each set to a minimal one keeps them
    /// disjoint, so searching minimal sets suffices.
    ///
    /// A coordinate that is zero in every codeword has the empty set as its
    /// only minimal set. Families use nonempty sets, and every nonempty set
    /// recovers such a coordinate, so the singletons give `n - 1`.
    pub fn has_disjoint(&self, i0: usize, r: usize, t: usize) -> bool {
        assert!(
            r <= self.max_size,
            "table built for sets up to {}",
            self.max_size
        );
        if self.minimal[i0].first() == Some(&0) {
            return t < self.n;
        }
        let candidates: Vec<u128> = self.minimal[i0]
            .iter()
            .copied()
            .filter(|m| m.count_ones() as usize <= r)
            .collect();
        fn pick(cands: &[u128], used: u128, need: usize) -> bool {
            need == 0
                || cands
                    .iter()
                    .enumerate()
                    .any(|(idx, &m)| m & used == 0 && pick(&cands[idx + 1..], used | m, need - 1))
        }
        pick(&candidates, 0, t)
    }

    /// Largest `t` with `t` disjoint recovering sets of size at most `r`.
    pub fn max_disjoint(&self, i0: usize, r: usize) -> usize {
        let mut t = 0;
        while t < self.n && self.has_disjoint(i0, r, t + 1) {
            t += 1;
        }
        t
    }

    /// True when every coordinate has `t` disjoint sets of size at most `r`;
    /// stops at the first coordinate that does not.
    pub fn all_have_disjoint(&self, r: usize, t: usize) -> bool {
        (0..self.n).all(|i| self.has_disjoint(i, r, t))
    }

    /// Lexicographically first choice of `t` disjoint recovering sets for
    /// coordinate `i` (1-based). Candidates are all subsets of
    /// `[n] \ {i}` of size `1..=r` that recover `i`, ordered by size and then
    /// lexicographically; the first `t`-tuple of increasing candidate indices
    /// that is pairwise disjoint wins.
    pub fn find_disjoint(&self, i: usize, r: usize, t: usize) -> Option<Vec<CoordSet>> {
        let i0 = i - 1;
        if t == 0 {
            return Some(Vec::new());
        }
        if !self.has_disjoint(i0, r, t) {
            return None;
        }
        let others: Vec<usize> = (0..self.n).filter(|&j| j != i0).collect();
        let mut candidates: Vec<u128> = Vec::new();
        for size in 1..=r.min(self.n - 1) {
            for_each_combination(&others, size, |cols| {
                let m = mask_of(cols);
                if self.recovers(i0, m) {
                    candidates.push(m);
                }
                true
            });
        }
        fn pick(
            cands: &[u128],
            offset: usize,
            used: u128,
            need: usize,
            out: &mut Vec<u128>,
        ) -> bool {
            if need == 0 {
                return true;
            }
            for idx in offset..cands.len() {
                let m = cands[idx];
                if m & used == 0 {
                    out.push(m);
                    if pick(cands, idx + 1, used | m, need - 1, out) {
                        return true;
                    }
                    out.pop();
                }
            }
            false
        }
        let mut chosen = Vec::with_capacity(t);
        pick(&candidates, 0, 0, t, &mut chosen)
            .then(|| chosen.into_iter().map(CoordSet::from_mask).collect())
    }
}

/// Lexicographically first `t` pairwise disjoint recovering sets of size at
/// most `r` for coordinate `i`, or `None` when they do not exist.
pub fn find_disjoint_recovering_sets(
    code: &LinearCode,
    i: usize,
    r: usize,
    t: usize,
) -> Result<Option<Vec<CoordSet>>> {
    let n = code.length();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if r == 0 || t == 0 {
        return Err(Error::Domain(format!(
            "need r, t >= 1, got r = {r}, t = {t}"
        )));
    }
    Ok(LocalityTable::build(code, r)?.find_disjoint(i, r, t))
}

/// For each coordinate, the largest `t` such that it has `t` disjoint
/// recovering sets of size at most `r` (0 when it has none).
pub fn locality_profile(code: &LinearCode, r: usize) -> Result<Vec<usize>> {
    if r == 0 {
        return Err(Error::Domain("locality r must be at least 1".into()));
    }
    let table = LocalityTable::build(code, r)?;
    Ok((0..code.length())
        .map(|i| table.max_disjoint(i, r))
        .collect())
}

/// The lexicographically first family with `t` disjoint sets of size at most
/// `r` at every coordinate, or `None` if some coordinate lacks them.
pub fn find_family(code: &LinearCode, r: usize, t: usize) -> Result<Option<RecoveringFamily>> {
    if r == 0 || t == 0 {
        return Err(Error::Domain(format!(
            "need r, t >= 1, got r = {r}, t = {t}"
        )));
    }
    let table = LocalityTable::build(code, r)?;
    let mut sets = Vec::with_capacity(code.length());
    for i in 1..=code.length() {
        match table.find_disjoint(i, r, t) {
            Some(s) => sets.push(s),
            None => return Ok(None),
        }
    }
    Ok(Some(RecoveringFamily { r, t, sets }))
}
