//! The edge-colored recovering graph and the procedures run on it.
//!
//! Vertex `v` has one out-edge of color `l` to every member of its `l`-th
//! recovering set. Public functions use 1-based vertices and colors; the
//! adjacency is stored zero-based.
//!
//! The closure of a set `S` is the least superset of `S` such that any vertex
//! with some recovering set entirely inside it belongs to it. In a
//! [`ResidualGraph`] only surviving vertices take part and each recovering set
//! is restricted to survivors, removed vertices counting as already known.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{coloring_probability, serialize_rational, Rational};
use crate::coords::CoordSet;
use crate::error::{Error, Result};
use crate::recovery::RecoveringFamily;

/// Read access shared by full and residual recovering graphs.
pub trait ColoredGraph {
    /// Number of vertex slots, including removed ones.
    fn vertex_count(&self) -> usize;

    fn is_alive(&self, v0: usize) -> bool;

    /// Recovering sets of zero-based vertex `v0`, zero-based members,
    /// restricted to surviving vertices. Position is the color minus one.
    fn sets(&self, v0: usize) -> &[Vec<usize>];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveringGraph {
    n: usize,
    r: usize,
    t: usize,
    sets: Vec<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualGraph {
    alive: Vec<bool>,
    sets: Vec<Vec<Vec<usize>>>,
}

impl ColoredGraph for RecoveringGraph {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn is_alive(&self, _v0: usize) -> bool {
        true
    }

    fn sets(&self, v0: usize) -> &[Vec<usize>] {
        &self.sets[v0]
    }
}

impl ColoredGraph for ResidualGraph {
    fn vertex_count(&self) -> usize {
        self.alive.len()
    }

    fn is_alive(&self, v0: usize) -> bool {
        self.alive[v0]
    }

    fn sets(&self, v0: usize) -> &[Vec<usize>] {
        &self.sets[v0]
    }
}

#[derive(Serialize)]
struct GraphJson<'a> {
    n: usize,
    r: usize,
    t: usize,
    sets: BTreeMap<usize, &'a [CoordSet]>,
}

impl RecoveringGraph {
    /// The recovering graph of a family on `n` coordinates.
    pub fn from_family(family: &RecoveringFamily, n: usize) -> Result<Self> {
        family.validate(n)?;
        Ok(RecoveringGraph {
            n,
            r: family.r,
            t: family.t,
            sets: family
                .sets
                .iter()
                .map(|sets| sets.iter().map(CoordSet::zero_based).collect())
                .collect(),
        })
    }

    /// Builds a graph directly from per-vertex recovering sets (1-based).
    /// Every vertex needs the same number of sets.
    pub fn from_sets(sets: Vec<Vec<CoordSet>>) -> Result<Self> {
        let n = sets.len();
        let t = sets.first().map_or(0, Vec::len);
        let r = sets.iter().flatten().map(CoordSet::len).max().unwrap_or(0);
        RecoveringGraph::from_family(&RecoveringFamily { r, t, sets }, n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest recovering-set size.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of colors.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.sets[v - 1].iter().map(Vec::len).sum()
    }

    /// True when every recovering set has exactly `r` members.
    pub fn is_uniform(&self) -> bool {
        self.sets.iter().flatten().all(|s| s.len() == self.r)
    }

    /// The `color`-th recovering set of `v`.
    pub fn recovering_set(&self, v: usize, color: usize) -> CoordSet {
        CoordSet::from_zero_based(self.sets[v - 1][color - 1].iter().copied())
    }

    /// Color of the edge `v -> u`, if present.
    pub fn edge_color(&self, v: usize, u: usize) -> Option<usize> {
        self.sets[v - 1]
            .iter()
            .position(|s| s.contains(&(u - 1)))
            .map(|c| c + 1)
    }

    /// All edges as `(from, to, color)`, 1-based, ordered by source and color.
    pub fn edges(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (v, sets) in self.sets.iter().enumerate() {
            for (c, set) in sets.iter().enumerate() {
                out.extend(set.iter().map(|&u| (v + 1, u + 1, c + 1)));
            }
        }
        out
    }

    pub fn family(&self) -> RecoveringFamily {
        RecoveringFamily {
            r: self.r,
            t: self.t,
            sets: (1..=self.n)
                .map(|v| (1..=self.t).map(|c| self.recovering_set(v, c)).collect())
                .collect(),
        }
    }

    pub fn full_residual(&self) -> ResidualGraph {
        ResidualGraph {
            alive: vec![true; self.n],
            sets: self.sets.clone(),
        }
    }

    /// The subgraph induced on `survivors`, each recovering set restricted to
    /// survivors. Fails if a survivor would be left with an empty set: such a
    /// vertex is determined by removed vertices and cannot survive.
    pub fn residual(&self, survivors: &CoordSet) -> Result<ResidualGraph> {
        survivors.check_within(self.n)?;
        let mut alive = vec![false; self.n];
        for v in survivors.iter() {
            alive[v - 1] = true;
        }
        let residual = self.full_residual().induced(&alive);
        if let Some(v) =
            (0..self.n).find(|&v| alive[v] && residual.sets[v].iter().any(Vec::is_empty))
        {
            return Err(Error::Precondition(format!(
                "vertex {} has a recovering set made only of removed vertices",
                v + 1
            )));
        }
        Ok(residual)
    }

    /// JSON object mapping each vertex to its per-color recovering sets.
    pub fn to_json(&self) -> String {
        let family = self.family();
        let json = GraphJson {
            n: self.n,
            r: self.r,
            t: self.t,
            sets: family
                .sets
                .iter()
                .enumerate()
                .map(|(v, s)| (v + 1, s.as_slice()))
                .collect(),
        };
        serde_json::to_string(&json).expect("graph serializes")
    }

    /// Graphviz rendering; edge color and label give the recovering-set
    /// index.
    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "red",
            "blue",
            "darkgreen",
            "orange",
            "purple",
            "brown",
            "magenta",
            "cyan",
        ];
        let mut out = String::from("digraph recovering {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (v, u, c) in self.edges() {
            let _ = writeln!(
                out,
                "  {v} -> {u} [color={}, label={c}];",
                PALETTE[(c - 1) % PALETTE.len()]
            );
        }
        out.push_str("}\n");
        out
    }
}

impl ResidualGraph {
    pub fn survivors(&self) -> CoordSet {
        CoordSet::from_zero_based((0..self.alive.len()).filter(|&v| self.alive[v]))
    }

    /// Keeps only vertices that are alive here and in `keep`, restricting
    /// every set to the kept vertices.
    fn induced(&self, keep: &[bool]) -> ResidualGraph {
        let alive: Vec<bool> = self.alive.iter().zip(keep).map(|(&a, &k)| a && k).collect();
        let sets = self
            .sets
            .iter()
            .enumerate()
            .map(|(v, sets)| {
                if !alive[v] {
                    return Vec::new();
                }
                sets.iter()
                    .map(|s| s.iter().copied().filter(|&u| alive[u]).collect())
                    .collect()
            })
            .collect();
        ResidualGraph { alive, sets }
    }
}

/// Zero-based closure of `seed` (a membership vector over all slots).
fn closure_of<G: ColoredGraph + ?Sized>(g: &G, seed: &[bool]) -> Vec<bool> {
    let n = g.vertex_count();
    let mut inside = seed.to_vec();
    let mut missing: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut watchers: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut queue = BTreeSet::new();
    for v in (0..n).filter(|&v| g.is_alive(v)) {
        for (c, set) in g.sets(v).iter().enumerate() {
            let count = set.iter().filter(|&&u| !inside[u]).count();
            missing[v].push(count);
            for &u in set {
                watchers[u].push((v, c));
            }
            if count == 0 && !inside[v] {
                queue.insert(v);
            }
        }
    }
    while let Some(v) = queue.pop_first() {
        if inside[v] {
            continue;
        }
        inside[v] = true;
        for &(w, c) in &watchers[v] {
            missing[w][c] -= 1;
            if missing[w][c] == 0 && !inside[w] {
                queue.insert(w);
            }
        }
    }
    inside
}

fn membership<G: ColoredGraph + ?Sized>(g: &G, set: &CoordSet) -> Result<Vec<bool>> {
    let n = g.vertex_count();
    set.check_within(n)?;
    let mut inside = vec![false; n];
    for v in set.iter() {
        if !g.is_alive(v - 1) {
            return Err(Error::Precondition(format!("vertex {v} has been removed")));
        }
        inside[v - 1] = true;
    }
    Ok(inside)
}

fn to_coords(inside: &[bool]) -> CoordSet {
    CoordSet::from_zero_based((0..inside.len()).filter(|&v| inside[v]))
}

/// Least superset of `seed` closed under "some recovering set fully inside".
pub fn closure<G: ColoredGraph + ?Sized>(g: &G, seed: &CoordSet) -> Result<CoordSet> {
    Ok(to_coords(&closure_of(g, &membership(g, seed)?)))
}

/// `|closure(S)| / |S|`.
pub fn expansion_ratio<G: ColoredGraph + ?Sized>(g: &G, seed: &CoordSet) -> Result<Rational> {
    if seed.is_empty() {
        return Err(Error::Domain("expansion ratio of the empty set".into()));
    }
    let closed = closure(g, seed)?;
    Ok(Rational::new(
        BigInt::from(closed.len()),
        BigInt::from(seed.len()),
    ))
}

/// Vertex colors induced by a permutation; `None` marks uncolored vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    pub colors: Vec<Option<usize>>,
}

impl Coloring {
    pub fn color(&self, v: usize) -> Option<usize> {
        self.colors[v - 1]
    }

    /// The set `U` of colored vertices.
    pub fn colored(&self) -> CoordSet {
        CoordSet::from_zero_based((0..self.colors.len()).filter(|&v| self.colors[v].is_some()))
    }
}

fn check_permutation(tau: &[usize], n: usize) -> Result<()> {
    if tau.len() != n {
        return Err(Error::Domain(format!(
            "permutation has {} entries, expected {n}",
            tau.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in tau {
        if x == 0 || x > n || std::mem::replace(&mut seen[x - 1], true) {
            return Err(Error::Domain(format!(
                "{tau:?} is not a permutation of 1..={n}"
            )));
        }
    }
    Ok(())
}

fn color_unchecked(g: &RecoveringGraph, tau: &[usize]) -> Vec<Option<usize>> {
    (0..g.n)
        .map(|v| {
            g.sets[v]
                .iter()
                .position(|set| set.iter().all(|&m| tau[v] > tau[m]))
                .map(|c| c + 1)
        })
        .collect()
}

/// Colors `v` with the smallest `j` such that `τ(v) > τ(m)` for every `m` in
/// the `j`-th recovering set of `v`. `tau[v - 1]` is `τ(v)`, a permutation of
/// `1..=n`.
pub fn color_by_permutation(g: &RecoveringGraph, tau: &[usize]) -> Result<Coloring> {
    check_permutation(tau, g.n)?;
    Ok(Coloring {
        colors: color_unchecked(g, tau),
    })
}

/// Best colored set over a batch of seeded random permutations.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LargeColoredSet {
    pub seed: u64,
    pub trials: u64,
    /// Zero-based index of the trial that produced `tau`.
    pub best_trial: u64,
    pub tau: Vec<usize>,
    pub colored: CoordSet,
    pub size: usize,
    /// `n (1 - 1 / prod_j (1 + 1/(j r)))`, the mean size of `U` for uniform
    /// families.
    #[serde(serialize_with = "serialize_rational")]
    pub target: Rational,
    pub meets_target: bool,
}

/// Permutation used by trial `trial` of a run seeded with `seed`. Each trial
/// draws from its own ChaCha stream, so results do not depend on how trials
/// are scheduled.
pub fn trial_permutation(n: usize, seed: u64, trial: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut tau: Vec<usize> = (1..=n).collect();
    tau.shuffle(&mut rng);
    tau
}

/// Samples `trials` permutations and keeps the one with the most colored
/// vertices (earliest trial on ties). `jobs` > 1 spreads trials over a
/// thread pool without changing the result.
pub fn find_large_colored_set(
    g: &RecoveringGraph,
    trials: u64,
    seed: u64,
    jobs: usize,
) -> Result<LargeColoredSet> {
    if trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    let evaluate = |trial: u64| {
        let tau = trial_permutation(g.n, seed, trial);
        let size = color_unchecked(g, &tau).iter().flatten().count();
        (size, trial)
    };
    let better = |a: (usize, u64), b: (usize, u64)| {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let (_, best_trial) = if jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..trials)
                .into_par_iter()
                .map(evaluate)
                .reduce(|| (0, u64::MAX), better)
        })
    } else {
        (0..trials).map(evaluate).fold((0, u64::MAX), better)
    };

    let tau = trial_permutation(g.n, seed, best_trial);
    let colored = color_by_permutation(g, &tau)?.colored();
    let target =
        Rational::from_integer(BigInt::from(g.n)) * coloring_probability(g.r.max(1), g.t.max(1))?;
    let size = colored.len();
    Ok(LargeColoredSet {
        seed,
        trials,
        best_trial,
        tau,
        colored,
        size,
        meets_target: Rational::from_integer(BigInt::from(size)) >= target,
        target,
    })
}

/// Elimination on zero-based membership; returns the order and the stuck
/// remainder (empty on success).
fn eliminate(g: &RecoveringGraph, inside: &mut [bool]) -> Vec<usize> {
    let mut order = Vec::new();
    'outer: loop {
        for v in 0..g.n {
            if inside[v] && g.sets[v].iter().any(|s| s.iter().all(|&u| !inside[u])) {
                inside[v] = false;
                order.push(v);
                continue 'outer;
            }
        }
        return order;
    }
}

/// Removes vertices of `U` one at a time, each time taking the smallest vertex
/// that has a recovering set disjoint from what is left of `U`. Returns the
/// removal order (1-based), or `None` if some nonempty remainder has no such
/// vertex. Success means every nonempty subset of `U` contains a vertex
/// missing a color in its induced subgraph: the first member of the subset to
/// be removed is such a vertex.
pub fn recovery_elimination_order(g: &RecoveringGraph, u: &CoordSet) -> Result<Option<Vec<usize>>> {
    let mut inside = membership(g, u)?;
    let order = eliminate(g, &mut inside);
    Ok((order.len() == u.len()).then(|| order.into_iter().map(|v| v + 1).collect()))
}

/// Walk used to refute a stalled elimination: from each vertex follow an
/// edge of that vertex's own color, staying inside the stuck part of `U'`.
/// Under a genuine permutation coloring τ strictly decreases along the walk,
/// so the precondition can never hold; this entry point computes the
/// coloring from `tau`.
pub fn cycle_witness(g: &RecoveringGraph, u: &CoordSet, tau: &[usize]) -> Result<Vec<usize>> {
    let coloring = color_by_permutation(g, tau)?;
    cycle_witness_with_coloring(g, u, &coloring)
}

/// Same as [`cycle_witness`] with an explicit (possibly forged) coloring.
/// Returns `v1, v2, ..., vl` with `v1 = vl`.
pub fn cycle_witness_with_coloring(
    g: &RecoveringGraph,
    u: &CoordSet,
    coloring: &Coloring,
) -> Result<Vec<usize>> {
    let mut inside = membership(g, u)?;
    if coloring.colors.len() != g.n {
        return Err(Error::DimensionMismatch(format!(
            "coloring covers {} vertices, graph has {}",
            coloring.colors.len(),
            g.n
        )));
    }
    for v in u.iter() {
        match coloring.color(v) {
            None => return Err(Error::Precondition(format!("vertex {v} is not colored"))),
            Some(c) if c == 0 || c > g.sets[v - 1].len() => {
                return Err(Error::Precondition(format!(
                    "vertex {v} has invalid color {c}"
                )))
            }
            Some(_) => {}
        }
    }
    eliminate(g, &mut inside);
    let Some(start) = inside.iter().position(|&x| x) else {
        return Err(Error::Precondition(format!(
            "elimination does not stall on {u}"
        )));
    };

    let mut walk = vec![start];
    let mut position = vec![usize::MAX; g.n];
    position[start] = 0;
    let mut current = start;
    loop {
        let color = coloring.colors[current].expect("checked above") - 1;
        let next = g.sets[current][color]
            .iter()
            .copied()
            .filter(|&w| inside[w])
            .min()
            .expect("stalled vertices see every color inside the remainder");
        if position[next] != usize::MAX {
            let mut cycle: Vec<usize> = walk[position[next]..].iter().map(|&v| v + 1).collect();
            cycle.push(next + 1);
            return Ok(cycle);
        }
        position[next] = walk.len();
        walk.push(next);
        current = next;
    }
}

/// Recursive construction of a small set whose closure contains `v0` and is
/// large relative to the set. `h` has exactly `depth` sets per live vertex.
fn expander(h: &ResidualGraph, v0: usize, depth: usize) -> Vec<usize> {
    if depth == 0 {
        return vec![v0];
    }
    let n = h.alive.len();

    // Drop v0, and from every other vertex the set containing v0 (or its
    // first set when none does).
    let mut g1 = h.clone();
    g1.alive[v0] = false;
    g1.sets[v0].clear();
    for u in (0..n).filter(|&u| g1.alive[u]) {
        let idx = g1.sets[u].iter().position(|s| s.contains(&v0)).unwrap_or(0);
        g1.sets[u].remove(idx);
    }

    let mut chosen: Vec<usize> = Vec::new();
    let mut closed = vec![false; n];
    for &vi in &h.sets[v0][0] {
        if closed[vi] {
            continue;
        }
        let keep: Vec<bool> = closed.iter().map(|&c| !c).collect();
        let gi = g1.induced(&keep);
        chosen.extend(expander(&gi, vi, depth - 1));
        let mut seed = vec![false; n];
        for &s in &chosen {
            seed[s] = true;
        }
        closed = closure_of(&g1, &seed);
    }
    chosen
}

/// A set `S` with `|S| <= r^t'`, `v` in its closure and expansion ratio at
/// least `e_t'`, built by induction on the number of colors. Only the `t'`
/// smallest-indexed recovering sets of each vertex are used.
pub fn build_expander_set<G: ColoredGraph + ?Sized>(
    g: &G,
    v: usize,
    colors: usize,
) -> Result<CoordSet> {
    let n = g.vertex_count();
    if v == 0 || v > n {
        return Err(Error::IndexOutOfRange { index: v, n });
    }
    if !g.is_alive(v - 1) {
        return Err(Error::Precondition(format!("vertex {v} has been removed")));
    }
    let mut h = ResidualGraph {
        alive: (0..n).map(|u| g.is_alive(u)).collect(),
        sets: vec![Vec::new(); n],
    };
    for u in (0..n).filter(|&u| h.alive[u]) {
        let sets = g.sets(u);
        if sets.len() < colors {
            return Err(Error::Precondition(format!(
                "vertex {} has {} recovering sets, need {colors}",
                u + 1,
                sets.len()
            )));
        }
        if sets[..colors].iter().any(Vec::is_empty) {
            return Err(Error::Precondition(format!(
                "vertex {} has an empty recovering set",
                u + 1
            )));
        }
        h.sets[u] = sets[..colors].to_vec();
    }
    Ok(CoordSet::from_zero_based(expander(&h, v - 1, colors)))
}

/// One round of [`distance_bound_coloring`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringRound {
    pub budget: usize,
    pub colors: usize,
    pub anchor: usize,
    pub added: CoordSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceColoring {
    pub seed: CoordSet,
    pub closure: CoordSet,
    pub rounds: Vec<ColoringRound>,
}

/// Spends a budget of `k - 1` vertices in rounds: with `b` left, use the
/// largest `m <= t` with `r^m <= b`, grow an expander set with `m` colors
/// around the smallest vertex outside the current closure, and repeat on the
/// graph with the closure removed.
pub fn distance_bound_coloring(g: &RecoveringGraph, k: usize) -> Result<DistanceColoring> {
    if k < 2 {
        return Err(Error::Domain(format!("need k >= 2, got {k}")));
    }
    let r = g.r.max(1) as u128;
    let mut budget = k - 1;
    let mut seed = CoordSet::empty();
    let mut closed = CoordSet::empty();
    let mut rounds = Vec::new();
    while budget > 0 {
        let survivors: CoordSet = (1..=g.n).filter(|&v| !closed.contains(v)).collect();
        let Some(anchor) = survivors.iter().next() else {
            break;
        };
        let residual = g.residual(&survivors)?;
        let mut colors = 0;
        while colors < g.t && r.pow(colors as u32 + 1) <= budget as u128 {
            colors += 1;
        }
        let added = build_expander_set(&residual, anchor, colors)?;
        budget -= added.len();
        seed = seed.union(&added);
        closed = closure(g, &seed)?;
        rounds.push(ColoringRound {
            budget: budget + added.len(),
            colors,
            anchor,
            added,
        });
    }
    Ok(DistanceColoring {
        seed,
        closure: closed,
        rounds,
    })
}

/// Statistics of `|U|` over every permutation of the vertices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExhaustiveColoring {
    pub permutations: u64,
    #[serde(serialize_with = "serialize_rational")]
    pub mean: Rational,
    pub max: usize,
    pub min: usize,
    /// Whether elimination emptied `U` for every permutation.
    pub all_eliminate: bool,
}

/// Largest vertex count [`exhaustive_coloring`] accepts.
pub const EXHAUSTIVE_MAX_N: usize = 10;

/// Enumerates all `n!` permutations (Heap's algorithm).
pub fn exhaustive_coloring(g: &RecoveringGraph) -> Result<ExhaustiveColoring> {
    if g.n > EXHAUSTIVE_MAX_N {
        return Err(Error::Domain(format!(
            "exhaustive permutation scan limited to n <= {EXHAUSTIVE_MAX_N}, got {}",
            g.n
        )));
    }
    let n = g.n;
    let mut tau: Vec<usize> = (1..=n).collect();
    let mut counters = vec![0usize; n];
    let mut total: u64 = 0;
    let mut count: u64 = 0;
    let mut max = 0;
    let mut min = usize::MAX;
    let mut all_eliminate = true;
    let mut visit = |tau: &[usize]| {
        let colors = color_unchecked(g, tau);
        let size = colors.iter().flatten().count();
        total += size as u64;
        count += 1;
        max = max.max(size);
        min = min.min(size);
        let mut inside: Vec<bool> = colors.iter().map(Option::is_some).collect();
        if eliminate(g, &mut inside).len() != size {
            all_eliminate = false;
        }
    };
    visit(&tau);
    let mut i = 0;
    while i < n {
        if counters[i] < i {
            if i % 2 == 0 {
                tau.swap(0, i);
            } else {
                tau.swap(counters[i], i);
            }
            visit(&tau);
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(ExhaustiveColoring {
        permutations: count,
        mean: Rational::new(BigInt::from(total), BigInt::from(count)),
        max,
        min: if count == 0 { 0 } else { min },
        all_eliminate,
    })
}
