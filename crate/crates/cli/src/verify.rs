//! Named checks behind `lrc verify-paper`.

use std::fmt::Write as _;
use std::path::Path;

use lrc_core::bounds::{
    base_r_identity_check, coloring_probability, coloring_probability_alternating, distance_bound,
    distance_bound_t1, expansion_constant, integer, rate_bound, ratio, rroot_sandwich,
};
use lrc_core::constructions::{parity_product_code, rate_gap_report, shortened_hamming_6_3};
use lrc_core::graph::{
    build_expander_set, closure, color_by_permutation, distance_bound_coloring,
    exhaustive_coloring, expansion_ratio, recovery_elimination_order,
};
use lrc_core::recovery::{find_family, is_recovering_set, locality_profile};
use lrc_core::search::max_distance_with_locality;
use lrc_core::{CoordSet, LinearCode, RecoveringGraph};
use serde::Serialize;

use crate::{CliResult, Failure};

type Outcome = Result<String, String>;
type NamedCheck = (&'static str, Box<dyn Fn() -> Outcome>);

#[derive(Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct Summary {
    passed: usize,
    failed: usize,
    checks: Vec<Check>,
}

fn ensure(cond: bool, detail: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail.into())
    }
}

fn core<T>(r: lrc_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn hamming_locality() -> Outcome {
    let (code, family) = shortened_hamming_6_3();
    core(family.validate_for_code(&code))?;
    for i in 1..=6 {
        for set in family.sets_of(i) {
            ensure(
                core(is_recovering_set(&code, i, set))?,
                format!("{set} does not recover {i}"),
            )?;
        }
    }
    let profile = core(locality_profile(&code, 2))?;
    ensure(
        profile.iter().all(|&t| t >= 2),
        format!("profile {profile:?}"),
    )?;
    Ok("2 disjoint recovering sets of size 2 at all 6 coordinates".into())
}

fn hamming_distance() -> Outcome {
    let (code, _) = shortened_hamming_6_3();
    let d = core(code.minimum_distance())?;
    let bound = core(distance_bound(6, 3, 2, 2))?;
    ensure(d == 3 && bound == 3, format!("distance {d}, bound {bound}"))?;
    Ok("d = 3 = bound".into())
}

fn hamming_oracle() -> Outcome {
    let outcome = core(max_distance_with_locality(6, 3, 2, 2, 2, 1))?;
    ensure(
        outcome.codes_examined == 1395,
        format!("{} codes", outcome.codes_examined),
    )?;
    ensure(
        outcome.best_distance == Some(3),
        format!("best distance {:?}", outcome.best_distance),
    )?;
    Ok(format!(
        "best of 1395 codes is 3 ({} qualify)",
        outcome.qualifying
    ))
}

fn rate_bound_2_2() -> Outcome {
    let b = core(rate_bound(2, 2))?;
    ensure(b == ratio(8, 15), format!("got {b}"))?;
    Ok("8/15".into())
}

fn single_set_reductions() -> Outcome {
    for r in 1..=100 {
        ensure(
            core(rate_bound(r, 1))? == ratio(r as i64, r as i64 + 1),
            format!("rate, r = {r}"),
        )?;
    }
    for n in 1..=50 {
        for k in 1..=n {
            for r in 1..k {
                let a = core(distance_bound(n, k, r, 1))?;
                let b = core(distance_bound_t1(n, k, r))?;
                ensure(a == b, format!("n = {n}, k = {k}, r = {r}: {a} vs {b}"))?;
            }
        }
    }
    Ok("t = 1 matches the single-set bounds".into())
}

fn coloring_probability_forms() -> Outcome {
    for r in 1..=30 {
        for t in 1..=30 {
            let p = core(coloring_probability(r, t))?;
            ensure(
                p == coloring_probability_alternating(r, t),
                format!("r = {r}, t = {t}"),
            )?;
            ensure(
                integer(1) - &p == core(rate_bound(r, t))?,
                format!("complement, r = {r}, t = {t}"),
            )?;
        }
    }
    Ok("alternating sum = 1 - rate bound for r, t <= 30".into())
}

fn base_r_identity() -> Outcome {
    for r in 2..=5 {
        for t in 0..=6 {
            for m in 0..=1000 {
                ensure(
                    core(base_r_identity_check(m, r, t))?,
                    format!("m = {m}, r = {r}, t = {t}"),
                )?;
            }
        }
    }
    Ok("m <= 1000, r in 2..=5, t in 0..=6".into())
}

fn root_sandwich() -> Outcome {
    for r in 1..=6 {
        for t in 1..=30 {
            let (lower, upper) = core(rroot_sandwich(r, t))?;
            ensure(lower && upper, format!("r = {r}, t = {t}"))?;
        }
    }
    Ok("r in 1..=6, t in 1..=30".into())
}

fn product_code() -> Outcome {
    let (code, family) = core(parity_product_code(2, 2))?;
    core(family.validate_for_code(&code))?;
    let d = core(code.minimum_distance())?;
    ensure(
        (code.length(), code.dimension(), d) == (9, 4, 4),
        format!("[{}, {}, {d}]", code.length(), code.dimension()),
    )?;
    for r in 1..=4 {
        for t in 1..=4 {
            let gap = core(rate_gap_report(r, t))?;
            ensure(
                gap.construction <= gap.bound,
                format!("rate above bound at r = {r}, t = {t}"),
            )?;
        }
    }
    Ok("[9, 4, 4]; product rate <= bound for r, t <= 4".into())
}

fn product_graph() -> Result<RecoveringGraph, String> {
    let (code, family) = core(parity_product_code(2, 2))?;
    core(RecoveringGraph::from_family(&family, code.length()))
}

fn permutation_mean() -> Outcome {
    let g = product_graph()?;
    let stats = core(exhaustive_coloring(&g))?;
    ensure(
        stats.permutations == 362_880,
        format!("{} permutations", stats.permutations),
    )?;
    ensure(stats.mean == ratio(21, 5), format!("mean {}", stats.mean))?;
    ensure(stats.max >= 5, format!("max {}", stats.max))?;
    ensure(
        stats.all_eliminate,
        "elimination failed for some permutation",
    )?;
    ensure(
        4 <= 9 - stats.max,
        format!("k = 4 > n - max |U| = {}", 9 - stats.max),
    )?;
    let identity: Vec<usize> = (1..=9).collect();
    let u = core(color_by_permutation(&g, &identity))?.colored();
    ensure(
        core(recovery_elimination_order(&g, &u))?.is_some(),
        "identity U not eliminable",
    )?;
    Ok(format!("mean |U| = 21/5 over 9!, max {}", stats.max))
}

fn expander_sets() -> Outcome {
    let g = product_graph()?;
    ensure(core(expansion_constant(2, 2))? == ratio(7, 4), "e_2 != 7/4")?;
    for v in 1..=9 {
        for colors in 0..=2 {
            let s = core(build_expander_set(&g, v, colors))?;
            ensure(
                s.len() <= 1 << colors,
                format!("|S| = {} at v = {v}, t' = {colors}", s.len()),
            )?;
            ensure(
                core(closure(&g, &s))?.contains(v),
                format!("v = {v} not in closure"),
            )?;
            let e = core(expansion_constant(2, colors))?;
            ensure(
                core(expansion_ratio(&g, &s))? >= e,
                format!("ratio below e at v = {v}, t' = {colors}"),
            )?;
        }
    }
    Ok("all 9 vertices, t' in 0..=2".into())
}

fn distance_coloring() -> Outcome {
    let g = product_graph()?;
    let product = core(distance_bound_coloring(&g, 4))?;
    ensure(
        product.closure.len() >= 4,
        format!("product closure {}", product.closure),
    )?;
    let (code, family) = shortened_hamming_6_3();
    let h = core(RecoveringGraph::from_family(&family, code.length()))?;
    let hamming = core(distance_bound_coloring(&h, 3))?;
    ensure(
        hamming.closure.len() >= 3,
        format!("hamming closure {}", hamming.closure),
    )?;
    Ok(format!(
        "product: |C(S)| = {}, hamming: |C(S)| = {}",
        product.closure.len(),
        hamming.closure.len()
    ))
}

fn read_fixture(dir: &Path, name: &str) -> Result<LinearCode, String> {
    let path = dir.join(name);
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    core(LinearCode::parse(&text))
}

fn same_code(a: &LinearCode, b: &LinearCode) -> bool {
    let field = a.field();
    a.field() == b.field()
        && a.length() == b.length()
        && a.generator().row_space_basis(field) == b.generator().row_space_basis(field)
}

fn fixture_hamming(dir: &Path) -> Outcome {
    let code = read_fixture(dir, "hamming63.code")?;
    ensure(
        same_code(&code, &shortened_hamming_6_3().0),
        "not the shortened Hamming code",
    )?;
    ensure(
        core(find_family(&code, 2, 2))?.is_some(),
        "no (2, 2) family",
    )?;
    let d = core(code.minimum_distance())?;
    ensure(d == 3, format!("distance {d}"))?;
    Ok("hamming63.code matches".into())
}

fn fixture_product(dir: &Path) -> Outcome {
    let code = read_fixture(dir, "pp22.code")?;
    ensure(
        same_code(&code, &core(parity_product_code(2, 2))?.0),
        "not the 3x3 product code",
    )?;
    let family = core(find_family(&code, 2, 2))?.ok_or("no (2, 2) family")?;
    let g = core(RecoveringGraph::from_family(&family, code.length()))?;
    let all: CoordSet = (1..=9).collect();
    ensure(core(closure(&g, &all))?.len() == 9, "closure of everything")?;
    Ok("pp22.code matches".into())
}

pub(crate) fn run(fixtures: Option<&Path>, json: bool) -> CliResult {
    let mut table: Vec<NamedCheck> = vec![
        ("hamming_locality", Box::new(hamming_locality)),
        ("hamming_distance", Box::new(hamming_distance)),
        ("hamming_oracle", Box::new(hamming_oracle)),
        ("rate_bound_2_2", Box::new(rate_bound_2_2)),
        ("single_set_reductions", Box::new(single_set_reductions)),
        (
            "coloring_probability_forms",
            Box::new(coloring_probability_forms),
        ),
        ("base_r_identity", Box::new(base_r_identity)),
        ("root_sandwich", Box::new(root_sandwich)),
        ("product_code", Box::new(product_code)),
        ("permutation_mean", Box::new(permutation_mean)),
        ("expander_sets", Box::new(expander_sets)),
        ("distance_coloring", Box::new(distance_coloring)),
    ];
    if let Some(dir) = fixtures {
        let a = dir.to_path_buf();
        let b = dir.to_path_buf();
        table.push(("fixture_hamming63", Box::new(move || fixture_hamming(&a))));
        table.push(("fixture_pp22", Box::new(move || fixture_product(&b))));
    }
    let checks: Vec<Check> = table
        .into_iter()
        .map(|(name, check)| match check() {
            Ok(detail) => Check {
                name,
                passed: true,
                detail,
            },
            Err(detail) => Check {
                name,
                passed: false,
                detail,
            },
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    let summary = Summary {
        passed: checks.len() - failed,
        failed,
        checks,
    };
    let out = if json {
        crate::to_json(&summary)
    } else {
        let mut out = String::new();
        for c in &summary.checks {
            let _ = writeln!(
                out,
                "{} {:<28} {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        let _ = writeln!(out, "{} passed, {} failed", summary.passed, summary.failed);
        out
    };
    if failed > 0 {
        Err(Failure::Verification(out))
    } else {
        Ok(out)
    }
}
