//! `lrc`: bounds, analysis and brute-force experiments for locally
//! recoverable codes with availability.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lrc_core::bounds::{self, approx, expansion_constant};
use lrc_core::constructions::{parity_product_code, shortened_hamming_6_3};
use lrc_core::graph::{
    build_expander_set, closure, expansion_ratio, find_large_colored_set,
    recovery_elimination_order,
};
use lrc_core::recovery::{find_family, locality_profile};
use lrc_core::search::{
    bound_sweep, max_distance_with_locality, sweep_to_csv, SweepFlag, SweepRanges,
};
use lrc_core::{BoundReport, Error, LinearCode, MatrixForm, RecoveringFamily, RecoveringGraph};
use serde::Serialize;

mod verify;

#[derive(Parser)]
#[command(
    name = "lrc",
    version,
    about = "Bounds and experiments for locally recoverable codes with availability"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rate and distance bounds for locality r and availability t.
    Bounds {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        /// Print the rate bound for every r' <= r and t' <= t instead.
        #[arg(long)]
        table: bool,
        #[arg(long)]
        json: bool,
    },
    /// Find recovering sets in a code file and compare it with the bounds.
    Analyze {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        #[arg(long)]
        json: bool,
    },
    /// Re-check the published examples and identities.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        /// Also check `hamming63.code` and `pp22.code` from this directory.
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Write a tightness construction as a code file plus family sidecar.
    Construct {
        kind: ConstructionKind,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: Option<u32>,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: Option<u32>,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Best distance over all [n, k] codes with the requested locality.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Oracle distance against the bound over ranges of parameters.
    Sweep {
        #[arg(long, value_parser = parse_range)]
        n: (usize, usize),
        #[arg(long, value_parser = parse_range)]
        k: (usize, usize),
        #[arg(long, value_parser = parse_range)]
        r: (usize, usize),
        #[arg(long, value_parser = parse_range)]
        t: (usize, usize),
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Largest colored set over seeded random permutations.
    Permute {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: bool,
    },
    /// Small seed set whose closure reaches a vertex with high expansion.
    Expander {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        #[arg(long)]
        vertex: usize,
        /// Number of colors to use; defaults to t.
        #[arg(long)]
        colors: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Export the recovering graph as JSON or DOT.
    Graph {
        file: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        t: u32,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionKind {
    ParityProduct,
    Hamming63,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let number = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok((number(lo)?, number(hi)?))
        }
        None => number(s).map(|v| (v, v)),
    }
}

/// Why a command stopped; each maps to a fixed exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
    Parse(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Parse(_) => 3,
            Failure::Core(Error::Parse { .. }) => 3,
            Failure::Core(Error::GuardExceeded { .. }) => 4,
            Failure::Core(Error::InternalMismatch(_)) => 1,
            Failure::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Parse(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type CliResult = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(command: Command) -> CliResult {
    match command {
        Command::Bounds {
            n,
            k,
            r,
            t,
            table,
            json,
        } => cmd_bounds(n, k, r as usize, t as usize, table, json),
        Command::Analyze { file, r, t, json } => cmd_analyze(&file, r as usize, t as usize, json),
        Command::VerifyPaper { json, fixtures } => verify::run(fixtures.as_deref(), json),
        Command::Construct { kind, r, t, out } => cmd_construct(kind, r, t, &out),
        Command::Search {
            n,
            k,
            q,
            r,
            t,
            jobs,
            json,
        } => cmd_search(n, k, q, r as usize, t as usize, jobs, json),
        Command::Sweep {
            n,
            k,
            r,
            t,
            q,
            jobs,
            json,
        } => cmd_sweep(SweepRanges { n, k, r, t, q }, jobs, json),
        Command::Permute {
            file,
            r,
            t,
            trials,
            seed,
            jobs,
            json,
        } => cmd_permute(&file, r as usize, t as usize, trials, seed, jobs, json),
        Command::Expander {
            file,
            r,
            t,
            vertex,
            colors,
            json,
        } => cmd_expander(&file, r as usize, t as usize, vertex, colors, json),
        Command::Graph { file, r, t, dot } => {
            let (code, family, _) = load_with_family(&file, r as usize, t as usize)?;
            let g = RecoveringGraph::from_family(&family, code.length())?;
            Ok(if dot {
                g.to_dot()
            } else {
                format!("{}\n", g.to_json())
            })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

fn cmd_bounds(
    n: Option<usize>,
    k: Option<usize>,
    r: usize,
    t: usize,
    table: bool,
    json: bool,
) -> CliResult {
    if table {
        let mut rows = Vec::new();
        for ri in 1..=r {
            for ti in 1..=t {
                rows.push(BoundReport::new(ri, ti, None)?);
            }
        }
        if json {
            return Ok(to_json(&rows));
        }
        let mut out = String::from("r  t  rate bound\n");
        for row in rows {
            let _ = writeln!(
                out,
                "{:<2} {:<2} {} (~{:.6})",
                row.r,
                row.t,
                row.rate_bound,
                approx(&row.rate_bound)
            );
        }
        return Ok(out);
    }
    let params = match (n, k) {
        (Some(n), Some(k)) => Some((n, k)),
        (None, None) => None,
        _ => return Err(Failure::Usage("--n and --k must be given together".into())),
    };
    let report = BoundReport::new(r, t, params).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(if json {
        format!("{}\n", report.to_json())
    } else {
        report.to_text()
    })
}

fn read_code(path: &Path) -> Result<LinearCode, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    LinearCode::parse(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::Parse(format!("{}: {e}", path.display())),
        other => Failure::Core(other),
    })
}

/// `foo.code` keeps its family in `foo.family.json`.
fn sidecar_path(code_path: &Path) -> PathBuf {
    code_path.with_extension("family.json")
}

/// Where a recovering family came from.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum FamilySource {
    Sidecar,
    Search,
}

/// Loads a code and a `(r, t)` family for it: the sidecar file when it has
/// matching parameters, otherwise the lexicographically first family.
fn load_with_family(
    path: &Path,
    r: usize,
    t: usize,
) -> Result<(LinearCode, RecoveringFamily, FamilySource), Failure> {
    let code = read_code(path)?;
    let sidecar = sidecar_path(path);
    if let Ok(text) = fs::read_to_string(&sidecar) {
        let family = RecoveringFamily::from_json(&text)?;
        if family.r == r && family.t == t {
            family.validate_for_code(&code)?;
            return Ok((code, family, FamilySource::Sidecar));
        }
    }
    match find_family(&code, r, t)? {
        Some(family) => Ok((code, family, FamilySource::Search)),
        None => Err(Failure::Usage(format!(
            "{} has no family of {t} disjoint recovering sets of size <= {r} at every coordinate",
            path.display()
        ))),
    }
}

#[derive(Serialize)]
struct Analysis {
    q: u32,
    n: usize,
    k: usize,
    distance: usize,
    locality_profile: Vec<usize>,
    availability: usize,
    family: Option<RecoveringFamily>,
    undersized_sets: bool,
    report: BoundReport,
    verdict: String,
}

fn cmd_analyze(path: &Path, r: usize, t: usize, json: bool) -> CliResult {
    let code = read_code(path)?;
    let (n, k) = (code.length(), code.dimension());
    let distance = code.minimum_distance()?;
    let profile = locality_profile(&code, r)?;
    let availability = profile.iter().copied().min().unwrap_or(0);
    let family = if availability >= t {
        find_family(&code, r, t)?
    } else {
        None
    };
    let report = BoundReport::new(r, t, Some((n, k)))?.with_code(distance);
    let verdict = if availability == 0 {
        "no locality (t=0)".to_string()
    } else if family.is_none() {
        format!("availability {availability} < requested t = {t}")
    } else if report.distance_meets_bound == Some(true) {
        "meets distance bound with equality".to_string()
    } else if report.is_consistent() {
        format!(
            "distance {distance} below bound {}",
            report.distance_bound.unwrap_or_default()
        )
    } else {
        // Only reachable if a bound or the distance computation is wrong.
        return Err(Failure::Core(Error::InternalMismatch(format!(
            "distance {distance} exceeds bound {}",
            report.distance_bound.unwrap_or_default()
        ))));
    };
    let analysis = Analysis {
        q: code.field().order(),
        n,
        k,
        distance,
        availability,
        undersized_sets: family.as_ref().is_some_and(|f| f.has_undersized_sets()),
        locality_profile: profile,
        family,
        report,
        verdict,
    };
    if json {
        return Ok(to_json(&analysis));
    }
    let mut out = String::new();
    let _ = writeln!(out, "code: [{n},{k},{distance}] over GF({})", analysis.q);
    let profile: Vec<String> = analysis
        .locality_profile
        .iter()
        .map(|x| x.to_string())
        .collect();
    let _ = writeln!(
        out,
        "disjoint recovering sets of size <= {r}: {}",
        profile.join(" ")
    );
    if let Some(family) = &analysis.family {
        let _ = writeln!(out, "recovering family (r = {r}, t = {t}):");
        for i in 1..=n {
            let sets: Vec<String> = family.sets_of(i).iter().map(|s| s.to_string()).collect();
            let _ = writeln!(out, "  {i:>3}: {}", sets.join(" "));
        }
        if analysis.undersized_sets {
            let _ = writeln!(out, "note: some recovering sets are smaller than r");
        }
    }
    out.push_str(&analysis.report.to_text());
    let _ = writeln!(out, "{}", analysis.verdict);
    Ok(out)
}

fn cmd_construct(kind: ConstructionKind, r: Option<u32>, t: Option<u32>, out: &Path) -> CliResult {
    let (code, family, form, label) = match kind {
        ConstructionKind::ParityProduct => {
            let (Some(r), Some(t)) = (r, t) else {
                return Err(Failure::Usage("parity-product needs --r and --t".into()));
            };
            let (code, family) = parity_product_code(r as usize, t as usize)?;
            (
                code,
                family,
                MatrixForm::Generator,
                format!("{t}-fold product of the [{}, {r}] parity-check code", r + 1),
            )
        }
        ConstructionKind::Hamming63 => {
            if r.is_some_and(|r| r != 2) || t.is_some_and(|t| t != 2) {
                return Err(Failure::Usage("hamming63 has r = 2, t = 2".into()));
            }
            let (code, family) = shortened_hamming_6_3();
            (
                code,
                family,
                MatrixForm::Parity,
                "shortened [6, 3, 3] binary Hamming code".to_string(),
            )
        }
    };
    let write = |path: &Path, text: String| {
        fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    };
    let sidecar = sidecar_path(out);
    write(out, code.to_code_file(form, Some(&label)))?;
    write(&sidecar, format!("{}\n", family.to_json()))?;
    Ok(format!(
        "wrote {} ([{}, {}] over {}) and {}\n",
        out.display(),
        code.length(),
        code.dimension(),
        code.field(),
        sidecar.display()
    ))
}

#[derive(Serialize)]
struct SearchReport {
    #[serde(flatten)]
    outcome: lrc_core::search::SearchOutcome,
    flag: SweepFlag,
}

fn cmd_search(
    n: usize,
    k: usize,
    q: u32,
    r: usize,
    t: usize,
    jobs: usize,
    json: bool,
) -> CliResult {
    let outcome = max_distance_with_locality(n, k, q, r, t, jobs)?;
    let flag = match outcome.best_distance {
        None => SweepFlag::Infeasible,
        Some(d) if d as i64 == outcome.bound => SweepFlag::Tight,
        Some(d) if (d as i64) < outcome.bound => SweepFlag::Gap,
        Some(_) => SweepFlag::Violation,
    };
    let out = if json {
        to_json(&SearchReport {
            outcome: outcome.clone(),
            flag,
        })
    } else {
        let oracle = outcome
            .best_distance
            .map_or("none".to_string(), |d| d.to_string());
        let mut out = format!("oracle {oracle}, bound {}, {flag}\n", outcome.bound);
        let _ = writeln!(
            out,
            "{} of {} codes have {t} disjoint recovering sets of size <= {r}",
            outcome.qualifying, outcome.codes_examined
        );
        if let Some(generator) = &outcome.witness_generator {
            let _ = writeln!(
                out,
                "first optimal generator (code #{}):",
                outcome.witness_index.unwrap_or(0)
            );
            for row in generator {
                let row: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(out, "  {}", row.join(" "));
            }
        }
        out
    };
    if flag == SweepFlag::Violation {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

fn cmd_sweep(ranges: SweepRanges, jobs: usize, json: bool) -> CliResult {
    let rows = bound_sweep(&ranges, jobs)?;
    let out = if json {
        to_json(&rows)
    } else {
        sweep_to_csv(&rows)
    };
    if rows.iter().any(|r| r.flag == SweepFlag::Violation) {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

#[derive(Serialize)]
struct PermuteReport {
    family: FamilySource,
    #[serde(flatten)]
    best: lrc_core::graph::LargeColoredSet,
    elimination_order: Option<Vec<usize>>,
    k: usize,
    k_within_uncolored: bool,
}

fn cmd_permute(
    path: &Path,
    r: usize,
    t: usize,
    trials: u64,
    seed: u64,
    jobs: usize,
    json: bool,
) -> CliResult {
    if trials == 0 {
        return Err(Failure::Usage("--trials must be at least 1".into()));
    }
    let (code, family, source) = load_with_family(path, r, t)?;
    let g = RecoveringGraph::from_family(&family, code.length())?;
    let best = find_large_colored_set(&g, trials, seed, jobs)?;
    let elimination_order = recovery_elimination_order(&g, &best.colored)?;
    let k = code.dimension();
    let report = PermuteReport {
        family: source,
        elimination_order,
        k,
        k_within_uncolored: k <= g.n() - best.size,
        best,
    };
    if json {
        return Ok(to_json(&report));
    }
    let best = &report.best;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "best |U| {} (trial {} of {}, seed {seed})",
        best.size, best.best_trial, best.trials
    );
    let _ = writeln!(out, "target {} ({})", best.target, approx(&best.target));
    let _ = writeln!(
        out,
        "meets target: {}",
        if best.meets_target { "yes" } else { "no" }
    );
    let tau: Vec<String> = best.tau.iter().map(|x| x.to_string()).collect();
    let _ = writeln!(out, "permutation: {}", tau.join(" "));
    let _ = writeln!(out, "U = {}", best.colored);
    match &report.elimination_order {
        Some(order) => {
            let order: Vec<String> = order.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "elimination order: {}", order.join(" "));
        }
        None => {
            let _ = writeln!(out, "elimination order: none");
        }
    }
    let _ = writeln!(
        out,
        "k = {k} <= n - |U| = {}: {}",
        g.n() - best.size,
        report.k_within_uncolored
    );
    if report.elimination_order.is_none() || !report.k_within_uncolored {
        return Err(Failure::Verification(out));
    }
    Ok(out)
}

#[derive(Serialize)]
struct ExpanderReport {
    vertex: usize,
    colors: usize,
    set: lrc_core::CoordSet,
    closure: lrc_core::CoordSet,
    #[serde(serialize_with = "rational_string")]
    ratio: lrc_core::Rational,
    #[serde(serialize_with = "rational_string")]
    guaranteed: lrc_core::Rational,
    size_limit: u128,
}

fn rational_string<S: serde::Serializer>(x: &lrc_core::Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn cmd_expander(
    path: &Path,
    r: usize,
    t: usize,
    vertex: usize,
    colors: Option<usize>,
    json: bool,
) -> CliResult {
    let colors = colors.unwrap_or(t);
    if colors > t {
        return Err(Failure::Usage(format!("--colors {colors} exceeds t = {t}")));
    }
    let (code, family, _) = load_with_family(path, r, t)?;
    let g = RecoveringGraph::from_family(&family, code.length())?;
    let set = build_expander_set(&g, vertex, colors)?;
    let report = ExpanderReport {
        vertex,
        colors,
        closure: closure(&g, &set)?,
        ratio: expansion_ratio(&g, &set)?,
        guaranteed: if r >= 2 {
            expansion_constant(r, colors)?
        } else {
            bounds::integer(colors as i64 + 1)
        },
        size_limit: (r as u128).saturating_pow(colors as u32),
        set,
    };
    if json {
        return Ok(to_json(&report));
    }
    let mut out = String::new();
    let _ = writeln!(
        out,
        "S = {} (|S| = {} <= {})",
        report.set,
        report.set.len(),
        report.size_limit
    );
    let _ = writeln!(out, "closure = {}", report.closure);
    let _ = writeln!(
        out,
        "ratio {} (~{:.4}), guaranteed {}",
        report.ratio,
        approx(&report.ratio),
        report.guaranteed
    );
    Ok(out)
}
