//! `zeroblock`: blocking numbers, witnesses, certificates, and renders for
//! grid graphs, plus exact search on small general graphs.

use std::collections::BTreeSet;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use zeroblock::geometry::HalfPoint;
use zeroblock::{
    blocking_number_formula, build_staircase, build_witness, certify_grid, closure,
    closure_with_order, enumerate_min_blocking_sets, is_blocking_set, is_stalled,
    min_blocking_grid, min_blocking_number, qr_params, upper_bound_bcc, ColorState, Graph,
    SearchBudget, Side, SideReport, SolveError, SolveResult, VertexSet,
};

const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_LIMIT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "zeroblock",
    version,
    about = "Zero forcing closures, zero blocking numbers, grid witnesses, and staircase certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the closed-form grid blocking number and its bound.
    Formula {
        #[command(flatten)]
        grid: GridArg,
        #[arg(long)]
        json: bool,
    },
    /// Search for the exact minimum blocking number.
    Solve {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Enumerate every minimum set, up to CAP of them.
        #[arg(long, value_name = "CAP")]
        enumerate: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Construct a verified minimum blocking set for a grid.
    Witness {
        #[command(flatten)]
        grid: GridArg,
        /// Write the witness JSON here instead of stdout.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Check a white set: blocking? immediately stalled? size vs formula.
    Verify {
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        set: SetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run the staircase certificate checks on a white set.
    Certify {
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        set: SetArgs,
        /// Restrict the verdict to one boundary side.
        #[arg(long, value_enum, default_value_t = SideChoice::All)]
        side: SideChoice,
        #[arg(long)]
        json: bool,
    },
    /// Print the closure trace of the black complement, force by force.
    Trace {
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        set: SetArgs,
        /// Seed for a randomized force order (default: engine order).
        #[arg(long, value_name = "SEED")]
        order: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Tabulate formula values over ranges of m and n.
    Table {
        /// Inclusive row range, e.g. 2..6.
        #[arg(long = "m-range", value_name = "A..B", value_parser = parse_range)]
        m_range: (i64, i64),
        /// Inclusive column range, e.g. 2..12.
        #[arg(long = "n-range", value_name = "C..D", value_parser = parse_range)]
        n_range: (i64, i64),
        /// Cross-check the solver on grids with m*n <= LIMIT.
        #[arg(long = "check-solver", value_name = "LIMIT")]
        check_solver: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Draw the grid as ASCII rows (W white, . black), optionally as SVG.
    Render {
        #[command(flatten)]
        grid: GridArg,
        #[command(flatten)]
        set: SetArgs,
        /// Write an SVG snapshot here.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
        /// Overlay the four staircase polylines in the SVG.
        #[arg(long)]
        certify_overlay: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct GridArg {
    /// Grid dimensions as MxN (M rows, N columns).
    #[arg(long, value_parser = parse_grid)]
    grid: (i64, i64),
}

#[derive(Args)]
struct GraphSource {
    /// Grid dimensions as MxN (M rows, N columns).
    #[arg(long, value_parser = parse_grid, required_unless_present = "graph", conflicts_with = "graph")]
    grid: Option<(i64, i64)>,
    /// Edge-list file: a "p N M" header, then one "e a b" line per edge (1-based).
    #[arg(long, value_name = "FILE")]
    graph: Option<PathBuf>,
}

#[derive(Args)]
struct SetArgs {
    /// Witness JSON file holding {"white": [[x,y],...]}.
    #[arg(long, value_name = "FILE", required_unless_present = "white", conflicts_with = "white")]
    set: Option<PathBuf>,
    /// Inline white list, e.g. "(1,1),(2,2)".
    #[arg(long)]
    white: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Search time budget in seconds (default 300, or ZB_DEFAULT_BUDGET_SECS).
    #[arg(long, value_name = "SECS")]
    budget: Option<u64>,
    /// Worker threads for the search partitioning.
    #[arg(long, value_name = "K")]
    workers: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideChoice {
    Xy,
    Zw,
    Xz,
    Yw,
    All,
}

impl SideChoice {
    fn selects(self, side: Side) -> bool {
        match self {
            SideChoice::All => true,
            SideChoice::Xy => side == Side::XY,
            SideChoice::Zw => side == Side::ZW,
            SideChoice::Xz => side == Side::XZ,
            SideChoice::Yw => side == Side::YW,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            let code = match err.downcast_ref::<SolveError>() {
                Some(_) => EXIT_LIMIT,
                None => 1,
            };
            eprintln!("error: {err:#}");
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Formula { grid: GridArg { grid: (m, n) }, json } => cmd_formula(m, n, json),
        Command::Solve { source, budget, enumerate, json } => {
            cmd_solve(source, budget, enumerate, json)
        }
        Command::Witness { grid: GridArg { grid: (m, n) }, output } => cmd_witness(m, n, output),
        Command::Verify { grid: GridArg { grid: (m, n) }, set, json } => {
            cmd_verify(m, n, &set, json)
        }
        Command::Certify { grid: GridArg { grid: (m, n) }, set, side, json } => {
            cmd_certify(m, n, &set, side, json)
        }
        Command::Trace { grid: GridArg { grid: (m, n) }, set, order, json } => {
            cmd_trace(m, n, &set, order, json)
        }
        Command::Table { m_range, n_range, check_solver, budget, json } => {
            cmd_table(m_range, n_range, check_solver, &budget, json)
        }
        Command::Render { grid: GridArg { grid: (m, n) }, set, svg, certify_overlay, json } => {
            cmd_render(m, n, &set, svg.as_deref(), certify_overlay, json)
        }
    }
}

fn parse_grid(s: &str) -> Result<(i64, i64), String> {
    let (m, n) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected MxN, got {s:?}"))?;
    let m: i64 = m.trim().parse().map_err(|_| format!("bad row count {m:?}"))?;
    let n: i64 = n.trim().parse().map_err(|_| format!("bad column count {n:?}"))?;
    if m < 1 || n < 1 {
        return Err("grid dimensions must be at least 1".into());
    }
    Ok((m, n))
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

fn parse_points(s: &str) -> Result<Vec<(i64, i64)>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let mut points = Vec::new();
    if compact.is_empty() {
        return Ok(points);
    }
    for chunk in compact.split("),") {
        let chunk = chunk
            .strip_prefix('(')
            .ok_or_else(|| anyhow!("expected a parenthesized pair, got {chunk:?}"))?;
        let chunk = chunk.strip_suffix(')').unwrap_or(chunk);
        let (x, y) =
            chunk.split_once(',').ok_or_else(|| anyhow!("expected \"x,y\", got {chunk:?}"))?;
        points.push((
            x.parse().with_context(|| format!("bad x coordinate {x:?}"))?,
            y.parse().with_context(|| format!("bad y coordinate {y:?}"))?,
        ));
    }
    Ok(points)
}

fn format_points(points: &[(i64, i64)]) -> String {
    points.iter().map(|(x, y)| format!("({x},{y})")).collect::<Vec<_>>().join(",")
}

#[derive(Deserialize)]
struct SetDocument {
    #[serde(default)]
    m: Option<i64>,
    #[serde(default)]
    n: Option<i64>,
    white: Vec<(i64, i64)>,
}

impl SetArgs {
    fn load(&self, m: i64, n: i64) -> Result<BTreeSet<(i64, i64)>> {
        let points = match (&self.set, &self.white) {
            (Some(path), None) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let doc: SetDocument =
                    serde_json::from_str(&text).context("parsing witness JSON")?;
                if let (Some(fm), Some(fn_)) = (doc.m, doc.n) {
                    if (fm, fn_) != (m, n) {
                        bail!("set file describes a {fm}x{fn_} grid, not {m}x{n}");
                    }
                }
                doc.white
            }
            (None, Some(inline)) => parse_points(inline)?,
            _ => unreachable!("clap enforces exactly one of --set/--white"),
        };
        let mut set = BTreeSet::new();
        for (x, y) in points {
            if !(1..=n).contains(&x) || !(1..=m).contains(&y) {
                bail!("({x},{y}) is outside the {m}x{n} grid");
            }
            set.insert((x, y));
        }
        Ok(set)
    }
}

impl GraphSource {
    fn load(&self) -> Result<(Graph, Option<(i64, i64)>)> {
        match (self.grid, &self.graph) {
            (Some((m, n)), None) => Ok((Graph::grid(m as usize, n as usize)?, Some((m, n)))),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok((Graph::from_edge_list_text(&text)?, None))
            }
            _ => unreachable!("clap enforces exactly one of --grid/--graph"),
        }
    }
}

impl BudgetArgs {
    fn resolve(&self) -> Result<SearchBudget> {
        let mut budget = SearchBudget::default();
        if let Some(secs) = self.budget {
            budget.max_seconds = secs;
        } else if let Ok(value) = std::env::var("ZB_DEFAULT_BUDGET_SECS") {
            budget.max_seconds =
                value.parse().context("ZB_DEFAULT_BUDGET_SECS must be a whole number")?;
        }
        Ok(budget)
    }

    fn install<T: Send>(&self, work: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(work()),
            Some(k) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(k.max(1))
                    .build()
                    .context("building the worker pool")?;
                Ok(pool.install(work))
            }
        }
    }
}

fn white_vertex_set(graph: &Graph, white: &BTreeSet<(i64, i64)>) -> Result<VertexSet> {
    let spec = graph.grid_spec().expect("grid graphs carry their spec");
    let mut set = VertexSet::new(graph.vertex_count());
    for &(x, y) in white {
        set.insert(spec.index(x, y).ok_or_else(|| anyhow!("({x},{y}) outside the grid"))?);
    }
    Ok(set)
}

#[derive(Serialize)]
struct FormulaDoc {
    m: i64,
    n: i64,
    q: i64,
    r: i64,
    branch: &'static str,
    blocking_number: i64,
    bound: i64,
}

fn cmd_formula(m: i64, n: i64, json: bool) -> Result<u8> {
    let params = qr_params(m, n)?;
    let value = blocking_number_formula(m, n)?;
    let bound = upper_bound_bcc(m, n)?;
    let branch = if params.tight { "tight" } else { "crossing" };
    if json {
        let doc =
            FormulaDoc { m, n, q: params.q, r: params.r, branch, blocking_number: value, bound };
        println!("{}", serde_json::to_string(&doc)?);
    } else {
        println!("q={} r={} branch={} B={} bound={}", params.q, params.r, branch, value, bound);
    }
    Ok(0)
}

#[derive(Serialize)]
#[serde(untagged)]
enum WitnessLists {
    Grid(Vec<Vec<(i64, i64)>>),
    Ids(Vec<Vec<usize>>),
}

#[derive(Serialize)]
struct SolveDoc {
    value: Option<usize>,
    nodes: u64,
    exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    enumeration_capped: Option<bool>,
    witnesses: WitnessLists,
}

fn cmd_solve(
    source: GraphSource,
    budget_args: BudgetArgs,
    enumerate: Option<usize>,
    json: bool,
) -> Result<u8> {
    let budget = budget_args.resolve()?;
    let (graph, grid) = source.load()?;
    let result: SolveResult = budget_args.install(|| match grid {
        Some((m, n)) => min_blocking_grid(m as usize, n as usize, &budget),
        None => min_blocking_number(&graph, &budget),
    })??;

    let mut nodes = result.nodes_explored;
    let mut capped = None;
    let mut raw_sets = result.witnesses;
    if let (Some(cap), Some(value)) = (enumerate, result.value) {
        let enumeration =
            budget_args.install(|| enumerate_min_blocking_sets(&graph, value, cap, &budget))??;
        nodes += enumeration.nodes_explored;
        capped = Some(enumeration.hit_cap);
        raw_sets = enumeration.sets;
    }

    let witnesses = match grid {
        Some(_) => {
            let spec = graph.grid_spec().expect("grid graphs carry their spec");
            WitnessLists::Grid(
                raw_sets.iter().map(|s| s.iter().map(|&v| spec.coords(v)).collect()).collect(),
            )
        }
        None => WitnessLists::Ids(raw_sets),
    };

    if json {
        let doc = SolveDoc {
            value: result.value,
            nodes,
            exhausted: result.exhausted,
            enumeration_capped: capped,
            witnesses,
        };
        println!("{}", serde_json::to_string(&doc)?);
    } else {
        match result.value {
            Some(value) => println!("B={value} nodes={nodes} exhausted={}", result.exhausted),
            None => println!("B=unknown nodes={nodes} exhausted=false (budget exhausted)"),
        }
        match &witnesses {
            WitnessLists::Grid(sets) => {
                for set in sets {
                    println!("witness={}", format_points(set));
                }
            }
            WitnessLists::Ids(sets) => {
                for set in sets {
                    let ids =
                        set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
                    println!("witness={ids}");
                }
            }
        }
        if capped == Some(true) {
            println!("note=enumeration capped");
        }
    }
    Ok(if result.value.is_some() { 0 } else { EXIT_LIMIT })
}

#[derive(Serialize)]
struct WitnessDoc {
    m: i64,
    n: i64,
    size: usize,
    verified: bool,
    white: Vec<(i64, i64)>,
}

fn cmd_witness(m: i64, n: i64, output: Option<PathBuf>) -> Result<u8> {
    let witness = build_witness(m, n)?;
    let doc = WitnessDoc {
        m: witness.m,
        n: witness.n,
        size: witness.size,
        verified: witness.verified,
        white: witness.white.clone(),
    };
    let text = serde_json::to_string(&doc)?;
    match output {
        Some(path) => {
            fs::write(&path, format!("{text}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
        }
        None => println!("{text}"),
    }
    Ok(if witness.verified { 0 } else { EXIT_LIMIT })
}

#[derive(Serialize)]
struct VerifyDoc {
    blocking: bool,
    stalled: bool,
    size: usize,
    formula: i64,
}

fn cmd_verify(m: i64, n: i64, set: &SetArgs, json: bool) -> Result<u8> {
    let white = set.load(m, n)?;
    let graph = Graph::grid(m as usize, n as usize)?;
    let whites = white_vertex_set(&graph, &white)?;
    let blocking = is_blocking_set(&graph, &whites);
    let state = ColorState::from_white(graph.vertex_count(), whites.iter());
    let stalled = is_stalled(&graph, &state);
    let formula = blocking_number_formula(m, n)?;
    if json {
        let doc = VerifyDoc { blocking, stalled, size: white.len(), formula };
        println!("{}", serde_json::to_string(&doc)?);
    } else if blocking {
        println!("blocking=true stalled={stalled} size={} formula={formula}", white.len());
    } else {
        println!("blocking=false");
    }
    Ok(if blocking { 0 } else { EXIT_CHECK_FAILED })
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::XY => "xy",
        Side::ZW => "zw",
        Side::XZ => "xz",
        Side::YW => "yw",
    }
}

fn outcome_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn cmd_certify(m: i64, n: i64, set: &SetArgs, choice: SideChoice, json: bool) -> Result<u8> {
    let white = set.load(m, n)?;
    let report = certify_grid(m, n, &white);
    let selected: Vec<&SideReport> =
        report.sides.iter().filter(|s| choice.selects(s.side)).collect();
    let pass = report.lemma2.pass && report.lemma3.pass && selected.iter().all(|s| s.pass());

    if json {
        let doc = serde_json::json!({
            "lemma2": report.lemma2,
            "lemma3": report.lemma3,
            "sides": selected,
            "pass": pass,
        });
        println!("{}", serde_json::to_string(&doc)?);
    } else {
        for (name, outcome) in [("lemma2", &report.lemma2), ("lemma3", &report.lemma3)] {
            match &outcome.counterexample {
                Some(detail) if !outcome.pass => {
                    println!("{name}: fail ({detail})");
                }
                _ => println!("{name}: {}", outcome_word(outcome.pass)),
            }
        }
        for side in &selected {
            println!(
                "side {}: windows={} prop4={} prop5={} prop6={} prop7={}",
                side_name(side.side),
                side.windows_checked,
                outcome_word(side.prop4.pass),
                outcome_word(side.prop5.pass),
                outcome_word(side.prop6.pass),
                outcome_word(side.prop7.pass),
            );
            for check in [&side.prop4, &side.prop5, &side.prop6, &side.prop7] {
                if let (false, Some(detail)) = (check.pass, &check.counterexample) {
                    println!("  counterexample: {detail}");
                }
            }
        }
        println!("certificate: {}", outcome_word(pass));
    }
    Ok(if pass { 0 } else { EXIT_CHECK_FAILED })
}

fn cmd_trace(m: i64, n: i64, set: &SetArgs, order: Option<u64>, json: bool) -> Result<u8> {
    let white = set.load(m, n)?;
    let graph = Graph::grid(m as usize, n as usize)?;
    let whites = white_vertex_set(&graph, &white)?;
    let state = ColorState::from_white(graph.vertex_count(), whites.iter());
    let (_, trace) = match order {
        None => closure(&graph, &state),
        Some(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            closure_with_order(&graph, &state, |k| rng.gen_range(0..k))
        }
    };
    let spec = graph.grid_spec().expect("grid graphs carry their spec");
    let steps: Vec<((i64, i64), (i64, i64))> =
        trace.steps().iter().map(|&(a, b)| (spec.coords(a), spec.coords(b))).collect();
    if json {
        println!("{}", serde_json::to_string(&steps)?);
    } else {
        for ((fx, fy), (tx, ty)) in &steps {
            println!("({fx},{fy}) -> ({tx},{ty})");
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct TableRow {
    m: i64,
    n: i64,
    q: i64,
    r: i64,
    blocking_number: i64,
    bound: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver: Option<usize>,
}

fn cmd_table(
    (m_lo, m_hi): (i64, i64),
    (n_lo, n_hi): (i64, i64),
    check_solver: Option<usize>,
    budget_args: &BudgetArgs,
    json: bool,
) -> Result<u8> {
    let budget = budget_args.resolve()?;
    let outcome = budget_args.install(|| -> Result<(Vec<TableRow>, bool, bool)> {
        let mut rows = Vec::new();
        let mut disagreement = false;
        let mut budget_hit = false;
        for m in m_lo..=m_hi {
            for n in n_lo..=n_hi {
                let params = qr_params(m, n)?;
                let value = blocking_number_formula(m, n)?;
                let bound = upper_bound_bcc(m, n)?;
                let solver = match check_solver {
                    Some(limit) if (m * n) as usize <= limit => {
                        let result = min_blocking_grid(m as usize, n as usize, &budget)?;
                        match result.value {
                            Some(found) => {
                                if found as i64 != value {
                                    disagreement = true;
                                }
                                Some(found)
                            }
                            None => {
                                budget_hit = true;
                                None
                            }
                        }
                    }
                    _ => None,
                };
                rows.push(TableRow {
                    m,
                    n,
                    q: params.q,
                    r: params.r,
                    blocking_number: value,
                    bound,
                    solver,
                });
            }
        }
        Ok((rows, disagreement, budget_hit))
    })?;
    let (rows, disagreement, budget_hit) = outcome?;

    if json {
        println!("{}", serde_json::to_string(&rows)?);
    } else {
        let header = if check_solver.is_some() {
            "m\tn\tq\tr\tB\tbound\tsolver"
        } else {
            "m\tn\tq\tr\tB\tbound"
        };
        println!("{header}");
        for row in &rows {
            let mut line = format!(
                "{}\t{}\t{}\t{}\t{}\t{}",
                row.m, row.n, row.q, row.r, row.blocking_number, row.bound
            );
            if check_solver.is_some() {
                match row.solver {
                    Some(v) => line.push_str(&format!("\t{v}")),
                    None => line.push_str("\t-"),
                }
            }
            println!("{line}");
        }
    }
    if disagreement {
        Ok(EXIT_CHECK_FAILED)
    } else if budget_hit {
        Ok(EXIT_LIMIT)
    } else {
        Ok(0)
    }
}

#[derive(Serialize)]
struct RenderDoc {
    m: i64,
    n: i64,
    rows: Vec<String>,
}

fn cmd_render(
    m: i64,
    n: i64,
    set: &SetArgs,
    svg: Option<&std::path::Path>,
    overlay: bool,
    json: bool,
) -> Result<u8> {
    let white = set.load(m, n)?;
    let rows: Vec<String> = (1..=m)
        .rev()
        .map(|y| (1..=n).map(|x| if white.contains(&(x, y)) { 'W' } else { '.' }).collect())
        .collect();
    if json {
        let doc = RenderDoc { m, n, rows: rows.clone() };
        println!("{}", serde_json::to_string(&doc)?);
    } else {
        for row in &rows {
            println!("{row}");
        }
    }
    if let Some(path) = svg {
        fs::write(path, svg_document(m, n, &white, overlay))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(0)
}

fn svg_document(m: i64, n: i64, white: &BTreeSet<(i64, i64)>, overlay: bool) -> String {
    let cell = 40.0_f64;
    let margin = 40.0_f64;
    let width = margin * 2.0 + cell * (n - 1) as f64;
    let height = margin * 2.0 + cell * (m - 1) as f64;
    let px = |x: f64| margin + (x - 1.0) * cell;
    let py = |y: f64| margin + (m as f64 - y) * cell;

    let mut doc = String::new();
    doc.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    ));
    doc.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for x in 1..=n {
        for y in 1..=m {
            if x < n {
                doc.push_str(&format!(
                    "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#c8c8c8\" stroke-width=\"2\"/>\n",
                    px(x as f64), py(y as f64), px((x + 1) as f64), py(y as f64)
                ));
            }
            if y < m {
                doc.push_str(&format!(
                    "  <line x1=\"{:.1}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#c8c8c8\" stroke-width=\"2\"/>\n",
                    px(x as f64), py(y as f64), px(x as f64), py((y + 1) as f64)
                ));
            }
        }
    }
    if overlay {
        let colors = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e"];
        for (side, color) in Side::ALL.into_iter().zip(colors) {
            let Ok(staircase) = build_staircase(m, n, white, side) else {
                continue;
            };
            let points: Vec<String> = staircase
                .polyline
                .points()
                .iter()
                .map(|&p| {
                    let q: HalfPoint = side.from_frame_half(m, n, p);
                    format!("{:.1},{:.1}", px(q.dx as f64 / 2.0), py(q.dy as f64 / 2.0))
                })
                .collect();
            doc.push_str(&format!(
                "  <polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"3\" opacity=\"0.6\"/>\n",
                points.join(" ")
            ));
        }
    }
    for y in 1..=m {
        for x in 1..=n {
            let style = if white.contains(&(x, y)) {
                "fill=\"white\" stroke=\"black\" stroke-width=\"2\""
            } else {
                "fill=\"#111111\""
            };
            doc.push_str(&format!(
                "  <circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"9\" {style}/>\n",
                px(x as f64),
                py(y as f64)
            ));
        }
    }
    doc.push_str("</svg>\n");
    doc
}
