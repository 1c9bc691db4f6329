//! Command-line driver. `run` does all the work so tests can call it with
//! in-memory input and output.

use std::ffi::OsString;
use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;
use pursuit_core::cover::{
    best_bound_report, standard_decompositions, BagCovers, BoundConfig, NamedDecomposition, PoolBuilder, PoolLimits,
    RccMode,
};
use pursuit_core::game::{solve_arena, Arena, GameSolution, DEFAULT_STATE_BUDGET};
use pursuit_core::generate::Family;
use pursuit_core::strategy::{
    capture_time_bound, measure_g_tr, never_reenter_violations, simulate, CaptureTimeBoundReport, CliqueTreeController,
    CopController, GreedyRobber, LeapController, Outcome, RandomRobber, RelayController, RobberPolicy,
    SimulationTrace, StationaryRobber, TableController, TableRobber,
};
use pursuit_core::td::{clique_tree, DEFAULT_EXACT_LIMIT};
use pursuit_core::{Error as CoreError, Graph, TreeDecomposition};

use crate::cache::SolutionCache;
use crate::error::CliError;
use crate::pace;
use crate::report::{error_json, render, Format, SimulationSummary};
use crate::trace::{outcome_name, render_board, render_trace, to_jsonl};

/// Environment variable overriding the default budgets.
pub const TD_BUDGET_ENV: &str = "PURSUIT_TD_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "pursuit", version, about = "Cops and Robbers bounds, strategies and simulations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute every cop-number bound and check them against the exact value.
    Bound(BoundArgs),
    /// Run a cop strategy against a robber policy.
    Simulate(SimulateArgs),
    /// Play the robber yourself.
    Play(PlayArgs),
    /// Write a generated graph as a .gr file.
    Gen(GenArgs),
    /// Write a tree decomposition as a .td file.
    Td(TdArgs),
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct GraphSource {
    /// PACE .gr input.
    #[arg(long)]
    pub gr: Option<PathBuf>,
    /// Generated graph, e.g. grid:4, ktree:2,10, connected:8,0.3.
    #[arg(long, value_name = "FAMILY:ARGS")]
    pub gen: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    #[command(flatten)]
    pub source: GraphSource,
    /// PACE .td decomposition to use instead of the generated ones.
    #[arg(long)]
    pub td: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// State budget for every game table.
    #[arg(long, default_value_t = DEFAULT_STATE_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_states: u64,
    /// Largest candidate pool per bag.
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget_pool: u64,
    /// Largest vertex count for exact treewidth and exhaustive searches.
    #[arg(long, env = TD_BUDGET_ENV, default_value_t = DEFAULT_EXACT_LIMIT as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub td_budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub common: Common,
    /// Greedy rcc instead of branch and bound.
    #[arg(long)]
    pub greedy: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyKind {
    Thm1,
    ThmI,
    ThmMain2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RobberKind {
    Optimal,
    Greedy,
    Random,
    Stationary,
}

#[derive(Debug, Clone, Args)]
pub struct ControllerArgs {
    /// Strategy to synthesise; with only --cops the exact solver plays.
    #[arg(long, value_enum)]
    pub strategy: Option<StrategyKind>,
    #[arg(long)]
    pub cops: Option<usize>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_rounds: Option<u64>,
    /// Directory for cached game tables.
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub controller: ControllerArgs,
    #[arg(long, value_enum, default_value_t = RobberKind::Greedy)]
    pub robber: RobberKind,
    /// Write the trace (JSON lines) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub controller: ControllerArgs,
    /// Write the transcript (JSON lines) here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_name = "FAMILY:ARGS")]
    pub gen: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TdMethod {
    Witness,
    CliqueTree,
    Grid,
}

#[derive(Debug, Args)]
pub struct TdArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = TdMethod::Witness)]
    pub method: TdMethod,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command, input, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            let _ = out.write_all(error_json(&e).as_bytes());
            e.exit_code()
        }
    }
}

fn execute(cmd: Command, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Bound(a) => cmd_bound(&a, out),
        Command::Simulate(a) => cmd_simulate(&a, out),
        Command::Play(a) => cmd_play(&a, input, out),
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Td(a) => cmd_td(&a, out),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

/// A loaded graph with what is known about its shape.
struct Loaded {
    id: String,
    graph: Graph,
    family: Option<Family>,
}

impl Loaded {
    fn grid_shape(&self) -> Option<(usize, usize)> {
        match self.family {
            Some(Family::Grid(r, c)) => Some((r, c)),
            _ => None,
        }
    }
}

fn load(c: &Common) -> Result<Loaded, CliError> {
    match (&c.source.gr, &c.source.gen) {
        (Some(p), None) => Ok(Loaded {
            id: p.file_name().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned()),
            graph: pace::read_gr(p)?,
            family: None,
        }),
        (None, Some(spec)) => {
            let family = Family::parse(spec, c.seed)?;
            Ok(Loaded {
                id: family.to_string(),
                graph: family.generate()?,
                family: Some(family),
            })
        }
        _ => Err(CliError::Usage("give exactly one of --gr and --gen".into())),
    }
}

fn decompositions(c: &Common, l: &Loaded) -> Result<Vec<NamedDecomposition>, CliError> {
    if let Some(p) = &c.td {
        return Ok(vec![NamedDecomposition {
            name: p.file_name().map_or_else(|| "user".into(), |s| s.to_string_lossy().into_owned()),
            decomposition: pace::read_td(p, l.graph.n())?,
        }]);
    }
    let side = l.family.and_then(|f| f.square_grid_side());
    Ok(standard_decompositions(&l.graph, side, c.td_budget as usize))
}

fn pool_limits(c: &Common) -> PoolLimits {
    PoolLimits {
        max_pool: c.budget_pool as usize,
        state_budget: c.budget_states,
        ..PoolLimits::default()
    }
}

fn bound_config(c: &Common, greedy: bool) -> BoundConfig {
    BoundConfig {
        pool: pool_limits(c),
        mode: if greedy { RccMode::Greedy } else { RccMode::Exact },
        state_budget: c.budget_states,
        treewidth_exact_limit: c.td_budget as usize,
        ..BoundConfig::default()
    }
}

fn cmd_bound(a: &BoundArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let l = load(&a.common)?;
    let ds = decompositions(&a.common, &l)?;
    if a.common.td.is_some() {
        // A user decomposition that fails validation is an input error.
        ds[0].decomposition.ensure_valid(&l.graph)?;
    }
    let report = best_bound_report(&l.graph, &l.id, &ds, &bound_config(&a.common, a.greedy))?;
    emit(out, a.out.as_deref(), &render(&report, a.common.format))?;
    if !report.is_sound() {
        eprintln!("soundness violations: {:?}", report.violations);
        return Ok(4);
    }
    Ok(0)
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let g = Family::parse(&a.gen, a.seed)?.generate()?;
    emit(out, a.out.as_deref(), &pace::format_gr(&g))?;
    Ok(0)
}

fn cmd_td(a: &TdArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let l = load(&a.common)?;
    let side = l.family.and_then(|f| f.square_grid_side());
    let all = standard_decompositions(&l.graph, side, a.common.td_budget as usize);
    let name = match a.method {
        TdMethod::Witness => "treewidth-witness",
        TdMethod::CliqueTree => "clique-tree",
        TdMethod::Grid => "grid",
    };
    let t = all
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| CliError::Usage(format!("no {name} decomposition for {}", l.id)))?;
    emit(out, a.out.as_deref(), &pace::format_td(&t.decomposition, l.graph.n()))?;
    Ok(0)
}

/// A ready-to-run controller with its bookkeeping.
struct Built {
    controller: Box<dyn CopController>,
    name: String,
    decomposition: Option<TreeDecomposition>,
    bound: Option<CaptureTimeBoundReport>,
    /// A timeout means the strategy failed, not that the cops were short.
    guaranteed: bool,
}

/// Covers of the decomposition with the smallest max rcc among `ds`,
/// restricted to those passing `keep`.
fn best_covers(
    g: &Graph,
    ds: &[NamedDecomposition],
    limits: &PoolLimits,
    keep: impl Fn(&TreeDecomposition) -> bool,
) -> Result<Option<(TreeDecomposition, BagCovers)>, CliError> {
    let mut builder = PoolBuilder::new(g, limits.clone());
    let mut best: Option<(TreeDecomposition, BagCovers)> = None;
    for nd in ds {
        let t = &nd.decomposition;
        if t.validate(g).is_err() || !keep(t) {
            continue;
        }
        let covers = match BagCovers::compute(g, t, &mut builder, RccMode::Exact) {
            Ok(c) => c,
            Err(e @ (CoreError::Budget { .. } | CoreError::Uncoverable { .. })) => {
                warn!("decomposition {} skipped: {e}", nd.name);
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        if best.as_ref().is_none_or(|(_, b)| covers.max_rcc < b.max_rcc) {
            best = Some((t.clone(), covers));
        }
    }
    Ok(best)
}

fn solve(c: &ControllerArgs, g: &Graph, k: usize, budget: u64) -> Result<GameSolution, CliError> {
    match &c.cache {
        Some(dir) => SolutionCache::new(dir).solve(g, k, budget),
        None => Ok(solve_arena(&Arena::full(g), k, budget)?),
    }
}

fn build(common: &Common, c: &ControllerArgs, l: &Loaded) -> Result<Built, CliError> {
    let g = &l.graph;
    if !g.is_connected() {
        return Err(CoreError::InvalidInput("the game needs a connected graph".into()).into());
    }
    let strategy = match (c.strategy, c.cops) {
        (None, Some(k)) => {
            if k == 0 {
                return Err(CliError::Usage("--cops must be positive".into()));
            }
            let sol = Arc::new(solve(c, g, k, common.budget_states)?);
            return Ok(Built {
                controller: Box::new(TableController::new(sol)),
                name: "table".into(),
                decomposition: None,
                bound: None,
                guaranteed: false,
            });
        }
        (s, _) => s.unwrap_or(StrategyKind::Thm1),
    };
    let ds = decompositions(common, l)?;
    let limits = pool_limits(common);
    let built = match strategy {
        StrategyKind::Thm1 => {
            let (t, covers) = best_covers(g, &ds, &limits, |_| true)?
                .ok_or_else(|| CoreError::Config("no usable decomposition".into()))?;
            let (g_t, tr_t) = measure_g_tr(g, &t, &covers.per_bag)?;
            let bound = capture_time_bound(t.centre_and_diameter().1, g_t, tr_t);
            Built {
                controller: Box::new(LeapController::new(g, &t, &covers.per_bag)?),
                name: "thm1".into(),
                decomposition: Some(t),
                bound: Some(bound),
                guaranteed: true,
            }
        }
        StrategyKind::ThmI => {
            let t = match &common.td {
                Some(_) => ds[0].decomposition.clone(),
                None => clique_tree(g).ok_or_else(|| CoreError::Config("graph is not chordal".into()))?,
            };
            Built {
                controller: Box::new(CliqueTreeController::new(g, &t)?),
                name: "thm-i".into(),
                decomposition: Some(t),
                bound: None,
                guaranteed: true,
            }
        }
        StrategyKind::ThmMain2 => {
            let (t, covers) = best_covers(g, &ds, &limits, |t| t.pairwise_clique_intersections(g))?
                .ok_or_else(|| CoreError::Config("no decomposition whose adjacent bags meet in cliques".into()))?;
            Built {
                controller: Box::new(RelayController::new(g, &t, &covers.per_bag)?),
                name: "thm-main2".into(),
                decomposition: Some(t),
                bound: None,
                guaranteed: true,
            }
        }
    };
    if let Some(k) = c.cops {
        if k != built.controller.cop_count() {
            return Err(CliError::Usage(format!(
                "strategy {} uses {} cops, --cops asked for {k}",
                built.name,
                built.controller.cop_count()
            )));
        }
    }
    Ok(built)
}

fn default_max_rounds(b: &Built, n: usize) -> usize {
    match &b.bound {
        Some(r) => (r.applicable() as usize).max(1),
        None => 10 * n + 50,
    }
}

/// Summary plus the exit code it implies.
fn summarise(l: &Loaded, b: &Built, robber: &str, trace: &SimulationTrace, max_rounds: usize, notes: Vec<String>) -> (SimulationSummary, i32) {
    let within_bound = b
        .bound
        .filter(|_| trace.outcome != Outcome::Aborted)
        .map(|r| trace.capture_round.is_some_and(|c| c as u64 <= r.applicable()));
    let reentries = b
        .decomposition
        .as_ref()
        .map(|t| never_reenter_violations(trace, t))
        .unwrap_or_default();
    let failed = b.guaranteed && trace.outcome == Outcome::Timeout || within_bound == Some(false) && trace.outcome == Outcome::Captured || !reentries.is_empty();
    let code = if failed {
        4
    } else if trace.outcome == Outcome::Aborted {
        1
    } else {
        0
    };
    let summary = SimulationSummary {
        graph: l.id.clone(),
        strategy: b.name.clone(),
        cops: b.controller.cop_count(),
        robber: robber.into(),
        outcome: outcome_name(trace.outcome).into(),
        capture_round: trace.capture_round,
        rounds_played: trace.rounds.len().saturating_sub(1),
        max_rounds,
        capture_time_bound: b.bound,
        within_bound,
        reentries,
        notes,
    };
    (summary, code)
}

fn cmd_simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let l = load(&a.common)?;
    let mut b = build(&a.common, &a.controller, &l)?;
    let g = &l.graph;
    let mut notes = Vec::new();
    let mut robber: Box<dyn RobberPolicy> = match a.robber {
        RobberKind::Greedy => Box::new(GreedyRobber),
        RobberKind::Stationary => Box::new(StationaryRobber),
        RobberKind::Random => Box::new(RandomRobber::new(a.common.seed)),
        RobberKind::Optimal => match solve(&a.controller, g, b.controller.cop_count(), a.common.budget_states) {
            Ok(sol) => Box::new(TableRobber::new(Arc::new(sol))),
            Err(CliError::Core(e @ CoreError::Budget { .. })) => {
                notes.push(format!("optimal robber unavailable ({e}); playing greedy"));
                Box::new(GreedyRobber)
            }
            Err(e) => return Err(e),
        },
    };
    let max_rounds = a.controller.max_rounds.map_or_else(|| default_max_rounds(&b, g.n()), |m| m as usize);
    let trace = simulate(g, b.controller.as_mut(), robber.as_mut(), max_rounds)?;
    if let Some(p) = &a.out {
        emit(out, Some(p), &to_jsonl(&trace))?;
    }
    let robber_name = format!("{:?}", a.robber).to_lowercase();
    let (summary, code) = summarise(&l, &b, &robber_name, &trace, max_rounds, notes);
    if a.common.format == Format::Text {
        emit(out, None, &render_trace(&trace, l.grid_shape()))?;
    }
    emit(out, None, &render(&summary, a.common.format))?;
    Ok(code)
}

/// Robber moves typed at the terminal.
struct HumanRobber<'a> {
    input: &'a mut dyn BufRead,
    output: &'a mut dyn Write,
    grid: Option<(usize, usize)>,
    quit: bool,
}

enum Reply {
    Vertex(usize),
    Pass,
    Quit,
    Bad(String),
}

impl HumanRobber<'_> {
    fn ask(&mut self, prompt: &str) -> Reply {
        let _ = write!(self.output, "{prompt}");
        let _ = self.output.flush();
        let mut line = String::new();
        match self.input.read_line(&mut line) {
            Ok(0) | Err(_) => return Reply::Quit,
            Ok(_) => {}
        }
        match line.trim() {
            "" | "p" | "pass" => Reply::Pass,
            "q" | "quit" => Reply::Quit,
            s => s.parse().map_or_else(|_| Reply::Bad(format!("'{s}' is not a vertex")), Reply::Vertex),
        }
    }

    fn show(&mut self, cops: &[usize], robber: Option<usize>) {
        let _ = writeln!(self.output, "cops at {cops:?}");
        if let (Some((r, c)), Some(v)) = (self.grid, robber) {
            let _ = write!(self.output, "{}", render_board(r, c, cops, v));
        }
    }
}

impl RobberPolicy for HumanRobber<'_> {
    fn place(&mut self, g: &Graph, cops: &[usize]) -> usize {
        self.show(cops, None);
        loop {
            match self.ask(&format!("start vertex (0..{}): ", g.n() - 1)) {
                Reply::Vertex(v) if v < g.n() => return v,
                Reply::Vertex(v) => {
                    let _ = writeln!(self.output, "no vertex {v}");
                }
                Reply::Bad(m) => {
                    let _ = writeln!(self.output, "{m}");
                }
                Reply::Pass => {
                    let _ = writeln!(self.output, "pick a starting vertex");
                }
                Reply::Quit => {
                    self.quit = true;
                    return GreedyRobber.place(g, cops);
                }
            }
        }
    }

    fn step(&mut self, g: &Graph, cops: &[usize], robber: usize) -> Option<usize> {
        if self.quit {
            return None;
        }
        self.show(cops, Some(robber));
        let _ = writeln!(self.output, "you are at {robber}; moves: pass or {:?}", g.neighbors(robber));
        loop {
            match self.ask("move: ") {
                Reply::Pass => return Some(robber),
                Reply::Vertex(v) if g.adjacent_or_equal(robber, v) && v < g.n() => return Some(v),
                Reply::Vertex(v) => {
                    let _ = writeln!(self.output, "{v} is not adjacent to {robber}");
                }
                Reply::Bad(m) => {
                    let _ = writeln!(self.output, "{m}");
                }
                Reply::Quit => {
                    self.quit = true;
                    return None;
                }
            }
        }
    }
}

fn cmd_play(a: &PlayArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<i32, CliError> {
    let l = load(&a.common)?;
    let mut b = build(&a.common, &a.controller, &l)?;
    let g = &l.graph;
    let max_rounds = a.controller.max_rounds.map_or(1000, |m| m as usize);
    let _ = writeln!(out, "{} cops ({}) on {}; enter a vertex, 'pass' or 'quit'", b.controller.cop_count(), b.name, l.id);
    let trace = {
        let mut human = HumanRobber {
            input,
            output: out,
            grid: l.grid_shape(),
            quit: false,
        };
        simulate(g, b.controller.as_mut(), &mut human, max_rounds)?
    };
    if let Some(p) = &a.out {
        emit(out, Some(p), &to_jsonl(&trace))?;
    }
    let (summary, code) = summarise(&l, &b, "human", &trace, max_rounds, Vec::new());
    emit(out, None, &render(&summary, a.common.format))?;
    Ok(code)
}
