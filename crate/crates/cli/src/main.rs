use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ratchip::complete::is_k_stable;
use ratchip::group::{self, canonical_rep, legal_move_sequence};
use ratchip::model::{
    all_k_stabilizations, borrow_general, cluster_fire, k_stabilize_general, DEFAULT_BUDGET,
};
use ratchip::paths::{binomial, enumerate_dyck, enumerate_k_skeletal, rational_catalan};
use ratchip::render::{ascii_labeled, ascii_path, svg_labeled, svg_path};
use ratchip::skeletal::{dual_config, find_k_skeletal_config_with, BorrowRule};
use ratchip::verify::verify;
use ratchip::{
    is_k_skeletal_config, lpath, superstabilize, ChipConfig, Error, GeneralParams, LabeledPath,
    LatticePath, MoveKind, RatParams, RenderOptions, SinkedGraph, Strategy, VertexSet,
};

/// Quantized rational chip-firing.
#[derive(Parser)]
#[command(name = "ratchip", version)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Slope {
    #[arg(long)]
    a: i64,
    #[arg(long)]
    b: i64,
}

#[derive(Args)]
struct Graph {
    /// Graph file; without it the complete graph on b vertices is used.
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Chips sent to the sink per firing vertex.
    #[arg(long, default_value_t = 1)]
    c: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster-fire a set of vertices.
    Fire(MoveArgs),
    /// Borrow by a set of vertices.
    Borrow(MoveArgs),
    /// Run a k-stabilization.
    Stabilize(StabilizeArgs),
    /// Find the k-skeletal configuration equivalent to a configuration.
    Skeletal(SkeletalArgs),
    /// The superstable configuration equivalent to a configuration.
    Superstabilize(ConfigArgs),
    /// Map a superstable configuration to its 0-skeletal dual.
    Dual(ConfigArgs),
    /// Count paths, configurations or classes.
    Count(CountArgs),
    /// List paths or configurations, one per line.
    Enumerate(CountArgs),
    /// Critical group arithmetic.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Draw a path.
    Render(RenderArgs),
    /// Compare the fast predicates with the brute-force oracles.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct MoveArgs {
    #[command(flatten)]
    slope: Slope,
    #[command(flatten)]
    graph: Graph,
    #[arg(long, allow_hyphen_values = true)]
    config: String,
    /// Vertices, e.g. `1,3` or `{1,3}`.
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct StabilizeArgs {
    #[command(flatten)]
    slope: Slope,
    #[command(flatten)]
    graph: Graph,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    config: String,
    /// greedy-max, lex-min or random:SEED.
    #[arg(long, default_value = "greedy-max")]
    strategy: String,
    /// Also print the fired sets.
    #[arg(long)]
    trace: bool,
    /// Print every reachable k-stabilization instead.
    #[arg(long)]
    all: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

#[derive(Args)]
struct SkeletalArgs {
    #[command(flatten)]
    slope: Slope,
    #[arg(long)]
    k: usize,
    #[arg(long, allow_hyphen_values = true)]
    config: String,
    /// Only test whether the configuration is k-skeletal.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct ConfigArgs {
    #[command(flatten)]
    slope: Slope,
    #[arg(long, allow_hyphen_values = true)]
    config: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    /// Orbits of k-skeletal configurations under permuting vertices.
    Orbits,
    Dyck,
    Paths,
    SkeletalPaths,
    SkeletalConfigs,
    Superstable,
    Classes,
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    slope: Slope,
    #[arg(long, value_enum)]
    what: What,
    #[arg(long, default_value_t = 0)]
    k: usize,
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Canonical representative (last entry 0).
    Canon(ConfigArgs),
    /// Sum of two classes.
    Add(GroupPair),
    /// Whether two configurations are equivalent.
    Equiv(GroupPair),
    /// A legal fire/borrow sequence between equivalent configurations.
    Trace(GroupPair),
}

#[derive(Args)]
struct GroupPair {
    #[command(flatten)]
    slope: Slope,
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    a: Option<i64>,
    #[arg(long)]
    b: Option<i64>,
    /// A step string such as NENEENNEENEEE, or a labeled one such as N(2)EEN(1)N(3)EE.
    #[arg(long, conflicts_with = "config")]
    path: Option<String>,
    /// Draw the labeled path of this configuration (needs --a and --b).
    #[arg(long)]
    config: Option<String>,
    #[arg(long, value_enum, default_value = "ascii")]
    format: Format,
    #[arg(long)]
    levels: bool,
    #[arg(long)]
    labels: bool,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    slope: Slope,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
}

struct Output {
    text: String,
    json: Value,
    note: Option<String>,
    failed: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            note: None,
            failed: false,
        }
    }
}

fn config_json(d: &ChipConfig) -> Value {
    json!(d.counts())
}

fn set_json(s: &VertexSet) -> Value {
    json!(s.vertices())
}

fn params(s: &Slope) -> ratchip::Result<RatParams> {
    RatParams::new(s.a, s.b)
}

fn general(s: &Slope, g: &Graph) -> ratchip::Result<(SinkedGraph, GeneralParams)> {
    let p = GeneralParams::new(s.a, s.b, g.c)?;
    let graph = match &g.graph {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Error::InvalidGraph(format!("{}: {e}", path.display())))?;
            SinkedGraph::parse(&text)?
        }
        None => {
            let n = usize::try_from(s.b)
                .map_err(|_| Error::InvalidParams("b must be positive".into()))?;
            SinkedGraph::complete(n)?
        }
    };
    Ok((graph, p))
}

fn run_move(args: &MoveArgs, borrow: bool) -> ratchip::Result<Output> {
    let d: ChipConfig = args.config.parse()?;
    let set: VertexSet = args.set.parse()?;
    let (g, p) = general(&args.slope, &args.graph)?;
    let result = if borrow {
        borrow_general(&g, &p, &d, &set)?
    } else {
        cluster_fire(&g, &p, &d, &set)?
    };
    let legal = result.is_nonnegative();
    let mut out = Output::new(
        result.to_string(),
        json!({ "config": config_json(&result), "legal": legal }),
    );
    if !legal {
        out.note = Some("note: the move is not legal (a count went negative)".into());
    }
    Ok(out)
}

fn run_stabilize(args: &StabilizeArgs) -> ratchip::Result<Output> {
    let d: ChipConfig = args.config.parse()?;
    let strategy: Strategy = args.strategy.parse()?;
    let (g, p) = general(&args.slope, &args.graph)?;
    if args.all {
        let all = all_k_stabilizations(&g, &p, &d, args.k, args.budget)?;
        let text: Vec<String> = all.iter().map(ToString::to_string).collect();
        let list: Vec<Value> = all.iter().map(config_json).collect();
        return Ok(Output::new(
            text.join("\n"),
            json!({ "stabilizations": list }),
        ));
    }
    let st = k_stabilize_general(&g, &p, &d, args.k, strategy)?;
    let mut text = st.config.to_string();
    if args.trace {
        for s in &st.trace {
            text.push_str(&format!("\nfire {s}"));
        }
    }
    let trace: Vec<Value> = st.trace.iter().map(set_json).collect();
    let mut out = Output::new(
        text,
        json!({ "config": config_json(&st.config), "strategy": strategy.to_string(), "trace": trace }),
    );
    out.note = Some(format!("strategy: {strategy}"));
    Ok(out)
}

fn run_skeletal(args: &SkeletalArgs) -> ratchip::Result<Output> {
    let p = params(&args.slope)?;
    let d: ChipConfig = args.config.parse()?;
    if args.check {
        d.require_nonnegative()?;
        let answer = is_k_skeletal_config(&p, &d, args.k)?;
        return Ok(Output::new(
            answer.to_string(),
            json!({ "skeletal": answer }),
        ));
    }
    let found = find_k_skeletal_config_with(&p, &d, args.k, BorrowRule::Smallest)?;
    let borrows: Vec<Value> = found.borrows.iter().map(set_json).collect();
    Ok(Output::new(
        found.config.to_string(),
        json!({ "config": config_json(&found.config), "borrows": borrows }),
    ))
}

fn run_config_map(args: &ConfigArgs, dual: bool) -> ratchip::Result<Output> {
    let p = params(&args.slope)?;
    let d: ChipConfig = args.config.parse()?;
    let result = if dual {
        dual_config(&p, &d)?
    } else {
        superstabilize(&p, &d)?
    };
    Ok(Output::new(
        result.to_string(),
        json!({ "config": config_json(&result) }),
    ))
}

fn all_configs(p: &RatParams) -> ratchip::Result<impl Iterator<Item = ChipConfig>> {
    let n = p.n() as u32;
    let total = (p.a() as u128)
        .checked_pow(n)
        .filter(|&t| t <= DEFAULT_BUDGET as u128)
        .ok_or(Error::BudgetExceeded {
            budget: DEFAULT_BUDGET,
            explored: 0,
            frontier: 0,
        })?;
    let a = p.a();
    Ok((0..total as i64).map(move |mut code| {
        let mut v = Vec::with_capacity(n as usize);
        for _ in 0..n {
            v.push(code % a);
            code /= a;
        }
        v.reverse();
        ChipConfig::new(v)
    }))
}

fn check_k(p: &RatParams, k: usize) -> ratchip::Result<()> {
    if k >= p.n() {
        return Err(Error::KOutOfRange { k, n: p.n() });
    }
    Ok(())
}

/// The listed objects for `enumerate`, as display strings and JSON values.
fn listing(p: &RatParams, what: What, k: usize) -> ratchip::Result<Vec<(String, Value)>> {
    let path = |q: LatticePath| (q.to_string(), json!(q.to_string()));
    let config = |d: ChipConfig| (d.to_string(), config_json(&d));
    Ok(match what {
        What::Dyck => enumerate_dyck(p).map(path).collect(),
        What::Paths => ratchip::paths::all_paths(p.a(), p.b()).map(path).collect(),
        What::SkeletalPaths => {
            check_k(p, k)?;
            enumerate_k_skeletal(p, k)?.map(path).collect()
        }
        What::SkeletalConfigs => {
            check_k(p, k)?;
            let mut out = Vec::new();
            for d in all_configs(p)? {
                if is_k_skeletal_config(p, &d, k)? {
                    out.push(config(d));
                }
            }
            out
        }
        What::Superstable => {
            let mut out = Vec::new();
            for d in all_configs(p)? {
                if is_k_stable(p, &d, p.n() - 1)? {
                    out.push(config(d));
                }
            }
            out
        }
        What::Orbits => {
            check_k(p, k)?;
            let mut out = Vec::new();
            for d in all_configs(p)? {
                let sorted = d.counts().windows(2).all(|w| w[0] >= w[1]);
                if sorted && is_k_skeletal_config(p, &d, k)? {
                    out.push(config(d));
                }
            }
            out
        }
        What::Classes => group::all_elements(p)?
            .into_iter()
            .map(|x| (x.to_string(), config_json(x.rep())))
            .collect(),
    })
}

fn run_count(args: &CountArgs) -> ratchip::Result<Output> {
    let p = params(&args.slope)?;
    let count: u128 = match args.what {
        What::Orbits | What::Dyck => rational_catalan(&p)?,
        What::Paths => binomial((p.a() + p.b()) as u64, p.b() as u64)?,
        What::SkeletalPaths => {
            check_k(&p, args.k)?;
            rational_catalan(&p)?
        }
        What::SkeletalConfigs | What::Superstable | What::Classes => {
            if let What::SkeletalConfigs = args.what {
                check_k(&p, args.k)?;
            }
            p.group_order()?
        }
    };
    Ok(Output::new(
        count.to_string(),
        json!({ "count": count.to_string() }),
    ))
}

fn run_enumerate(args: &CountArgs) -> ratchip::Result<Output> {
    let p = params(&args.slope)?;
    let items = listing(&p, args.what, args.k)?;
    let text: Vec<String> = items.iter().map(|i| i.0.clone()).collect();
    let values: Vec<Value> = items.into_iter().map(|i| i.1).collect();
    Ok(Output::new(text.join("\n"), json!({ "items": values })))
}

fn run_group(cmd: &GroupCommand) -> ratchip::Result<Output> {
    match cmd {
        GroupCommand::Canon(args) => {
            let p = params(&args.slope)?;
            let x = canonical_rep(&p, &args.config.parse()?)?;
            Ok(Output::new(
                x.to_string(),
                json!({ "rep": config_json(x.rep()) }),
            ))
        }
        GroupCommand::Add(args) => {
            let p = params(&args.slope)?;
            let x = canonical_rep(&p, &args.x.parse()?)?;
            let y = canonical_rep(&p, &args.y.parse()?)?;
            let z = group::add(&x, &y)?;
            Ok(Output::new(
                z.to_string(),
                json!({ "rep": config_json(z.rep()) }),
            ))
        }
        GroupCommand::Equiv(args) => {
            let p = params(&args.slope)?;
            let same = group::equivalent(&p, &args.x.parse()?, &args.y.parse()?)?;
            Ok(Output::new(same.to_string(), json!({ "equivalent": same })))
        }
        GroupCommand::Trace(args) => {
            let p = params(&args.slope)?;
            let x: ChipConfig = args.x.parse()?;
            let moves = legal_move_sequence(&p, &x, &args.y.parse()?)?;
            let text: Vec<String> = moves.iter().map(ToString::to_string).collect();
            let values: Vec<Value> = moves
                .iter()
                .map(|m| {
                    let kind = match m.kind {
                        MoveKind::Fire => "fire",
                        MoveKind::Borrow => "borrow",
                    };
                    json!({ "kind": kind, "set": set_json(&m.set) })
                })
                .collect();
            Ok(Output::new(text.join("\n"), json!({ "moves": values })))
        }
    }
}

fn run_render(args: &RenderArgs) -> ratchip::Result<Output> {
    let opts = RenderOptions {
        labels: args.labels,
        levels: args.levels,
    };
    let svg = matches!(args.format, Format::Svg);
    let slope = || -> ratchip::Result<RatParams> {
        match (args.a, args.b) {
            (Some(a), Some(b)) => RatParams::new(a, b),
            _ => Err(Error::Parse("--a and --b are required here".into())),
        }
    };
    let drawing = match (&args.path, &args.config) {
        (Some(s), None) if s.contains('(') => {
            let p = slope()?;
            let q = LabeledPath::parse(p.a(), p.b(), s)?;
            labeled_drawing(&q, svg, opts)
        }
        (Some(s), None) => {
            let q = match (args.a, args.b) {
                (Some(_), Some(_)) => LatticePath::parse_for(&slope()?, s)?,
                _ => LatticePath::parse(s)?,
            };
            if svg {
                svg_path(&q, opts)
            } else {
                ascii_path(&q, opts)
            }
        }
        (None, Some(c)) => {
            let p = slope()?;
            let q = lpath(&p, &c.parse()?)?;
            labeled_drawing(&q, svg, opts)
        }
        _ => return Err(Error::Parse("give one of --path or --config".into())),
    };
    match &args.output {
        Some(file) => {
            fs::write(file, &drawing)
                .map_err(|e| Error::Precondition(format!("{}: {e}", file.display())))?;
            Ok(Output::new(
                format!("wrote {}", file.display()),
                json!({ "output": file.display().to_string() }),
            ))
        }
        None => Ok(Output::new(
            drawing.trim_end(),
            json!({ "drawing": drawing }),
        )),
    }
}

fn labeled_drawing(q: &LabeledPath, svg: bool, opts: RenderOptions) -> String {
    if svg {
        svg_labeled(q, opts)
    } else {
        ascii_labeled(q, opts)
    }
}

fn run_verify(args: &VerifyArgs) -> ratchip::Result<Output> {
    let p = params(&args.slope)?;
    let report = verify(&p, args.budget)?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "cases": c.cases,
                "mismatches": c.mismatches,
                "examples": c.examples,
            })
        })
        .collect();
    let mut out = Output::new(
        report.to_string().trim_end(),
        json!({ "a": p.a(), "b": p.b(), "passed": report.passed(), "checks": checks }),
    );
    out.failed = !report.passed();
    Ok(out)
}

fn run(cli: &Cli) -> ratchip::Result<Output> {
    match &cli.command {
        Command::Fire(args) => run_move(args, false),
        Command::Borrow(args) => run_move(args, true),
        Command::Stabilize(args) => run_stabilize(args),
        Command::Skeletal(args) => run_skeletal(args),
        Command::Superstabilize(args) => run_config_map(args, false),
        Command::Dual(args) => run_config_map(args, true),
        Command::Count(args) => run_count(args),
        Command::Enumerate(args) => run_enumerate(args),
        Command::Group(cmd) => run_group(cmd),
        Command::Render(args) => run_render(args),
        Command::Verify(args) => run_verify(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(note) = &out.note {
                if !cli.json {
                    eprintln!("{note}");
                }
            }
            if cli.json {
                println!("{}", out.json);
            } else if !out.text.is_empty() {
                println!("{}", out.text);
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_parse() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
