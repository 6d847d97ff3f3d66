use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use decograph::crystal::{
    compare_dg_crystal, generate_crystal_graph, relabel, PChoice, DEFAULT_CRYSTAL_CAP,
};
use decograph::fixtures::{fixture_names, ratio_fixture, replay, replay_ratio, word_fixture};
use decograph::graph::{build_decoration_graph, BuildLimits};
use decograph::root_data::RootDatum;
use decograph::strategy::{StrategyRegistry, DEFAULT_POLICY};
use decograph::tropical::{binfinity_cone, ConeOptions};
use decograph::verify::{verify_instance, verify_random};
use decograph::word::{random_words, ReducedWord};
use decograph::{Error, ErrorClass};

#[derive(Parser)]
#[command(
    name = "decograph",
    version,
    about = "Decoration graphs, generalized minors and B(infinity) cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minor for one node.
    Minor(NodeArgs),
    /// Build the decoration graph for one node.
    Graph(NodeArgs),
    /// Assemble the cone from the minors of every node.
    Cone(ConeArgs),
    /// Compare the graph with the trail oracle.
    Verify(VerifyArgs),
    /// Compare the graph with the monomial-realization crystal.
    CrystalCompare(CrystalArgs),
    /// Reduced words of w0 reached by random braid moves.
    RandomWords(RandomArgs),
    /// Recompute the stored worked examples.
    Fixtures(FixtureArgs),
}

#[derive(Args)]
struct FixtureArgs {
    /// One fixture by name; all of them by default.
    name: Option<String>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PStyle {
    /// p_{j,l} = 1 when the {j,l}-subword starts with j.
    Word,
    /// p_{j,l} = 1 when j < l.
    LowerFirst,
}

#[derive(Args)]
struct Common {
    /// Lie type and rank, e.g. A3 or E6.
    #[arg(long = "type")]
    lie_type: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Run the graph algorithm on non-minuscule nodes of non-adapted words.
    #[arg(long)]
    force: bool,
    /// Round cap; overrides DECOGRAPH_MAX_ROUNDS.
    #[arg(long)]
    max_rounds: Option<usize>,
}

#[derive(Args)]
struct NodeArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated reduced word of w0.
    #[arg(long)]
    word: String,
    #[arg(long = "i")]
    node: usize,
    /// Minor strategy; by default the first applicable of decoration-graph, terminal-letter.
    #[arg(long)]
    method: Option<String>,
}

#[derive(Args)]
struct ConeArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    word: String,
    /// Comma-separated strategy order.
    #[arg(long)]
    method: Option<String>,
    /// Test membership of this integer point.
    #[arg(long, allow_hyphen_values = true)]
    point: Option<String>,
    /// Drop repeated inequality vectors.
    #[arg(long)]
    dedup: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Verify this word only; otherwise random words are drawn.
    #[arg(long)]
    word: Option<String>,
    #[arg(long = "i")]
    node: Option<usize>,
    #[arg(long, default_value_t = 50)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 40)]
    moves: usize,
}

#[derive(Args)]
struct CrystalArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    word: String,
    #[arg(long = "i")]
    node: usize,
    #[arg(long, value_enum, default_value_t = PStyle::Word)]
    p: PStyle,
    #[arg(long, default_value_t = DEFAULT_CRYSTAL_CAP)]
    cap: usize,
}

#[derive(Args)]
struct RandomArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 40)]
    moves: usize,
}

enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type CliResult<T> = Result<T, CliError>;

impl Common {
    fn datum(&self) -> CliResult<RootDatum> {
        Ok(self.lie_type.parse()?)
    }

    fn limits(&self) -> BuildLimits {
        let mut limits = BuildLimits::from_env(self.force);
        if self.max_rounds.is_some() {
            limits.max_rounds = self.max_rounds;
        }
        limits
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        let mut body = text.to_string();
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &self.output {
            Some(path) => fs::write(path, body)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
            None => {
                let _ = std::io::stdout().write_all(body.as_bytes());
                Ok(())
            }
        }
    }

    fn reject_dot(&self) -> CliResult<()> {
        if self.format == Format::Dot {
            return Err(CliError::Usage(
                "dot output is only available for graphs".into(),
            ));
        }
        Ok(())
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json renders")
}

fn policy(method: &Option<String>) -> Vec<String> {
    match method {
        Some(m) => m.split(',').map(|s| s.trim().to_string()).collect(),
        None => DEFAULT_POLICY.iter().map(|s| s.to_string()).collect(),
    }
}

fn minor(args: &NodeArgs) -> CliResult<()> {
    let c = &args.common;
    c.reject_dot()?;
    let word = ReducedWord::parse(&c.datum()?, &args.word)?;
    let registry = StrategyRegistry::default();
    let names = policy(&args.method);
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let strategy = registry.resolve(&word, args.node, &names, c.force)?;
    let out = strategy.compute(&word, args.node, c.limits())?;
    let monomials: Vec<String> = out.support.iter().map(|m| m.to_string()).collect();
    let text = match &out.polynomial {
        Some(p) => p.to_string(),
        None => format!(
            "{}    [monomial set only, {}]",
            monomials.join(" + "),
            out.provenance
        ),
    };
    match c.format {
        Format::Json => c.emit(&pretty(&json!({
            "i": args.node,
            "strategy": out.strategy,
            "provenance": out.provenance,
            "polynomial": out.polynomial.as_ref().map(|p| p.to_string()),
            "monomials": monomials,
        }))),
        _ => c.emit(&text),
    }
}

fn graph(args: &NodeArgs) -> CliResult<()> {
    let c = &args.common;
    let word = ReducedWord::parse(&c.datum()?, &args.word)?;
    let dg = build_decoration_graph(&word, args.node, c.limits())?;
    match c.format {
        Format::Json => c.emit(&pretty(&dg.to_json())),
        Format::Dot => c.emit(&dg.to_dot()),
        Format::Text => {
            let s = dg.summary();
            let mut out = format!(
                "{} vertices, {} edges, {} rounds, source {}, sink {}\n",
                s.vertices, s.edges, s.rounds, s.source, s.sink
            );
            let verts = dg.vertices();
            for e in dg.edges() {
                out.push_str(&format!(
                    "{} -{}-> {}\n",
                    verts[e.src], e.label, verts[e.dst]
                ));
            }
            c.emit(&out)
        }
    }
}

fn cone(args: &ConeArgs) -> CliResult<()> {
    let c = &args.common;
    c.reject_dot()?;
    let word = ReducedWord::parse(&c.datum()?, &args.word)?;
    let options = ConeOptions {
        policy: policy(&args.method),
        limits: c.limits(),
        dedup: args.dedup,
    };
    let cone = binfinity_cone(&word, &StrategyRegistry::default(), &options)?;
    let membership = match &args.point {
        Some(p) => {
            let z = p
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| CliError::Usage(format!("cannot parse point {p:?}")))?;
            Some(cone.contains(&z)?)
        }
        None => None,
    };
    match c.format {
        Format::Json => {
            let mut v = cone.to_json();
            if let Some(m) = &membership {
                v["membership"] = serde_json::to_value(m).expect("membership serializes");
            }
            c.emit(&pretty(&v))
        }
        _ => {
            let mut text = cone.to_text();
            if let Some(m) = &membership {
                if m.contained {
                    text.push_str("point is in the cone\n");
                } else {
                    text.push_str(&format!(
                        "point violates {} inequalities:\n",
                        m.violated.len()
                    ));
                    for &k in &m.violated {
                        let q = &cone.inequalities[k];
                        text.push_str(&format!(
                            "  {}\n",
                            decograph::tropical::render_linear_form(&q.d)
                        ));
                    }
                }
            }
            c.emit(&text)
        }
    }
}

fn verify(args: &VerifyArgs) -> CliResult<()> {
    let c = &args.common;
    c.reject_dot()?;
    let datum = c.datum()?;
    let nodes: Vec<usize> = match args.node {
        Some(n) => vec![n],
        None => datum.minuscule_nodes(),
    };
    match &args.word {
        Some(text) => {
            let word = ReducedWord::parse(&datum, text)?;
            let mut reports = Vec::new();
            for &node in &nodes {
                reports.push(verify_instance(&word, node, c.limits())?.into_result()?);
            }
            match c.format {
                Format::Json => c.emit(&pretty(
                    &serde_json::to_value(&reports).expect("reports serialize"),
                )),
                _ => {
                    let lines: Vec<String> = reports
                        .iter()
                        .map(|r| format!("OK: {} monomials, DG == oracle", r.vertices))
                        .collect();
                    c.emit(&lines.join("\n"))
                }
            }
        }
        None => {
            let mut reports = Vec::new();
            for &node in &nodes {
                reports.push(verify_random(
                    &datum,
                    node,
                    args.count,
                    args.seed,
                    args.moves,
                    c.limits(),
                )?);
            }
            match c.format {
                Format::Json => c.emit(&pretty(
                    &serde_json::to_value(&reports).expect("reports serialize"),
                )),
                _ => {
                    let lines: Vec<String> = reports
                        .iter()
                        .map(|r| {
                            format!(
                                "OK: {} i={}: {} words ({} distinct), DG == oracle",
                                r.datum, r.node, r.words, r.distinct_words
                            )
                        })
                        .collect();
                    c.emit(&lines.join("\n"))
                }
            }
        }
    }
}

fn crystal_compare(args: &CrystalArgs) -> CliResult<()> {
    let c = &args.common;
    let datum = c.datum()?;
    let word = ReducedWord::parse(&datum, &args.word)?;
    let p = match args.p {
        PStyle::Word => PChoice::from_word(&word),
        PStyle::LowerFirst => PChoice::lower_first(&datum),
    };
    let dg = build_decoration_graph(
        &word,
        args.node,
        BuildLimits {
            force: true,
            ..c.limits()
        },
    )?;
    match c.format {
        Format::Dot => {
            let crystal =
                generate_crystal_graph(&datum, &p, &relabel(&word, dg.source()), args.cap)?;
            c.emit(&crystal.to_dot())
        }
        Format::Json => {
            let report = compare_dg_crystal(&dg, &p, args.cap)?;
            c.emit(&pretty(
                &serde_json::to_value(&report).expect("report serializes"),
            ))
        }
        Format::Text => {
            let r = compare_dg_crystal(&dg, &p, args.cap)?;
            let mut out = format!(
                "highest {} (B(Lambda_{})), crystal {} vertices, graph {} vertices\n",
                r.highest, r.highest_weight_node, r.crystal_size, r.dg_size
            );
            out.push_str(&format!(
                "containment: {}{}\n",
                if r.contained { "yes" } else { "no" },
                if r.missing.is_empty() {
                    String::new()
                } else {
                    format!(", missing {}", r.missing.join(", "))
                }
            ));
            out.push_str(&format!(
                "crystal minus graph: {}\n",
                if r.extra.is_empty() {
                    "none".into()
                } else {
                    r.extra.join(", ")
                }
            ));
            out.push_str(&format!(
                "colors: {} of {} edges consistent\n",
                r.consistent_edges,
                r.consistent_edges + r.color_mismatches.len()
            ));
            c.emit(&out)
        }
    }
}

fn random(args: &RandomArgs) -> CliResult<()> {
    let c = &args.common;
    c.reject_dot()?;
    let words = random_words(&c.datum()?, args.count, args.moves, args.seed);
    let rendered: Vec<String> = words.iter().map(|w| w.to_string()).collect();
    match c.format {
        Format::Json => c.emit(&pretty(&json!(rendered))),
        _ => c.emit(&rendered.join("\n")),
    }
}

impl CliError {
    fn code(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.code(),
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Validation => 2,
                ErrorClass::Algorithm => 3,
                ErrorClass::Mismatch => 4,
            },
            CliError::Usage(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

fn replay_fixtures(args: &FixtureArgs) -> CliResult<()> {
    let names: Vec<&str> = match &args.name {
        Some(n) => vec![n.as_str()],
        None => fixture_names(),
    };
    let mut reports = Vec::new();
    for name in names {
        reports.push(replay(&word_fixture(name)?)?);
    }
    if args.name.is_none() {
        reports.push(replay_ratio(&ratio_fixture()?)?);
    }
    let mut lines = Vec::new();
    for r in &reports {
        if !r.passed() {
            return Err(Error::VerificationMismatch {
                word: r.name.clone(),
                reason: r.failures().join(" | "),
            }
            .into());
        }
        lines.push(format!("OK: {} ({} checks)", r.name, r.checks.len()));
    }
    let text = lines.join("\n") + "\n";
    match &args.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Minor(a) => minor(a),
        Command::Graph(a) => graph(a),
        Command::Cone(a) => cone(a),
        Command::Verify(a) => verify(a),
        Command::CrystalCompare(a) => crystal_compare(a),
        Command::RandomWords(a) => random(a),
        Command::Fixtures(a) => replay_fixtures(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = json!({"error": {"code": e.code(), "message": e.message()}});
            eprintln!("{body}");
            ExitCode::from(e.exit_code())
        }
    }
}
