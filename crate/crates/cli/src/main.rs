use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use dwd_core::graph::export::{export_graph, write_stats_json, ExportFormat};
use dwd_core::graph::{enumerate, hamiltonian_cycle, is_hamiltonian_cycle, EnumerateOptions, GraphError};
use dwd_core::laurent::minor_name;
use dwd_core::oracle::{oracle_check_all, oracle_check_sampled};
use dwd_core::positivity::{
    express_minor, identity_check_classes, identity_check_sampled, verify_conjecture, MinorId, PositivityError, Scope,
    VerifyOptions,
};
use dwd_core::wiring::{chamber_labels, standard_word, Word};
use dwd_core::{GraphStats, LabelSet, MAX_STRINGS};

/// `println!` that ends the process quietly when stdout is a closed pipe.
macro_rules! say {
    ($($arg:tt)*) => {
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(e.into());
        }
    };
}

/// A bad combination of arguments; exits with status 2.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Parser)]
#[command(name = "dwd", version, about = "Braid-move graphs of double wiring diagrams and chamber-minor positivity")]
struct Cli {
    /// Worker threads for enumeration and verification.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    threads: u16,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Memory budget in bytes for exact enumeration.
    #[arg(long, global = true, env = "DWD_MEM_BUDGET")]
    mem_budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every commutation class and print the graph statistics as JSON.
    Enumerate(EnumerateArgs),
    /// Print vertex, edge and degree counts as a table.
    Stats(GraphArgs),
    /// Write the class graph to files.
    Export(ExportArgs),
    /// Search for a Hamiltonian cycle.
    Hamiltonian(HamiltonianArgs),
    /// Express one minor in the chamber minors of a diagram.
    Express(ExpressArgs),
    /// Check that every minor is a positive Laurent polynomial in chamber minors.
    Verify(VerifyArgs),
    /// Compare quiver move detection with the word-level move finder.
    OracleCheck(SampleArgs),
    /// Expand exchange relations symbolically in the matrix entries.
    IdentityCheck(SampleArgs),
}

fn strings_parser() -> clap::builder::RangedU64ValueParser<usize> {
    clap::builder::RangedU64ValueParser::<usize>::new().range(2..=MAX_STRINGS as u64)
}

#[derive(Args)]
struct GraphArgs {
    /// Number of strings of each color.
    #[arg(short, value_parser = strings_parser())]
    n: usize,
    /// Deduplicate by 128-bit fingerprint (n >= 5).
    #[arg(long)]
    fingerprint: bool,
    /// Checkpoint file, written every level and resumed from if present.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Required for n >= 5.
    #[arg(long)]
    confirm_long: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Dot,
    Json,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Edgelist => ExportFormat::EdgeList,
            Format::Dot => ExportFormat::Dot,
            Format::Json => ExportFormat::StatsJson,
        }
    }
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Also write the graph here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    format: Format,
}

#[derive(Args)]
struct HamiltonianArgs {
    #[arg(short, value_parser = clap::value_parser!(u64).range(2..=4))]
    n: u64,
    /// Search-node budget.
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
}

#[derive(Args)]
struct ExpressArgs {
    #[arg(short, value_parser = strings_parser())]
    n: usize,
    /// Base diagram as letters (`R1 B2 ...`) or a file holding them;
    /// defaults to the standard word.
    #[arg(long)]
    word: Option<String>,
    /// Target minor as `rows|cols`, e.g. `14|12`.
    #[arg(long)]
    minor: String,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(short, value_parser = clap::value_parser!(u64).range(2..=5))]
    n: u64,
    /// Check this many random classes instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also evaluate every expression on a random totally positive matrix.
    #[arg(long)]
    numeric: bool,
    /// Required for the full n = 4 run.
    #[arg(long)]
    confirm_long: bool,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(short, value_parser = clap::value_parser!(u64).range(2..=5))]
    n: u64,
    /// Number of random classes (oracle-check) or moves (identity-check);
    /// defaults to everything for n <= 3, otherwise 1000 and 100.
    #[arg(long)]
    sample: Option<usize>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<UsageError>() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    match &cli.command {
        Command::Enumerate(a) => cmd_enumerate(cli, a),
        Command::Stats(a) => cmd_stats(cli, a),
        Command::Export(a) => cmd_export(cli, a),
        Command::Hamiltonian(a) => cmd_hamiltonian(cli, a),
        Command::Express(a) => cmd_express(a),
        Command::Verify(a) => cmd_verify(cli, a),
        Command::OracleCheck(a) => cmd_oracle(cli, a),
        Command::IdentityCheck(a) => cmd_identity(cli, a),
    }
}

fn enumerate_options(cli: &Cli, a: &GraphArgs, build_graph: bool) -> anyhow::Result<EnumerateOptions> {
    if a.n >= 5 && !a.confirm_long {
        return Err(usage(format!(
            "enumerating n = {} takes minutes and gigabytes; pass --confirm-long (and --fingerprint)",
            a.n
        )));
    }
    let interrupt = Arc::new(AtomicBool::new(false));
    let flag = interrupt.clone();
    if let Err(e) = ctrlc::set_handler(move || flag.store(true, Ordering::SeqCst)) {
        log::warn!("no interrupt handler: {e}");
    }
    Ok(EnumerateOptions {
        threads: cli.threads as usize,
        fingerprint: a.fingerprint,
        checkpoint: a.checkpoint.clone(),
        memory_budget: cli.mem_budget,
        build_graph: build_graph && !(a.fingerprint && a.n >= 5),
        seed: None,
        interrupt: Some(interrupt),
    })
}

fn run_enumeration(cli: &Cli, a: &GraphArgs, build_graph: bool) -> anyhow::Result<dwd_core::Enumeration> {
    let opts = enumerate_options(cli, a, build_graph)?;
    enumerate(a.n, &opts).map_err(|e| match e {
        GraphError::FingerprintModeRequired { .. } | GraphError::UnsupportedStrings(_) => usage(e.to_string()),
        GraphError::Interrupted(level) => match &a.checkpoint {
            Some(p) => anyhow::anyhow!("interrupted after level {level}; resume with --checkpoint {}", p.display()),
            None => anyhow::anyhow!("interrupted after level {level}"),
        },
        other => other.into(),
    })
}

fn edge_note(stats: &GraphStats) {
    eprintln!(
        "note: degree_sum = {} counts each edge from both ends, undirected_edges = {} counts it once; \
         the familiar edge totals 120, 33300 and 60930112 for n = 3, 4, 5 are degree sums.",
        stats.degree_sum, stats.undirected_edges
    );
}

fn cmd_enumerate(cli: &Cli, a: &EnumerateArgs) -> anyhow::Result<ExitCode> {
    let needs_graph = a.out.is_some() && !matches!(a.format, Format::Json);
    if needs_graph && a.graph.fingerprint && a.graph.n >= 5 {
        return Err(usage("fingerprint mode keeps no graph; only --format json can be written"));
    }
    let e = run_enumeration(cli, &a.graph, needs_graph)?;
    say!("{}", e.stats.to_json());
    edge_note(&e.stats);
    if let Some(dir) = &a.out {
        write_output(&e, a.format, dir)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn write_output(e: &dwd_core::Enumeration, format: Format, dir: &Path) -> anyhow::Result<()> {
    let files = match (&e.graph, format) {
        (_, Format::Json) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(dwd_core::graph::export::STATS_FILE);
            write_stats_json(&e.stats, &path)?;
            vec![path]
        }
        (Some(g), f) => export_graph(g, f.into(), dir).map_err(|e| match e {
            GraphError::FormatTooLarge { .. } => usage(e.to_string()),
            other => other.into(),
        })?,
        (None, _) => bail!("no graph was built"),
    };
    for f in files {
        eprintln!("wrote {}", f.display());
    }
    Ok(())
}

fn cmd_stats(cli: &Cli, a: &GraphArgs) -> anyhow::Result<ExitCode> {
    let e = run_enumeration(cli, a, false)?;
    let s = &e.stats;
    say!("n                 {}", s.n);
    say!("vertices          {}", s.vertices);
    say!("degree sum        {}", s.degree_sum);
    say!("undirected edges  {}", s.undirected_edges);
    say!("degree  vertices");
    for (d, c) in &s.degree_histogram {
        say!("{d:<7} {c}");
    }
    edge_note(s);
    Ok(ExitCode::SUCCESS)
}

fn cmd_export(cli: &Cli, a: &ExportArgs) -> anyhow::Result<ExitCode> {
    if a.graph.fingerprint && a.graph.n >= 5 && !matches!(a.format, Format::Json) {
        return Err(usage("fingerprint mode keeps no graph; only --format json can be written"));
    }
    let e = run_enumeration(cli, &a.graph, true)?;
    write_output(&e, a.format, &a.out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_hamiltonian(cli: &Cli, a: &HamiltonianArgs) -> anyhow::Result<ExitCode> {
    let args = GraphArgs { n: a.n as usize, fingerprint: false, checkpoint: None, confirm_long: false };
    let g = run_enumeration(cli, &args, true)?.graph.context("graph not built")?;
    match hamiltonian_cycle(&g, a.budget)? {
        Some(cycle) => {
            debug_assert!(is_hamiltonian_cycle(&g, &cycle));
            say!("hamiltonian cycle through {} vertices", cycle.len());
            for id in cycle {
                say!("{id}\t{}", g.labels(id));
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            say!("no hamiltonian cycle exists");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn read_word(text: Option<&str>, n: usize) -> anyhow::Result<Word> {
    let Some(text) = text else { return Ok(standard_word(n)) };
    let path = Path::new(text);
    let body = if path.is_file() {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    } else {
        text.to_string()
    };
    Word::parse(&body, n).map_err(|e| usage(format!("bad word: {e}")))
}

fn cmd_express(a: &ExpressArgs) -> anyhow::Result<ExitCode> {
    let word = read_word(a.word.as_deref(), a.n)?;
    let base: LabelSet = chamber_labels(&word);
    let target = MinorId::parse(&a.minor, a.n).map_err(|e| usage(e.to_string()))?;
    let r = express_minor(&base, target)?;
    say!("base {{{base}}}");
    say!("path of {} moves", r.path.len());
    for (i, m) in r.path.steps.iter().enumerate() {
        say!("{}. {m}", i + 1);
    }
    say!("{} = {}", minor_name(target.label()), r.expression);
    say!("terms {}, positive {}", r.term_count, r.positive);
    Ok(if r.positive { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs) -> anyhow::Result<ExitCode> {
    let n = a.n as usize;
    let scope = match a.sample {
        Some(k) => Scope::Sample(k),
        None => Scope::Full,
    };
    if scope == Scope::Full && n == 4 && !a.confirm_long {
        return Err(usage("the full n = 4 run checks 303428 pairs (minutes); pass --confirm-long or use --sample"));
    }
    let opts = VerifyOptions { scope, threads: cli.threads as usize, seed: cli.seed, numeric: a.numeric };
    let r = verify_conjecture(n, &opts).map_err(|e| match e {
        PositivityError::ScopeTooLarge(_) => usage(e.to_string()),
        other => other.into(),
    })?;
    say!(
        "n = {}: {} classes, {} pairs, {} positive, {} failures, max {} terms",
        r.n,
        r.classes,
        r.pairs,
        r.positive,
        r.failures.len(),
        r.max_terms
    );
    if a.numeric {
        say!("numeric checks passed: {}", r.numeric_checked);
    }
    for f in r.failures.iter().take(10) {
        say!("failure: {} from {{{}}}: {}", f.target, f.base, f.reason);
    }
    if let Some(path) = &a.report {
        std::fs::write(path, r.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_oracle(cli: &Cli, a: &SampleArgs) -> anyhow::Result<ExitCode> {
    let n = a.n as usize;
    let r = match (a.sample, n) {
        (None, ..=3) => oracle_check_all(n),
        (k, _) => oracle_check_sampled(n, k.unwrap_or(1000), cli.seed),
    };
    say!("{}", serde_json::to_string_pretty(&r)?);
    Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_identity(cli: &Cli, a: &SampleArgs) -> anyhow::Result<ExitCode> {
    let n = a.n as usize;
    let r = match (a.sample, n) {
        (None, ..=3) => {
            let g = enumerate(n, &EnumerateOptions::default())?.graph.context("graph not built")?;
            let classes: Vec<LabelSet> = (0..g.vertex_count()).map(|id| g.labels(id)).collect();
            identity_check_classes(n, &classes)
        }
        (k, _) => identity_check_sampled(n, &chamber_labels(&standard_word(n)), k.unwrap_or(100), cli.seed),
    };
    say!("{}", serde_json::to_string_pretty(&r)?);
    Ok(if r.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
