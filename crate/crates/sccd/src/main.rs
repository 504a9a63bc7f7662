//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check fails (invalid design, no
//! expansion set, construction impossible, search unsuccessful), 2 on
//! usage or parse errors. All commands are deterministic: identical
//! invocations produce byte-identical output.

use std::io::Read;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use sccd::construct::{self, JoinPlan};
use sccd::design::{Design, Kind, Label};
use sccd::expansion::{self, Mode};
use sccd::search::{search, SearchConfig, SearchOutcome};
use sccd::{catalog, difference, textio, verify};

#[derive(Parser)]
#[command(name = "sccd", version, about = "single-change covering design toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a design and print its verification report.
    Verify {
        /// Design file, `-` for stdin, or `catalog:<name>`.
        input: String,
        /// 1-based initial block for circular per-block excesses.
        #[arg(long, default_value_t = 1)]
        start: usize,
        /// Emit the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// List expansion sets of a design.
    Expansion {
        input: String,
        /// Filter: any, inner, outer, or both-ends.
        #[arg(long, default_value = "any")]
        mode: String,
        /// Print every expansion set instead of the first.
        #[arg(long)]
        all: bool,
    },
    /// Apply one of the recursive constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Generate a design from a built-in family.
    #[command(subcommand)]
    Generate(GenerateCmd),
    /// Exhaustive backtracking search for given parameters.
    Search {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        circular: bool,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Node limit (deterministic cutoff).
        #[arg(long)]
        node_limit: Option<u64>,
        /// Disable the canonical first block and ascending introductions.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Access the built-in design catalog.
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand)]
enum ConstructCmd {
    /// One-point extension along the first expansion set.
    V1 {
        input: String,
        /// Label for the new point (default: max label + 1).
        #[arg(long)]
        label: Option<Label>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Two-point extension along the first expansion set using U_b.
    V2 {
        input: String,
        /// Labels for the two new points, comma separated.
        #[arg(long, value_delimiter = ',')]
        labels: Option<Vec<Label>>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Join two linear designs (the second needs an outer expansion set).
    Join {
        host: String,
        donor: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Join two both-ends designs into one with a disjoint-capable set.
    Disjoint {
        host: String,
        donor: String,
        #[command(flatten)]
        out: OutArg,
    },
    /// Close a disjoint-capable design and a second one into a circle.
    Circular {
        host: String,
        donor: String,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum GenerateCmd {
    /// Tight circular design from cyclic difference development.
    Difference {
        #[arg(long)]
        c: u64,
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Print all catalog entry names.
    List,
    /// Print one catalog design in file format.
    Emit { name: String },
}

#[derive(Args)]
struct OutArg {
    /// Write the design here instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

/// A check failed (exit 1) or the input was unusable (exit 2).
enum CliError {
    Check(String),
    Usage(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
    fn message(&self) -> &str {
        match self {
            CliError::Check(m) | CliError::Usage(m) => m,
        }
    }
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn check<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Check(e.to_string())
}

fn main() -> ExitCode {
    // die quietly when a downstream pipe closes early (e.g. `| head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Verify { input, start, json } => cmd_verify(&input, start, json),
        Command::Expansion { input, mode, all } => cmd_expansion(&input, &mode, all),
        Command::Construct(cmd) => cmd_construct(cmd),
        Command::Generate(GenerateCmd::Difference { c, k, out }) => {
            let d = difference::difference_cscc(c, k).map_err(usage)?;
            emit(&d, &out)
        }
        Command::Search {
            v,
            k,
            b,
            circular,
            time_limit,
            node_limit,
            no_symmetry,
        } => cmd_search(v, k, b, circular, time_limit, node_limit, no_symmetry),
        Command::Catalog(CatalogCmd::List) => {
            for name in catalog::catalog_list() {
                println!("{name}");
            }
            Ok(())
        }
        Command::Catalog(CatalogCmd::Emit { name }) => {
            let entry = catalog::catalog_get(&name).map_err(usage)?;
            print!("{}", textio::serialize(&entry.design));
            Ok(())
        }
    }
}

/// Reads a design from a path, stdin (`-`), or `catalog:<name>`.
fn read_design(input: &str) -> Result<Design, CliError> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        buf
    } else if let Some(name) = input.strip_prefix("catalog:") {
        return Ok(catalog::catalog_get(name).map_err(usage)?.design.clone());
    } else {
        std::fs::read_to_string(input).map_err(|e| usage(format!("reading {input}: {e}")))?
    };
    textio::parse(&text).map_err(usage)
}

fn emit(d: &Design, out: &OutArg) -> Result<(), CliError> {
    let text = textio::serialize(d);
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| usage(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_verify(input: &str, start: usize, json: bool) -> Result<(), CliError> {
    let d = read_design(input)?;
    if start == 0 || start > d.b() {
        return Err(usage(format!("--start must be in 1..={}", d.b())));
    }
    let report = verify::verify_with_start(&d, start - 1);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    } else {
        print_report(&report);
    }
    if report.valid_single_change && report.covered_all_pairs {
        Ok(())
    } else {
        Err(CliError::Check("design failed verification".into()))
    }
}

fn print_report(r: &verify::VerificationReport) {
    println!("kind: {}", r.kind);
    println!("v: {}  k: {}  b: {}", r.v, r.k, r.b);
    println!("single_change: {}", r.valid_single_change);
    let total = r.v * (r.v - 1) / 2;
    println!(
        "coverage: {} ({}/{} pairs)",
        if r.covered_all_pairs { "complete" } else { "incomplete" },
        total - r.missing_pairs.len() as u64,
        total
    );
    if !r.missing_pairs.is_empty() {
        let shown: Vec<String> = r
            .missing_pairs
            .iter()
            .take(10)
            .map(|(a, b)| format!("{{{a},{b}}}"))
            .collect();
        let suffix = if r.missing_pairs.len() > 10 { " ..." } else { "" };
        println!("missing: {}{suffix}", shown.join(" "));
    }
    println!("excess: {}", r.excess);
    let excesses: Vec<String> = r.block_excesses.iter().map(u64::to_string).collect();
    println!(
        "block_excesses (from block {}): [{}]",
        r.start + 1,
        excesses.join(",")
    );
    println!(
        "bound: g = {} (ceiling {}), b = {} -> {}",
        r.bound.g,
        r.bound.g_ceiling,
        r.bound.achieved_b,
        if r.bound.meets_bound { "meets bound" } else { "below bound" }
    );
    println!("economical: {}", r.economical);
    println!("tight: {}", r.tight);
}

fn parse_mode(mode: &str) -> Result<Mode, CliError> {
    match mode {
        "any" => Ok(Mode::Any),
        "inner" => Ok(Mode::Inner),
        "outer" => Ok(Mode::Outer),
        "both-ends" => Ok(Mode::BothEnds),
        other => Err(usage(format!(
            "unknown mode {other:?}; expected any, inner, outer, or both-ends"
        ))),
    }
}

fn cmd_expansion(input: &str, mode: &str, all: bool) -> Result<(), CliError> {
    let d = read_design(input)?;
    let mode = parse_mode(mode)?;
    let limit = if all { None } else { Some(1) };
    let sets = expansion::find_expansion_sets(&d, mode, limit).map_err(check)?;
    if sets.is_empty() {
        return Err(CliError::Check("no expansion set found".into()));
    }
    for es in &sets {
        let indices: Vec<String> = es.members.iter().map(|m| m.index.to_string()).collect();
        let subsets: Vec<String> = es
            .members
            .iter()
            .map(|m| {
                let elems: Vec<String> = m.elements.iter().map(Label::to_string).collect();
                format!("{}:{{{}}}", m.index, elems.join(","))
            })
            .collect();
        println!(
            "indices=[{}] classification={} {}",
            indices.join(","),
            es.classification,
            subsets.join(" ")
        );
    }
    Ok(())
}

fn cmd_construct(cmd: ConstructCmd) -> Result<(), CliError> {
    match cmd {
        ConstructCmd::V1 { input, label, out } => {
            let d = read_design(&input)?;
            let es = expansion::find_expansion_sets(&d, Mode::Any, Some(1))
                .map_err(check)?
                .into_iter()
                .next()
                .ok_or_else(|| CliError::Check("no expansion set found".into()))?;
            let new_label = label.unwrap_or_else(|| d.labels().iter().max().unwrap() + 1);
            let grown = construct::extend_v1(&d, &es, new_label).map_err(check)?;
            emit(&grown, &out)
        }
        ConstructCmd::V2 { input, labels, out } => {
            let d = read_design(&input)?;
            let es = expansion::expansion_using_end(&d)
                .ok_or_else(|| CliError::Check("no expansion set using U_b found".into()))?;
            let max = d.labels().iter().max().unwrap();
            let (y1, y2) = match labels.as_deref() {
                Some([y1, y2]) => (*y1, *y2),
                Some(_) => return Err(usage("--labels takes exactly two values")),
                None => (max + 1, max + 2),
            };
            let grown = construct::extend_v2(&d, &es, y1, y2).map_err(check)?;
            emit(&grown, &out)
        }
        ConstructCmd::Join { host, donor, out } => {
            let a = read_design(&host)?;
            let b = read_design(&donor)?;
            let joined = construct::join_linear(&a, &b, &JoinPlan::default()).map_err(check)?;
            emit(&joined, &out)
        }
        ConstructCmd::Disjoint { host, donor, out } => {
            let a = read_design(&host)?;
            let b = read_design(&donor)?;
            let built =
                construct::build_disjoint_capable(&a, &b, &JoinPlan::default()).map_err(check)?;
            emit(&built, &out)
        }
        ConstructCmd::Circular { host, donor, out } => {
            let a = read_design(&host)?;
            let b = read_design(&donor)?;
            let closed = construct::join_circular(&a, &b, &JoinPlan::default()).map_err(check)?;
            emit(&closed, &out)
        }
    }
}

fn cmd_search(
    v: usize,
    k: usize,
    b: usize,
    circular: bool,
    time_limit: Option<f64>,
    node_limit: Option<u64>,
    no_symmetry: bool,
) -> Result<(), CliError> {
    let cfg = SearchConfig {
        v,
        k,
        b,
        kind: if circular { Kind::Circular } else { Kind::Linear },
        time_limit: time_limit.map(Duration::from_secs_f64),
        node_limit,
        symmetry_breaking: !no_symmetry,
    };
    let outcome = search(&cfg);
    println!("{}", outcome.name());
    match outcome {
        SearchOutcome::Found(d) => {
            print!("{}", textio::serialize(&d));
            Ok(())
        }
        _ => Err(CliError::Check(format!(
            "no design produced: {}",
            outcome.name()
        ))),
    }
}
