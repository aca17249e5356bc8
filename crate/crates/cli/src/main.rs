//! Command-line driver: enumerate presentations, construct and verify
//! Hamiltonian cycles, run sweeps, export pictures, or search directly.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cayham_core::{
    build_graph, canonicalize_genset, classify, construct, enumerate_spec_classes, export_dot,
    minimal_pairs, oracle_cycle, run_suite, sample_minimal_triples, search_hamiltonian_seeded,
    verify_hamiltonian_cycle_elements, ConstructOptions, DotStyle, GenSet, GroupElement,
    GroupSpec, Outcome, SearchMode, SweepConfig, WalkWord,
};

#[derive(Parser)]
#[command(
    name = "cayham",
    about = "Hamiltonian cycles in Cayley graphs of groups of order 6pq",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List isomorphism classes of groups of order 6pq.
    Enumerate(EnumerateArgs),
    /// Classify an instance and construct a verified Hamiltonian cycle.
    Construct(ConstructArgs),
    /// Check a cycle word against an instance.
    Verify(VerifyArgs),
    /// Run a full sweep from a JSON configuration file.
    Sweep(SweepArgs),
    /// Render a constructed cycle as Graphviz DOT.
    ExportDot(ExportDotArgs),
    /// Backtracking cycle search on an arbitrary valid presentation.
    Search(SearchArgs),
}

#[derive(Args)]
struct SpecArg {
    /// Presentation as `n,m,tau` (for example `6,143,120`).
    #[arg(long, value_parser = parse_spec)]
    spec: GroupSpec,
    /// Generating labels as `i,j` pairs joined by `;`
    /// (for example `3,1;2,1` or `(3,1);(2,1)`).
    #[arg(long, value_parser = parse_gens)]
    gens: Gens,
}

#[derive(Clone)]
struct Gens(Vec<GroupElement>);

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    q: u64,
    /// Also count minimal pairs and show a seeded triple sample size.
    #[arg(long)]
    sets: bool,
    /// Machine-readable output.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    instance: SpecArg,
    /// Do not attach searched fallback cycles to non-constructive outcomes.
    #[arg(long)]
    no_fallback: bool,
    /// Backtracking budget for fallback searches.
    #[arg(long, default_value_t = ConstructOptions::default().oracle_budget)]
    budget: u64,
    /// Shuffled restarts for fallback searches.
    #[arg(long, default_value_t = ConstructOptions::default().oracle_seeds)]
    seeds: u64,
    /// Print only the classification and canonicalization, skip construction.
    #[arg(long)]
    classify_only: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    instance: SpecArg,
    /// Cycle word as JSON (`[{"gen":0,"exp":3},…]`), or `@path` to read it
    /// from a file.
    #[arg(long)]
    word: String,
}

#[derive(Args)]
struct SweepArgs {
    /// JSON file with the sweep configuration.
    #[arg(long)]
    config: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Cycle,
    Chords,
}

#[derive(Args)]
struct ExportDotArgs {
    #[command(flatten)]
    instance: SpecArg,
    #[arg(long, value_enum, default_value_t = StyleArg::Cycle)]
    style: StyleArg,
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    instance: SpecArg,
    #[arg(long, default_value_t = 30_000_000)]
    budget: u64,
    #[arg(long, default_value_t = 6)]
    seeds: u64,
    /// Use the theory-free recursive oracle instead of plain backtracking.
    #[arg(long)]
    oracle: bool,
}

fn parse_spec(s: &str) -> Result<GroupSpec, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected `n,m,tau`, got `{s}`"));
    }
    let nums: Vec<u64> = parts
        .iter()
        .map(|t| t.parse().map_err(|e| format!("bad number `{t}`: {e}")))
        .collect::<Result<_, _>>()?;
    GroupSpec::new(nums[0], nums[1], nums[2]).map_err(|e| e.to_string())
}

fn parse_gens(s: &str) -> Result<Gens, String> {
    let mut out = Vec::new();
    for chunk in s.split(';') {
        let cleaned: String = chunk
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | ' '))
            .collect();
        if cleaned.is_empty() {
            continue;
        }
        let parts: Vec<&str> = cleaned.split(',').collect();
        if parts.len() != 2 {
            return Err(format!("expected `i,j`, got `{chunk}`"));
        }
        let i = parts[0]
            .parse()
            .map_err(|e| format!("bad rotation part `{}`: {e}", parts[0]))?;
        let j = parts[1]
            .parse()
            .map_err(|e| format!("bad normal part `{}`: {e}", parts[1]))?;
        out.push(GroupElement { i, j });
    }
    if out.is_empty() {
        return Err("no labels given".into());
    }
    Ok(Gens(out))
}

fn read_word(arg: &str) -> Result<WalkWord, String> {
    let text = if let Some(path) = arg.strip_prefix('@') {
        fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?
    } else {
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| format!("bad word JSON: {e}"))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Enumerate(args) => {
            let classes = enumerate_spec_classes(args.p, args.q).map_err(|e| e.to_string())?;
            if args.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&classes).expect("classes serialize")
                );
                return Ok(ExitCode::SUCCESS);
            }
            println!(
                "{} isomorphism classes of order {}",
                classes.len(),
                6 * args.p * args.q
            );
            for c in &classes {
                let mut line = format!(
                    "  key ({}, {}, {})  representative (n={}, m={}, tau={})  presentations {}",
                    c.iso_key[0],
                    c.iso_key[1],
                    c.iso_key[2],
                    c.spec.n,
                    c.spec.m,
                    c.spec.tau,
                    c.members.len()
                );
                if args.sets {
                    let pairs = minimal_pairs(&c.spec).len();
                    let triples = sample_minimal_triples(&c.spec, 50, 858).triples.len();
                    line.push_str(&format!("  minimal pairs {pairs}  sampled triples {triples}"));
                }
                println!("{line}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Construct(args) => {
            let SpecArg { spec, gens } = args.instance;
            if args.classify_only {
                let tag = classify(&spec, &gens.0).map_err(|e| e.to_string())?;
                let canon = canonicalize_genset(&spec, &gens.0).map_err(|e| e.to_string())?;
                println!("case: {tag}");
                for line in &canon.log {
                    println!("  {line}");
                }
                println!(
                    "arranged labels: {}",
                    canon
                        .labels
                        .iter()
                        .map(|g| format!("({},{})", g.i, g.j))
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                return Ok(ExitCode::SUCCESS);
            }
            let opts = ConstructOptions {
                allow_fallback: !args.no_fallback,
                oracle_budget: args.budget,
                oracle_seeds: args.seeds,
            };
            let report = construct(&spec, &gens.0, &opts).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            Ok(match report.outcome {
                Outcome::Failed { .. } => ExitCode::FAILURE,
                _ => ExitCode::SUCCESS,
            })
        }
        Command::Verify(args) => {
            let SpecArg { spec, gens } = args.instance;
            let word = read_word(&args.word)?;
            match verify_hamiltonian_cycle_elements(&spec, &gens.0, &word) {
                Ok(()) => {
                    println!(
                        "ok: word of length {} is a Hamiltonian cycle of the order-{} graph",
                        word.expansion_len(),
                        spec.order()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("not a Hamiltonian cycle: {e}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Sweep(args) => {
            let text = fs::read_to_string(&args.config)
                .map_err(|e| format!("cannot read {}: {e}", args.config))?;
            let config: SweepConfig =
                serde_json::from_str(&text).map_err(|e| format!("bad config: {e}"))?;
            let output = run_suite(&config).map_err(|e| e.to_string())?;
            if let Some(path) = &config.json_out {
                fs::write(path, output.to_json()).map_err(|e| format!("write {path}: {e}"))?;
            }
            if let Some(path) = &config.csv_out {
                fs::write(path, output.to_csv()).map_err(|e| format!("write {path}: {e}"))?;
            }
            let s = &output.summary;
            println!(
                "classes {}  instances {}  verified {}  delegated {}  failed {}  elapsed {} ms",
                output.classes, s.instances, s.verified, s.delegated, s.failed, s.elapsed_ms
            );
            for (case, count) in &s.by_case {
                println!("  {case}: {count}");
            }
            Ok(if s.failed == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::ExportDot(args) => {
            let SpecArg { spec, gens } = args.instance;
            let report = construct(&spec, &gens.0, &ConstructOptions::default())
                .map_err(|e| e.to_string())?;
            let cycle = match &report.outcome {
                Outcome::Verified { cycle } => cycle,
                Outcome::Delegated {
                    fallback_cycle: Some(c),
                    ..
                }
                | Outcome::Failed {
                    fallback_cycle: Some(c),
                    ..
                } => c,
                _ => return Err("no cycle available to draw".into()),
            };
            let labels = report
                .reduced_generators
                .as_deref()
                .unwrap_or(&report.generators);
            let style = match args.style {
                StyleArg::Cycle => DotStyle::CycleOnly,
                StyleArg::Chords => DotStyle::WithChords,
            };
            let dot = export_dot(&spec, labels, cycle, style).map_err(|e| e.to_string())?;
            match &args.out {
                Some(path) => {
                    fs::write(path, dot).map_err(|e| format!("write {path}: {e}"))?;
                    println!("wrote {path}");
                }
                None => print!("{dot}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Search(args) => {
            let SpecArg { spec, gens } = args.instance;
            let found = if args.oracle {
                oracle_cycle(&spec, &gens.0, args.budget, args.seeds)
            } else {
                let genset = GenSet::new(&spec, gens.0.clone()).map_err(|e| e.to_string())?;
                let graph = build_graph(&spec, &genset);
                if !graph.is_connected() {
                    return Err("the Cayley graph is not connected".into());
                }
                let mut hit = None;
                for seed in std::iter::once(None).chain((1..=args.seeds).map(Some)) {
                    if let Some(w) =
                        search_hamiltonian_seeded(&graph, SearchMode::Cycle, args.budget, seed)
                            .found()
                    {
                        hit = Some(w);
                        break;
                    }
                }
                hit
            };
            match found {
                Some(w) => {
                    verify_hamiltonian_cycle_elements(&spec, &gens.0, &w)
                        .map_err(|e| format!("search returned an invalid cycle: {e}"))?;
                    println!(
                        "{}",
                        serde_json::to_string(&w).expect("word serializes")
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("no Hamiltonian cycle found within the budget");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
    }
}
