//! `stacksort`: command-line front end for the stacksort library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 brute-force cap exceeded.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use stacksort::dynamics::{is_t_stack_sortable, DEFAULT_CAP};
use stacksort::extremal::{self, ExtremalQuery};
use stacksort::stats::{self, Distribution};
use stacksort::verify::{self, Claim, VerificationResult};
use stacksort::vhc;
use stacksort::{Dynamics, Error, Permutation};

#[derive(Parser)]
#[command(name = "stacksort", version, about = "Stack-sorting map, hook configurations and t-sorted permutations")]
struct Cli {
    /// Largest n for exhaustive computations.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Accepted for scripts; every computation is deterministic.
    #[arg(long, global = true)]
    seedless: bool,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply the stack-sorting map.
    Sort {
        #[arg(long)]
        perm: String,
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        /// Print the push/pop log of the first pass.
        #[arg(long)]
        trace: bool,
        /// Also report whether s^t(perm) is increasing.
        #[arg(long)]
        sortable: bool,
    },
    /// Count valid hook configurations and decide sortedness.
    Vhc {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        list: bool,
    },
    /// Number of preimages under the stack-sorting map.
    Fertility {
        #[arg(long)]
        perm: String,
        #[arg(long)]
        list_preimages: bool,
    },
    /// The stack-sorting tree on S_n.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Json)]
        format: TreeFormat,
    },
    /// t-sorted permutations with the maximum number of descents.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        count_only: bool,
        /// Include lift chains (same parity) or the 1 ⊕ λ witness (opposite parity).
        #[arg(long)]
        witness: bool,
    },
    /// Check a structural claim exhaustively for all n up to max-n.
    Verify {
        /// One of thm1 thm2 thm3 thm4 cor1 claim1 west catalan symmetry hotspot-shift, or all.
        #[arg(long)]
        claim: String,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
    },
    /// Counting sequences and distributions.
    Stats {
        #[arg(long, value_enum)]
        kind: StatsKind,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = StatsFormat::Text)]
        format: StatsFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsKind {
    Lassalle,
    FirstEntry,
    Hotspot,
    West,
    Catalan,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsFormat {
    Text,
    Csv,
    Json,
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Listing more extremal permutations than this needs --count-only.
const LIST_LIMIT: usize = 1_000_000;

struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable") + "\n"
}

fn parse_perm(text: &str) -> Result<Permutation, Failure> {
    text.parse().map_err(|e: Error| Failure::Usage(format!("invalid permutation `{text}`: {e}")))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let dynamics = Dynamics::with_cap(cli.cap);
    match &cli.command {
        Command::Sort { perm, iterations, trace, sortable } => {
            let p = parse_perm(perm)?;
            let result = p.stack_sort_iter(*iterations);
            let log = trace.then(|| p.trace());
            if cli.json {
                let mut v = json!({ "input": p, "iterations": iterations, "output": result });
                if let Some(log) = &log {
                    v["trace"] = serde_json::to_value(&log.steps).unwrap();
                }
                if *sortable {
                    v["stack_sortable"] = json!(is_t_stack_sortable(&p, *iterations));
                }
                return Ok(Output::ok(to_json(&v)));
            }
            let mut text = String::new();
            if let Some(log) = log {
                text.push_str(&log.to_string());
            }
            text.push_str(&result.compact());
            text.push('\n');
            if *sortable {
                text.push_str(&format!("{}-stack-sortable: {}\n", iterations, result.is_increasing()));
            }
            Ok(Output::ok(text))
        }
        Command::Vhc { perm, list } => {
            let p = parse_perm(perm)?;
            let configs = vhc::enumerate_vhcs(&p);
            let sorted = !configs.is_empty();
            if cli.json {
                let mut v = json!({ "permutation": p, "count": configs.len(), "sorted": sorted });
                if *list {
                    v["configurations"] = serde_json::to_value(&configs).unwrap();
                }
                return Ok(Output::ok(to_json(&v)));
            }
            let mut text = format!("count: {}\nsorted: {sorted}\n", configs.len());
            if *list {
                text.push_str(&to_json(&configs));
            }
            Ok(Output::ok(text))
        }
        Command::Fertility { perm, list_preimages } => {
            let p = parse_perm(perm)?;
            let mut report = dynamics.preimages(&p)?;
            if !list_preimages {
                report.preimages = None;
            }
            if cli.json {
                return Ok(Output::ok(to_json(&report)));
            }
            let mut text = format!("{}\n", report.fertility);
            for q in report.preimages.iter().flatten() {
                text.push_str(&q.compact());
                text.push('\n');
            }
            Ok(Output::ok(text))
        }
        Command::Tree { n, format } => {
            let tree = dynamics.build_tree(*n)?;
            Ok(Output::ok(match format {
                TreeFormat::Dot if !cli.json => tree.to_dot(),
                _ => serde_json::to_string(&tree.export()).unwrap() + "\n",
            }))
        }
        Command::Extremal { n, t, count_only, witness } => extremal_cmd(cli, &dynamics, *n, *t, *count_only, *witness),
        Command::Verify { claim, max_n } => {
            let claims: Vec<Claim> = if claim == "all" {
                Claim::ALL.to_vec()
            } else {
                vec![claim.parse().map_err(Failure::Usage)?]
            };
            let results = claims
                .iter()
                .map(|&c| verify::run(c, *max_n, &dynamics))
                .collect::<Result<Vec<VerificationResult>, _>>()?;
            let failed = results.iter().any(|r| !r.passed());
            let text = if cli.json {
                to_json(&results)
            } else {
                results.iter().map(|r| format!("{r}\n")).collect()
            };
            Ok(Output { text, failed })
        }
        Command::Stats { kind, k, n, format } => stats_cmd(cli, &dynamics, *kind, *k, *n, *format),
    }
}

fn extremal_cmd(cli: &Cli, dynamics: &Dynamics, n: usize, t: usize, count_only: bool, witness: bool) -> Result<Output, Failure> {
    let query = ExtremalQuery::new(n, t)?;
    let same = query.same_parity() && t >= 2;
    let (count, list, note) = if same {
        let count = extremal::count_extremal(n, t, dynamics)?;
        let list = if count_only {
            None
        } else if count > LIST_LIMIT.into() {
            return Err(Failure::Usage(format!("{count} permutations; pass --count-only")));
        } else {
            Some(extremal::enumerate_extremal_pattern(n, t)?)
        };
        (count, list, None)
    } else {
        let set = extremal::extremal_set_brute(n, t, dynamics)?;
        let note = if t == 1 {
            "t = 1: counted by exhaustive search"
        } else {
            "no closed form (open); counted by exhaustive search"
        };
        (set.len().into(), (!count_only).then_some(set), Some(note))
    };

    let chains = if witness && same {
        Some(list.iter().flatten().map(|p| extremal::build_lift_chain(p, t)).collect::<Result<Vec<_>, _>>()?)
    } else {
        None
    };
    let odd_witness = if witness && !query.same_parity() { Some(extremal::odd_case_witness(n, t)?) } else { None };

    if cli.json {
        let count_json = u64::try_from(&count).map(Value::from).unwrap_or_else(|_| Value::from(count.to_string()));
        let mut v = json!({ "n": n, "t": t, "bound": query.bound, "count": count_json });
        if let Some(list) = &list {
            v["permutations"] = serde_json::to_value(list).unwrap();
        }
        if let Some(chains) = &chains {
            v["lift_chain"] = serde_json::to_value(chains.iter().map(|c| &c.stages).collect::<Vec<_>>()).unwrap();
        }
        if let Some(w) = &odd_witness {
            v["witness"] = serde_json::to_value(w).unwrap();
        }
        if let Some(note) = note {
            v["note"] = json!(note);
        }
        return Ok(Output::ok(to_json(&v)));
    }

    let mut text = format!("bound: {}\ncount: {count}\n", query.bound);
    if let Some(note) = note {
        text.push_str(&format!("note: {note}\n"));
    }
    match (&list, &chains) {
        (Some(list), Some(chains)) => {
            for (p, chain) in list.iter().zip(chains) {
                let stages: Vec<_> = chain.stages.iter().map(|s| s.compact()).collect();
                text.push_str(&format!("{}  lift: {}\n", p.compact(), stages.join(" <- ")));
            }
        }
        (Some(list), None) => list.iter().for_each(|p| text.push_str(&format!("{}\n", p.compact()))),
        _ => {}
    }
    if let Some(w) = odd_witness {
        text.push_str(&format!("witness: {}\n", w.compact()));
    }
    Ok(Output::ok(text))
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this kind")))
}

fn stats_cmd(
    cli: &Cli,
    dynamics: &Dynamics,
    kind: StatsKind,
    k: Option<usize>,
    n: Option<usize>,
    format: StatsFormat,
) -> Result<Output, Failure> {
    let format = if cli.json { StatsFormat::Json } else { format };
    let scalar = |name: &str, key: &str, arg: usize, value: String| -> String {
        match format {
            StatsFormat::Text => format!("{value}\n"),
            StatsFormat::Csv => format!("{key},count\n{arg},{value}\n"),
            StatsFormat::Json => {
                let num = value.parse::<u64>().map(Value::from).unwrap_or(Value::from(value));
                to_json(&json!({ "kind": name, key: arg, "count": num }))
            }
        }
    };
    let text = match kind {
        StatsKind::Lassalle => {
            let k = need(k, "k")?;
            dynamics.ensure_within_cap(2 * k + 1)?;
            scalar("lassalle", "k", k, stats::lassalle_brute(k, dynamics)?.to_string())
        }
        StatsKind::West => {
            let n = need(n, "n")?;
            scalar("west", "n", n, stats::west_count(n as u64).to_string())
        }
        StatsKind::Catalan => {
            let n = need(n, "n")?;
            scalar("catalan", "n", n, stats::catalan(n as u64).to_string())
        }
        StatsKind::FirstEntry | StatsKind::Hotspot => {
            let k = need(k, "k")?;
            dynamics.ensure_within_cap(2 * k + 1)?;
            let dist = match kind {
                StatsKind::FirstEntry => stats::first_entry_distribution(k, dynamics)?,
                _ => stats::hotspot_distribution(k, dynamics)?,
            };
            render_distribution(&dist, format)?
        }
    };
    Ok(Output::ok(text))
}

fn render_distribution(dist: &Distribution, format: StatsFormat) -> Result<String, Failure> {
    Ok(match format {
        StatsFormat::Json => to_json(dist),
        StatsFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "count"]).map_err(|e| Failure::Io(e.into()))?;
            for (key, count) in &dist.buckets {
                w.serialize((key, count)).map_err(|e| Failure::Io(e.into()))?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Io(e.into_error()))?).expect("utf-8")
        }
        StatsFormat::Text => {
            let mut text = format!("{} (total {})\n", dist.label, dist.total);
            for (key, count) in &dist.buckets {
                text.push_str(&format!("{key}: {count}\n"));
            }
            text
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text),
                None => io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.failed { 1 } else { 0 })
        }
        Err(Failure::Lib(e @ Error::CapExceeded { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
