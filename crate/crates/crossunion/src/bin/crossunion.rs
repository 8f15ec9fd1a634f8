use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use crossunion::json;
use crossunion::parallel::{self, THREADS_ENV};
use crossunion::properties::{self, CheckStats, DEFAULT_SEED, EXHAUSTIVE_N};
use crossunion::table;
use crossunion::verify::{self, ClaimId, VerifyError, VerifyOptions};
use crossunion_core::bounds::{
    binom, check_inequality, union_family_bound, level_gap, maximal_pairs, union_sum_bound, Inequality,
    InequalityParams,
};
use crossunion_core::search::{SearchKind, Witness};
use crossunion_core::transforms::{compress_pair, make_shifted, make_shifted_pair, shift_ij};
use crossunion_core::{FamilyPair, SetFamily};

/// Exact bounds, exhaustive searches and operator checks for cross s-union
/// set families.
#[derive(Parser, Debug)]
#[command(name = "crossunion", version)]
struct Cli {
    /// Ground set size.
    #[arg(long, global = true)]
    n: Option<u32>,
    /// Union bound.
    #[arg(long, global = true)]
    s: Option<u32>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Include the compression trace.
    #[arg(long, global = true)]
    trace: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Search worker threads.
    #[arg(long, global = true, env = THREADS_ENV)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Recompute a claim by exhaustive search and compare with its formula.
    Verify(VerifyArgs),
    /// Run an exhaustive search.
    Search {
        #[arg(value_enum)]
        kind: SearchName,
        /// Exclude `{∅}` as either family (pair search only).
        #[arg(long)]
        forbid_empty: bool,
    },
    /// Compress a cross s-union antichain pair to full levels.
    Compress {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Shift a family or a pair (jointly) to a fixed point, or apply one shift.
    Shift {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, requires = "j")]
        i: Option<u32>,
        #[arg(long, requires = "i")]
        j: Option<u32>,
    },
    /// Exact closed forms.
    Bounds {
        #[command(subcommand)]
        what: BoundsCommand,
    },
    /// Operator property suites: exhaustive for small n, then seeded random.
    Oracle {
        #[arg(long, default_value_t = 10_000)]
        cases: u64,
        /// Largest n of the random cases.
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        /// Largest n covered exhaustively.
        #[arg(long, default_value_t = EXHAUSTIVE_N)]
        exhaustive_n: u32,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Claim id, e.g. thm1.5 or lemmas.
    #[arg(required_unless_present = "all", conflicts_with = "all")]
    id: Option<String>,
    /// Every claim at every admissible parameter point.
    #[arg(long)]
    all: bool,
    /// Largest n for `--all`.
    #[arg(long, default_value_t = 5)]
    n_max: u32,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchName {
    Pair,
    Triple,
    General,
    UnionAntichain,
    UnionFamily,
    MinPair,
    CoUnionPair,
}

#[derive(Subcommand, Debug)]
enum BoundsCommand {
    /// CSV of maximal pairs and bounds for every n >= 2s.
    Table {
        #[arg(long, default_value_t = 40)]
        n_max: u32,
    },
    Binom {
        #[arg(long)]
        k: i64,
    },
    UnionFamily,
    MaximalPairs,
    UnionSum,
    Gap {
        #[arg(long)]
        r: u32,
    },
    /// Evaluate one registry inequality.
    Check {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 0)]
        i: u32,
    },
}

/// Bad input or parameters outside a claim's hypothesis.
#[derive(Debug)]
struct Usage(anyhow::Error);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for Usage {}

fn usage<E: Into<anyhow::Error>>(e: E) -> anyhow::Error {
    anyhow::Error::new(Usage(e.into()))
}

fn need(v: Option<u32>, name: &str) -> Result<u32> {
    v.ok_or_else(|| usage(anyhow!("--{name} is required")))
}

fn show_family(f: &SetFamily) -> String {
    let sets: Vec<String> = f.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", sets.join(", "))
}

fn show_witness(w: &Witness) -> String {
    w.families().into_iter().map(show_family).collect::<Vec<_>>().join(" | ")
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string(v).expect("values serialize"));
}

fn run(cli: Cli) -> Result<u8> {
    let threads = parallel::thread_count(cli.threads);
    match cli.command {
        Command::Verify(args) => {
            let opts = VerifyOptions { threads, seed: cli.seed, ..VerifyOptions::default() };
            let reports = if args.all {
                verify::verify_all(args.n_max, &opts)
            } else {
                let id: ClaimId = args.id.as_deref().unwrap_or_default().parse().map_err(usage)?;
                let (n, s) = (need(cli.n, "n")?, cli.s.unwrap_or(0));
                let s = if id == ClaimId::CoUnionPair && cli.s.is_none() { n - 1 } else { s };
                vec![verify::cmd_verify(id, n, s, &opts).map_err(|e: VerifyError| usage(e))?]
            };
            if cli.json {
                print_json(&serde_json::to_value(&reports)?);
            } else {
                for r in &reports {
                    println!("{r}");
                }
            }
            Ok(verify::exit_code(&reports) as u8)
        }
        Command::Search { kind, forbid_empty } => {
            let n = need(cli.n, "n")?;
            let kind = match kind {
                SearchName::Pair => SearchKind::PairAntichain { forbid_empty_singleton: forbid_empty },
                SearchName::Triple => SearchKind::TripleAntichain,
                SearchName::General => SearchKind::PairGeneral,
                SearchName::UnionAntichain => SearchKind::UnionAntichain,
                SearchName::UnionFamily => SearchKind::UnionFamily,
                SearchName::MinPair => SearchKind::MinPair,
                SearchName::CoUnionPair => SearchKind::CoUnionPair,
            };
            let s = match kind {
                SearchKind::CoUnionPair => cli.s.unwrap_or(n.saturating_sub(1)),
                _ => need(cli.s, "s")?,
            };
            let timed = parallel::search(kind, n, s, threads).map_err(usage)?;
            let r = &timed.result;
            if cli.json {
                print_json(&json::search_to_value(r, timed.wall_time.as_millis()));
            } else {
                println!("max {}", r.max_value);
                for w in &r.witnesses {
                    println!("witness {}", show_witness(w));
                }
                println!("nodes {} in {:?} on {} thread(s)", r.nodes_explored, timed.wall_time, timed.threads);
            }
            Ok(0)
        }
        Command::Compress { input, output } => {
            let s = need(cli.s, "s")?;
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display())).map_err(usage)?;
            let pair = json::parse_pair(&text).map_err(usage)?;
            let (out, trace) = compress_pair(&pair, s).map_err(usage)?;
            let doc = if cli.trace {
                serde_json::json!({ "pair": json::pair_to_value(&out), "trace": json::trace_to_value(&trace) })
            } else {
                json::pair_to_value(&out)
            };
            let text = serde_json::to_string(&doc)?;
            match output {
                Some(path) => fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?,
                None => println!("{text}"),
            }
            Ok(0)
        }
        Command::Shift { input, i, j } => {
            let text = fs::read_to_string(&input).with_context(|| format!("reading {}", input.display())).map_err(usage)?;
            let doc: serde_json::Value = serde_json::from_str(&text).map_err(usage)?;
            let out = if doc.is_array() {
                let p = json::parse_pair(&text).map_err(usage)?;
                let q = match (i, j) {
                    (Some(i), Some(j)) => FamilyPair {
                        first: shift_ij(&p.first, i, j).map_err(usage)?,
                        second: shift_ij(&p.second, i, j).map_err(usage)?,
                    },
                    _ => make_shifted_pair(&p),
                };
                json::pair_to_value(&q)
            } else {
                let f = json::parse_family(&text).map_err(usage)?;
                let g = match (i, j) {
                    (Some(i), Some(j)) => shift_ij(&f, i, j).map_err(usage)?,
                    _ => make_shifted(&f),
                };
                json::family_to_value(&g)
            };
            println!("{}", serde_json::to_string(&out)?);
            Ok(0)
        }
        Command::Bounds { what } => {
            bounds(cli.n, cli.s, cli.json, what)?;
            Ok(0)
        }
        Command::Oracle { cases, n_max, exhaustive_n } => {
            if exhaustive_n > EXHAUSTIVE_N {
                return Err(usage(anyhow!("exhaustive checks are capped at n <= {EXHAUSTIVE_N}")));
            }
            let exhaustive = properties::exhaustive_suite(exhaustive_n);
            let random = properties::random_suite(cli.seed, cases, n_max);
            let rows = |label: &str, stats: &[CheckStats]| {
                for st in stats {
                    let verdict = if st.passed() { "pass" } else { "FAIL" };
                    println!("{label:<10} {:<24} {verdict} {}/{}", st.property, st.cases - st.failures, st.cases);
                    if let Some(f) = &st.first_failure {
                        println!("           first failure: {f}");
                    }
                }
            };
            if cli.json {
                let doc = |stats: &[CheckStats]| {
                    stats
                        .iter()
                        .map(|s| serde_json::json!({"property": s.property, "cases": s.cases, "failures": s.failures, "first_failure": s.first_failure}))
                        .collect::<Vec<_>>()
                };
                print_json(&serde_json::json!({"seed": cli.seed, "exhaustive": doc(&exhaustive), "random": doc(&random)}));
            } else {
                rows("exhaustive", &exhaustive);
                rows("random", &random);
            }
            Ok(u8::from(!exhaustive.iter().chain(&random).all(CheckStats::passed)))
        }
    }
}

fn bounds(n: Option<u32>, s: Option<u32>, as_json: bool, what: BoundsCommand) -> Result<()> {
    let value = match what {
        BoundsCommand::Table { n_max } => {
            let rows = table::rows(n_max).map_err(usage)?;
            if as_json {
                print_json(&serde_json::to_value(&rows)?);
            } else {
                table::write_csv(&rows, std::io::stdout().lock())?;
            }
            return Ok(());
        }
        BoundsCommand::Binom { k } => binom(need(n, "n")?, k),
        BoundsCommand::UnionFamily => union_family_bound(need(n, "n")?, need(s, "s")?).map_err(usage)?,
        BoundsCommand::UnionSum => union_sum_bound(need(n, "n")?, need(s, "s")?).map_err(usage)?,
        BoundsCommand::Gap { r } => level_gap(need(n, "n")?, r).map_err(usage)?,
        BoundsCommand::MaximalPairs => {
            let m = maximal_pairs(need(n, "n")?, need(s, "s")?).map_err(usage)?;
            if as_json {
                print_json(&serde_json::json!({"n": m.n, "s": m.s, "pairs": m.pairs, "value": m.value.to_string()}));
            } else {
                println!("pairs {} value {}", table::format_pairs(&m.pairs), m.value);
            }
            return Ok(());
        }
        BoundsCommand::Check { id, i } => {
            let ineq: Inequality = id.parse().map_err(usage)?;
            let p = InequalityParams { n: n.unwrap_or(0), s: s.unwrap_or(0), i };
            let c = check_inequality(ineq, p).map_err(usage)?;
            if as_json {
                print_json(&serde_json::json!({
                    "id": ineq.id(), "holds": c.holds, "relation": format!("{:?}", c.relation).to_lowercase(),
                    "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string(),
                }));
            } else {
                println!("{} {} lhs {} rhs {}", ineq, if c.holds { "holds" } else { "fails" }, c.lhs, c.rhs);
            }
            if !c.holds {
                bail!("{ineq} does not hold at {p:?}");
            }
            return Ok(());
        }
    };
    if as_json {
        print_json(&serde_json::json!({ "value": value.to_string() }));
    } else {
        println!("{value}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
