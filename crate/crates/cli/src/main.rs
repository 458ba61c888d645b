use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use benzenoid::cubes::{downward_closure, is_daisy_cube, maximal_elements, parse_labels, LabeledGraph};
use benzenoid::genesis::{chain_addresses, enumerate_catacondensed, fixture, fixtures, TurnSeq};
use benzenoid::instance::{parse_instance, to_json, to_text};
use benzenoid::pipeline::{check_instance, verify_corpus, CheckOptions, VerifyOptions};
use benzenoid::resonance::{build_digraph, build_resonance_graph, to_dot};
use benzenoid::structure::{inner_dual, order_hexagons, Traversal};
use benzenoid::{build_benzenoid, Benzenoid, HexAddr};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "benzenoid", version, about = "Resonance graphs of catacondensed benzenoid systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct OrderArgs {
    /// Hexagon ordering on the inner dual.
    #[arg(long = "order", value_name = "dfs|bfs", default_value = "dfs")]
    order: Traversal,
    /// Root leaf of the ordering, as "q,r".
    #[arg(long, value_parser = parse_addr, allow_hyphen_values = true)]
    root: Option<HexAddr>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on one instance and print a JSON report.
    Check {
        file: PathBuf,
        #[command(flatten)]
        order: OrderArgs,
        /// Run lemma and theorem checks on non-kinky systems as well.
        #[arg(long)]
        force: bool,
        /// Also check the median property.
        #[arg(long)]
        median: bool,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Export the resonance graph as DOT or JSON.
    Resonance {
        file: PathBuf,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Orient edges from the 0-side to the 1-side of the flipped hexagon.
        #[arg(long)]
        digraph: bool,
        #[command(flatten)]
        order: OrderArgs,
    },
    /// Downward closure and daisy-cube test of a label file (one bit string per line).
    Daisy { file: PathBuf },
    /// Generate instances in the text format (JSON lines with --enumerate).
    Gen {
        /// Chain from a turn sequence over L, R, S.
        #[arg(long, group = "source", allow_hyphen_values = true)]
        turns: Option<String>,
        /// Every catacondensed system with this many hexagons, up to symmetry.
        #[arg(long, group = "source", value_name = "N")]
        enumerate: Option<usize>,
        /// A named fixture.
        #[arg(long, group = "source")]
        fixture: Option<String>,
        /// List fixture names.
        #[arg(long, group = "source")]
        list_fixtures: bool,
        /// With --enumerate, keep kinky systems only.
        #[arg(long, requires = "enumerate")]
        kinky: bool,
    },
    /// Check every catacondensed system up to a size and print a corpus report.
    Verify {
        #[arg(long, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..=8))]
        max_hexes: u64,
        #[arg(long)]
        kinky_only: bool,
        /// Orderings to run; repeatable. Defaults to dfs.
        #[arg(long = "order", value_name = "dfs|bfs")]
        orders: Vec<Traversal>,
        /// Sample random leaf roots with this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Random roots per instance and ordering when seeded.
        #[arg(long, default_value_t = 3)]
        roots: usize,
        /// Use every leaf as a root.
        #[arg(long)]
        all_roots: bool,
        #[arg(long)]
        median: bool,
        /// Print only the summary.
        #[arg(long)]
        summary: bool,
    },
}

enum Failure {
    Input(String),
    Check,
}

impl From<benzenoid::Error> for Failure {
    fn from(e: benzenoid::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn parse_addr(s: &str) -> Result<HexAddr, String> {
    let (q, r) = s.split_once(',').ok_or_else(|| format!("expected \"q,r\", got {s:?}"))?;
    let int = |t: &str| t.trim().parse::<i32>().map_err(|_| format!("invalid integer {t:?}"));
    Ok(HexAddr::new(int(q)?, int(r)?))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Benzenoid, Failure> {
    let text = read(path)?;
    let hexes = parse_instance(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(build_benzenoid(hexes)?)
}

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json<T: Serialize>(value: &T) {
    emit(&(serde_json::to_string_pretty(value).expect("report serializes") + "\n"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { file, order, force, median, timing } => {
            let b = load(&file)?;
            let opts = CheckOptions { traversal: order.order, root: order.root, force, median, timing };
            let report = check_instance(&b, &opts)?;
            print_json(&report);
            if !report.passed() {
                return Err(Failure::Check);
            }
        }
        Command::Resonance { file, dot, json, digraph, order } => {
            if !dot && !json {
                return Err(Failure::Input("one of --dot or --json is required".into()));
            }
            let b = load(&file)?;
            let ord = order_hexagons(&inner_dual(&b)?, order.order, order.root)?;
            let mut rg = build_resonance_graph(&b, &ord)?;
            if digraph {
                rg = build_digraph(rg);
            }
            if dot {
                emit(&to_dot(&rg, digraph));
            } else {
                print_json(&benzenoid::resonance::to_json(&b, &rg, digraph));
            }
        }
        Command::Daisy { file } => {
            let labels = parse_labels(&read(&file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
            let g = LabeledGraph::induced(labels.iter().copied())?;
            let verdict = is_daisy_cube(&g);
            #[derive(Serialize)]
            struct DaisyReport {
                labels: usize,
                maximal: Vec<benzenoid::cubes::BitString>,
                closure: Vec<benzenoid::cubes::BitString>,
                is_daisy: bool,
                #[serde(skip_serializing_if = "Option::is_none")]
                witness: Option<String>,
            }
            print_json(&DaisyReport {
                labels: g.vertex_count(),
                maximal: maximal_elements(&labels).into_iter().collect(),
                closure: downward_closure(&labels).into_iter().collect(),
                is_daisy: verdict.is_daisy,
                witness: verdict.witness.map(|w| w.to_string()),
            });
            if !verdict.is_daisy {
                return Err(Failure::Check);
            }
        }
        Command::Gen { turns, enumerate, fixture: name, list_fixtures, kinky } => {
            if let Some(t) = turns {
                let seq: TurnSeq = t.parse()?;
                emit(&to_text(&chain_addresses(&seq)?));
            } else if let Some(n) = enumerate {
                let lines: String = enumerate_catacondensed(n, kinky).iter().map(|b| to_json(b.hexes()) + "\n").collect();
                emit(&lines);
            } else if let Some(name) = name {
                let b = fixture(&name).ok_or_else(|| Failure::Input(format!("unknown fixture {name:?}")))?;
                emit(&format!("# {name}\n{}", to_text(b.hexes())));
            } else if list_fixtures {
                emit(&fixtures().keys().map(|k| format!("{k}\n")).collect::<String>());
            } else {
                return Err(Failure::Input("one of --turns, --enumerate, --fixture, --list-fixtures is required".into()));
            }
        }
        Command::Verify { max_hexes, kinky_only, orders, seed, roots, all_roots, median, summary } => {
            let opts = VerifyOptions {
                max_hexes: max_hexes as usize,
                kinky_only,
                traversals: if orders.is_empty() { vec![Traversal::Dfs] } else { orders },
                seed,
                random_roots: roots,
                all_roots,
                force: false,
                median,
            };
            let report = verify_corpus(&opts)?;
            if summary {
                print_json(&report.summary);
            } else {
                print_json(&report);
            }
            if !report.passed() {
                return Err(Failure::Check);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
