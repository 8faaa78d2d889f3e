use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mcskel_core::classify::DEFAULT_ENUMERATE_CAP;
use mcskel_core::cost::{run_strategy, Strategy};
use mcskel_core::dot::skeleton_matrix_dot;
use mcskel_core::skeleton::pruned_tree;
use mcskel_core::{
    classify_brute_force, classify_with, is_essentially_irreducible, is_irreducible, lift,
    parse_kernel_with, random_kernel, skeleton_pruned, to_document, ClassifyOptions,
    EssentialMethod, LoadOptions, OpCount, PruneOptions, Report, SupportKernel,
};

#[derive(Parser)]
#[command(name = "mcskel", version, about = "Skeletons and structural classification of higher-order Markov chains")]
struct Cli {
    /// Treat probabilities below this value as zero when loading kernels.
    #[arg(long, global = true, value_name = "EPS")]
    zero_tol: Option<f64>,

    /// Write the main output here instead of stdout.
    #[arg(short, long, global = true, value_name = "PATH")]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract the skeleton of a kernel.
    Skeleton {
        kernel: PathBuf,
        /// Print the pruned context tree instead of the word table.
        #[arg(long)]
        tree: bool,
        #[arg(long)]
        json: bool,
        /// Also write the pruned tree as DOT.
        #[arg(long, value_name = "PATH")]
        emit_dot: Option<PathBuf>,
    },
    /// Classify a kernel through its skeleton matrix.
    Classify {
        kernel: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cap: CapArgs,
        /// Also write the skeleton-matrix graph as DOT.
        #[arg(long, value_name = "PATH")]
        emit_dot: Option<PathBuf>,
    },
    /// Decide one property; exit 0 if it holds, 1 if not.
    Check {
        kernel: PathBuf,
        #[command(flatten)]
        property: Property,
        #[arg(long, value_enum, default_value_t = Method::Scc)]
        method: Method,
    },
    /// Classify by brute force on the lifted first-order chain.
    Oracle {
        kernel: PathBuf,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        cap: CapArgs,
    },
    /// Generate a random full-table kernel.
    Gen {
        #[arg(long)]
        alphabet_size: usize,
        #[arg(long)]
        order: usize,
        #[arg(long)]
        prohibition_rate: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare the cost of the essential-irreducibility strategies.
    Bench {
        kernel: PathBuf,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Write a graph as DOT.
    ExportDot {
        kernel: PathBuf,
        #[arg(long, value_enum, default_value_t = Graph::Matrix)]
        graph: Graph,
    },
}

#[derive(Args)]
struct CapArgs {
    /// List recurrent words only when |A|^m is at most this.
    #[arg(long, default_value_t = DEFAULT_ENUMERATE_CAP)]
    enumerate_cap: usize,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Property {
    #[arg(long)]
    essential: bool,
    #[arg(long)]
    irreducible: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Scc,
    MatrixSum,
}

#[derive(Clone, Copy, ValueEnum)]
enum Graph {
    /// Skeleton matrix on A^K, closed classes colored.
    Matrix,
    /// Pruned context tree.
    Tree,
}

struct BenchRow {
    strategy: &'static str,
    states: Option<usize>,
    essentially_irreducible: Option<bool>,
    wall_ms: Option<f64>,
    row_ops: Option<u64>,
    word_ops: Option<u64>,
    edge_visits: Option<u64>,
    steps: Option<u64>,
    total_ops: Option<u64>,
    note: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path, zero_tol: Option<f64>) -> Result<SupportKernel> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_kernel_with(&text, LoadOptions { zero_tol })
        .with_context(|| format!("loading {}", path.display()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let out = cli.output.as_deref();
    if let Some(eps) = cli.zero_tol {
        if !(eps.is_finite() && eps >= 0.0) {
            bail!("--zero-tol must be a finite non-negative number");
        }
    }
    match &cli.command {
        Command::Skeleton { kernel, tree, json, emit_dot } => {
            let k = load(kernel, cli.zero_tol)?;
            let alphabet = k.alphabet();
            let text = if *tree || emit_dot.is_some() {
                let t = pruned_tree(&k, PruneOptions::default(), &mut OpCount::default());
                if let Some(p) = emit_dot {
                    write_file(p, &t.to_dot(alphabet))?;
                }
                let s = t.to_skeleton();
                if *json {
                    skeleton_json(&k, &s)
                } else if *tree {
                    format!("K = {}\n{}", s.order(), s.render_tree(alphabet))
                } else {
                    format!("K = {}\n{}", s.order(), s.render_table(alphabet))
                }
            } else {
                let s = skeleton_pruned(&k);
                if *json {
                    skeleton_json(&k, &s)
                } else {
                    format!("K = {}\n{}", s.order(), s.render_table(alphabet))
                }
            };
            emit(out, &text)?;
        }
        Command::Classify { kernel, json, cap, emit_dot } => {
            let k = load(kernel, cli.zero_tol)?;
            let c = classify_with(&k, ClassifyOptions { enumerate_cap: cap.enumerate_cap })?;
            if let Some(p) = emit_dot {
                write_file(p, &skeleton_matrix_dot(k.alphabet(), &c.matrix, &c.decomposition))?;
            }
            let report = Report::from_classification(&c, k.alphabet());
            emit(out, &render(&report, *json))?;
        }
        Command::Check { kernel, property, method } => {
            let k = load(kernel, cli.zero_tol)?;
            let (holds, line) = if property.essential {
                let method = match method {
                    Method::Scc => EssentialMethod::Scc,
                    Method::MatrixSum => EssentialMethod::MatrixSum,
                };
                let v = is_essentially_irreducible(&k, method)?;
                (v, format!("essentially irreducible: {v}\n"))
            } else {
                let v = is_irreducible(&k)?;
                (v.irreducible, format!("irreducible: {} ({})\n", v.irreducible, v.reason))
            };
            emit(out, &line)?;
            return Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Oracle { kernel, json, cap } => {
            let k = load(kernel, cli.zero_tol)?;
            let chain = lift(&k)?;
            let bf = classify_brute_force(&chain);
            let report = Report::from_brute_force(&bf, k.alphabet(), k.order(), cap.enumerate_cap);
            emit(out, &render(&report, *json))?;
        }
        Command::Gen { alphabet_size, order, prohibition_rate, seed } => {
            if *alphabet_size < 1 || *order < 1 {
                bail!("--alphabet-size and --order must be at least 1");
            }
            let k = random_kernel(*alphabet_size, *order, *prohibition_rate, *seed)?;
            emit(out, &to_document(&k))?;
        }
        Command::Bench { kernel, repeat, csv } => {
            let k = load(kernel, cli.zero_tol)?;
            let rows = bench(&k, (*repeat).max(1));
            emit(out, &if *csv { bench_csv(&rows) } else { bench_table(&rows) })?;
        }
        Command::ExportDot { kernel, graph } => {
            let k = load(kernel, cli.zero_tol)?;
            let text = match graph {
                Graph::Matrix => {
                    let c = classify_with(&k, ClassifyOptions { enumerate_cap: 0 })?;
                    skeleton_matrix_dot(k.alphabet(), &c.matrix, &c.decomposition)
                }
                Graph::Tree => pruned_tree(&k, PruneOptions::default(), &mut OpCount::default())
                    .to_dot(k.alphabet()),
            };
            emit(out, &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn render(report: &Report, json: bool) -> String {
    if json {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        report.to_text()
    }
}

fn skeleton_json(k: &SupportKernel, s: &mcskel_core::Skeleton) -> String {
    let words: Vec<serde_json::Value> = s
        .words()
        .iter()
        .map(|w| {
            serde_json::json!({
                "word": k.alphabet().render(w.word.symbols()),
                "support": w.support.as_ints(),
            })
        })
        .collect();
    let doc = serde_json::json!({ "skeleton_order": s.order(), "skeleton": words });
    let mut text = serde_json::to_string_pretty(&doc).expect("json value serializes");
    text.push('\n');
    text
}

fn bench(k: &SupportKernel, repeat: usize) -> Vec<BenchRow> {
    Strategy::ALL
        .iter()
        .map(|&strategy| {
            let mut best: Option<Duration> = None;
            let mut last = None;
            for _ in 0..repeat {
                match run_strategy(k, strategy) {
                    Ok(r) => {
                        best = Some(best.map_or(r.elapsed, |b| b.min(r.elapsed)));
                        last = Some(Ok(r));
                    }
                    Err(e) => {
                        last = Some(Err(e));
                        break;
                    }
                }
            }
            match last.expect("at least one repetition") {
                Ok(r) => BenchRow {
                    strategy: strategy.name(),
                    states: Some(r.states),
                    essentially_irreducible: Some(r.essentially_irreducible),
                    wall_ms: best.map(|d| d.as_secs_f64() * 1e3),
                    row_ops: Some(r.ops.row_ops),
                    word_ops: Some(r.ops.word_ops),
                    edge_visits: Some(r.ops.edge_visits),
                    steps: Some(r.ops.steps),
                    total_ops: Some(r.ops.total()),
                    note: None,
                },
                Err(e) => BenchRow {
                    strategy: strategy.name(),
                    states: None,
                    essentially_irreducible: None,
                    wall_ms: None,
                    row_ops: None,
                    word_ops: None,
                    edge_visits: None,
                    steps: None,
                    total_ops: None,
                    note: Some(format!("skipped: {e}")),
                },
            }
        })
        .collect()
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), T::to_string)
}

fn bench_table(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:<16} {:>9} {:>7} {:>11} {:>14} {:>14}\n",
        "strategy", "states", "answer", "wall ms", "row/edge ops", "total ops"
    );
    for r in rows {
        if let Some(note) = &r.note {
            out.push_str(&format!("{:<16} {note}\n", r.strategy));
            continue;
        }
        let inner = r.row_ops.unwrap_or(0) + r.edge_visits.unwrap_or(0);
        out.push_str(&format!(
            "{:<16} {:>9} {:>7} {:>11.3} {:>14} {:>14}\n",
            r.strategy,
            opt(&r.states),
            opt(&r.essentially_irreducible),
            r.wall_ms.unwrap_or(0.0),
            inner,
            opt(&r.total_ops)
        ));
    }
    let total = |name: &str| rows.iter().find(|r| r.strategy == name).and_then(|r| r.total_ops);
    if let (Some(naive), Some(fast)) = (total("naive-power-sum"), total("skeleton-tarjan")) {
        out.push_str(&format!(
            "op-count ratio naive-power-sum / skeleton-tarjan: {:.1}\n",
            naive as f64 / fast.max(1) as f64
        ));
    }
    out
}

fn bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(
        "strategy,states,essentially_irreducible,wall_ms,row_ops,word_ops,edge_visits,steps,total_ops,note\n",
    );
    for r in rows {
        let blank = |s: String| if s == "-" { String::new() } else { s };
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.strategy,
            blank(opt(&r.states)),
            blank(opt(&r.essentially_irreducible)),
            r.wall_ms.map(|v| format!("{v:.6}")).unwrap_or_default(),
            blank(opt(&r.row_ops)),
            blank(opt(&r.word_ops)),
            blank(opt(&r.edge_visits)),
            blank(opt(&r.steps)),
            blank(opt(&r.total_ops)),
            r.note.as_deref().unwrap_or("").replace(',', ";"),
        ));
    }
    out
}
