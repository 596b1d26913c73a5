use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sptree::embed::{all_trees_of_order, contains_tree_with_budget, free_tree_code, DEFAULT_BUDGET};
use sptree::enumerate::{all_graphs, all_graphs_extended};
use sptree::spectral::{lemma1_certificate, spectral_radius_robust};
use sptree::{decode_graph6, encode_edge_list, encode_graph6, FamilySpec, Graph};
use sptree_harness::config::parse_config;
use sptree_harness::report::{read_report, render_report, ReportFormat};
use sptree_harness::{run_campaign, CampaignId, CampaignSpec, HarnessError, Source};

#[derive(Parser)]
#[command(name = "sptree", version, about = "Spectral conditions for trees in graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named family member, e.g. `S+:10,2` or `broom:2,5`.
    Family {
        spec: String,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
    },
    /// Spectral radius of a graph given as graph6 or a family spec.
    Mu {
        graph: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Whether a host contains a tree; prints the embedding if it does.
    Contains {
        host: String,
        tree: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Exact column-sum certificate for `x² − ax − b`. With `--k`, uses
    /// `a = k − 1`, `b = k(n − k)`.
    Certify {
        graph: String,
        #[arg(long)]
        a: Option<u64>,
        #[arg(long)]
        b: Option<u64>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Spool every graph (or free tree) of a given order.
    Enumerate {
        #[arg(value_enum)]
        what: Spool,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        extended: bool,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
    },
    /// Run a verification campaign.
    Verify(VerifyArgs),
    /// Re-render a stored JSON report.
    Report {
        path: PathBuf,
        #[arg(long, default_value = "summary")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphFormat {
    Graph6,
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum Spool {
    Graphs,
    Trees,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of conjecture_a, conjecture_b, theorem_path, theorem_spider,
    /// theorem_brooms, broom_turan, lemma_suite, genbroom_explore.
    campaign: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// `exhaustive`, `random:<count>[:<p>[:<seed>]]` or
    /// `perturb:<split|plus>[:<radius>[:<samples>[:<seed>]]]`.
    #[arg(long)]
    source: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long)]
    shards: Option<usize>,
    #[arg(long)]
    extended: bool,
    /// `json`, `csv` or `summary`.
    #[arg(long, default_value = "summary")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Drop wall-clock timings so repeated runs are byte-identical.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Limit(String),
    Failed(String),
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        if e.is_resource_limit() {
            CliError::Limit(e.to_string())
        } else if matches!(e, HarnessError::Io { .. }) {
            CliError::Failed(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_graph(text: &str) -> Result<Graph, CliError> {
    if text.contains(':') {
        let spec: FamilySpec = text.parse().map_err(usage)?;
        spec.build().map_err(usage)
    } else {
        decode_graph6(text.trim()).map_err(usage)
    }
}

fn print_graph(g: &Graph, format: GraphFormat, out: &mut impl Write) -> std::io::Result<()> {
    match format {
        GraphFormat::Graph6 => writeln!(out, "{}", encode_graph6(g)),
        GraphFormat::Edges => writeln!(out, "{}", encode_edge_list(g)),
    }
}

fn emit(bytes: &[u8], out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| CliError::Failed(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Failed(e.to_string())),
    }
}

fn build_spec(a: &VerifyArgs) -> Result<CampaignSpec, CliError> {
    let mut spec = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            parse_config(&text)?
        }
        None => {
            let campaign: CampaignId = a
                .campaign
                .as_deref()
                .ok_or_else(|| usage("a campaign name or --config is required"))?
                .parse()?;
            let k = a.k.ok_or_else(|| usage("--k is required"))?;
            let n = a.n.ok_or_else(|| usage("--n is required"))?;
            CampaignSpec::new(campaign, k, n)
        }
    };
    if a.config.is_some() {
        if let Some(c) = &a.campaign {
            spec.campaign = c.parse()?;
        }
        if let Some(k) = a.k {
            spec.k = k;
        }
        if let Some(n) = a.n {
            spec.n_min = n;
            spec.n_max = spec.n_max.max(n);
        }
    }
    if let Some(m) = a.n_max {
        spec.n_max = m;
    } else if a.config.is_none() {
        spec.n_max = spec.n_min;
    }
    if let Some(s) = &a.source {
        spec.source = s.parse::<Source>()?;
    }
    if let Some(seed) = a.seed {
        spec.source = spec.source.with_seed(seed);
    }
    if let Some(e) = a.epsilon {
        spec.epsilon = e;
    }
    if let Some(b) = a.budget {
        spec.budget = b;
    }
    if let Some(s) = a.shards {
        spec.shards = s;
    }
    spec.extended |= a.extended;
    spec.validate()?;
    Ok(spec)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let io = |e: std::io::Error| CliError::Failed(e.to_string());
    match cli.command {
        Command::Family { spec, format } => {
            let g = parse_graph(&spec)?;
            print_graph(&g, format, &mut out).map_err(io)?;
        }
        Command::Mu { graph, tol } => {
            let g = parse_graph(&graph)?;
            let r = spectral_radius_robust(&g, tol).map_err(usage)?;
            let v = json!({"mu": r.mu, "residual": r.residual, "iterations": r.iterations, "component": r.component_id});
            writeln!(out, "{v}").map_err(io)?;
        }
        Command::Contains { host, tree, budget } => {
            let h = parse_graph(&host)?;
            let t = parse_graph(&tree)?;
            match contains_tree_with_budget(&h, &t, budget) {
                Ok(found) => {
                    let v = json!({"contained": found.is_some(), "embedding": found});
                    writeln!(out, "{v}").map_err(io)?;
                }
                Err(e) => return Err(HarnessError::from(e).into()),
            }
        }
        Command::Certify { graph, a, b, k } => {
            let g = parse_graph(&graph)?;
            let (a, b) = match (a, b, k) {
                (Some(a), Some(b), None) => (a, b),
                (None, None, Some(k)) if k >= 1 && k < g.n() => ((k - 1) as u64, (k * (g.n() - k)) as u64),
                _ => return Err(usage("give either --a and --b, or --k with 1 <= k < n")),
            };
            let c = lemma1_certificate::<f64>(&g, a, b).map_err(usage)?;
            writeln!(out, "{}", serde_json::to_string(&c).map_err(usage)?).map_err(io)?;
        }
        Command::Enumerate {
            what,
            n,
            connected,
            extended,
            format,
        } => match what {
            Spool::Graphs => {
                let cursor = if extended {
                    all_graphs_extended(n, connected)
                } else {
                    all_graphs(n, connected)
                }
                .map_err(HarnessError::from)?;
                for g in cursor {
                    print_graph(&g, format, &mut out).map_err(io)?;
                }
            }
            Spool::Trees => {
                for t in all_trees_of_order(n).map_err(HarnessError::from)? {
                    match format {
                        GraphFormat::Graph6 => writeln!(out, "{}", encode_graph6(&t)),
                        GraphFormat::Edges => {
                            writeln!(out, "{} {}", free_tree_code(&t).expect("tree"), encode_edge_list(&t))
                        }
                    }
                    .map_err(io)?;
                }
            }
        },
        Command::Verify(args) => {
            let format: ReportFormat = args.format.parse()?;
            let spec = build_spec(&args)?;
            let mut report = run_campaign(&spec)?;
            if args.no_timings {
                report.timings = None;
            }
            drop(out);
            emit(&render_report(&report, format)?, args.out.as_ref())?;
            if args.out.is_some() && format != ReportFormat::Summary {
                eprint!("{}", report.summary());
            }
            if report.has_violations() {
                return Ok(1);
            }
            if !report.errors.is_empty() {
                return Ok(3);
            }
        }
        Command::Report { path, format, out: dest } => {
            let format: ReportFormat = format.parse()?;
            let report = read_report(&path)?;
            drop(out);
            emit(&render_report(&report, format)?, dest.as_ref())?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Limit(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(CliError::Failed(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
