use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use groupcent::fixtures;
use groupcent::graph::{parse_edge_list, parse_label_file, write_edge_list, write_label_file};
use groupcent::io::{
    digest, ingest_triples, render_report_tsv, render_scores_tsv, render_values_tsv,
    write_sample_mapping, CentralityReport, Envelope, FamilySummary, IngestSummary, RunManifest,
    SampleSummary,
};
use groupcent::linalg::RESIDUAL_TOLERANCE;
use groupcent::measures::Measure;
use groupcent::optimizer::{cross_measure_report, evaluate, OptimizerConfig, DEFAULT_BUDGET};
use groupcent::random_walk::{
    hitting_time_set, monte_carlo_hitting, HittingRoute, MonteCarloConfig,
};
use groupcent::sampling::{
    generate_family, random_walk_sample, FamilyParams, SampleConfig, DEFAULT_RESTART_PROBABILITY,
};
use groupcent::{Error, Graph, VertexSet};
use regex::Regex;
use serde::Serialize;

/// Group centrality measures and exact optimal-set search.
#[derive(Debug, Parser)]
#[command(name = "groupcent", version)]
struct Cli {
    /// Worker threads for enumeration and Monte-Carlo walks.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Seed for sampling and Monte-Carlo runs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Largest number of subsets one search may enumerate.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Relative tie tolerance for betweenness and random-walk scores.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
struct GraphInput {
    /// Edge-list file, or `@novice` / `@expert` for the bundled networks.
    graph: String,
    /// Label file (`index<TAB>label`).
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Read a third column as edge weights.
    #[arg(long)]
    weighted: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score one vertex set under several measures.
    Centrality {
        #[command(flatten)]
        input: GraphInput,
        /// Comma-separated vertex ids or labels.
        #[arg(long)]
        set: String,
        #[arg(long, value_delimiter = ',', default_value = "degree,closeness,betweenness,randomwalk")]
        measures: Vec<Measure>,
    },
    /// Optimal sets of every size up to `--k-max` for each measure.
    Optimum {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        k_max: usize,
        #[arg(long, value_delimiter = ',', default_value = "degree,closeness,betweenness,randomwalk")]
        measures: Vec<Measure>,
        /// Print numeric ids even when the graph has labels.
        #[arg(long)]
        ids: bool,
    },
    /// Hitting times from every vertex to a set.
    Hitting {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        set: String,
        /// absorbing, contraction or montecarlo.
        #[arg(long, default_value = "absorbing")]
        route: HittingRoute,
        /// Walks per source vertex (montecarlo only).
        #[arg(long)]
        walks: Option<u64>,
        /// Step cap per walk; defaults to 100 n^2.
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Random-walk sample with restarts, written as `<out>.edges` and `<out>.map`.
    Sample {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        target: usize,
        #[arg(long, default_value_t = DEFAULT_RESTART_PROBABILITY)]
        restart: f64,
        /// Step budget; defaults to 10000 times the target.
        #[arg(long)]
        step_budget: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hub graph with `m` n-cliques and `m` n-stars, written as
    /// `<out>.edges` and `<out>.labels`.
    Family {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Undirected edge list from `subject predicate object` lines, written
    /// as `<out>.edges` and `<out>.labels`.
    Ingest {
        triples: PathBuf,
        /// Keep triples whose predicate matches this regular expression.
        #[arg(long)]
        predicate: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
}

struct Loaded {
    graph: Graph,
    digest: String,
}

fn load_graph(input: &GraphInput) -> anyhow::Result<Loaded> {
    let (graph, mut bytes) = match input.graph.as_str() {
        "@novice" => (fixtures::novice(), fixtures::NOVICE_EDGES.as_bytes().to_vec()),
        "@expert" => (fixtures::expert(), fixtures::EXPERT_EDGES.as_bytes().to_vec()),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            let g = parse_edge_list(&text, input.weighted).with_context(|| format!("parsing {path}"))?;
            (g, text.into_bytes())
        }
    };
    let graph = match &input.labels {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            bytes.extend_from_slice(text.as_bytes());
            parse_label_file(&graph, &text).with_context(|| format!("parsing {}", path.display()))?
        }
        None => graph,
    };
    Ok(Loaded {
        digest: digest(&bytes),
        graph,
    })
}

struct Emitter {
    format: Format,
    manifest: RunManifest,
    started: Instant,
}

impl Emitter {
    fn emit<T: Serialize>(mut self, result: T, tsv: impl FnOnce(&T) -> String) -> anyhow::Result<()> {
        self.manifest.wall_time_ms = self.started.elapsed().as_secs_f64() * 1e3;
        match self.format {
            Format::Json => {
                let env = Envelope {
                    manifest: self.manifest,
                    result,
                };
                println!("{}", serde_json::to_string_pretty(&env)?);
            }
            Format::Tsv => print!("{}{}", self.manifest.as_comment(), tsv(&result)),
        }
        Ok(())
    }
}

fn write_output(path: &Path, manifest: &RunManifest, body: &str) -> anyhow::Result<()> {
    fs::write(path, format!("{}{body}", manifest.as_comment()))
        .with_context(|| format!("writing {}", path.display()))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn key_values(pairs: &[(&str, String)]) -> String {
    pairs.iter().fold(String::new(), |mut out, (k, v)| {
        writeln!(out, "{k}\t{v}").unwrap();
        out
    })
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let started = Instant::now();
    let workers = cli
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if workers == 0 {
        bail!(Error::InvalidArgument("--workers must be at least 1".into()));
    }
    let opt = OptimizerConfig {
        budget: cli.budget,
        workers,
        tolerance: cli.tolerance,
    };
    let mut manifest = RunManifest::new(match &cli.command {
        Command::Centrality { .. } => "centrality",
        Command::Optimum { .. } => "optimum",
        Command::Hitting { .. } => "hitting",
        Command::Sample { .. } => "sample",
        Command::Family { .. } => "family",
        Command::Ingest { .. } => "ingest",
    });
    manifest.tolerances = BTreeMap::from([
        ("tie".to_string(), cli.tolerance),
        ("residual".to_string(), RESIDUAL_TOLERANCE),
    ]);
    manifest.seeds.extend(cli.seed);
    let ctx = |manifest| Emitter {
        format: cli.format,
        manifest,
        started,
    };

    match cli.command {
        Command::Centrality { input, set, measures } => {
            let loaded = load_graph(&input)?;
            manifest.input_digest = Some(loaded.digest);
            let g = &loaded.graph;
            let s = VertexSet::parse(g, &set)?;
            let scores = measures
                .iter()
                .map(|&m| Ok((m, evaluate(g, &s, m)?)))
                .collect::<groupcent::Result<Vec<_>>>()?;
            ctx(manifest).emit(CentralityReport::new(g, s, scores), render_scores_tsv)
        }
        Command::Optimum {
            input,
            k_max,
            measures,
            ids,
        } => {
            let loaded = load_graph(&input)?;
            manifest.input_digest = Some(loaded.digest);
            let g = &loaded.graph;
            let report = cross_measure_report(g, k_max, &measures, &opt)?;
            let labels = g.labels().is_some() && !ids;
            ctx(manifest).emit(report, |r| {
                format!("{}\n{}", render_report_tsv(g, r, labels), render_values_tsv(r))
            })
        }
        Command::Hitting {
            input,
            set,
            route,
            walks,
            max_steps,
        } => {
            let loaded = load_graph(&input)?;
            manifest.input_digest = Some(loaded.digest);
            let g = &loaded.graph;
            let s = VertexSet::parse(g, &set)?;
            let solution = match route {
                HittingRoute::MonteCarlo => {
                    let (Some(seed), Some(walks)) = (cli.seed, walks) else {
                        bail!(Error::InvalidArgument(
                            "the montecarlo route needs --seed and --walks".into()
                        ));
                    };
                    let cfg = MonteCarloConfig {
                        max_steps,
                        workers,
                        ..MonteCarloConfig::new(walks, seed)
                    };
                    monte_carlo_hitting(g, &s, &cfg)?
                }
                analytic => hitting_time_set(g, &s, analytic)?,
            };
            ctx(manifest).emit(solution, |sol| {
                let mut out = String::from("vertex\tlabel\thitting_time");
                if sol.stderr.is_some() {
                    out.push_str("\tstderr");
                }
                out.push('\n');
                for v in 0..g.n() {
                    write!(out, "{v}\t{}\t{}", g.label(v).unwrap_or(""), sol.h[v]).unwrap();
                    if let Some(se) = &sol.stderr {
                        write!(out, "\t{}", se[v]).unwrap();
                    }
                    out.push('\n');
                }
                out
            })
        }
        Command::Sample {
            input,
            target,
            restart,
            step_budget,
            out,
        } => {
            let Some(seed) = cli.seed else {
                bail!(Error::InvalidArgument("sample needs --seed".into()));
            };
            let loaded = load_graph(&input)?;
            manifest.input_digest = Some(loaded.digest);
            let mut cfg = SampleConfig::new(target, seed);
            cfg.restart_probability = restart;
            if let Some(b) = step_budget {
                cfg.step_budget = b;
            }
            let sample = random_walk_sample(&loaded.graph, &cfg)?;
            if sample.was_reduced() {
                eprintln!(
                    "induced subgraph was disconnected; kept {} of {} vertices",
                    sample.original_ids.len(),
                    sample.visited
                );
            }
            write_output(&with_suffix(&out, ".edges"), &manifest, &write_edge_list(&sample.graph))?;
            write_output(
                &with_suffix(&out, ".map"),
                &manifest,
                &write_sample_mapping(&sample, &loaded.graph),
            )?;
            let summary = SampleSummary::from(&sample);
            ctx(manifest).emit(summary, |s| {
                key_values(&[
                    ("start", s.start.to_string()),
                    ("steps", s.steps.to_string()),
                    ("visited", s.visited.to_string()),
                    ("vertices", s.vertices.to_string()),
                    ("edges", s.edges.to_string()),
                    ("reduced", s.reduced.to_string()),
                ])
            })
        }
        Command::Family { n, m, out } => {
            let params = FamilyParams { n, m };
            let family = generate_family(params)?;
            let g = &family.graph;
            write_output(&with_suffix(&out, ".edges"), &manifest, &write_edge_list(g))?;
            write_output(
                &with_suffix(&out, ".labels"),
                &manifest,
                &write_label_file(g).expect("family graphs are labeled"),
            )?;
            ctx(manifest).emit(FamilySummary::new(params, &family), |s| {
                key_values(&[
                    ("vertices", s.vertices.to_string()),
                    ("edges", s.edges.to_string()),
                    ("hub", s.hub.to_string()),
                    ("clique_solution", s.clique_solution.display_with(g)),
                    ("star_solution", s.star_solution.display_with(g)),
                ])
            })
        }
        Command::Ingest {
            triples,
            predicate,
            out,
        } => {
            let text = fs::read_to_string(&triples)
                .with_context(|| format!("reading {}", triples.display()))?;
            manifest.input_digest = Some(digest(text.as_bytes()));
            let filter = predicate
                .as_deref()
                .map(Regex::new)
                .transpose()
                .map_err(|e| Error::InvalidArgument(format!("bad predicate pattern: {e}")))?;
            let ingested = ingest_triples(&text, filter.as_ref())
                .with_context(|| format!("parsing {}", triples.display()))?;
            eprintln!(
                "collapsed {} duplicate edges, dropped {} self-loops",
                ingested.duplicates, ingested.self_loops
            );
            let g = &ingested.graph;
            write_output(&with_suffix(&out, ".edges"), &manifest, &write_edge_list(g))?;
            write_output(
                &with_suffix(&out, ".labels"),
                &manifest,
                &write_label_file(g).unwrap_or_default(),
            )?;
            ctx(manifest).emit(IngestSummary::from(&ingested), |s| {
                key_values(&[
                    ("triples", s.triples.to_string()),
                    ("matched", s.matched.to_string()),
                    ("duplicates", s.duplicates.to_string()),
                    ("self_loops", s.self_loops.to_string()),
                    ("vertices", s.vertices.to_string()),
                    ("edges", s.edges.to_string()),
                ])
            })
        }
    }
}

/// 2 for input errors, 3 for exceeded budgets, 4 for numerical failures.
fn exit_code(err: &anyhow::Error) -> u8 {
    let Some(e) = err.chain().find_map(|c| c.downcast_ref::<Error>()) else {
        return 2;
    };
    match e {
        Error::BudgetExceeded { .. } | Error::SampleBudgetExhausted { .. } => 3,
        Error::Numerical(_) | Error::TruncatedWalks { .. } | Error::CountOverflow => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
