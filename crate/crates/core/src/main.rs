use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};

use expert_core::centrality::{EdgeLength, FeatureScope};
use expert_core::corpus::{load_training_labels, ParseMode};
use expert_core::graph::{graph_stats, parse_edge_list};
use expert_core::index::{
    training_set, ExpertIndex, IndexSnapshot, PipelineConfig, GRAPH_FILE, MODEL_FILE, VOTES_FILE,
};
use expert_core::ranker::{
    bootstrap_labels, rank_experts, train_c45, DecisionTree, TrainParams, VoteStore,
};
use expert_core::service::{self, parse_status_filter, AppState, ServiceConfig};

#[derive(Parser)]
#[command(
    name = "expert-search",
    version,
    about = "Find experts in a scholarly social network"
)]
struct Cli {
    /// Index directory used by train, query, vote and stats.
    #[arg(long, global = true, default_value = "index")]
    index: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve persons, build the graph and write features to OUT_DIR.
    BuildIndex {
        corpus_dir: PathBuf,
        out_dir: PathBuf,
        /// Skip malformed records instead of failing.
        #[arg(long)]
        lenient: bool,
        /// Weight contributed by a profile friendship.
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Add edges between members of the same public group.
        #[arg(long)]
        group_edges: bool,
        /// Measure centralities on the full graph rather than per category.
        #[arg(long)]
        full_graph: bool,
        /// Use unit edge lengths for shortest paths instead of 1/weight.
        #[arg(long)]
        unit_lengths: bool,
        #[arg(long, default_value_t = 0.85)]
        damping: f64,
    },
    /// Train the expertise model from labels (bootstrap labels if omitted).
    Train {
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        min_leaf: usize,
        #[arg(long, default_value_t = 6)]
        max_depth: usize,
        /// Skip labels that do not resolve instead of failing.
        #[arg(long)]
        lenient: bool,
    },
    /// Print the ranked experts of a category.
    Query {
        #[arg(long)]
        category: String,
        /// Comma list of statuses: professor, postdoc, phd_student, other.
        #[arg(long)]
        status: Option<String>,
        #[arg(short, default_value_t = 20)]
        k: usize,
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Record a +1 / -1 vote for a person.
    Vote {
        #[arg(long)]
        person: String,
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long, default_value = "cli")]
        voter: String,
    },
    /// Print graph statistics for the index.
    Stats,
    /// Run the HTTP service.
    Serve {
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();

    match cli.command {
        Command::BuildIndex {
            corpus_dir,
            out_dir,
            lenient,
            alpha,
            group_edges,
            full_graph,
            unit_lengths,
            damping,
        } => {
            #[allow(clippy::neg_cmp_op_on_partial_ord)]
            if !(alpha > 0.0) {
                bail!("--alpha must be positive");
            }
            if !(damping > 0.0 && damping < 1.0) {
                bail!("--damping must lie in (0, 1)");
            }
            let mut config = PipelineConfig::default();
            config.graph.weights.profile_alpha = alpha;
            config.graph.group_edges = group_edges;
            config.centrality.pagerank.damping = damping;
            if full_graph {
                config.centrality.scope = FeatureScope::FullGraph;
            }
            if unit_lengths {
                config.centrality.edge_length = EdgeLength::Unit;
            }
            let mode = if lenient {
                ParseMode::Lenient
            } else {
                ParseMode::Strict
            };
            let index = ExpertIndex::load(&corpus_dir, mode, config)
                .with_context(|| format!("loading corpus {}", corpus_dir.display()))?;
            std::fs::create_dir_all(&out_dir)
                .with_context(|| format!("creating {}", out_dir.display()))?;
            let votes = VoteStore::open(&out_dir.join(VOTES_FILE))?;
            index.write(&out_dir, &votes)?;
            let r = &index.fused.resolution.report;
            writeln!(
                out,
                "{} profiles, {} publications, {} profile edges",
                index.corpus.profiles.len(),
                index.corpus.publications.len(),
                index.corpus.edges.len()
            )?;
            writeln!(
                out,
                "{} distinct authors: {} matched, {} discarded for ties, {} above threshold",
                r.distinct_authors, r.matched, r.discarded_for_tie, r.below_threshold
            )?;
            write!(out, "{}", graph_stats(&index.fused.graph))?;
        }
        Command::Train {
            labels,
            out: model_out,
            min_leaf,
            max_depth,
            lenient,
        } => {
            let snapshot = IndexSnapshot::open(&cli.index)?;
            let votes = snapshot.votes()?;
            let table = snapshot.features_with_votes(&votes);
            let labels = match labels {
                Some(path) => {
                    let mode = if lenient {
                        ParseMode::Lenient
                    } else {
                        ParseMode::Strict
                    };
                    load_training_labels(&path, mode)?.items
                }
                None => bootstrap_labels(table.values().flatten()),
            };
            let data = training_set(&labels, &snapshot.persons, &table, !lenient)?;
            let tree = train_c45(
                &data,
                &TrainParams {
                    min_leaf,
                    max_depth,
                },
            )?;
            let path = model_out.unwrap_or_else(|| cli.index.join(MODEL_FILE));
            std::fs::write(&path, tree.to_text())
                .with_context(|| format!("writing {}", path.display()))?;
            writeln!(
                out,
                "trained on {} examples: depth {}, {} leaves -> {}",
                data.len(),
                tree.depth(),
                tree.leaves().len(),
                path.display()
            )?;
        }
        Command::Query {
            category,
            status,
            k,
            model,
        } => {
            let snapshot = IndexSnapshot::open(&cli.index)?;
            let votes = snapshot.votes()?;
            let table = snapshot.features_with_votes(&votes);
            let model = model.unwrap_or_else(|| cli.index.join(MODEL_FILE));
            let text = std::fs::read_to_string(&model)
                .with_context(|| format!("reading model {}", model.display()))?;
            let tree = DecisionTree::from_text(&text)?;
            let statuses = parse_status_filter(status.as_deref()).map_err(anyhow::Error::msg)?;
            let ranked = rank_experts(
                &category,
                &statuses,
                k,
                &tree,
                table.get(&category).map(Vec::as_slice),
                |p| snapshot.status_of(p),
            )?;
            for e in ranked.entries {
                let person = snapshot.person(&e.person_id);
                writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{:.6}",
                    e.rank,
                    e.person_id,
                    person.map(|p| p.display_name.as_str()).unwrap_or(""),
                    snapshot.status_of(&e.person_id),
                    e.score
                )?;
            }
        }
        Command::Vote {
            person,
            delta,
            voter,
        } => {
            let snapshot = IndexSnapshot::open(&cli.index)?;
            let mut votes = snapshot.votes()?;
            let tally =
                votes.apply_vote(&voter, &person, delta, |p| snapshot.person(p).is_some())?;
            writeln!(out, "{person}\t{tally}")?;
        }
        Command::Stats => {
            let snapshot = IndexSnapshot::open(&cli.index)?;
            let path = cli.index.join(GRAPH_FILE);
            let text = std::fs::read_to_string(&path)
                .with_context(|| format!("reading {}", path.display()))?;
            let graph =
                parse_edge_list(&text, snapshot.persons.iter().map(|p| p.person_id.as_str()))
                    .map_err(|(line, msg)| anyhow::anyhow!("{}:{line}: {msg}", path.display()))?;
            write!(out, "{}", graph_stats(&graph))?;
        }
        Command::Serve { config } => {
            let config = match config {
                Some(path) => ServiceConfig::from_file(&path)?,
                None => ServiceConfig::default(),
            }
            .with_env()?;
            let state = Arc::new(AppState::from_config(&config)?);
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(service::serve(state, config.port))?;
        }
    }
    Ok(())
}
