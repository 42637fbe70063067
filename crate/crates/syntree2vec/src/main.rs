use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use syntree2vec::core::BiasMode;
use syntree2vec::pipeline::{cmd_build, cmd_query, cmd_stats, cmd_train, cmd_walk, format_neighbours};
use syntree2vec::{Error, PipelineConfig, TableLayout};

/// Word embeddings from random walks over dependency parse trees.
#[derive(Debug, Parser)]
#[command(name = "syntree2vec", version)]
struct Cli {
    /// TOML config; flags given on the command line override it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Print the effective config document to stderr before running.
    #[arg(long, global = true)]
    show_config: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build the giant graph from CoNLL-U files.
    Build {
        #[arg(required = true)]
        corpus: Vec<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        case_fold: Option<bool>,
        #[arg(long)]
        drop_punct: Option<bool>,
        #[arg(long)]
        min_count: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Generate the walk corpus from a graph file.
    Walk {
        graph: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[command(flatten)]
        walk: WalkArgs,
        /// Also write every transition distribution to this file.
        #[arg(long, value_name = "FILE")]
        dump: Option<PathBuf>,
    },
    /// Train skip-gram embeddings on a walk corpus.
    Train {
        walks: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Take the vocabulary from this graph file.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[command(flatten)]
        train: TrainArgs,
        #[arg(long)]
        quiet: bool,
    },
    /// Nearest neighbours of a word by cosine similarity.
    Query {
        embeddings: PathBuf,
        word: String,
        #[arg(short = 'n', long, default_value_t = 10)]
        top_n: usize,
    },
    /// Summarize a graph file.
    Stats {
        graph: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct WalkArgs {
    /// syntree2vec, node2vec-baseline or uniform-walk
    #[arg(long)]
    mode: Option<BiasMode>,
    /// Return parameter.
    #[arg(short, long)]
    p: Option<f64>,
    /// In-out parameter.
    #[arg(short, long)]
    q: Option<f64>,
    #[arg(short = 'r', long)]
    walks_per_node: Option<usize>,
    #[arg(short = 'l', long)]
    walk_length: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum)]
    tables: Option<TableLayout>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(short = 'k', long)]
    window: Option<usize>,
    #[arg(short, long)]
    dim: Option<usize>,
    #[arg(long)]
    epochs: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    negatives: Option<usize>,
    #[arg(long)]
    noise_exponent: Option<f64>,
    #[arg(long)]
    subsample: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

fn set<T>(field: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *field = v;
    }
}

impl WalkArgs {
    fn apply(self, c: &mut PipelineConfig) {
        set(&mut c.mode, self.mode);
        set(&mut c.p, self.p);
        set(&mut c.q, self.q);
        set(&mut c.walks_per_node, self.walks_per_node);
        set(&mut c.walk_length, self.walk_length);
        set(&mut c.walk_seed, self.seed);
        set(&mut c.tables, self.tables);
        set(&mut c.threads, self.threads);
    }
}

impl TrainArgs {
    fn apply(self, c: &mut PipelineConfig) {
        set(&mut c.window, self.window);
        set(&mut c.dim, self.dim);
        set(&mut c.epochs, self.epochs);
        set(&mut c.learning_rate, self.learning_rate);
        set(&mut c.negatives, self.negatives);
        set(&mut c.noise_exponent, self.noise_exponent);
        if self.subsample.is_some() {
            c.subsample = self.subsample;
        }
        set(&mut c.train_seed, self.seed);
        set(&mut c.threads, self.threads);
    }
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<(), Error> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn report(stats: &syntree2vec::stats::StatsReport, json: bool) -> Result<(), Error> {
    if json {
        emit(&format!("{}\n", stats.to_json()))
    } else {
        emit(&stats.to_string())
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    let mut config = match &cli.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    let show = |c: &PipelineConfig| {
        if cli.show_config {
            eprint!("{}", c.to_document());
        }
    };
    match cli.command {
        Command::Build {
            corpus,
            output,
            case_fold,
            drop_punct,
            min_count,
            json,
        } => {
            set(&mut config.case_fold, case_fold);
            set(&mut config.drop_punct, drop_punct);
            set(&mut config.min_count, min_count);
            show(&config);
            report(&cmd_build(&corpus, &output, &config)?, json)?;
        }
        Command::Walk {
            graph,
            output,
            walk,
            dump,
        } => {
            walk.apply(&mut config);
            show(&config);
            let s = cmd_walk(&graph, &output, &config, dump.as_deref())?;
            eprintln!("wrote {} walks over {} nodes", s.walks, s.nodes);
        }
        Command::Train {
            walks,
            output,
            graph,
            train,
            quiet,
        } => {
            train.apply(&mut config);
            show(&config);
            let s = cmd_train(&walks, &output, &config, graph.as_deref(), |r| {
                if !quiet {
                    eprintln!(
                        "epoch {}: pairs {} loss {:.6} lr {:.6}",
                        r.epoch + 1,
                        r.pairs,
                        r.mean_loss,
                        r.learning_rate
                    );
                }
            })?;
            eprintln!("wrote {} vectors of dimension {}", s.vocab_size, s.dim);
        }
        Command::Query {
            embeddings,
            word,
            top_n,
        } => {
            emit(&format_neighbours(&cmd_query(&embeddings, &word, top_n)?))?;
        }
        Command::Stats { graph, json } => {
            report(&cmd_stats(&graph)?, json)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
