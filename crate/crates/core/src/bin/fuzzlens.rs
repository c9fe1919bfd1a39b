//! Command-line front end: every subcommand builds a `RunConfig` and hands it
//! to the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fuzzlens::cluster::Algorithm;
use fuzzlens::heatmap::Connectivity;
use fuzzlens::pipeline::{rerun, run, Command, EncodeMethod, RunConfig};

#[derive(Parser)]
#[command(name = "fuzzlens", version, about = "Fuzzy rule explanations, context embeddings and heatmap descriptors")]
struct Cli {
    /// Master random seed
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Output directory [default: fuzzlens-out; for `report`, the directory in the echoed config]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Encoding {
    Bow,
    BowTopk,
    Tfidf,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClusterMethod {
    Fcm,
    Frb,
}

#[derive(Args)]
struct GaArgs {
    /// Individuals per generation
    #[arg(long, default_value_t = 50)]
    population: usize,
    /// Number of generations
    #[arg(long, default_value_t = 200)]
    generations: usize,
    /// Rule slots per chromosome
    #[arg(long, default_value_t = 15)]
    max_rules: usize,
    /// Per-gene mutation probability
    #[arg(long, default_value_t = 0.02)]
    mutation_rate: f64,
    /// Fraction of rows held out for testing
    #[arg(long, default_value_t = 0.2)]
    test_fraction: f64,
    /// Downsample classes to the minority size before training
    #[arg(long)]
    balance: bool,
}

#[derive(Subcommand)]
enum Sub {
    /// Vectorize a corpus (one document per line, or a CSV column)
    Encode {
        /// Corpus file
        #[arg(long)]
        input: PathBuf,
        /// Vectorization scheme
        #[arg(long, value_enum, default_value_t = Encoding::Bow)]
        method: Encoding,
        /// Vocabulary size for bow-topk
        #[arg(long)]
        top_k: Option<usize>,
        /// Read documents from this CSV column instead of plain lines
        #[arg(long)]
        column: Option<String>,
    },
    /// Fuzzy context embedding of an encoded table
    Cluster {
        /// Unlabeled CSV table, e.g. the output of `encode`
        #[arg(long)]
        input: PathBuf,
        /// Fuzzy C-Means or rule-based clustering
        #[arg(long, value_enum, default_value_t = ClusterMethod::Fcm)]
        method: ClusterMethod,
        /// Number of clusters (fcm only)
        #[arg(long, default_value_t = 2)]
        clusters: usize,
    },
    /// Heatmap descriptors for every map (or subdirectory of maps) in a directory
    Descriptors {
        /// Directory of .pgm or .csv maps
        #[arg(long)]
        maps: PathBuf,
        /// Tiles per side of the relevance grid
        #[arg(long, default_value_t = fuzzlens::heatmap::DEFAULT_GRID_N)]
        grid_n: usize,
        /// Join diagonal tiles into one super region
        #[arg(long)]
        eight_connected: bool,
    },
    /// Learn a fuzzy rule classifier from a labeled CSV table
    Train {
        /// CSV table with feature columns and a label column
        #[arg(long)]
        table: PathBuf,
        /// Name of the label column
        #[arg(long, default_value = "label")]
        label: String,
        /// Restrict training to this class and --class-b
        #[arg(long, requires = "class_b")]
        class_a: Option<String>,
        /// Second class of the pair
        #[arg(long, requires = "class_a")]
        class_b: Option<String>,
        /// Number of top-ranked features to keep
        #[arg(long, default_value_t = 7)]
        top_k: usize,
        #[command(flatten)]
        ga: GaArgs,
    },
    /// Explain each deep feature with rules over styles and descriptors
    Explain {
        /// CSV of per-image deep feature activations
        #[arg(long)]
        activations: PathBuf,
        /// CSV of per-image style probabilities, row-aligned with the activations
        #[arg(long)]
        styles: PathBuf,
        /// Optional descriptor table from `descriptors`, row-aligned
        #[arg(long)]
        descriptors: Option<PathBuf>,
        #[command(flatten)]
        ga: GaArgs,
    },
    /// Regenerate a run from its echoed configuration file
    Report {
        /// config.txt of an earlier run
        #[arg(long)]
        config: PathBuf,
    },
}

fn apply_ga(config: &mut RunConfig, ga: GaArgs) {
    let w = &mut config.workflow;
    w.ga.population_size = ga.population;
    w.ga.generations = ga.generations;
    w.ga.max_rules = ga.max_rules;
    w.ga.mutation_rate = ga.mutation_rate;
    w.test_fraction = ga.test_fraction;
    w.balance = ga.balance;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Sub::Report { config } => rerun(&config, cli.out.as_deref()),
        sub => {
            let mut config = RunConfig::new(Command::Encode, cli.out.unwrap_or_else(|| PathBuf::from("fuzzlens-out")));
            config.seed = cli.seed;
            match sub {
                Sub::Encode { input, method, top_k, column } => {
                    config.input = Some(input);
                    config.encode_method = match method {
                        Encoding::Bow => EncodeMethod::Bow,
                        Encoding::BowTopk => EncodeMethod::BowTopK,
                        Encoding::Tfidf => EncodeMethod::Tfidf,
                    };
                    config.vocab_top_k = top_k;
                    config.text_column = column;
                }
                Sub::Cluster { input, method, clusters } => {
                    config.command = Command::Cluster;
                    config.input = Some(input);
                    config.cluster_method = match method {
                        ClusterMethod::Fcm => Algorithm::Fcm,
                        ClusterMethod::Frb => Algorithm::Frb,
                    };
                    config.fcm.n_clusters = clusters;
                }
                Sub::Descriptors { maps, grid_n, eight_connected } => {
                    config.command = Command::Descriptors;
                    config.maps = Some(maps);
                    config.grid_n = grid_n;
                    if eight_connected {
                        config.connectivity = Connectivity::Eight;
                    }
                }
                Sub::Train { table, label, class_a, class_b, top_k, ga } => {
                    config.command = Command::Train;
                    config.table = Some(table);
                    config.label = Some(label);
                    config.class_a = class_a;
                    config.class_b = class_b;
                    config.workflow.top_k = top_k;
                    apply_ga(&mut config, ga);
                }
                Sub::Explain { activations, styles, descriptors, ga } => {
                    config.command = Command::Explain;
                    config.activations = Some(activations);
                    config.styles = Some(styles);
                    config.descriptors = descriptors;
                    apply_ga(&mut config, ga);
                }
                Sub::Report { .. } => unreachable!("handled above"),
            }
            run(&config)
        }
    };
    match outcome {
        Ok(outcome) => {
            println!("{}", outcome.summary.trim_end());
            for f in &outcome.files {
                println!("wrote {}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
