//! `taste-composite`: forward prediction, training, evaluation, inverse
//! design and the HTTP service from one binary.
//!
//! Exit codes: 0 success, 2 bad input, 3 internal failure.

mod commands;
mod output;

use std::net::IpAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "taste-composite", version, about = "Composite-bound taste prediction and reformulation")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Corpus directory holding ingredients.csv and recipes.csv, or a JSON corpus file.
    #[arg(long, global = true, env = "TASTE_COMPOSITE_DATA")]
    pub data: Option<PathBuf>,
    /// Model bundle for predict, design and serve; the hybrid model is
    /// trained on the corpus when absent.
    #[arg(long, global = true)]
    pub model: Option<PathBuf>,
    /// Category lexicon JSON replacing the built-in keyword lists.
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    /// Hashin-Shtrikman shape parameter.
    #[arg(long, global = true)]
    pub d: Option<f64>,
    /// Score floor used in harmonic sums.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Worker threads for evaluation and design; defaults to the core count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Clip predictions to [0, 100].
    #[arg(long, global = true)]
    pub clip: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bounds, chemistry features and hybrid prediction for one recipe.
    Predict(PredictArgs),
    /// Fit a model on the whole corpus and write the bundle.
    Train(TrainArgs),
    /// Run the cross-validated evaluation and write report.json plus CSV tables.
    Evaluate(EvaluateArgs),
    /// Optimise a recipe towards a taste target.
    Design(DesignArgs),
    /// Fraction of ground truth above the upper bound for several d.
    SweepD(SweepArgs),
    /// Serve the JSON API.
    Serve(ServeArgs),
    /// Write the seeded synthetic corpus.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    /// Corpus recipe id.
    #[arg(conflicts_with = "recipe", required_unless_present = "recipe")]
    pub recipe_id: Option<String>,
    /// JSON file with `{"recipe_id"}` or `{"components": [...]}`.
    #[arg(long)]
    pub recipe: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long, short, default_value = "model.json")]
    pub out: PathBuf,
    /// hybrid, lasso_5d or lasso_115.
    #[arg(long, default_value = "hybrid")]
    pub kind: String,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// Comma-separated subset of hs, rv, lasso_5d, hybrid, lasso_115.
    #[arg(long, value_delimiter = ',')]
    pub models: Option<Vec<String>>,
    #[arg(long, short, default_value = "report")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 10)]
    pub kfold: usize,
    #[arg(long, default_value_t = 5)]
    pub repeats: usize,
    #[arg(long)]
    pub no_kfold: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct DesignArgs {
    /// Scenario JSON file.
    #[arg(conflicts_with = "case", required_unless_present = "case")]
    pub scenario: Option<PathBuf>,
    /// Built-in case study 1, 2 or 3.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub case: Option<u8>,
    /// Write the result JSON here.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "2,3,5,10,50")]
    pub d_values: Vec<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value = "127.0.0.1")]
    pub bind: IpAddr,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    /// report.json served by /api/report.
    #[arg(long, default_value = "report/report.json")]
    pub report: PathBuf,
    /// Allowed CORS origin; repeatable. Any origin when omitted.
    #[arg(long = "cors-origin")]
    pub cors_origins: Vec<String>,
    #[arg(long, default_value_t = 32)]
    pub job_capacity: usize,
    /// Concurrent design runs.
    #[arg(long, default_value_t = 2)]
    pub workers: usize,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, short)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 70)]
    pub recipes: usize,
    /// Multiplier on the ground-truth noise.
    #[arg(long, default_value_t = 1.0)]
    pub noise: f64,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit_code)
        }
    }
}
