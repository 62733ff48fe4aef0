use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::Path;

use taste_core::bounds::{sweep_d, BoundsConfig};
use taste_core::chemistry::CategoryLexicon;
use taste_core::dataset::{corpus_from_json, load_corpus_dir, write_corpus, Corpus};
use taste_core::evaluation::{evaluate, EvaluationConfig, KFoldConfig};
use taste_core::forward::{forward, PredictRequest};
use taste_core::hybrid::{train_model, ModelKind, PredictOptions, TrainedModel, TrainingConfig};
use taste_core::inverse::{case_studies, run_scenario, DeConfig, Scenario};
use taste_core::synth::{synthetic_corpus, SynthConfig};
use taste_core::Error;
use taste_service::{AppState, ServiceConfig, Session};

use crate::output;
use crate::{Cli, Command, DesignArgs, EvaluateArgs, Global, PredictArgs, ServeArgs, SweepArgs, SynthArgs, TrainArgs};

pub const EXIT_USER: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug)]
pub struct Failure {
    pub exit_code: u8,
    pub message: String,
}

impl Failure {
    fn user(message: impl Into<String>) -> Self {
        Failure {
            exit_code: EXIT_USER,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        // a missing input file is the caller's mistake
        let user = e.is_user_error() || matches!(&e, Error::Io(io) if io.kind() == std::io::ErrorKind::NotFound);
        Failure {
            exit_code: if user { EXIT_USER } else { EXIT_INTERNAL },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::from(Error::Io(e))
    }
}

type Outcome = Result<(), Failure>;

pub fn run(cli: Cli) -> Outcome {
    configure_threads(cli.global.threads)?;
    let g = &cli.global;
    match &cli.command {
        Command::Predict(a) => predict(g, a),
        Command::Train(a) => train(g, a),
        Command::Evaluate(a) => evaluate_cmd(g, a),
        Command::Design(a) => design(g, a),
        Command::SweepD(a) => sweep(g, a),
        Command::Serve(a) => serve(g, a),
        Command::Synth(a) => synth(g, a),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(threads: Option<usize>) -> Outcome {
    if let Some(n) = threads {
        if n == 0 {
            return Err(Failure::user("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure {
                exit_code: EXIT_INTERNAL,
                message: format!("cannot size the thread pool: {e}"),
            })?;
    }
    Ok(())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(threads: Option<usize>) -> Outcome {
    if threads.is_some_and(|n| n > 1) {
        log::warn!("built without the `parallel` feature; --threads is ignored");
    }
    Ok(())
}

fn load_corpus(g: &Global) -> Result<Corpus, Failure> {
    let path = g.data.as_ref().ok_or_else(|| {
        Failure::user(
            "no corpus given: pass --data DIR or set TASTE_COMPOSITE_DATA \
             (`taste-composite synth --out DIR` writes a synthetic one)",
        )
    })?;
    if !path.exists() {
        return Err(Failure::user(format!("corpus path {} does not exist", path.display())));
    }
    let corpus = if path.is_dir() {
        load_corpus_dir(path)?
    } else {
        corpus_from_json(&fs::read_to_string(path)?)?
    };
    log::info!(
        "loaded {} ingredients and {} recipes from {}",
        corpus.ingredient_count(),
        corpus.recipes().len(),
        path.display()
    );
    Ok(corpus)
}

fn training_config(g: &Global) -> Result<TrainingConfig, Failure> {
    let lexicon = match &g.lexicon {
        Some(p) => CategoryLexicon::load(p)?,
        None => CategoryLexicon::default(),
    };
    let defaults = BoundsConfig::default();
    let bounds = BoundsConfig {
        d: g.d.unwrap_or(defaults.d),
        epsilon: g.epsilon.unwrap_or(defaults.epsilon),
    };
    bounds.validate()?;
    Ok(TrainingConfig {
        bounds,
        lexicon,
        ..TrainingConfig::default()
    })
}

fn predict_options(g: &Global) -> PredictOptions {
    PredictOptions { clip: g.clip }
}

/// Load a bundle, or train the hybrid model on `corpus` when none is given.
fn obtain_model(g: &Global, corpus: &Corpus, cfg: &TrainingConfig) -> Result<TrainedModel, Failure> {
    let Some(path) = g.model.as_deref() else {
        log::info!("no --model given; training the hybrid model on the corpus");
        return Ok(train_model(corpus, ModelKind::Hybrid, cfg)?);
    };
    let model = TrainedModel::load(path)?;
    model.check_lexicon(&cfg.lexicon)?;
    if (g.d.is_some() || g.epsilon.is_some()) && model.bounds_config != cfg.bounds {
        return Err(Error::BundleMismatch(format!(
            "bundle was trained with d = {}, epsilon = {}",
            model.bounds_config.d, model.bounds_config.epsilon
        ))
        .into());
    }
    if model.corpus_fingerprint != corpus.fingerprint() {
        log::warn!("model bundle was trained on a different corpus");
    }
    Ok(model)
}

fn write_file(path: &Path, contents: &str) -> Outcome {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

fn print(text: &str) -> Outcome {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn predict(g: &Global, a: &PredictArgs) -> Outcome {
    let corpus = load_corpus(g)?;
    let request = match (&a.recipe_id, &a.recipe) {
        (Some(id), _) => PredictRequest {
            recipe_id: Some(id.clone()),
            components: None,
        },
        (None, Some(path)) => serde_json::from_str(&fs::read_to_string(path)?)
            .map_err(|e| Failure::user(format!("{}: {e}", path.display())))?,
        (None, None) => unreachable!("clap requires a recipe"),
    };
    let recipe = request.resolve(&corpus)?;
    let cfg = training_config(g)?;
    let model = obtain_model(g, &corpus, &cfg)?;
    let result = forward(&recipe, &corpus, &model, &cfg.lexicon, predict_options(g))?;
    if a.json {
        print(&result.to_json())
    } else {
        print(&output::forward_table(&result))
    }
}

fn train(g: &Global, a: &TrainArgs) -> Outcome {
    let kind: ModelKind = a.kind.parse().map_err(Failure::user)?;
    if !kind.is_learned() {
        return Err(Failure::user(format!("`{}` has nothing to train", kind.name())));
    }
    let corpus = load_corpus(g)?;
    let cfg = training_config(g)?;
    let model = train_model(&corpus, kind, &cfg)?;
    write_file(&a.out, &model.to_json())?;
    print(&format!("wrote {} model to {}\n", kind.name(), a.out.display()))
}

fn evaluate_cmd(g: &Global, a: &EvaluateArgs) -> Outcome {
    let models = match &a.models {
        Some(list) => list
            .iter()
            .map(|m| m.parse::<ModelKind>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(Failure::user)?,
        None => ModelKind::ALL.to_vec(),
    };
    let corpus = load_corpus(g)?;
    let defaults = EvaluationConfig::default();
    let cfg = EvaluationConfig {
        training: training_config(g)?,
        kfold: (!a.no_kfold).then_some(KFoldConfig {
            k: a.kfold,
            repeats: a.repeats,
        }),
        kfold_models: defaults.kfold_models.iter().copied().filter(|m| models.contains(m)).collect(),
        models,
        seed: g.seed,
        clip: g.clip,
        ..defaults
    };
    let report = evaluate(&corpus, &cfg)?;
    report.write(&a.out)?;
    if a.json {
        print(&report.to_json())
    } else {
        print(&output::report_summary(&report, &a.out))
    }
}

fn design(g: &Global, a: &DesignArgs) -> Outcome {
    let scenario = match (&a.scenario, a.case) {
        (Some(path), _) => Scenario::from_json(&fs::read_to_string(path)?)?,
        (None, Some(n)) => case_studies().swap_remove(usize::from(n) - 1),
        (None, None) => unreachable!("clap requires a scenario"),
    };
    let corpus = load_corpus(g)?;
    let cfg = training_config(g)?;
    let model = obtain_model(g, &corpus, &cfg)?;
    let de = DeConfig {
        seed: g.seed,
        ..DeConfig::default()
    };
    let result = run_scenario(&scenario, &corpus, &model, &cfg.lexicon, &de, predict_options(g))?;
    let json = result.to_json();
    if let Some(out) = &a.out {
        write_file(out, &json)?;
    }
    if a.json {
        print(&json)
    } else {
        print(&output::design_table(&result))
    }
}

fn sweep(g: &Global, a: &SweepArgs) -> Outcome {
    let corpus = load_corpus(g)?;
    let cfg = training_config(g)?;
    let rows = sweep_d(&corpus, &a.d_values, &cfg.bounds)?;
    if a.json {
        let mut s = serde_json::to_string_pretty(&rows).map_err(Error::from)?;
        s.push('\n');
        print(&s)
    } else {
        print(&output::sweep_table(&rows))
    }
}

fn serve(g: &Global, a: &ServeArgs) -> Outcome {
    let corpus = load_corpus(g)?;
    let cfg = training_config(g)?;
    let model = obtain_model(g, &corpus, &cfg)?;
    let de = DeConfig {
        seed: g.seed,
        ..DeConfig::default()
    };
    let session = Session::new(corpus, model, cfg.lexicon, predict_options(g), de)?;
    let config = ServiceConfig {
        bind: SocketAddr::new(a.bind, a.port),
        cors_origins: a.cors_origins.clone(),
        job_capacity: a.job_capacity,
        workers: a.workers,
        report_path: a.report.clone(),
        ..ServiceConfig::default()
    };
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async move {
        let listener = tokio::net::TcpListener::bind(config.bind).await?;
        print(&format!("listening on http://{}\n", listener.local_addr()?))?;
        let state = AppState::with_session(config, session);
        taste_service::serve_on(listener, state).await?;
        Ok(())
    })
}

fn synth(g: &Global, a: &SynthArgs) -> Outcome {
    let corpus = synthetic_corpus(&SynthConfig {
        seed: g.seed,
        n_recipes: a.recipes,
        noise: a.noise,
    })?;
    write_corpus(&corpus, &a.out)?;
    print(&format!(
        "wrote {} ingredients and {} recipes to {}\n",
        corpus.ingredient_count(),
        corpus.recipes().len(),
        a.out.display()
    ))
}
