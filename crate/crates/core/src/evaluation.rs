//! Cross-validated evaluation, bound coverage and the report tables.
//!
//! Learned models are scored from held-out predictions. For each dimension the
//! alpha grid is run on every fold, the alpha with the lowest pooled held-out
//! error is chosen, and the held-out predictions at that alpha are reported.
//! k-fold evaluation uses the same scheme with random folds, so `k = n`
//! reproduces leave-one-out exactly.

use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{recipe_bounds, sweep_d, BoundsConfig, SweepRow, BOUND_TOLERANCE};
use crate::dataset::{Confidence, Corpus};
use crate::hybrid::{feature_names, ModelKind, TrainingConfig, TrainingSet};
use crate::lasso::{cv_path, loo_folds};
use crate::stats;
use crate::{Dimension, Error, Result, TasteVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Coverage {
    Below,
    In,
    Above,
}

impl Coverage {
    pub fn classify(actual: f64, hs_lower: f64, hs_upper: f64) -> Coverage {
        if actual < hs_lower - BOUND_TOLERANCE {
            Coverage::Below
        } else if actual > hs_upper + BOUND_TOLERANCE {
            Coverage::Above
        } else {
            Coverage::In
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Coverage::Below => "BELOW",
            Coverage::In => "IN",
            Coverage::Above => "ABOVE",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRecord {
    pub recipe_id: String,
    pub dimension: Dimension,
    pub actual: f64,
    pub hs_lower: f64,
    pub hs_upper: f64,
    pub classification: Coverage,
}

/// Coverage counts and percentages for one dimension or pooled (`overall`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRow {
    pub scope: String,
    pub n: usize,
    pub below: usize,
    pub inside: usize,
    pub above: usize,
    pub below_pct: f64,
    pub in_pct: f64,
    pub above_pct: f64,
}

impl CoverageRow {
    fn from_records<'a>(scope: &str, records: impl Iterator<Item = &'a CoverageRecord>) -> Self {
        let (mut below, mut inside, mut above) = (0, 0, 0);
        for r in records {
            match r.classification {
                Coverage::Below => below += 1,
                Coverage::In => inside += 1,
                Coverage::Above => above += 1,
            }
        }
        let n = below + inside + above;
        let pct = |c: usize| if n == 0 { 0.0 } else { 100.0 * c as f64 / n as f64 };
        CoverageRow {
            scope: scope.to_string(),
            n,
            below,
            inside,
            above,
            below_pct: pct(below),
            in_pct: pct(inside),
            above_pct: pct(above),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageTable {
    pub records: Vec<CoverageRecord>,
    /// One row per dimension in canonical order.
    pub per_dimension: Vec<CoverageRow>,
    pub overall: CoverageRow,
}

impl CoverageTable {
    pub fn dimension(&self, dim: Dimension) -> &CoverageRow {
        &self.per_dimension[dim.index()]
    }
}

pub fn coverage_table(corpus: &Corpus, cfg: &BoundsConfig) -> Result<CoverageTable> {
    cfg.validate()?;
    let (recipes, _) = corpus.ground_truth_recipes();
    if recipes.is_empty() {
        return Err(Error::NoGroundTruth);
    }
    let mut records = Vec::with_capacity(recipes.len() * 5);
    for recipe in recipes {
        let bounds = recipe_bounds(recipe, corpus, cfg)?;
        let gt = recipe.ground_truth.expect("filtered");
        for dim in Dimension::ALL {
            let b = bounds.get(dim);
            records.push(CoverageRecord {
                recipe_id: recipe.recipe_id.clone(),
                dimension: dim,
                actual: gt.get(dim),
                hs_lower: b.hs_lower,
                hs_upper: b.hs_upper,
                classification: Coverage::classify(gt.get(dim), b.hs_lower, b.hs_upper),
            });
        }
    }
    let per_dimension = Dimension::ALL
        .iter()
        .map(|&dim| CoverageRow::from_records(dim.name(), records.iter().filter(|r| r.dimension == dim)))
        .collect();
    let overall = CoverageRow::from_records("overall", records.iter());
    Ok(CoverageTable {
        records,
        per_dimension,
        overall,
    })
}

/// Error statistics of one model on one dimension or the four-dimension
/// average (`avg_4d`, bitterness excluded).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub model: ModelKind,
    pub dimension: String,
    pub mae: f64,
    pub rmse: f64,
    /// `None` when either side is constant.
    pub pcc: Option<f64>,
    /// Mean of predicted minus actual.
    pub bias: f64,
    pub r2: Option<f64>,
    pub n: usize,
}

pub const AVG_4D: &str = "avg_4d";

impl MetricRow {
    pub fn compute(model: ModelKind, dimension: &str, predicted: &[f64], actual: &[f64]) -> Self {
        MetricRow {
            model,
            dimension: dimension.to_string(),
            mae: stats::mae(predicted, actual),
            rmse: stats::rmse(predicted, actual),
            pcc: stats::pearson(predicted, actual),
            bias: stats::bias(predicted, actual),
            r2: stats::r_squared(predicted, actual),
            n: actual.len(),
        }
    }

    /// Mean of the per-dimension statistics over the averaged dimensions. PCC
    /// and R² average the defined values only.
    fn average(model: ModelKind, rows: &[&MetricRow]) -> Self {
        let avg = |f: &dyn Fn(&MetricRow) -> f64| stats::mean(&rows.iter().map(|r| f(r)).collect::<Vec<_>>());
        let avg_opt = |f: &dyn Fn(&MetricRow) -> Option<f64>| {
            let vals: Vec<f64> = rows.iter().filter_map(|r| f(r)).collect();
            (!vals.is_empty()).then(|| stats::mean(&vals))
        };
        MetricRow {
            model,
            dimension: AVG_4D.to_string(),
            mae: avg(&|r| r.mae),
            rmse: avg(&|r| r.rmse),
            pcc: avg_opt(&|r| r.pcc),
            bias: avg(&|r| r.bias),
            r2: avg_opt(&|r| r.r2),
            n: rows.first().map_or(0, |r| r.n),
        }
    }
}

/// Held-out predictions of one model, aligned with the ground-truth recipes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelPredictions {
    pub model: ModelKind,
    pub recipe_ids: Vec<String>,
    pub confidence: Vec<Confidence>,
    pub predicted: Vec<TasteVector>,
    pub actual: Vec<TasteVector>,
    /// Selected alpha per dimension; empty for the fixed baselines.
    pub alphas: Vec<f64>,
}

impl ModelPredictions {
    fn column(values: &[TasteVector], dim: Dimension, rows: &[usize]) -> Vec<f64> {
        rows.iter().map(|&i| values[i].get(dim)).collect()
    }

    fn rows_for(&self, rows: &[usize]) -> Vec<MetricRow> {
        let mut out: Vec<MetricRow> = Dimension::ALL
            .iter()
            .map(|&dim| {
                MetricRow::compute(
                    self.model,
                    dim.name(),
                    &Self::column(&self.predicted, dim, rows),
                    &Self::column(&self.actual, dim, rows),
                )
            })
            .collect();
        let four: Vec<&MetricRow> = Dimension::AVG_4D.iter().map(|d| &out[d.index()]).collect();
        let avg = MetricRow::average(self.model, &four);
        out.push(avg);
        out
    }

    /// Five per-dimension rows followed by the `avg_4d` row.
    pub fn metrics(&self) -> Vec<MetricRow> {
        self.rows_for(&(0..self.actual.len()).collect::<Vec<_>>())
    }

    pub fn avg_4d(&self) -> MetricRow {
        self.metrics().pop().expect("avg row")
    }
}

/// Held-out predictions over the given folds.
pub fn cross_validated(
    set: &TrainingSet<'_>,
    kind: ModelKind,
    cfg: &TrainingConfig,
    folds: &[Vec<usize>],
    clip: bool,
) -> Result<ModelPredictions> {
    let n = set.len();
    let mut predicted = vec![TasteVector::ZERO; n];
    let mut alphas = Vec::new();
    if kind.is_learned() {
        let columns = if kind == ModelKind::Lasso115 {
            set.ingredient_columns()
        } else {
            vec![]
        };
        for dim in Dimension::ALL {
            let (x, y, offsets) = set.design(kind, cfg.form, dim, &columns);
            let path = cv_path(x.view(), &y, folds, &cfg.alpha_grid, &cfg.lasso, cfg.exec)?;
            let best = path.best_index();
            alphas.push(path.alphas[best]);
            for i in 0..n {
                predicted[i].set(dim, path.predictions[best][i] + offsets[i]);
            }
        }
    } else {
        for (p, inputs) in predicted.iter_mut().zip(&set.inputs) {
            for dim in Dimension::ALL {
                p.set(dim, inputs.baseline(kind, dim));
            }
        }
    }
    if clip {
        predicted = predicted.into_iter().map(TasteVector::clipped).collect();
    }
    Ok(ModelPredictions {
        model: kind,
        recipe_ids: set.recipes.iter().map(|r| r.recipe_id.clone()).collect(),
        confidence: set.recipes.iter().map(|r| r.confidence).collect(),
        predicted,
        actual: set.actual.clone(),
        alphas,
    })
}

fn require_rows(set: &TrainingSet<'_>, min: usize) -> Result<()> {
    if set.is_empty() {
        return Err(Error::NoGroundTruth);
    }
    if set.len() < min {
        return Err(Error::InsufficientData(format!(
            "evaluation needs at least {min} ground-truth recipes, found {}",
            set.len()
        )));
    }
    Ok(())
}

/// Leave-one-out predictions of `kind` on every ground-truth recipe.
pub fn loocv_predictions(corpus: &Corpus, kind: ModelKind, cfg: &TrainingConfig) -> Result<ModelPredictions> {
    let set = TrainingSet::build(corpus, cfg)?;
    require_rows(&set, 3)?;
    cross_validated(&set, kind, cfg, &loo_folds(set.len()), false)
}

/// Leave-one-out metric rows (five dimensions plus `avg_4d`).
pub fn loocv_evaluate(corpus: &Corpus, kind: ModelKind, cfg: &TrainingConfig) -> Result<Vec<MetricRow>> {
    Ok(loocv_predictions(corpus, kind, cfg)?.metrics())
}

/// Shuffle `0..n` and cut it into `k` folds whose sizes differ by at most one.
pub fn random_folds(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    let mut folds = Vec::with_capacity(k);
    let mut start = 0;
    for f in 0..k {
        let size = n / k + usize::from(f < n % k);
        folds.push(idx[start..start + size].to_vec());
        start += size;
    }
    folds
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KFoldConfig {
    pub k: usize,
    pub repeats: usize,
}

impl Default for KFoldConfig {
    fn default() -> Self {
        KFoldConfig { k: 10, repeats: 5 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KFoldSummary {
    pub model: ModelKind,
    pub k: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Four-dimension MAE of each repeat.
    pub avg4d_mae: Vec<f64>,
    pub mean: f64,
    /// Sample standard deviation over repeats.
    pub sd: f64,
}

fn kfold_on_set(
    set: &TrainingSet<'_>,
    kind: ModelKind,
    cfg: &TrainingConfig,
    kf: KFoldConfig,
    seed: u64,
) -> Result<KFoldSummary> {
    if kf.k < 2 || kf.repeats == 0 {
        return Err(Error::InvalidConfig("k-fold needs k >= 2 and at least one repeat".into()));
    }
    require_rows(set, kf.k.max(3))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let splits: Vec<Vec<Vec<usize>>> = (0..kf.repeats)
        .map(|_| random_folds(set.len(), kf.k, &mut rng))
        .collect();
    let maes = splits
        .iter()
        .map(|folds| Ok(cross_validated(set, kind, cfg, folds, false)?.avg_4d().mae))
        .collect::<Result<Vec<f64>>>()?;
    Ok(KFoldSummary {
        model: kind,
        k: kf.k,
        repeats: kf.repeats,
        seed,
        mean: stats::mean(&maes),
        sd: stats::sample_std(&maes),
        avg4d_mae: maes,
    })
}

/// Repeated seeded k-fold evaluation of the four-dimension MAE.
pub fn kfold_evaluate(
    corpus: &Corpus,
    kind: ModelKind,
    cfg: &TrainingConfig,
    kf: KFoldConfig,
    seed: u64,
) -> Result<KFoldSummary> {
    let set = TrainingSet::build(corpus, cfg)?;
    kfold_on_set(&set, kind, cfg, kf, seed)
}

/// Metrics of one model restricted to one confidence tier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumRow {
    pub model: ModelKind,
    pub confidence: Confidence,
    pub n: usize,
    /// Five dimensions plus `avg_4d`; empty when the tier has no recipes.
    pub metrics: Vec<MetricRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub fn stratify(predictions: &ModelPredictions) -> Vec<StratumRow> {
    Confidence::ALL
        .iter()
        .map(|&tier| {
            let rows: Vec<usize> = (0..predictions.confidence.len())
                .filter(|&i| predictions.confidence[i] == tier)
                .collect();
            let empty = rows.is_empty();
            StratumRow {
                model: predictions.model,
                confidence: tier,
                n: rows.len(),
                metrics: if empty { vec![] } else { predictions.rows_for(&rows) },
                note: empty.then(|| "no recipes in this tier".to_string()),
            }
        })
        .collect()
}

/// Leave-one-out metrics grouped by recipe confidence tier.
pub fn stratify_by_confidence(corpus: &Corpus, kind: ModelKind, cfg: &TrainingConfig) -> Result<Vec<StratumRow>> {
    Ok(stratify(&loocv_predictions(corpus, kind, cfg)?))
}

/// MAE of predicting the constant `c` on one dimension.
pub fn constant_baseline(corpus: &Corpus, dim: Dimension, c: f64) -> Result<f64> {
    let (recipes, _) = corpus.ground_truth_recipes();
    if recipes.is_empty() {
        return Err(Error::NoGroundTruth);
    }
    let actual: Vec<f64> = recipes
        .iter()
        .map(|r| r.ground_truth.expect("filtered").get(dim))
        .collect();
    Ok(stats::mae(&vec![c; actual.len()], &actual))
}

/// Pearson correlation of HS midpoint and Voigt over every recipe and
/// dimension.
pub fn hs_voigt_correlation(corpus: &Corpus, cfg: &BoundsConfig) -> Result<Option<f64>> {
    let mut mid = Vec::new();
    let mut voigt = Vec::new();
    for recipe in corpus.recipes() {
        let b = recipe_bounds(recipe, corpus, cfg)?;
        for dim in Dimension::ALL {
            mid.push(b.get(dim).hs_midpoint);
            voigt.push(b.get(dim).voigt);
        }
    }
    Ok(stats::pearson(&mid, &voigt))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub model: ModelKind,
    pub label: String,
    pub n_features: usize,
    pub avg4d_mae: f64,
    pub avg4d_pcc: Option<f64>,
    pub avg4d_bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantBaselineRow {
    pub dimension: Dimension,
    pub constant: f64,
    pub mae: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationConfig {
    pub training: TrainingConfig,
    pub models: Vec<ModelKind>,
    pub d_values: Vec<f64>,
    /// Skipped when the corpus has fewer recipes than `k`.
    pub kfold: Option<KFoldConfig>,
    /// Models given k-fold treatment, among those in `models`.
    pub kfold_models: Vec<ModelKind>,
    pub seed: u64,
    pub constant_baseline: Option<(Dimension, f64)>,
    pub clip: bool,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        EvaluationConfig {
            training: TrainingConfig::default(),
            models: ModelKind::ALL.to_vec(),
            d_values: vec![2.0, 3.0, 5.0, 10.0, 50.0],
            kfold: Some(KFoldConfig::default()),
            kfold_models: vec![ModelKind::Hybrid],
            seed: 42,
            constant_baseline: Some((Dimension::Bitter, 2.0)),
            clip: false,
        }
    }
}

/// Settings echoed into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportSettings {
    pub seed: u64,
    pub bounds: BoundsConfig,
    pub hybrid_form: crate::hybrid::HybridForm,
    pub lexicon_hash: String,
    pub alpha_grid: Vec<f64>,
    pub clip: bool,
    pub models: Vec<ModelKind>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub corpus_fingerprint: String,
    pub n_recipes: usize,
    /// Recipes without ground truth, left out of every table.
    pub n_skipped: usize,
    pub settings: ReportSettings,
    pub coverage: CoverageTable,
    pub metrics: Vec<MetricRow>,
    pub model_comparison: Vec<ComparisonRow>,
    pub stratification: Vec<StratumRow>,
    pub sweep_d: Vec<SweepRow>,
    pub kfold: Vec<KFoldSummary>,
    pub constant_baseline: Option<ConstantBaselineRow>,
    pub hs_voigt_correlation: Option<f64>,
    pub predictions: Vec<ModelPredictions>,
}

/// Run the full evaluation protocol.
pub fn evaluate(corpus: &Corpus, cfg: &EvaluationConfig) -> Result<Report> {
    let tc = &cfg.training;
    tc.bounds.validate()?;
    tc.lexicon.validate()?;
    let set = TrainingSet::build(corpus, tc)?;
    require_rows(&set, 3)?;

    let mut models = cfg.models.clone();
    models.sort();
    models.dedup();

    let folds = loo_folds(set.len());
    let predictions = models
        .iter()
        .map(|&kind| cross_validated(&set, kind, tc, &folds, cfg.clip))
        .collect::<Result<Vec<_>>>()?;

    let columns = set.ingredient_columns().len();
    let metrics: Vec<MetricRow> = predictions.iter().flat_map(|p| p.metrics()).collect();
    let model_comparison = predictions
        .iter()
        .map(|p| {
            let avg = p.avg_4d();
            let n_features = match p.model {
                ModelKind::Lasso115 => columns,
                k => feature_names(k, Dimension::Sweet, &[]).len(),
            };
            ComparisonRow {
                model: p.model,
                label: p.model.label().to_string(),
                n_features,
                avg4d_mae: avg.mae,
                avg4d_pcc: avg.pcc,
                avg4d_bias: avg.bias,
            }
        })
        .collect();
    let stratification = predictions.iter().flat_map(stratify).collect();

    let kfold = match cfg.kfold {
        Some(kf) if set.len() >= kf.k => models
            .iter()
            .filter(|m| cfg.kfold_models.contains(m))
            .map(|&kind| kfold_on_set(&set, kind, tc, kf, cfg.seed))
            .collect::<Result<Vec<_>>>()?,
        Some(kf) => {
            log::warn!("skipping {}-fold evaluation: only {} recipes", kf.k, set.len());
            vec![]
        }
        None => vec![],
    };

    let constant_baseline = cfg
        .constant_baseline
        .map(|(dimension, constant)| {
            Ok::<_, Error>(ConstantBaselineRow {
                dimension,
                constant,
                mae: constant_baseline(corpus, dimension, constant)?,
            })
        })
        .transpose()?;

    Ok(Report {
        corpus_fingerprint: corpus.fingerprint(),
        n_recipes: set.len(),
        n_skipped: set.skipped,
        settings: ReportSettings {
            seed: cfg.seed,
            bounds: tc.bounds,
            hybrid_form: tc.form,
            lexicon_hash: tc.lexicon.hash(),
            alpha_grid: tc.alpha_grid.clone(),
            clip: cfg.clip,
            models,
        },
        coverage: coverage_table(corpus, &tc.bounds)?,
        metrics,
        model_comparison,
        stratification,
        sweep_d: sweep_d(corpus, &cfg.d_values, &tc.bounds)?,
        kfold,
        constant_baseline,
        hs_voigt_correlation: hs_voigt_correlation(corpus, &tc.bounds)?,
        predictions,
    })
}

fn r1(v: f64) -> String {
    format!("{v:.1}")
}

fn r2(v: f64) -> String {
    format!("{v:.2}")
}

fn opt2(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), r2)
}

fn write_csv(path: &Path, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.into()))?;
    w.write_record(header).map_err(|e| Error::Io(e.into()))?;
    for row in rows {
        w.write_record(&row).map_err(|e| Error::Io(e.into()))?;
    }
    w.flush()?;
    Ok(())
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn metric(&self, model: ModelKind, dimension: &str) -> Option<&MetricRow> {
        self.metrics
            .iter()
            .find(|m| m.model == model && m.dimension == dimension)
    }

    /// Write `report.json` and the CSV tables into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.json"), self.to_json())?;
        write_csv(
            &dir.join("metrics.csv"),
            &["model", "dimension", "mae", "rmse", "pcc", "bias", "r2", "n"],
            self.metrics.iter().map(|m| {
                vec![
                    m.model.name().into(),
                    m.dimension.clone(),
                    r1(m.mae),
                    r1(m.rmse),
                    opt2(m.pcc),
                    r1(m.bias),
                    opt2(m.r2),
                    m.n.to_string(),
                ]
            }),
        )?;
        write_csv(
            &dir.join("coverage.csv"),
            &["recipe_id", "dimension", "actual", "hs_lower", "hs_upper", "classification"],
            self.coverage.records.iter().map(|r| {
                vec![
                    r.recipe_id.clone(),
                    r.dimension.name().into(),
                    r1(r.actual),
                    r2(r.hs_lower),
                    r2(r.hs_upper),
                    r.classification.as_str().into(),
                ]
            }),
        )?;
        write_csv(
            &dir.join("coverage_summary.csv"),
            &["scope", "n", "below_pct", "in_pct", "above_pct"],
            self.coverage
                .per_dimension
                .iter()
                .chain(std::iter::once(&self.coverage.overall))
                .map(|c| vec![c.scope.clone(), c.n.to_string(), r1(c.below_pct), r1(c.in_pct), r1(c.above_pct)]),
        )?;
        write_csv(
            &dir.join("model_comparison.csv"),
            &["model", "label", "n_features", "avg4d_mae", "avg4d_pcc", "avg4d_bias"],
            self.model_comparison.iter().map(|c| {
                vec![
                    c.model.name().into(),
                    c.label.clone(),
                    c.n_features.to_string(),
                    r1(c.avg4d_mae),
                    opt2(c.avg4d_pcc),
                    r1(c.avg4d_bias),
                ]
            }),
        )?;
        write_csv(
            &dir.join("stratification.csv"),
            &["model", "confidence", "n", "avg4d_mae", "avg4d_pcc", "avg4d_bias"],
            self.stratification.iter().map(|s| {
                let avg = s.metrics.last();
                vec![
                    s.model.name().into(),
                    s.confidence.as_str().into(),
                    s.n.to_string(),
                    avg.map_or("n/a".into(), |m| r1(m.mae)),
                    opt2(avg.and_then(|m| m.pcc)),
                    avg.map_or("n/a".into(), |m| r1(m.bias)),
                ]
            }),
        )?;
        write_csv(
            &dir.join("sweep_d.csv"),
            &["d", "fraction_above_upper", "pairs"],
            self.sweep_d
                .iter()
                .map(|s| vec![s.d.to_string(), format!("{:.3}", s.fraction_above_upper), s.pairs.to_string()]),
        )?;
        write_csv(
            &dir.join("kfold.csv"),
            &["model", "k", "repeats", "seed", "mean_mae", "sd_mae"],
            self.kfold.iter().map(|k| {
                vec![
                    k.model.name().into(),
                    k.k.to_string(),
                    k.repeats.to_string(),
                    k.seed.to_string(),
                    r1(k.mean),
                    r1(k.sd),
                ]
            }),
        )?;
        Ok(())
    }
}
