//! Per-dimension learned models: the hybrid HS + chemistry correction and the
//! two Lasso baselines.
//!
//! Hybrid features for dimension `j` are `[hs_midpoint_j, voigt_j, phi_1..phi_8]`.
//! In the default residual form the target is `actual_j - hs_midpoint_j`, so
//! the midpoint enters with a fixed coefficient of one and the Lasso learns
//! only the correction. [`HybridForm::FreeMidpoint`] regresses `actual_j`
//! directly on the same ten features instead.
//!
//! The five-feature baseline uses the Voigt (mass-weighted) taste vector; the
//! per-ingredient baseline uses mass fractions over the sorted union of
//! ingredients appearing in the training recipes.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::bounds::{recipe_bounds, BoundsConfig, BoundsResult};
use crate::chemistry::{features, CategoryLexicon, ChemistryFeatures};
use crate::dataset::{Corpus, RecipeComposition};
use crate::lasso::{default_alpha_grid, lasso_fit, select_alpha, LassoModel, LassoOptions};
use crate::par::Execution;
use crate::{Dimension, Error, Result, TasteVector};

pub const BUNDLE_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    HsMidpoint,
    RvVoigt,
    #[serde(rename = "lasso_5d")]
    Lasso5d,
    Hybrid,
    #[serde(rename = "lasso_115")]
    Lasso115,
}

impl ModelKind {
    pub const ALL: [ModelKind; 5] = [
        ModelKind::HsMidpoint,
        ModelKind::RvVoigt,
        ModelKind::Lasso5d,
        ModelKind::Hybrid,
        ModelKind::Lasso115,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::HsMidpoint => "hs_midpoint",
            ModelKind::RvVoigt => "rv_voigt",
            ModelKind::Lasso5d => "lasso_5d",
            ModelKind::Hybrid => "hybrid",
            ModelKind::Lasso115 => "lasso_115",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ModelKind::HsMidpoint => "HS midpoint",
            ModelKind::RvVoigt => "RV (weighted avg)",
            ModelKind::Lasso5d => "Lasso (5D RV)",
            ModelKind::Hybrid => "Hybrid HS + chem.",
            ModelKind::Lasso115 => "Lasso (per-ingredient)",
        }
    }

    pub fn is_learned(self) -> bool {
        matches!(self, ModelKind::Lasso5d | ModelKind::Hybrid | ModelKind::Lasso115)
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "hs" | "hs_midpoint" => Ok(ModelKind::HsMidpoint),
            "rv" | "voigt" | "rv_voigt" => Ok(ModelKind::RvVoigt),
            "lasso5d" | "lasso_5d" => Ok(ModelKind::Lasso5d),
            "hybrid" => Ok(ModelKind::Hybrid),
            "lasso115" | "lasso_115" | "per_ingredient" => Ok(ModelKind::Lasso115),
            other => Err(format!("unknown model `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HybridForm {
    /// Target is `actual - hs_midpoint`; the midpoint is added back at
    /// prediction time.
    #[default]
    Residual,
    /// Target is `actual`; the midpoint coefficient is learned like any other.
    FreeMidpoint,
}

/// Everything needed to turn recipes into features and fit models.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainingConfig {
    pub bounds: BoundsConfig,
    pub lexicon: CategoryLexicon,
    pub form: HybridForm,
    pub alpha_grid: Vec<f64>,
    pub lasso: LassoOptions,
    pub exec: Execution,
}

impl Default for TrainingConfig {
    fn default() -> Self {
        TrainingConfig {
            bounds: BoundsConfig::default(),
            lexicon: CategoryLexicon::default(),
            form: HybridForm::Residual,
            alpha_grid: default_alpha_grid(),
            lasso: LassoOptions::default(),
            exec: Execution::default(),
        }
    }
}

/// Precomputed per-recipe quantities shared by every model.
#[derive(Debug, Clone, PartialEq)]
pub struct RecipeInputs {
    pub bounds: BoundsResult,
    pub chemistry: ChemistryFeatures,
    pub components: Vec<(String, f64)>,
}

pub fn recipe_inputs(
    recipe: &RecipeComposition,
    corpus: &Corpus,
    bounds: &BoundsConfig,
    lexicon: &CategoryLexicon,
) -> Result<RecipeInputs> {
    Ok(RecipeInputs {
        bounds: recipe_bounds(recipe, corpus, bounds)?,
        chemistry: features(recipe, corpus, lexicon)?,
        components: recipe
            .components
            .iter()
            .map(|c| (c.ingredient_id.clone(), c.mass_fraction))
            .collect(),
    })
}

impl RecipeInputs {
    /// Prediction of the untrained baselines.
    pub fn baseline(&self, kind: ModelKind, dim: Dimension) -> f64 {
        let b = self.bounds.get(dim);
        match kind {
            ModelKind::RvVoigt => b.voigt,
            _ => b.hs_midpoint,
        }
    }
}

/// Feature names for a learned model kind.
pub fn feature_names(kind: ModelKind, dim: Dimension, ingredient_columns: &[String]) -> Vec<String> {
    match kind {
        ModelKind::Hybrid => {
            let mut names = vec![format!("hs_midpoint_{dim}"), format!("voigt_{dim}")];
            names.extend(ChemistryFeatures::NAMES.iter().map(|s| s.to_string()));
            names
        }
        ModelKind::Lasso5d => Dimension::ALL.iter().map(|d| format!("voigt_{d}")).collect(),
        ModelKind::Lasso115 => ingredient_columns
            .iter()
            .map(|id| format!("fraction:{id}"))
            .collect(),
        ModelKind::HsMidpoint | ModelKind::RvVoigt => vec![],
    }
}

/// Feature row of one recipe for dimension `dim`.
pub fn feature_row(
    kind: ModelKind,
    inputs: &RecipeInputs,
    dim: Dimension,
    ingredient_columns: &[String],
) -> Vec<f64> {
    match kind {
        ModelKind::Hybrid => {
            let b = inputs.bounds.get(dim);
            let mut row = vec![b.hs_midpoint, b.voigt];
            row.extend(inputs.chemistry.to_array());
            row
        }
        ModelKind::Lasso5d => Dimension::ALL
            .iter()
            .map(|&d| inputs.bounds.get(d).voigt)
            .collect(),
        ModelKind::Lasso115 => {
            let mut row = vec![0.0; ingredient_columns.len()];
            for (id, v) in &inputs.components {
                if let Ok(k) = ingredient_columns.binary_search(id) {
                    row[k] += v;
                }
            }
            row
        }
        ModelKind::HsMidpoint | ModelKind::RvVoigt => vec![],
    }
}

/// Part of the prediction not produced by the Lasso model.
pub fn prediction_offset(kind: ModelKind, form: HybridForm, inputs: &RecipeInputs, dim: Dimension) -> f64 {
    match (kind, form) {
        (ModelKind::Hybrid, HybridForm::Residual) => inputs.bounds.get(dim).hs_midpoint,
        _ => 0.0,
    }
}

/// Ground-truth recipes of a corpus with their precomputed inputs.
#[derive(Debug, Clone)]
pub struct TrainingSet<'a> {
    pub recipes: Vec<&'a RecipeComposition>,
    pub inputs: Vec<RecipeInputs>,
    pub actual: Vec<TasteVector>,
    pub skipped: usize,
}

impl<'a> TrainingSet<'a> {
    pub fn build(corpus: &'a Corpus, cfg: &TrainingConfig) -> Result<Self> {
        let (recipes, skipped) = corpus.ground_truth_recipes();
        let inputs = cfg.exec.try_map(recipes.len(), |i| {
            recipe_inputs(recipes[i], corpus, &cfg.bounds, &cfg.lexicon)
        })?;
        let actual = recipes
            .iter()
            .map(|r| r.ground_truth.expect("filtered"))
            .collect();
        Ok(TrainingSet {
            recipes,
            inputs,
            actual,
            skipped,
        })
    }

    pub fn len(&self) -> usize {
        self.recipes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.recipes.is_empty()
    }

    /// Ingredient columns for the per-ingredient design.
    pub fn ingredient_columns(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .inputs
            .iter()
            .flat_map(|i| i.components.iter().map(|(id, _)| id.clone()))
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }

    /// Design matrix, Lasso target and offset for one kind and dimension.
    pub fn design(
        &self,
        kind: ModelKind,
        form: HybridForm,
        dim: Dimension,
        columns: &[String],
    ) -> (Array2<f64>, Vec<f64>, Vec<f64>) {
        let p = feature_names(kind, dim, columns).len();
        let mut x = Array2::zeros((self.len(), p));
        let mut y = Vec::with_capacity(self.len());
        let mut offsets = Vec::with_capacity(self.len());
        for (i, inputs) in self.inputs.iter().enumerate() {
            for (k, v) in feature_row(kind, inputs, dim, columns).into_iter().enumerate() {
                x[[i, k]] = v;
            }
            let off = prediction_offset(kind, form, inputs, dim);
            offsets.push(off);
            y.push(self.actual[i].get(dim) - off);
        }
        (x, y, offsets)
    }
}

/// One dimension's fitted model inside a bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionModel {
    pub dimension: Dimension,
    #[serde(flatten)]
    pub model: LassoModel,
}

/// A trained learned model plus the metadata needed to apply it; serialised
/// as the model bundle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format_version: u32,
    pub kind: ModelKind,
    pub form: HybridForm,
    pub bounds_config: BoundsConfig,
    pub lexicon_hash: String,
    pub corpus_fingerprint: String,
    /// Per-ingredient columns; empty unless `kind` is `lasso_115`.
    pub ingredient_columns: Vec<String>,
    pub dimensions: Vec<DimensionModel>,
}

/// Prediction post-processing.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PredictOptions {
    /// Clip each score to `[0, 100]`.
    pub clip: bool,
}

impl TrainedModel {
    pub fn dimension(&self, dim: Dimension) -> &LassoModel {
        &self.dimensions[dim.index()].model
    }

    /// Predict from precomputed inputs.
    pub fn predict_inputs(&self, inputs: &RecipeInputs, opts: PredictOptions) -> TasteVector {
        let mut out = TasteVector::ZERO;
        for dim in Dimension::ALL {
            let row = feature_row(self.kind, inputs, dim, &self.ingredient_columns);
            let value = prediction_offset(self.kind, self.form, inputs, dim) + self.dimension(dim).predict(&row);
            out.set(dim, value);
        }
        if opts.clip {
            out.clipped()
        } else {
            out
        }
    }

    /// Check the bundle can be applied with `lexicon`.
    pub fn check_lexicon(&self, lexicon: &CategoryLexicon) -> Result<()> {
        if self.kind == ModelKind::Hybrid && self.lexicon_hash != lexicon.hash() {
            return Err(Error::BundleMismatch(
                "bundle was trained with a different category lexicon".into(),
            ));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != BUNDLE_FORMAT_VERSION {
            return Err(Error::BundleMismatch(format!(
                "unsupported bundle format version {}",
                self.format_version
            )));
        }
        if !self.kind.is_learned() {
            return Err(Error::BundleMismatch(format!(
                "`{}` is not a learned model",
                self.kind
            )));
        }
        if self.dimensions.len() != 5
            || self
                .dimensions
                .iter()
                .zip(Dimension::ALL)
                .any(|(m, d)| m.dimension != d)
        {
            return Err(Error::BundleMismatch(
                "bundle must hold one model per dimension in canonical order".into(),
            ));
        }
        for m in &self.dimensions {
            m.model
                .validate()
                .map_err(|e| Error::BundleMismatch(format!("{} model: {e}", m.dimension)))?;
            let expected = feature_names(self.kind, m.dimension, &self.ingredient_columns).len();
            if m.model.coefficients.len() != expected {
                return Err(Error::BundleMismatch(format!(
                    "{} model has {} coefficients, expected {expected}",
                    m.dimension,
                    m.model.coefficients.len()
                )));
            }
        }
        self.bounds_config.validate()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bundle serialises")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let model: TrainedModel = serde_json::from_str(json)?;
        model.validate()?;
        Ok(model)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Fit one learned model kind on every ground-truth recipe: alpha by
/// leave-one-out error per dimension, then a final fit on all rows.
pub fn train_model(corpus: &Corpus, kind: ModelKind, cfg: &TrainingConfig) -> Result<TrainedModel> {
    if !kind.is_learned() {
        return Err(Error::InvalidConfig(format!("`{kind}` has no trainable parameters")));
    }
    cfg.bounds.validate()?;
    cfg.lexicon.validate()?;
    let set = TrainingSet::build(corpus, cfg)?;
    if set.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "training needs at least 3 ground-truth recipes, found {}",
            set.len()
        )));
    }
    let columns = if kind == ModelKind::Lasso115 {
        set.ingredient_columns()
    } else {
        vec![]
    };
    let mut dimensions = Vec::with_capacity(5);
    for dim in Dimension::ALL {
        let (x, y, _) = set.design(kind, cfg.form, dim, &columns);
        let alpha = select_alpha(x.view(), &y, &cfg.alpha_grid, &cfg.lasso, cfg.exec)?;
        let mut model = lasso_fit(x.view(), &y, alpha, &cfg.lasso)?.model;
        model.feature_names = feature_names(kind, dim, &columns);
        dimensions.push(DimensionModel {
            dimension: dim,
            model,
        });
    }
    Ok(TrainedModel {
        format_version: BUNDLE_FORMAT_VERSION,
        kind,
        form: cfg.form,
        bounds_config: cfg.bounds,
        lexicon_hash: cfg.lexicon.hash(),
        corpus_fingerprint: corpus.fingerprint(),
        ingredient_columns: columns,
        dimensions,
    })
}

pub fn train_hybrid(corpus: &Corpus, cfg: &TrainingConfig) -> Result<TrainedModel> {
    train_model(corpus, ModelKind::Hybrid, cfg)
}

/// Which Lasso baseline to train.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineVariant {
    FiveFeature,
    PerIngredient,
}

pub fn train_lasso_baseline(corpus: &Corpus, variant: BaselineVariant, cfg: &TrainingConfig) -> Result<TrainedModel> {
    let kind = match variant {
        BaselineVariant::FiveFeature => ModelKind::Lasso5d,
        BaselineVariant::PerIngredient => ModelKind::Lasso115,
    };
    train_model(corpus, kind, cfg)
}

/// Apply a trained model to a recipe resolved against `corpus`, using the
/// bounds configuration the model was trained with.
pub fn predict_hybrid(
    model: &TrainedModel,
    recipe: &RecipeComposition,
    corpus: &Corpus,
    lexicon: &CategoryLexicon,
    opts: PredictOptions,
) -> Result<TasteVector> {
    let inputs = recipe_inputs(recipe, corpus, &model.bounds_config, lexicon)?;
    Ok(model.predict_inputs(&inputs, opts))
}
