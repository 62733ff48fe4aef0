//! Forward prediction payload shared by the command line and the HTTP API.

use serde::{Deserialize, Serialize};

use crate::bounds::BoundsResult;
use crate::chemistry::{CategoryLexicon, ChemistryFeatures};
use crate::dataset::{Component, Corpus, RecipeComposition};
use crate::hybrid::{recipe_inputs, PredictOptions, TrainedModel};
use crate::{Error, Result, TasteVector};

/// A recipe given either by corpus id or by explicit components.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Component>>,
}

impl PredictRequest {
    /// Resolve into a validated recipe. Exactly one of the two fields must be
    /// set.
    pub fn resolve(&self, corpus: &Corpus) -> Result<RecipeComposition> {
        match (&self.recipe_id, &self.components) {
            (Some(id), None) => Ok(corpus.recipe(id)?.clone()),
            (None, Some(components)) => {
                corpus.validate_recipe(RecipeComposition::adhoc("adhoc", components.clone()))
            }
            (Some(_), Some(_)) => Err(Error::validation_field(
                "request",
                "recipe_id",
                "give either recipe_id or components, not both",
            )),
            (None, None) => Err(Error::validation_field(
                "request",
                "components",
                "components or recipe_id is required",
            )),
        }
    }
}

/// Bounds, chemistry features and learned prediction for one recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForwardResult {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recipe_id: Option<String>,
    pub components: Vec<Component>,
    pub bounds: BoundsResult,
    pub chemistry_features: ChemistryFeatures,
    pub hybrid_prediction: TasteVector,
    /// `hybrid_prediction - hs_midpoint` per dimension.
    pub correction: TasteVector,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ground_truth: Option<TasteVector>,
}

impl ForwardResult {
    /// Canonical JSON rendering: pretty-printed with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("forward result serialises");
        s.push('\n');
        s
    }
}

/// Evaluate `model` on `recipe`. Bounds use the model's bounds configuration.
pub fn forward(
    recipe: &RecipeComposition,
    corpus: &Corpus,
    model: &TrainedModel,
    lexicon: &CategoryLexicon,
    opts: PredictOptions,
) -> Result<ForwardResult> {
    let inputs = recipe_inputs(recipe, corpus, &model.bounds_config, lexicon)?;
    let prediction = model.predict_inputs(&inputs, opts);
    let mut correction = TasteVector::ZERO;
    for dim in crate::Dimension::ALL {
        correction.set(dim, prediction.get(dim) - inputs.bounds.get(dim).hs_midpoint);
    }
    Ok(ForwardResult {
        recipe_id: corpus
            .recipe(&recipe.recipe_id)
            .is_ok()
            .then(|| recipe.recipe_id.clone()),
        components: recipe.components.clone(),
        bounds: inputs.bounds,
        chemistry_features: inputs.chemistry,
        hybrid_prediction: prediction,
        correction,
        ground_truth: recipe.ground_truth,
    })
}
