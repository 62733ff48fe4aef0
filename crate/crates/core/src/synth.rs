//! Seeded synthetic corpus in the canonical schema.
//!
//! The measured sensory corpus is not redistributable, so tests, benches and
//! demos run on a generated stand-in: 46 ingredient references, 70 recipes
//! (22 high, 42 moderate and 6 low confidence) including pea-soup (`RP14`),
//! chocolate-spread (`RP55`) and ketchup (`RP68`) decompositions. Ground truth
//! is the HS/Voigt baseline plus chemistry-driven gains and panel-like noise,
//! so the generated data shows the same qualitative under-prediction the
//! bounds exhibit on real data. Ingredient scores are estimates, not measured
//! values.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::bounds::BoundsConfig;
use crate::chemistry::CategoryLexicon;
use crate::dataset::{
    Component, Confidence, Corpus, IngredientTasteProfile, RecipeComposition, SourceTier,
};
use crate::hybrid::{recipe_inputs, RecipeInputs};
use crate::{Dimension, Result, TasteVector};

const INGREDIENTS: &[(&str, &str, [f64; 5], SourceTier)] = &[
    ("water", "Water", [0.0, 0.0, 0.0, 0.0, 0.0], SourceTier::Estimated),
    ("salt", "Salt", [0.0, 0.0, 2.0, 0.0, 95.0], SourceTier::Published),
    ("sugar", "Sugar", [95.0, 0.0, 0.0, 0.0, 0.0], SourceTier::Published),
    ("honey", "Honey", [80.0, 3.0, 1.0, 0.0, 0.0], SourceTier::SvtPanel),
    ("tomato", "Tomato", [12.0, 15.0, 1.0, 22.0, 3.0], SourceTier::SvtPanel),
    ("tomato-paste", "Tomato paste", [18.0, 20.0, 3.0, 30.0, 8.0], SourceTier::SvtPanel),
    ("peas", "Peas", [20.0, 2.0, 4.0, 8.0, 2.0], SourceTier::SvtPanel),
    ("pork", "Pork", [2.0, 1.0, 2.0, 25.0, 12.0], SourceTier::Published),
    ("beef", "Beef", [2.0, 1.0, 2.0, 28.0, 10.0], SourceTier::Published),
    ("chicken", "Chicken", [2.0, 1.0, 1.0, 22.0, 8.0], SourceTier::Published),
    ("fish", "Fish", [2.0, 1.0, 2.0, 20.0, 15.0], SourceTier::Published),
    ("egg", "Egg", [2.0, 0.0, 1.0, 10.0, 5.0], SourceTier::SvtPanel),
    ("sunflower-oil", "Sunflower oil", [0.0, 0.0, 1.0, 0.0, 0.0], SourceTier::SvtPanel),
    ("hazelnuts", "Hazelnuts", [12.0, 1.0, 8.0, 4.0, 1.0], SourceTier::SvtPanel),
    ("milk", "Milk", [10.0, 2.0, 0.0, 3.0, 3.0], SourceTier::SvtPanel),
    ("cocoa", "Cocoa powder", [3.0, 5.0, 55.0, 3.0, 1.0], SourceTier::Published),
    ("starch", "Corn starch", [1.0, 0.0, 0.0, 0.0, 0.0], SourceTier::Estimated),
    ("vinegar", "Vinegar", [2.0, 70.0, 3.0, 1.0, 1.0], SourceTier::SvtPanel),
    ("spices", "Mixed spices", [4.0, 3.0, 15.0, 5.0, 3.0], SourceTier::Estimated),
    ("onion", "Onion", [12.0, 4.0, 3.0, 10.0, 1.0], SourceTier::SvtPanel),
    ("garlic", "Garlic", [6.0, 2.0, 8.0, 15.0, 2.0], SourceTier::Published),
    ("leek", "Leek", [8.0, 3.0, 4.0, 9.0, 1.0], SourceTier::SvtPanel),
    ("potato", "Potato", [5.0, 1.0, 2.0, 6.0, 1.0], SourceTier::SvtPanel),
    ("carrot", "Carrot", [22.0, 2.0, 3.0, 3.0, 2.0], SourceTier::SvtPanel),
    ("rice", "Rice", [4.0, 0.0, 1.0, 2.0, 0.0], SourceTier::SvtPanel),
    ("flour", "Wheat flour", [3.0, 1.0, 2.0, 2.0, 1.0], SourceTier::Published),
    ("butter", "Butter", [5.0, 2.0, 0.0, 3.0, 8.0], SourceTier::SvtPanel),
    ("cream", "Cream", [12.0, 4.0, 0.0, 3.0, 3.0], SourceTier::SvtPanel),
    ("cheese", "Cheese", [3.0, 12.0, 4.0, 35.0, 35.0], SourceTier::SvtPanel),
    ("yoghurt", "Yoghurt", [8.0, 35.0, 2.0, 5.0, 4.0], SourceTier::SvtPanel),
    ("soy-sauce", "Soy sauce", [6.0, 8.0, 8.0, 45.0, 85.0], SourceTier::Published),
    ("mustard", "Mustard", [10.0, 40.0, 20.0, 8.0, 40.0], SourceTier::SvtPanel),
    ("lemon-juice", "Lemon juice", [6.0, 85.0, 6.0, 1.0, 0.0], SourceTier::Published),
    ("apple", "Apple", [45.0, 30.0, 2.0, 1.0, 0.0], SourceTier::SvtPanel),
    ("mushroom", "Mushroom", [3.0, 2.0, 4.0, 30.0, 3.0], SourceTier::SvtPanel),
    ("bouillon", "Bouillon cube", [2.0, 2.0, 2.0, 40.0, 90.0], SourceTier::Published),
    ("broth", "Vegetable broth", [2.0, 2.0, 1.0, 15.0, 25.0], SourceTier::Estimated),
    ("wine", "Red wine", [8.0, 45.0, 12.0, 3.0, 1.0], SourceTier::Published),
    ("sauerkraut", "Sauerkraut", [3.0, 55.0, 4.0, 8.0, 30.0], SourceTier::SvtPanel),
    ("celery", "Celery", [5.0, 2.0, 8.0, 5.0, 8.0], SourceTier::SvtPanel),
    ("bread", "Bread", [12.0, 5.0, 4.0, 6.0, 25.0], SourceTier::SvtPanel),
    ("pepper", "Black pepper", [2.0, 2.0, 25.0, 2.0, 1.0], SourceTier::Estimated),
    ("cabbage", "White cabbage", [8.0, 3.0, 8.0, 5.0, 2.0], SourceTier::SvtPanel),
    ("lentils", "Lentils", [8.0, 2.0, 6.0, 10.0, 2.0], SourceTier::Published),
    ("beans", "Kidney beans", [10.0, 2.0, 5.0, 9.0, 2.0], SourceTier::Published),
    ("yeast-extract", "Yeast extract", [2.0, 4.0, 10.0, 70.0, 60.0], SourceTier::Published),
];

/// `(ingredient, min weight, max weight, inclusion probability)`
type Slot = (&'static str, f64, f64, f64);

const SOUP: &[Slot] = &[
    ("water", 0.3, 0.6, 1.0),
    ("broth", 0.05, 0.2, 0.4),
    ("potato", 0.05, 0.15, 0.6),
    ("carrot", 0.03, 0.1, 0.6),
    ("onion", 0.02, 0.08, 0.7),
    ("leek", 0.02, 0.06, 0.4),
    ("celery", 0.02, 0.05, 0.4),
    ("lentils", 0.05, 0.2, 0.3),
    ("peas", 0.05, 0.25, 0.3),
    ("chicken", 0.05, 0.15, 0.3),
    ("tomato", 0.05, 0.3, 0.3),
    ("bouillon", 0.003, 0.012, 0.4),
    ("salt", 0.004, 0.015, 0.8),
    ("butter", 0.005, 0.02, 0.3),
];

const MAIN: &[Slot] = &[
    ("pork", 0.1, 0.35, 0.3),
    ("beef", 0.1, 0.35, 0.3),
    ("chicken", 0.1, 0.35, 0.3),
    ("fish", 0.1, 0.3, 0.2),
    ("potato", 0.1, 0.4, 0.5),
    ("rice", 0.1, 0.4, 0.3),
    ("cabbage", 0.05, 0.2, 0.3),
    ("carrot", 0.03, 0.12, 0.4),
    ("onion", 0.02, 0.1, 0.6),
    ("garlic", 0.005, 0.03, 0.5),
    ("mushroom", 0.03, 0.1, 0.3),
    ("sunflower-oil", 0.01, 0.06, 0.7),
    ("water", 0.05, 0.3, 0.5),
    ("salt", 0.005, 0.02, 0.9),
    ("pepper", 0.001, 0.005, 0.5),
    ("soy-sauce", 0.01, 0.05, 0.2),
    ("cheese", 0.03, 0.12, 0.2),
    ("sauerkraut", 0.1, 0.3, 0.1),
];

const SWEET: &[Slot] = &[
    ("sugar", 0.1, 0.45, 0.9),
    ("honey", 0.05, 0.2, 0.2),
    ("flour", 0.1, 0.4, 0.6),
    ("butter", 0.05, 0.2, 0.6),
    ("egg", 0.05, 0.15, 0.5),
    ("milk", 0.05, 0.3, 0.5),
    ("cream", 0.05, 0.3, 0.3),
    ("cocoa", 0.02, 0.1, 0.3),
    ("hazelnuts", 0.05, 0.2, 0.3),
    ("apple", 0.1, 0.4, 0.3),
    ("salt", 0.001, 0.004, 0.5),
];

const CONDIMENT: &[Slot] = &[
    ("tomato", 0.2, 0.6, 0.5),
    ("tomato-paste", 0.1, 0.3, 0.3),
    ("vinegar", 0.03, 0.2, 0.7),
    ("mustard", 0.1, 0.4, 0.2),
    ("sugar", 0.03, 0.2, 0.7),
    ("water", 0.05, 0.3, 0.5),
    ("salt", 0.005, 0.03, 0.9),
    ("onion", 0.02, 0.08, 0.4),
    ("garlic", 0.005, 0.03, 0.4),
    ("spices", 0.005, 0.02, 0.6),
    ("soy-sauce", 0.02, 0.1, 0.2),
    ("yeast-extract", 0.01, 0.05, 0.15),
    ("lemon-juice", 0.02, 0.1, 0.3),
    ("sunflower-oil", 0.05, 0.3, 0.3),
    ("egg", 0.03, 0.1, 0.2),
];

const DAIRY: &[Slot] = &[
    ("yoghurt", 0.3, 0.8, 0.6),
    ("milk", 0.2, 0.7, 0.5),
    ("cheese", 0.1, 0.5, 0.4),
    ("cream", 0.05, 0.2, 0.3),
    ("sugar", 0.03, 0.12, 0.5),
    ("apple", 0.05, 0.2, 0.3),
    ("bread", 0.2, 0.5, 0.2),
    ("salt", 0.002, 0.01, 0.4),
    ("wine", 0.05, 0.15, 0.1),
];

const SEASONING: &[Slot] = &[
    ("salt", 0.05, 0.3, 0.8),
    ("bouillon", 0.1, 0.4, 0.4),
    ("soy-sauce", 0.1, 0.5, 0.4),
    ("yeast-extract", 0.05, 0.2, 0.3),
    ("spices", 0.05, 0.2, 0.6),
    ("pepper", 0.02, 0.1, 0.4),
    ("garlic", 0.05, 0.2, 0.4),
    ("water", 0.1, 0.5, 0.6),
    ("starch", 0.05, 0.2, 0.4),
];

const TEMPLATES: &[&[Slot]] = &[SOUP, MAIN, SWEET, CONDIMENT, DAIRY, SEASONING];
const TEMPLATE_WEIGHTS: [f64; 6] = [0.22, 0.24, 0.18, 0.16, 0.1, 0.1];

fn pea_soup() -> Vec<Component> {
    [
        ("water", 0.39),
        ("peas", 0.24),
        ("pork", 0.09),
        ("potato", 0.08),
        ("carrot", 0.05),
        ("onion", 0.04),
        ("leek", 0.03),
        ("celery", 0.03),
        ("broth", 0.02),
        ("sunflower-oil", 0.01),
        ("salt", 0.01),
        ("butter", 0.01),
    ]
    .into_iter()
    .map(|(i, v)| Component::new(i, v))
    .collect()
}

fn chocolate_spread() -> Vec<Component> {
    [
        ("sugar", 0.50),
        ("sunflower-oil", 0.18),
        ("hazelnuts", 0.13),
        ("milk", 0.09),
        ("cocoa", 0.075),
        ("butter", 0.024),
        ("salt", 0.001),
    ]
    .into_iter()
    .map(|(i, v)| Component::new(i, v))
    .collect()
}

fn ketchup() -> Vec<Component> {
    [
        ("tomato", 0.60),
        ("sugar", 0.15),
        ("water", 0.10),
        ("vinegar", 0.08),
        ("starch", 0.04),
        ("salt", 0.02),
        ("spices", 0.01),
    ]
    .into_iter()
    .map(|(i, v)| Component::new(i, v))
    .collect()
}

/// Generator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SynthConfig {
    pub seed: u64,
    pub n_recipes: usize,
    /// Multiplier on the ground-truth noise levels.
    pub noise: f64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            seed: 42,
            n_recipes: 70,
            noise: 1.0,
        }
    }
}

pub fn ingredient_table() -> Vec<IngredientTasteProfile> {
    INGREDIENTS
        .iter()
        .map(|(id, name, t, tier)| IngredientTasteProfile {
            ingredient_id: id.to_string(),
            display_name: name.to_string(),
            taste: TasteVector::from_array(*t),
            source_tier: *tier,
        })
        .collect()
}

fn pick_template(rng: &mut ChaCha8Rng) -> usize {
    let mut u = rng.random::<f64>();
    for (i, w) in TEMPLATE_WEIGHTS.iter().enumerate() {
        if u < *w {
            return i;
        }
        u -= w;
    }
    TEMPLATES.len() - 1
}

fn draw_components(rng: &mut ChaCha8Rng, template: &[Slot]) -> Vec<Component> {
    let mut parts: Vec<(String, f64)> = Vec::new();
    while parts.len() < 3 {
        parts.clear();
        for &(id, lo, hi, p) in template {
            if rng.random::<f64>() < p {
                parts.push((id.to_string(), rng.random_range(lo..=hi)));
            }
        }
    }
    let total: f64 = parts.iter().map(|(_, w)| w).sum();
    // four decimals, residual assigned to the largest component
    let mut comps: Vec<Component> = parts
        .into_iter()
        .map(|(id, w)| Component::new(id, (w / total * 1e4).round() / 1e4))
        .collect();
    let residual = 1.0 - comps.iter().map(|c| c.mass_fraction).sum::<f64>();
    let largest = comps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.mass_fraction.total_cmp(&b.1.mass_fraction))
        .map(|(i, _)| i)
        .expect("non-empty");
    comps[largest].mass_fraction = ((comps[largest].mass_fraction + residual) * 1e4).round() / 1e4;
    comps.retain(|c| c.mass_fraction > 0.0);
    comps
}

/// Ground truth as baseline plus processing-chemistry gains, before noise.
pub fn processing_gain_profile(inputs: &RecipeInputs) -> TasteVector {
    let b = &inputs.bounds;
    let c = &inputs.chemistry;
    let conc = (c.phi_concentration - 1.0).min(5.0);
    TasteVector::from_array([
        1.15 * b.sweet.voigt + 4.0 + 35.0 * c.phi_sugar + 40.0 * c.phi_maillard,
        1.1 * b.sour.voigt + 1.5 + 25.0 * c.phi_fermented + 1.5 * conc,
        0.95 * b.bitter.hs_midpoint + 0.2,
        1.1 * b.umami.hs_midpoint + 7.0 + 25.0 * c.phi_allium + 8.0 * c.phi_water + 12.0 * c.phi_protein,
        b.salt.voigt + 14.0 + 300.0 * c.phi_salt + 2.0 * conc,
    ])
}

const NOISE_SD: [f64; 5] = [4.0, 3.0, 0.6, 4.0, 5.0];

/// Generate the synthetic corpus.
pub fn synthetic_corpus(cfg: &SynthConfig) -> Result<Corpus> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let ingredients = ingredient_table();
    let shell = Corpus::new(ingredients.clone(), vec![])?;

    let n = cfg.n_recipes.max(3);
    let mut tiers: Vec<Confidence> = Vec::with_capacity(n);
    let high = (n as f64 * 22.0 / 70.0).round() as usize;
    let low = (n as f64 * 6.0 / 70.0).round() as usize;
    tiers.extend(std::iter::repeat_n(Confidence::High, high));
    tiers.extend(std::iter::repeat_n(Confidence::Low, low));
    tiers.resize(n, Confidence::Moderate);
    tiers.shuffle(&mut rng);

    let fixtures: [(usize, &str, Vec<Component>, Vec<(Dimension, f64)>); 3] = [
        (14, "Pea soup", pea_soup(), vec![(Dimension::Salt, 44.0)]),
        (55, "Chocolate hazelnut spread", chocolate_spread(), vec![(Dimension::Sweet, 63.0)]),
        (68, "Tomato ketchup", ketchup(), vec![(Dimension::Umami, 22.0), (Dimension::Sweet, 28.0)]),
    ];

    let bounds = BoundsConfig::default();
    let lexicon = CategoryLexicon::default();
    let normals: Vec<Normal<f64>> = NOISE_SD
        .iter()
        .map(|sd| Normal::new(0.0, sd * cfg.noise).expect("finite sd"))
        .collect();

    let mut recipes = Vec::with_capacity(n);
    for (idx, tier) in tiers.into_iter().enumerate() {
        let number = idx + 1;
        let fixture = fixtures.iter().find(|f| f.0 == number);
        let (name, components) = match fixture {
            Some((_, name, comps, _)) => (name.to_string(), comps.clone()),
            None => {
                let t = pick_template(&mut rng);
                let kind = ["Soup", "Main dish", "Sweet", "Condiment", "Dairy dish", "Seasoning"][t];
                (format!("{kind} {number}"), draw_components(&mut rng, TEMPLATES[t]))
            }
        };
        let mut recipe = RecipeComposition {
            recipe_id: format!("RP{number:02}"),
            name,
            components,
            confidence: tier,
            ground_truth: None,
        };
        let inputs = recipe_inputs(&recipe, &shell, &bounds, &lexicon)?;
        let mut gt = processing_gain_profile(&inputs);
        for (dim, normal) in Dimension::ALL.into_iter().zip(&normals) {
            let noisy = gt.get(dim) + normal.sample(&mut rng);
            gt.set(dim, (noisy.clamp(0.0, 100.0) * 10.0).round() / 10.0);
        }
        if let Some((_, _, _, known)) = fixture {
            for &(dim, v) in known {
                gt.set(dim, v);
            }
        }
        recipe.ground_truth = Some(gt);
        recipes.push(recipe);
    }
    Corpus::new(ingredients, recipes)
}

/// Replace every recipe's ground truth with `label(inputs)`.
pub fn relabel(
    corpus: &Corpus,
    bounds: &BoundsConfig,
    lexicon: &CategoryLexicon,
    label: impl Fn(&RecipeInputs) -> TasteVector,
) -> Result<Corpus> {
    let recipes = corpus
        .recipes()
        .iter()
        .map(|r| {
            let inputs = recipe_inputs(r, corpus, bounds, lexicon)?;
            let mut r = r.clone();
            r.ground_truth = Some(label(&inputs));
            Ok(r)
        })
        .collect::<Result<Vec<_>>>()?;
    corpus.with_recipes(recipes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let c = synthetic_corpus(&SynthConfig::default()).unwrap();
        assert_eq!(c.recipes().len(), 70);
        let count = |t| c.recipes().iter().filter(|r| r.confidence == t).count();
        assert_eq!(count(Confidence::High), 22);
        assert_eq!(count(Confidence::Moderate), 42);
        assert_eq!(count(Confidence::Low), 6);
        assert_eq!(c.recipe("RP14").unwrap().components.len(), 12);
        assert_eq!(c.recipe("RP55").unwrap().components.len(), 7);
        let ketchup = c.recipe("RP68").unwrap();
        assert_eq!(ketchup.components.len(), 7);
        assert!((ketchup.fraction_of("tomato") - 0.60).abs() < 1e-12);
        for r in c.recipes() {
            assert!((r.fractions().iter().sum::<f64>() - 1.0).abs() <= 1e-3);
        }
    }

    #[test]
    fn generation_is_seeded() {
        let a = synthetic_corpus(&SynthConfig::default()).unwrap();
        let b = synthetic_corpus(&SynthConfig::default()).unwrap();
        assert_eq!(a, b);
        let c = synthetic_corpus(&SynthConfig {
            seed: 7,
            ..SynthConfig::default()
        })
        .unwrap();
        assert_ne!(a, c);
    }
}
