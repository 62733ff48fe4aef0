//! Processing-chemistry proxy features computed from the ingredient list.
//!
//! Ingredients are assigned to categories by keyword substring match against
//! their id and display name. A recipe's category fraction is the summed mass
//! fraction of its ingredients in that category; categories may overlap.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::dataset::{Corpus, IngredientTasteProfile, RecipeComposition};
use crate::{Error, Result};

/// Water fraction is capped here before the concentration factor, which
/// therefore never exceeds 100.
pub const WATER_CLAMP: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Protein,
    Sugar,
    Salt,
    Water,
    Allium,
    Fermented,
}

impl Category {
    pub const ALL: [Category; 6] = [
        Category::Protein,
        Category::Sugar,
        Category::Salt,
        Category::Water,
        Category::Allium,
        Category::Fermented,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Category::Protein => "protein",
            Category::Sugar => "sugar",
            Category::Salt => "salt",
            Category::Water => "water",
            Category::Allium => "allium",
            Category::Fermented => "fermented",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| format!("unknown category `{s}`"))
    }
}

/// Keyword lists per category. Serialises to
/// `{ "protein": [...], "sugar": [...], ... }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryLexicon {
    pub protein: Vec<String>,
    pub sugar: Vec<String>,
    pub salt: Vec<String>,
    pub water: Vec<String>,
    pub allium: Vec<String>,
    pub fermented: Vec<String>,
}

fn words(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

impl Default for CategoryLexicon {
    fn default() -> Self {
        CategoryLexicon {
            protein: words(&[
                "pork", "beef", "chicken", "fish", "egg", "bean", "pea", "lentil", "milk", "cheese",
                "yoghurt", "nut", "hazelnut", "soybean", "soya", "tofu",
            ]),
            sugar: words(&["sugar", "honey", "syrup", "sucrose", "glucose", "fructose"]),
            salt: words(&["salt", "nacl", "bouillon", "stock-cube", "soy-sauce"]),
            water: words(&["water", "stock", "broth"]),
            allium: words(&["onion", "garlic", "leek", "shallot", "chive"]),
            fermented: words(&[
                "soy-sauce", "cheese", "vinegar", "mustard", "yoghurt", "sauerkraut", "wine",
                "beer",
            ]),
        }
    }
}

impl CategoryLexicon {
    pub fn keywords(&self, category: Category) -> &[String] {
        match category {
            Category::Protein => &self.protein,
            Category::Sugar => &self.sugar,
            Category::Salt => &self.salt,
            Category::Water => &self.water,
            Category::Allium => &self.allium,
            Category::Fermented => &self.fermented,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for cat in Category::ALL {
            let kws = self.keywords(cat);
            if kws.is_empty() {
                return Err(Error::InvalidConfig(format!(
                    "lexicon category `{cat}` has no keywords"
                )));
            }
            if let Some(k) = kws.iter().find(|k| k.is_empty() || **k != k.to_lowercase()) {
                return Err(Error::InvalidConfig(format!(
                    "lexicon keyword `{k}` in `{cat}` must be non-empty lowercase"
                )));
            }
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let lex: CategoryLexicon = serde_json::from_str(json)?;
        lex.validate()?;
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// SHA-256 of the canonical JSON form, recorded in model bundles.
    pub fn hash(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("lexicon serialises");
        hex::encode(Sha256::digest(&bytes))
    }
}

/// Categories whose keywords occur in the ingredient's id or lowercased name.
pub fn classify(ingredient: &IngredientTasteProfile, lexicon: &CategoryLexicon) -> BTreeSet<Category> {
    let id = ingredient.ingredient_id.to_lowercase();
    let name = ingredient.display_name.to_lowercase();
    Category::ALL
        .into_iter()
        .filter(|&cat| {
            lexicon
                .keywords(cat)
                .iter()
                .any(|k| id.contains(k.as_str()) || name.contains(k.as_str()))
        })
        .collect()
}

/// The eight recipe-level proxy features.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChemistryFeatures {
    pub phi_protein: f64,
    pub phi_sugar: f64,
    pub phi_maillard: f64,
    pub phi_salt: f64,
    pub phi_water: f64,
    pub phi_concentration: f64,
    pub phi_allium: f64,
    pub phi_fermented: f64,
}

impl ChemistryFeatures {
    pub const NAMES: [&'static str; 8] = [
        "phi_protein",
        "phi_sugar",
        "phi_maillard",
        "phi_salt",
        "phi_water",
        "phi_concentration",
        "phi_allium",
        "phi_fermented",
    ];

    /// Build the derived features from raw category fractions.
    pub fn from_fractions(protein: f64, sugar: f64, salt: f64, water: f64, allium: f64, fermented: f64) -> Self {
        let clamped = water.clamp(0.0, WATER_CLAMP);
        ChemistryFeatures {
            phi_protein: protein,
            phi_sugar: sugar,
            phi_maillard: protein * sugar,
            phi_salt: salt,
            phi_water: water,
            phi_concentration: 1.0 / (1.0 - clamped),
            phi_allium: allium,
            phi_fermented: fermented,
        }
    }

    pub fn to_array(&self) -> [f64; 8] {
        [
            self.phi_protein,
            self.phi_sugar,
            self.phi_maillard,
            self.phi_salt,
            self.phi_water,
            self.phi_concentration,
            self.phi_allium,
            self.phi_fermented,
        ]
    }
}

pub fn features(
    recipe: &RecipeComposition,
    corpus: &Corpus,
    lexicon: &CategoryLexicon,
) -> Result<ChemistryFeatures> {
    let mut frac = [0.0f64; 6];
    for c in &recipe.components {
        let ing = corpus.ingredient(&c.ingredient_id)?;
        for cat in classify(ing, lexicon) {
            frac[cat as usize] += c.mass_fraction;
        }
    }
    // guard against summation overshoot on fractions that renormalise to 1
    let [protein, sugar, salt, water, allium, fermented] = frac.map(|f| f.min(1.0));
    Ok(ChemistryFeatures::from_fractions(
        protein, sugar, salt, water, allium, fermented,
    ))
}
