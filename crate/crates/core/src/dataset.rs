//! Ingredient taste references and recipe decompositions.
//!
//! Two UTF-8 CSV files make up a corpus:
//!
//! ```text
//! ingredients.csv  ingredient_id,display_name,sweet,sour,bitter,umami,salt,source_tier
//! recipes.csv      recipe_id,recipe_name,confidence,ingredient_id,mass_fraction,
//!                  gt_sweet,gt_sour,gt_bitter,gt_umami,gt_salt
//! ```
//!
//! `recipes.csv` holds one row per component. The ground-truth columns are
//! repeated on every row of a recipe and must agree; leaving them empty marks
//! a prediction-only recipe. The same records can be exchanged as JSON,
//! `{ "ingredients": [...], "recipes": [...] }`, see [`CorpusDocument`].
//!
//! Ingredient ids are normalised to lowercase slugs on load and recipes whose
//! fractions sum to within 0.001 of one are renormalised to sum exactly to one.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Dimension, Error, Result, TasteVector};

/// Allowed deviation of a recipe's fraction sum from one.
pub const FRACTION_SUM_TOLERANCE: f64 = 1e-3;

pub const INGREDIENTS_HEADER: [&str; 8] = [
    "ingredient_id",
    "display_name",
    "sweet",
    "sour",
    "bitter",
    "umami",
    "salt",
    "source_tier",
];

pub const RECIPES_HEADER: [&str; 10] = [
    "recipe_id",
    "recipe_name",
    "confidence",
    "ingredient_id",
    "mass_fraction",
    "gt_sweet",
    "gt_sour",
    "gt_bitter",
    "gt_umami",
    "gt_salt",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SourceTier {
    SvtPanel,
    Published,
    Estimated,
}

impl SourceTier {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceTier::SvtPanel => "SVT_PANEL",
            SourceTier::Published => "PUBLISHED",
            SourceTier::Estimated => "ESTIMATED",
        }
    }
}

impl FromStr for SourceTier {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().replace([' ', '-'], "_").as_str() {
            "SVT_PANEL" | "SVT" => Ok(SourceTier::SvtPanel),
            "PUBLISHED" => Ok(SourceTier::Published),
            "ESTIMATED" => Ok(SourceTier::Estimated),
            other => Err(format!("unknown source tier `{other}`")),
        }
    }
}

/// Composition confidence rating of a recipe decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Confidence {
    High,
    Moderate,
    Low,
}

impl Confidence {
    pub const ALL: [Confidence; 3] = [Confidence::High, Confidence::Moderate, Confidence::Low];

    pub fn as_str(self) -> &'static str {
        match self {
            Confidence::High => "HIGH",
            Confidence::Moderate => "MODERATE",
            Confidence::Low => "LOW",
        }
    }
}

impl fmt::Display for Confidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Confidence {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "HIGH" => Ok(Confidence::High),
            "MODERATE" | "MEDIUM" => Ok(Confidence::Moderate),
            "LOW" => Ok(Confidence::Low),
            other => Err(format!("unknown confidence rating `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngredientTasteProfile {
    pub ingredient_id: String,
    pub display_name: String,
    pub taste: TasteVector,
    pub source_tier: SourceTier,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Component {
    pub ingredient_id: String,
    pub mass_fraction: f64,
}

impl Component {
    pub fn new(ingredient_id: impl Into<String>, mass_fraction: f64) -> Self {
        Component {
            ingredient_id: ingredient_id.into(),
            mass_fraction,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecipeComposition {
    pub recipe_id: String,
    pub name: String,
    pub components: Vec<Component>,
    pub confidence: Confidence,
    pub ground_truth: Option<TasteVector>,
}

impl RecipeComposition {
    /// An ad-hoc recipe (no ground truth) built from submitted components.
    pub fn adhoc(recipe_id: impl Into<String>, components: Vec<Component>) -> Self {
        let recipe_id = recipe_id.into();
        RecipeComposition {
            name: recipe_id.clone(),
            recipe_id,
            components,
            confidence: Confidence::Moderate,
            ground_truth: None,
        }
    }

    pub fn fractions(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.mass_fraction).collect()
    }

    pub fn fraction_of(&self, ingredient_id: &str) -> f64 {
        self.components
            .iter()
            .filter(|c| c.ingredient_id == ingredient_id)
            .map(|c| c.mass_fraction)
            .sum()
    }
}

/// Validated, immutable collection of ingredient references and recipes.
#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    ingredients: BTreeMap<String, IngredientTasteProfile>,
    recipes: Vec<RecipeComposition>,
}

/// Lowercase slug used as ingredient key: trimmed, whitespace runs collapsed
/// to `-`.
pub fn slugify(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join("-")
        .to_lowercase()
}

/// Scale nonnegative fractions so they sum to one.
pub fn renormalize(fractions: &[f64]) -> Result<Vec<f64>> {
    if let Some(bad) = fractions.iter().find(|f| !f.is_finite() || **f < 0.0) {
        return Err(Error::validation(
            "fractions",
            format!("fractions must be finite and nonnegative, got {bad}"),
        ));
    }
    let total: f64 = fractions.iter().sum();
    if total <= 0.0 {
        return Err(Error::DegenerateInput);
    }
    Ok(fractions.iter().map(|f| f / total).collect())
}

impl Corpus {
    /// Validate and assemble a corpus. Ingredient ids are slugified, recipes
    /// are checked for referential integrity and renormalised.
    pub fn new(
        ingredients: Vec<IngredientTasteProfile>,
        recipes: Vec<RecipeComposition>,
    ) -> Result<Self> {
        let mut table = BTreeMap::new();
        for mut ing in ingredients {
            ing.ingredient_id = slugify(&ing.ingredient_id);
            if ing.ingredient_id.is_empty() {
                return Err(Error::validation_field(
                    format!("ingredient `{}`", ing.display_name),
                    "ingredient_id",
                    "empty ingredient id",
                ));
            }
            if let Some((dim, value)) = ing.taste.out_of_scale() {
                return Err(Error::validation_field(
                    format!("ingredient `{}`", ing.ingredient_id),
                    dim.name(),
                    format!("score {value} outside [0, 100]"),
                ));
            }
            let id = ing.ingredient_id.clone();
            if table.insert(id.clone(), ing).is_some() {
                return Err(Error::validation_field(
                    format!("ingredient `{id}`"),
                    "ingredient_id",
                    "duplicate ingredient id",
                ));
            }
        }

        let mut corpus = Corpus {
            ingredients: table,
            recipes: Vec::with_capacity(recipes.len()),
        };
        let mut seen = HashMap::new();
        for recipe in recipes {
            let recipe = corpus.validate_recipe(recipe)?;
            if seen.insert(recipe.recipe_id.clone(), ()).is_some() {
                return Err(Error::validation_field(
                    format!("recipe `{}`", recipe.recipe_id),
                    "recipe_id",
                    "duplicate recipe id",
                ));
            }
            corpus.recipes.push(recipe);
        }
        Ok(corpus)
    }

    /// Check a recipe against this corpus and return it with slugified ids
    /// and fractions renormalised to sum to one.
    pub fn validate_recipe(&self, mut recipe: RecipeComposition) -> Result<RecipeComposition> {
        let subject = format!("recipe `{}`", recipe.recipe_id);
        if recipe.components.is_empty() {
            return Err(Error::validation_field(
                subject,
                "components",
                "recipe has no components",
            ));
        }
        for (i, c) in recipe.components.iter_mut().enumerate() {
            c.ingredient_id = slugify(&c.ingredient_id);
            if !self.ingredients.contains_key(&c.ingredient_id) {
                return Err(Error::validation_field(
                    subject,
                    format!("components[{i}].ingredient_id"),
                    format!("unknown ingredient `{}`", c.ingredient_id),
                ));
            }
            if !c.mass_fraction.is_finite() || !(0.0..=1.0).contains(&c.mass_fraction) {
                return Err(Error::validation_field(
                    subject,
                    format!("components[{i}].mass_fraction"),
                    format!(
                        "mass fraction {} of `{}` outside [0, 1]",
                        c.mass_fraction, c.ingredient_id
                    ),
                ));
            }
        }
        let total: f64 = recipe.components.iter().map(|c| c.mass_fraction).sum();
        if (total - 1.0).abs() > FRACTION_SUM_TOLERANCE + 1e-12 {
            return Err(Error::validation_field(
                subject,
                "components",
                format!("mass fractions sum to {total:.6}, expected 1 ± {FRACTION_SUM_TOLERANCE}"),
            ));
        }
        // already-normalised input is left bit-identical so reloads are stable
        if (total - 1.0).abs() > 1e-12 {
            let scaled = renormalize(&recipe.fractions())?;
            for (c, v) in recipe.components.iter_mut().zip(scaled) {
                c.mass_fraction = v;
            }
        }
        if let Some(gt) = &recipe.ground_truth {
            if let Some((dim, value)) = gt.out_of_scale() {
                return Err(Error::validation_field(
                    subject,
                    format!("gt_{}", dim.name()),
                    format!("ground-truth score {value} outside [0, 100]"),
                ));
            }
        }
        Ok(recipe)
    }

    pub fn ingredients(&self) -> impl Iterator<Item = &IngredientTasteProfile> {
        self.ingredients.values()
    }

    pub fn ingredient_count(&self) -> usize {
        self.ingredients.len()
    }

    pub fn ingredient(&self, id: &str) -> Result<&IngredientTasteProfile> {
        self.ingredients
            .get(id)
            .ok_or_else(|| Error::UnknownIngredient(id.to_string()))
    }

    pub fn recipes(&self) -> &[RecipeComposition] {
        &self.recipes
    }

    pub fn recipe(&self, id: &str) -> Result<&RecipeComposition> {
        self.recipes
            .iter()
            .find(|r| r.recipe_id == id)
            .ok_or_else(|| Error::UnknownRecipe(id.to_string()))
    }

    /// Recipes carrying ground truth, and how many were skipped for lacking it.
    pub fn ground_truth_recipes(&self) -> (Vec<&RecipeComposition>, usize) {
        let with: Vec<_> = self
            .recipes
            .iter()
            .filter(|r| r.ground_truth.is_some())
            .collect();
        let skipped = self.recipes.len() - with.len();
        (with, skipped)
    }

    /// Same ingredients, different recipe list (validated).
    pub fn with_recipes(&self, recipes: Vec<RecipeComposition>) -> Result<Corpus> {
        Corpus::new(self.ingredients.values().cloned().collect(), recipes)
    }

    /// Sorted union of ingredient ids used by any recipe.
    pub fn ingredient_union(&self) -> Vec<String> {
        let mut ids: Vec<String> = self
            .recipes
            .iter()
            .flat_map(|r| r.components.iter().map(|c| c.ingredient_id.clone()))
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }

    /// Per-phase scores for one dimension, in component order.
    pub fn phase_scores(&self, recipe: &RecipeComposition, dim: Dimension) -> Result<Vec<f64>> {
        recipe
            .components
            .iter()
            .map(|c| self.ingredient(&c.ingredient_id).map(|i| i.taste.get(dim)))
            .collect()
    }

    /// SHA-256 over the canonical JSON form; identifies the training data in
    /// model bundles.
    pub fn fingerprint(&self) -> String {
        let doc = CorpusDocument::from(self);
        let bytes = serde_json::to_vec(&doc).expect("corpus serialises");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn to_document(&self) -> CorpusDocument {
        CorpusDocument::from(self)
    }
}

/// Flat ingredient record shared by the CSV and JSON forms.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngredientRecord {
    pub ingredient_id: String,
    pub display_name: String,
    pub sweet: f64,
    pub sour: f64,
    pub bitter: f64,
    pub umami: f64,
    pub salt: f64,
    pub source_tier: SourceTier,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecipeRecord {
    pub recipe_id: String,
    pub recipe_name: String,
    pub confidence: Confidence,
    pub components: Vec<Component>,
    pub gt_sweet: Option<f64>,
    pub gt_sour: Option<f64>,
    pub gt_bitter: Option<f64>,
    pub gt_umami: Option<f64>,
    pub gt_salt: Option<f64>,
}

/// JSON mirror of the two CSV files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusDocument {
    pub ingredients: Vec<IngredientRecord>,
    pub recipes: Vec<RecipeRecord>,
}

impl From<&IngredientTasteProfile> for IngredientRecord {
    fn from(p: &IngredientTasteProfile) -> Self {
        IngredientRecord {
            ingredient_id: p.ingredient_id.clone(),
            display_name: p.display_name.clone(),
            sweet: p.taste.sweet,
            sour: p.taste.sour,
            bitter: p.taste.bitter,
            umami: p.taste.umami,
            salt: p.taste.salt,
            source_tier: p.source_tier,
        }
    }
}

impl From<IngredientRecord> for IngredientTasteProfile {
    fn from(r: IngredientRecord) -> Self {
        IngredientTasteProfile {
            ingredient_id: r.ingredient_id,
            display_name: r.display_name,
            taste: TasteVector::from_array([r.sweet, r.sour, r.bitter, r.umami, r.salt]),
            source_tier: r.source_tier,
        }
    }
}

fn split_ground_truth(gt: Option<TasteVector>) -> [Option<f64>; 5] {
    match gt {
        Some(v) => v.to_array().map(Some),
        None => [None; 5],
    }
}

fn join_ground_truth(subject: &str, values: [Option<f64>; 5]) -> Result<Option<TasteVector>> {
    match values.iter().filter(|v| v.is_some()).count() {
        0 => Ok(None),
        5 => Ok(Some(TasteVector::from_array(values.map(|v| v.unwrap())))),
        _ => Err(Error::validation_field(
            subject,
            "ground_truth",
            "ground truth must give all five scores or none",
        )),
    }
}

impl From<&RecipeComposition> for RecipeRecord {
    fn from(r: &RecipeComposition) -> Self {
        let [gt_sweet, gt_sour, gt_bitter, gt_umami, gt_salt] = split_ground_truth(r.ground_truth);
        RecipeRecord {
            recipe_id: r.recipe_id.clone(),
            recipe_name: r.name.clone(),
            confidence: r.confidence,
            components: r.components.clone(),
            gt_sweet,
            gt_sour,
            gt_bitter,
            gt_umami,
            gt_salt,
        }
    }
}

impl RecipeRecord {
    fn into_recipe(self) -> Result<RecipeComposition> {
        let subject = format!("recipe `{}`", self.recipe_id);
        let ground_truth = join_ground_truth(
            &subject,
            [
                self.gt_sweet,
                self.gt_sour,
                self.gt_bitter,
                self.gt_umami,
                self.gt_salt,
            ],
        )?;
        Ok(RecipeComposition {
            recipe_id: self.recipe_id,
            name: self.recipe_name,
            components: self.components,
            confidence: self.confidence,
            ground_truth,
        })
    }
}

impl From<&Corpus> for CorpusDocument {
    fn from(corpus: &Corpus) -> Self {
        CorpusDocument {
            ingredients: corpus.ingredients().map(IngredientRecord::from).collect(),
            recipes: corpus.recipes().iter().map(RecipeRecord::from).collect(),
        }
    }
}

impl CorpusDocument {
    pub fn into_corpus(self) -> Result<Corpus> {
        let ingredients = self.ingredients.into_iter().map(Into::into).collect();
        let recipes = self
            .recipes
            .into_iter()
            .map(RecipeRecord::into_recipe)
            .collect::<Result<Vec<_>>>()?;
        Corpus::new(ingredients, recipes)
    }
}

pub fn corpus_from_json(json: &str) -> Result<Corpus> {
    let doc: CorpusDocument = serde_json::from_str(json)?;
    doc.into_corpus()
}

pub fn corpus_to_json(corpus: &Corpus) -> String {
    serde_json::to_string_pretty(&corpus.to_document()).expect("corpus serialises")
}

#[derive(Debug, Deserialize)]
struct IngredientRow {
    ingredient_id: String,
    display_name: String,
    sweet: f64,
    sour: f64,
    bitter: f64,
    umami: f64,
    salt: f64,
    source_tier: String,
}

#[derive(Debug, Deserialize)]
struct RecipeRow {
    recipe_id: String,
    recipe_name: String,
    confidence: String,
    ingredient_id: String,
    mass_fraction: f64,
    gt_sweet: Option<f64>,
    gt_sour: Option<f64>,
    gt_bitter: Option<f64>,
    gt_umami: Option<f64>,
    gt_salt: Option<f64>,
}

fn check_header(source: &str, found: &csv::StringRecord, expected: &[&str]) -> Result<()> {
    let found: Vec<&str> = found.iter().map(str::trim).collect();
    if found != expected {
        return Err(Error::Parse {
            source_name: source.to_string(),
            line: 1,
            message: format!(
                "unexpected header `{}`, expected `{}`",
                found.join(","),
                expected.join(",")
            ),
        });
    }
    Ok(())
}

fn parse_error(source: &str, err: &csv::Error) -> Error {
    let line = err.position().map(|p| p.line()).unwrap_or(0);
    let message = match err.kind() {
        csv::ErrorKind::Deserialize { err, .. } => err.to_string(),
        _ => err.to_string(),
    };
    Error::Parse {
        source_name: source.to_string(),
        line,
        message,
    }
}

fn csv_reader<R: Read>(reader: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader)
}

/// Parse `ingredients.csv` content.
pub fn read_ingredients<R: Read>(source: &str, reader: R) -> Result<Vec<IngredientTasteProfile>> {
    let mut rdr = csv_reader(reader);
    let header = rdr.headers().map_err(|e| parse_error(source, &e))?.clone();
    check_header(source, &header, &INGREDIENTS_HEADER)?;
    let mut out = Vec::new();
    for row in rdr.records() {
        let record = row.map_err(|e| parse_error(source, &e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row: IngredientRow = record
            .deserialize(Some(&header))
            .map_err(|e| parse_error(source, &e))?;
        let source_tier = row.source_tier.parse().map_err(|message| Error::Parse {
            source_name: source.to_string(),
            line,
            message,
        })?;
        out.push(IngredientTasteProfile {
            ingredient_id: row.ingredient_id,
            display_name: row.display_name,
            taste: TasteVector::from_array([row.sweet, row.sour, row.bitter, row.umami, row.salt]),
            source_tier,
        });
    }
    Ok(out)
}

/// Parse `recipes.csv` content, grouping component rows by recipe id in
/// order of first appearance.
pub fn read_recipes<R: Read>(source: &str, reader: R) -> Result<Vec<RecipeComposition>> {
    let mut rdr = csv_reader(reader);
    let header = rdr.headers().map_err(|e| parse_error(source, &e))?.clone();
    check_header(source, &header, &RECIPES_HEADER)?;
    let mut order: Vec<String> = Vec::new();
    let mut grouped: HashMap<String, (RecipeRecord, u64)> = HashMap::new();
    for row in rdr.records() {
        let record = row.map_err(|e| parse_error(source, &e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row: RecipeRow = record
            .deserialize(Some(&header))
            .map_err(|e| parse_error(source, &e))?;
        let confidence: Confidence = row.confidence.parse().map_err(|message| Error::Parse {
            source_name: source.to_string(),
            line,
            message,
        })?;
        let component = Component::new(row.ingredient_id, row.mass_fraction);
        let gt = [row.gt_sweet, row.gt_sour, row.gt_bitter, row.gt_umami, row.gt_salt];
        match grouped.get_mut(&row.recipe_id) {
            Some((rec, first_line)) => {
                let rec_gt = [rec.gt_sweet, rec.gt_sour, rec.gt_bitter, rec.gt_umami, rec.gt_salt];
                if rec.recipe_name != row.recipe_name
                    || rec.confidence != confidence
                    || rec_gt != gt
                {
                    return Err(Error::Parse {
                        source_name: source.to_string(),
                        line,
                        message: format!(
                            "recipe `{}`: name, confidence or ground truth disagrees with line {}",
                            row.recipe_id, first_line
                        ),
                    });
                }
                rec.components.push(component);
            }
            None => {
                order.push(row.recipe_id.clone());
                let [gt_sweet, gt_sour, gt_bitter, gt_umami, gt_salt] = gt;
                grouped.insert(
                    row.recipe_id.clone(),
                    (
                        RecipeRecord {
                            recipe_id: row.recipe_id,
                            recipe_name: row.recipe_name,
                            confidence,
                            components: vec![component],
                            gt_sweet,
                            gt_sour,
                            gt_bitter,
                            gt_umami,
                            gt_salt,
                        },
                        line,
                    ),
                );
            }
        }
    }
    order
        .into_iter()
        .map(|id| grouped.remove(&id).expect("grouped").0.into_recipe())
        .collect()
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

/// Load and validate a corpus from the two CSV files.
pub fn load_corpus(ingredients_path: &Path, recipes_path: &Path) -> Result<Corpus> {
    let ingredients = read_ingredients(
        &ingredients_path.display().to_string(),
        open(ingredients_path)?,
    )?;
    let recipes = read_recipes(&recipes_path.display().to_string(), open(recipes_path)?)?;
    Corpus::new(ingredients, recipes)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn write_ingredients<W: Write>(corpus: &Corpus, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(INGREDIENTS_HEADER).map_err(csv_io)?;
    for ing in corpus.ingredients() {
        let t = ing.taste;
        w.write_record([
            ing.ingredient_id.clone(),
            ing.display_name.clone(),
            t.sweet.to_string(),
            t.sour.to_string(),
            t.bitter.to_string(),
            t.umami.to_string(),
            t.salt.to_string(),
            ing.source_tier.as_str().to_string(),
        ])
        .map_err(csv_io)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_recipes<W: Write>(corpus: &Corpus, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(RECIPES_HEADER).map_err(csv_io)?;
    for r in corpus.recipes() {
        let gt = split_ground_truth(r.ground_truth).map(fmt_opt);
        for c in &r.components {
            let mut row = vec![
                r.recipe_id.clone(),
                r.name.clone(),
                r.confidence.as_str().to_string(),
                c.ingredient_id.clone(),
                c.mass_fraction.to_string(),
            ];
            row.extend(gt.iter().cloned());
            w.write_record(&row).map_err(csv_io)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Write the corpus as `ingredients.csv` and `recipes.csv` under `dir`.
pub fn write_corpus(corpus: &Corpus, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    write_ingredients(corpus, File::create(dir.join("ingredients.csv"))?)?;
    write_recipes(corpus, File::create(dir.join("recipes.csv"))?)?;
    Ok(())
}

/// Load `ingredients.csv` and `recipes.csv` from one directory.
pub fn load_corpus_dir(dir: &Path) -> Result<Corpus> {
    load_corpus(&dir.join("ingredients.csv"), &dir.join("recipes.csv"))
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}
