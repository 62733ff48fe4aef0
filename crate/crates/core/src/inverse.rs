//! Inverse formulation: search ingredient fractions whose predicted taste
//! matches a target, under per-ingredient box bounds and the unit-sum
//! constraint.
//!
//! The optimizer is `best1bin` differential evolution. Every candidate is
//! projected onto the feasible set before it is scored, so the forward model
//! never sees an infeasible recipe. Trials of a generation are drawn from the
//! generator in member order before any of them is scored, which keeps the
//! result bit-identical whether scoring runs sequentially or in parallel.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundsConfig, BoundsResult, DimensionBounds};
use crate::chemistry::{classify, CategoryLexicon, ChemistryFeatures};
use crate::dataset::{Corpus, RecipeComposition};
use crate::hybrid::{PredictOptions, RecipeInputs, TrainedModel};
use crate::par::Execution;
use crate::{Dimension, Error, Result, TasteVector};

/// Feasibility tolerance checked on every scored candidate.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-6;

/// Weight of dimensions a scenario does not name.
pub const UNNAMED_WEIGHT: f64 = 0.25;

/// Maps candidate fractions (in the problem's ingredient order) to a taste
/// prediction.
pub trait ForwardModel: Sync {
    fn predict(&self, fractions: &[f64]) -> Result<TasteVector>;
}

impl<F> ForwardModel for F
where
    F: Fn(&[f64]) -> Result<TasteVector> + Sync,
{
    fn predict(&self, fractions: &[f64]) -> Result<TasteVector> {
        self(fractions)
    }
}

/// Trained model specialised to a fixed ingredient list. Phase scores and
/// category memberships are resolved once.
pub struct HybridForward<'a> {
    model: &'a TrainedModel,
    ingredients: Vec<String>,
    scores: [Vec<f64>; 5],
    categories: Vec<[bool; 6]>,
    bounds: BoundsConfig,
    opts: PredictOptions,
}

impl<'a> HybridForward<'a> {
    pub fn new(
        model: &'a TrainedModel,
        corpus: &Corpus,
        lexicon: &CategoryLexicon,
        ingredients: &[String],
        opts: PredictOptions,
    ) -> Result<Self> {
        model.check_lexicon(lexicon)?;
        let mut scores: [Vec<f64>; 5] = Default::default();
        let mut categories = Vec::with_capacity(ingredients.len());
        for id in ingredients {
            let ing = corpus.ingredient(id)?;
            for dim in Dimension::ALL {
                scores[dim.index()].push(ing.taste.get(dim));
            }
            let mut member = [false; 6];
            for cat in classify(ing, lexicon) {
                member[cat as usize] = true;
            }
            categories.push(member);
        }
        Ok(HybridForward {
            model,
            ingredients: ingredients.to_vec(),
            scores,
            categories,
            bounds: model.bounds_config,
            opts,
        })
    }

    pub fn ingredients(&self) -> &[String] {
        &self.ingredients
    }
}

impl ForwardModel for HybridForward<'_> {
    fn predict(&self, fractions: &[f64]) -> Result<TasteVector> {
        if fractions.len() != self.ingredients.len() {
            return Err(Error::DimensionMismatch {
                scores: self.ingredients.len(),
                fractions: fractions.len(),
            });
        }
        let dim_bounds = |d: Dimension| DimensionBounds::compute(&self.scores[d.index()], fractions, &self.bounds);
        let bounds = BoundsResult {
            sweet: dim_bounds(Dimension::Sweet)?,
            sour: dim_bounds(Dimension::Sour)?,
            bitter: dim_bounds(Dimension::Bitter)?,
            umami: dim_bounds(Dimension::Umami)?,
            salt: dim_bounds(Dimension::Salt)?,
        };
        let mut frac = [0.0f64; 6];
        for (member, v) in self.categories.iter().zip(fractions) {
            for (k, &m) in member.iter().enumerate() {
                if m {
                    frac[k] += v;
                }
            }
        }
        let [protein, sugar, salt, water, allium, fermented] = frac.map(|f| f.min(1.0));
        let inputs = RecipeInputs {
            bounds,
            chemistry: ChemistryFeatures::from_fractions(protein, sugar, salt, water, allium, fermented),
            components: self.ingredients.iter().cloned().zip(fractions.iter().copied()).collect(),
        };
        Ok(self.model.predict_inputs(&inputs, self.opts))
    }
}

/// A constrained reformulation problem over a fixed ingredient list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignProblem {
    pub recipe_id: String,
    pub ingredients: Vec<String>,
    pub initial: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub target: TasteVector,
    pub weights: TasteVector,
}

impl DesignProblem {
    /// Box `[0, 1]` on every ingredient.
    pub fn unbounded(recipe: &RecipeComposition, target: TasteVector, weights: TasteVector) -> Self {
        let n = recipe.components.len();
        DesignProblem {
            recipe_id: recipe.recipe_id.clone(),
            ingredients: recipe.components.iter().map(|c| c.ingredient_id.clone()).collect(),
            initial: recipe.fractions(),
            lower: vec![0.0; n],
            upper: vec![1.0; n],
            target,
            weights,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.ingredients.len();
        if n == 0 {
            return Err(Error::validation(&self.recipe_id, "design problem has no ingredients"));
        }
        if self.initial.len() != n || self.lower.len() != n || self.upper.len() != n {
            return Err(Error::DimensionMismatch {
                scores: n,
                fractions: self.initial.len().min(self.lower.len()).min(self.upper.len()),
            });
        }
        for w in self.weights.to_array() {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::validation_field(&self.recipe_id, "weights", "weights must be finite and >= 0"));
            }
        }
        if self.target.to_array().iter().any(|t| !t.is_finite()) {
            return Err(Error::NonFinite("design target".into()));
        }
        check_box(&self.ingredients, &self.lower, &self.upper)
    }
}

fn check_box(ids: &[String], lower: &[f64], upper: &[f64]) -> Result<()> {
    for ((id, lo), hi) in ids.iter().zip(lower).zip(upper) {
        if !(0.0..=1.0).contains(lo) || !(0.0..=1.0).contains(hi) {
            return Err(Error::InfeasibleBounds(format!("bounds of `{id}` must lie in [0, 1]")));
        }
        if lo > hi {
            return Err(Error::InfeasibleBounds(format!("`{id}`: lower bound {lo} exceeds upper bound {hi}")));
        }
    }
    let lo_sum: f64 = lower.iter().sum();
    let hi_sum: f64 = upper.iter().sum();
    if lo_sum > 1.0 + 1e-12 {
        return Err(Error::InfeasibleBounds(format!("lower bounds sum to {lo_sum:.6} > 1")));
    }
    if hi_sum < 1.0 - 1e-12 {
        return Err(Error::InfeasibleBounds(format!("upper bounds sum to {hi_sum:.6} < 1")));
    }
    Ok(())
}

/// Project `raw` onto `{lower <= v <= upper, sum(v) = 1}`.
///
/// The result is `clip(raw + lambda)` for the unique shift `lambda` that makes
/// the clipped vector sum to one: clip into the box, then move every
/// coordinate that is not pinned at a bound by the same amount. This is the
/// Euclidean projection, so feasible points are fixed and the map is
/// idempotent. Non-finite entries are treated as the lower bound.
pub fn repair(raw: &[f64], lower: &[f64], upper: &[f64]) -> Result<Vec<f64>> {
    if raw.len() != lower.len() || raw.len() != upper.len() {
        return Err(Error::DimensionMismatch {
            scores: lower.len(),
            fractions: raw.len(),
        });
    }
    let ids: Vec<String> = (0..raw.len()).map(|i| format!("#{i}")).collect();
    check_box(&ids, lower, upper)?;
    let v: Vec<f64> = raw
        .iter()
        .zip(lower)
        .map(|(x, lo)| if x.is_finite() { *x } else { *lo })
        .collect();
    let clip = |shift: f64| -> Vec<f64> {
        v.iter()
            .zip(lower.iter().zip(upper))
            .map(|(x, (lo, hi))| (x + shift).clamp(*lo, *hi))
            .collect()
    };
    let excess = |shift: f64| clip(shift).iter().sum::<f64>() - 1.0;

    // Sum of clip(v + s) is piecewise linear and nondecreasing in s with kinks
    // where a coordinate meets a bound. Locate the segment that crosses zero.
    let mut kinks: Vec<f64> = v
        .iter()
        .zip(lower.iter().zip(upper))
        .flat_map(|(x, (lo, hi))| [lo - x, hi - x])
        .collect();
    kinks.sort_by(f64::total_cmp);
    kinks.dedup();
    let mut shift = 0.0;
    if excess(0.0).abs() > 1e-15 {
        let k = kinks.partition_point(|&s| excess(s) < 0.0);
        shift = if k == 0 {
            kinks[0]
        } else if k == kinks.len() {
            kinks[k - 1]
        } else {
            let (a, b) = (kinks[k - 1], kinks[k]);
            let (ea, eb) = (excess(a), excess(b));
            if eb == ea {
                a
            } else {
                a + (b - a) * (-ea) / (eb - ea)
            }
        };
    }
    let mut out = clip(shift);
    // absorb floating-point residue into coordinates with room
    for _ in 0..3 {
        let gap = 1.0 - out.iter().sum::<f64>();
        if gap == 0.0 {
            break;
        }
        if let Some(i) = (0..out.len()).find(|&i| {
            let x = out[i] + gap;
            x >= lower[i] && x <= upper[i]
        }) {
            out[i] += gap;
        }
    }
    Ok(out)
}

/// Weighted relative error of a prediction; the denominator is the
/// prediction, floored at 1.
pub fn objective_value(predicted: &TasteVector, target: &TasteVector, weights: &TasteVector) -> f64 {
    Dimension::ALL
        .iter()
        .map(|&d| {
            let p = predicted.get(d);
            weights.get(d) * (target.get(d) - p).abs() / p.abs().max(1.0)
        })
        .sum()
}

fn is_feasible(v: &[f64], problem: &DesignProblem) -> bool {
    (v.iter().sum::<f64>() - 1.0).abs() <= FEASIBILITY_TOLERANCE
        && v.iter()
            .zip(problem.lower.iter().zip(&problem.upper))
            .all(|(x, (lo, hi))| *x >= lo - FEASIBILITY_TOLERANCE && *x <= hi + FEASIBILITY_TOLERANCE)
}

/// Objective of a feasible candidate.
pub fn objective(v: &[f64], problem: &DesignProblem, forward: &dyn ForwardModel) -> Result<f64> {
    if !is_feasible(v, problem) {
        return Err(Error::Numerical("objective called on an infeasible candidate".into()));
    }
    let predicted = predict_checked(forward, v)?;
    Ok(objective_value(&predicted, &problem.target, &problem.weights))
}

fn predict_checked(forward: &dyn ForwardModel, v: &[f64]) -> Result<TasteVector> {
    let p = forward.predict(v).map_err(|e| match e {
        Error::ForwardModel(_) => e,
        other => Error::ForwardModel(other.to_string()),
    })?;
    if p.to_array().iter().any(|x| !x.is_finite()) {
        return Err(Error::ForwardModel("prediction is not finite".into()));
    }
    Ok(p)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeConfig {
    /// Absolute number of population members.
    pub population_size: usize,
    pub crossover_probability: f64,
    /// `F` is drawn uniformly from this range once per generation.
    pub mutation_range: (f64, f64),
    pub max_generations: usize,
    /// Stop when the population's objective standard deviation is at most
    /// `atol + tol * |mean objective|`.
    pub tol: f64,
    pub atol: f64,
    pub seed: u64,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for DeConfig {
    fn default() -> Self {
        DeConfig {
            population_size: 15,
            crossover_probability: 0.8,
            mutation_range: (0.5, 1.0),
            max_generations: 500,
            tol: 0.01,
            atol: 0.0,
            seed: 42,
            exec: Execution::default(),
        }
    }
}

impl DeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 {
            return Err(Error::InvalidConfig("population_size must be at least 4".into()));
        }
        if !(0.0..=1.0).contains(&self.crossover_probability) {
            return Err(Error::InvalidConfig("crossover_probability must lie in [0, 1]".into()));
        }
        let (lo, hi) = self.mutation_range;
        if !(lo >= 0.0 && lo <= hi && hi <= 2.0) {
            return Err(Error::InvalidConfig("mutation_range must satisfy 0 <= lo <= hi <= 2".into()));
        }
        if !(self.tol >= 0.0 && self.atol >= 0.0) {
            return Err(Error::InvalidConfig("convergence tolerances must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngredientChange {
    pub ingredient_id: String,
    pub original: f64,
    pub optimized: f64,
    pub delta: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionChange {
    pub dimension: Dimension,
    pub original: f64,
    pub optimized: f64,
    pub target: f64,
    pub weight: f64,
    /// Relative change in percent; `None` when the original is zero.
    pub change_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignResult {
    pub recipe_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    pub fractions: Vec<f64>,
    pub ingredients: Vec<IngredientChange>,
    pub original_prediction: TasteVector,
    pub optimized_prediction: TasteVector,
    pub target: TasteVector,
    pub weights: TasteVector,
    pub dimensions: Vec<DimensionChange>,
    /// Objective of the unmodified recipe.
    pub initial_objective: f64,
    pub objective: f64,
    pub generations: usize,
    pub evaluations: usize,
    pub converged: bool,
    pub seed: u64,
    /// Best objective of the initial population, then after each generation.
    pub trace: Vec<f64>,
}

impl DesignResult {
    /// Canonical JSON rendering: pretty-printed with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("design result serialises");
        s.push('\n');
        s
    }
}

struct Population {
    members: Vec<Vec<f64>>,
    energies: Vec<f64>,
}

impl Population {
    fn best(&self) -> usize {
        let mut best = 0;
        for (i, e) in self.energies.iter().enumerate() {
            if *e < self.energies[best] {
                best = i;
            }
        }
        best
    }

    fn converged(&self, cfg: &DeConfig) -> bool {
        let mean = crate::stats::mean(&self.energies);
        crate::stats::population_std(&self.energies) <= cfg.atol + cfg.tol * mean.abs()
    }
}

fn latin_hypercube(rng: &mut ChaCha8Rng, problem: &DesignProblem, size: usize) -> Vec<Vec<f64>> {
    let n = problem.ingredients.len();
    let mut members = vec![vec![0.0; n]; size];
    for j in 0..n {
        let mut strata: Vec<usize> = (0..size).collect();
        strata.shuffle(rng);
        let (lo, hi) = (problem.lower[j], problem.upper[j]);
        for (i, s) in strata.into_iter().enumerate() {
            let u = (s as f64 + rng.random::<f64>()) / size as f64;
            members[i][j] = lo + u * (hi - lo);
        }
    }
    members
}

/// Minimise the weighted relative error with `best1bin` differential
/// evolution.
pub fn design(problem: &DesignProblem, forward: &dyn ForwardModel, cfg: &DeConfig) -> Result<DesignResult> {
    problem.validate()?;
    cfg.validate()?;
    let (lower, upper) = (&problem.lower, &problem.upper);
    let n = problem.ingredients.len();
    let size = cfg.population_size;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let original_prediction = predict_checked(forward, &problem.initial)?;
    let initial_objective = objective_value(&original_prediction, &problem.target, &problem.weights);

    let mut raw = latin_hypercube(&mut rng, problem, size);
    raw[0] = problem.initial.clone();
    let members = raw
        .iter()
        .map(|m| repair(m, lower, upper))
        .collect::<Result<Vec<_>>>()?;
    let score = |members: &[Vec<f64>]| cfg.exec.try_map(members.len(), |i| objective(&members[i], problem, forward));
    let energies = score(&members)?;
    let mut pop = Population { members, energies };
    let mut evaluations = size;
    let mut trace = vec![pop.energies[pop.best()]];
    let mut generations = 0;
    let mut converged = pop.converged(cfg);

    while !converged && generations < cfg.max_generations {
        let best = pop.best();
        let f = rng.random_range(cfg.mutation_range.0..=cfg.mutation_range.1);
        let mut trials = Vec::with_capacity(size);
        for i in 0..size {
            let mut pick = || loop {
                let r = rng.random_range(0..size);
                if r != i {
                    return r;
                }
            };
            let r1 = pick();
            let r2 = loop {
                let r = pick();
                if r != r1 {
                    break r;
                }
            };
            let fill = rng.random_range(0..n);
            let mut trial = pop.members[i].clone();
            for (j, t) in trial.iter_mut().enumerate() {
                if j == fill || rng.random::<f64>() < cfg.crossover_probability {
                    *t = pop.members[best][j] + f * (pop.members[r1][j] - pop.members[r2][j]);
                }
            }
            trials.push(repair(&trial, lower, upper)?);
        }
        let trial_energies = score(&trials)?;
        evaluations += size;
        for (i, (trial, e)) in trials.into_iter().zip(trial_energies).enumerate() {
            if e < pop.energies[i] {
                pop.members[i] = trial;
                pop.energies[i] = e;
            }
        }
        generations += 1;
        trace.push(pop.energies[pop.best()]);
        converged = pop.converged(cfg);
    }

    let best = pop.best();
    let fractions = pop.members[best].clone();
    let optimized_prediction = predict_checked(forward, &fractions)?;
    let ingredients = (0..n)
        .map(|i| IngredientChange {
            ingredient_id: problem.ingredients[i].clone(),
            original: problem.initial[i],
            optimized: fractions[i],
            delta: fractions[i] - problem.initial[i],
            lower: lower[i],
            upper: upper[i],
        })
        .collect();
    let dimensions = Dimension::ALL
        .iter()
        .map(|&d| {
            let (o, p) = (original_prediction.get(d), optimized_prediction.get(d));
            DimensionChange {
                dimension: d,
                original: o,
                optimized: p,
                target: problem.target.get(d),
                weight: problem.weights.get(d),
                change_pct: (o != 0.0).then(|| 100.0 * (p - o) / o.abs()),
            }
        })
        .collect();
    Ok(DesignResult {
        recipe_id: problem.recipe_id.clone(),
        scenario: None,
        fractions,
        ingredients,
        original_prediction,
        optimized_prediction,
        target: problem.target,
        weights: problem.weights,
        dimensions,
        initial_objective,
        objective: pop.energies[best],
        generations,
        evaluations,
        converged,
        seed: cfg.seed,
        trace,
    })
}

/// A reformulation request, as read from a scenario file.
///
/// `target` sets absolute scores and `target_delta` offsets from the original
/// prediction; dimensions named in either get weight 1, the rest keep their
/// original prediction as target with weight [`UNNAMED_WEIGHT`]. Explicit
/// `weights` override both defaults. `bounds` maps ingredient ids to
/// `[min, max]`; unlisted ingredients get `[0, 1]`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub recipe_id: String,
    #[serde(default)]
    pub target: BTreeMap<Dimension, f64>,
    #[serde(default)]
    pub target_delta: BTreeMap<Dimension, f64>,
    #[serde(default)]
    pub weights: BTreeMap<Dimension, f64>,
    #[serde(default)]
    pub bounds: BTreeMap<String, [f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    /// Build the optimisation problem, resolving relative targets against the
    /// forward model's prediction of the unmodified recipe.
    pub fn problem(&self, corpus: &Corpus, forward: &dyn ForwardModel) -> Result<DesignProblem> {
        let recipe = corpus.recipe(&self.recipe_id)?;
        let subject = format!("scenario for {}", self.recipe_id);
        for id in self.bounds.keys() {
            if recipe.components.iter().all(|c| &c.ingredient_id != id) {
                return Err(Error::validation_field(
                    &subject,
                    format!("bounds.{id}"),
                    format!("`{id}` is not an ingredient of {}", self.recipe_id),
                ));
            }
        }
        for (d, v) in self.target.iter().chain(&self.target_delta).chain(&self.weights) {
            if !v.is_finite() {
                return Err(Error::validation_field(&subject, format!("target.{d}"), "value must be finite"));
            }
        }
        let original = predict_checked(forward, &recipe.fractions())?;
        let mut target = original;
        let mut weights = TasteVector::splat(UNNAMED_WEIGHT);
        for (&d, &delta) in &self.target_delta {
            target.set(d, original.get(d) + delta);
            weights.set(d, 1.0);
        }
        for (&d, &t) in &self.target {
            target.set(d, t);
            weights.set(d, 1.0);
        }
        for (&d, &w) in &self.weights {
            weights.set(d, w);
        }
        let mut problem = DesignProblem::unbounded(recipe, target, weights);
        for (i, id) in problem.ingredients.iter().enumerate() {
            if let Some([lo, hi]) = self.bounds.get(id) {
                problem.lower[i] = *lo;
                problem.upper[i] = *hi;
            }
        }
        problem.validate()?;
        Ok(problem)
    }
}

/// Run a scenario with the trained model as forward model. A seed in the
/// scenario overrides the one in `cfg`.
pub fn run_scenario(
    scenario: &Scenario,
    corpus: &Corpus,
    model: &TrainedModel,
    lexicon: &CategoryLexicon,
    cfg: &DeConfig,
    opts: PredictOptions,
) -> Result<DesignResult> {
    let recipe = corpus.recipe(&scenario.recipe_id)?;
    let ids: Vec<String> = recipe.components.iter().map(|c| c.ingredient_id.clone()).collect();
    let forward = HybridForward::new(model, corpus, lexicon, &ids, opts)?;
    let problem = scenario.problem(corpus, &forward)?;
    let cfg = DeConfig {
        seed: scenario.seed.unwrap_or(cfg.seed),
        ..*cfg
    };
    let mut result = design(&problem, &forward, &cfg)?;
    result.scenario = scenario.name.clone();
    Ok(result)
}

/// The three reference reformulations: salt reduction in pea soup, sugar
/// reduction in chocolate spread and umami enhancement in ketchup.
pub fn case_studies() -> Vec<Scenario> {
    vec![
        Scenario {
            name: Some("case1_salt_reduction".into()),
            recipe_id: "RP14".into(),
            target_delta: BTreeMap::from([(Dimension::Salt, -5.0), (Dimension::Umami, 0.0)]),
            bounds: BTreeMap::from([("salt".to_string(), [0.0, 0.003])]),
            ..Scenario::default()
        },
        Scenario {
            name: Some("case2_sugar_reduction".into()),
            recipe_id: "RP55".into(),
            target_delta: BTreeMap::from([(Dimension::Sweet, 0.0)]),
            bounds: BTreeMap::from([("sugar".to_string(), [0.0, 0.35])]),
            ..Scenario::default()
        },
        Scenario {
            name: Some("case3_umami_enhancement".into()),
            recipe_id: "RP68".into(),
            target_delta: BTreeMap::from([(Dimension::Umami, 3.0), (Dimension::Sweet, -3.0)]),
            bounds: BTreeMap::from([("sugar".to_string(), [0.0, 0.05])]),
            ..Scenario::default()
        },
    ]
}

/// Run all case studies; every fixture recipe must be present.
pub fn run_case_studies(
    corpus: &Corpus,
    model: &TrainedModel,
    lexicon: &CategoryLexicon,
    cfg: &DeConfig,
    opts: PredictOptions,
) -> Result<Vec<DesignResult>> {
    let cases = case_studies();
    for case in &cases {
        if corpus.recipe(&case.recipe_id).is_err() {
            return Err(Error::MissingFixture(case.recipe_id.clone()));
        }
    }
    cases
        .iter()
        .map(|case| run_scenario(case, corpus, model, lexicon, cfg, opts))
        .collect()
}
