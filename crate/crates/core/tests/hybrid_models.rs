use std::time::Instant;

use taste_core::chemistry::CategoryLexicon;
use taste_core::dataset::{Component, Confidence, Corpus, IngredientTasteProfile, RecipeComposition, SourceTier};
use taste_core::evaluation::loocv_predictions;
use taste_core::hybrid::{
    predict_hybrid, train_hybrid, train_lasso_baseline, train_model, BaselineVariant, ModelKind, PredictOptions,
    TrainedModel, TrainingConfig,
};
use taste_core::synth::{relabel, synthetic_corpus, SynthConfig};
use taste_core::{Dimension, Error, TasteVector};

const PHI_SALT: usize = 2 + 3;

fn synthetic() -> Corpus {
    synthetic_corpus(&SynthConfig::default()).unwrap()
}

fn planted(corpus: &Corpus, cfg: &TrainingConfig) -> Corpus {
    relabel(corpus, &cfg.bounds, &cfg.lexicon, |inp| {
        let mut t = TasteVector::ZERO;
        for dim in Dimension::ALL {
            t.set(dim, inp.bounds.get(dim).hs_midpoint + 5.0 * inp.chemistry.phi_salt);
        }
        t
    })
    .unwrap()
}

#[test]
fn planted_salt_coefficient_is_recovered() {
    let cfg = TrainingConfig::default();
    let start = Instant::now();
    let corpus = planted(&synthetic(), &cfg);
    let preds = loocv_predictions(&corpus, ModelKind::Hybrid, &cfg).unwrap();
    let model = train_hybrid(&corpus, &cfg).unwrap();
    assert!(start.elapsed().as_secs_f64() < 10.0);

    assert!(preds.avg_4d().mae < 0.5, "LOOCV MAE {}", preds.avg_4d().mae);
    for dim in Dimension::ALL {
        let raw = model.dimension(dim).raw_coefficients();
        assert!((raw[PHI_SALT] - 5.0).abs() < 0.2, "{dim}: phi_salt coefficient {}", raw[PHI_SALT]);
        for (k, b) in raw.iter().enumerate() {
            if k != PHI_SALT {
                assert!(b.abs() < 0.2, "{dim}: feature {k} picked up {b}");
            }
        }
    }
}

#[test]
fn midpoint_ground_truth_gives_zero_correction() {
    let cfg = TrainingConfig::default();
    let corpus = relabel(&synthetic(), &cfg.bounds, &cfg.lexicon, |inp| {
        TasteVector::from_array(Dimension::ALL.map(|d| inp.bounds.get(d).hs_midpoint))
    })
    .unwrap();
    let model = train_hybrid(&corpus, &cfg).unwrap();
    for r in corpus.recipes().iter().take(10) {
        let pred = predict_hybrid(&model, r, &corpus, &cfg.lexicon, PredictOptions::default()).unwrap();
        let gt = r.ground_truth.unwrap();
        for dim in Dimension::ALL {
            assert!((pred.get(dim) - gt.get(dim)).abs() < 1e-6);
        }
    }
}

fn identical_recipes() -> Corpus {
    let ing = |id: &str, t: [f64; 5]| IngredientTasteProfile {
        ingredient_id: id.into(),
        display_name: id.into(),
        taste: TasteVector::from_array(t),
        source_tier: SourceTier::Published,
    };
    let recipes = (0..5)
        .map(|i| RecipeComposition {
            recipe_id: format!("R{i}"),
            name: format!("copy {i}"),
            components: vec![Component::new("tomato", 0.7), Component::new("salt", 0.3)],
            confidence: Confidence::High,
            ground_truth: Some(TasteVector::splat(10.0 + i as f64)),
        })
        .collect();
    Corpus::new(
        vec![ing("tomato", [20.0, 15.0, 2.0, 12.0, 3.0]), ing("salt", [0.0, 0.0, 1.0, 0.0, 100.0])],
        recipes,
    )
    .unwrap()
}

#[test]
fn identical_recipes_yield_intercept_only_models() {
    let corpus = identical_recipes();
    let cfg = TrainingConfig::default();
    for variant in [BaselineVariant::FiveFeature, BaselineVariant::PerIngredient] {
        let model = train_lasso_baseline(&corpus, variant, &cfg).unwrap();
        for dim in Dimension::ALL {
            let m = model.dimension(dim);
            assert!(m.coefficients.iter().all(|b| *b == 0.0));
            assert!((m.intercept - 12.0).abs() < 1e-12);
            assert!(m.stds.iter().all(|s| *s == 1.0));
        }
    }
    let hybrid = train_hybrid(&corpus, &cfg).unwrap();
    let pred = predict_hybrid(&hybrid, &corpus.recipes()[0], &corpus, &cfg.lexicon, PredictOptions::default()).unwrap();
    assert!((pred.get(Dimension::Sweet) - 12.0).abs() < 1e-9);
}

#[test]
fn per_ingredient_columns_are_the_sorted_union() {
    let corpus = synthetic();
    let model = train_lasso_baseline(&corpus, BaselineVariant::PerIngredient, &TrainingConfig::default()).unwrap();
    let mut union = corpus.ingredient_union();
    union.sort();
    assert_eq!(model.ingredient_columns, union);
    assert_eq!(model.dimension(Dimension::Salt).coefficients.len(), union.len());
}

#[test]
fn bundle_round_trip_preserves_predictions() {
    let corpus = synthetic();
    let cfg = TrainingConfig::default();
    let dir = tempfile::tempdir().unwrap();
    for kind in [ModelKind::Hybrid, ModelKind::Lasso5d, ModelKind::Lasso115] {
        let model = train_model(&corpus, kind, &cfg).unwrap();
        let path = dir.path().join(format!("{kind}.json"));
        model.save(&path).unwrap();
        let back = TrainedModel::load(&path).unwrap();
        assert_eq!(model, back);
        assert_eq!(back.corpus_fingerprint, corpus.fingerprint());
        for r in corpus.recipes().iter().take(5) {
            let a = predict_hybrid(&model, r, &corpus, &cfg.lexicon, PredictOptions::default()).unwrap();
            let b = predict_hybrid(&back, r, &corpus, &cfg.lexicon, PredictOptions::default()).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn malformed_bundles_are_rejected() {
    let model = train_hybrid(&synthetic(), &TrainingConfig::default()).unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&model.to_json()).unwrap();
    v["dimensions"][0]["coefficients"].as_array_mut().unwrap().pop();
    assert!(matches!(TrainedModel::from_json(&v.to_string()), Err(Error::BundleMismatch(_))));

    let mut v: serde_json::Value = serde_json::from_str(&model.to_json()).unwrap();
    v["format_version"] = 99.into();
    assert!(matches!(TrainedModel::from_json(&v.to_string()), Err(Error::BundleMismatch(_))));
}

#[test]
fn prediction_ignores_component_order_and_splitting() {
    let corpus = synthetic();
    let cfg = TrainingConfig::default();
    let model = train_hybrid(&corpus, &cfg).unwrap();
    let opts = PredictOptions::default();
    for r in corpus.recipes().iter().take(8) {
        let base = predict_hybrid(&model, r, &corpus, &cfg.lexicon, opts).unwrap();

        let mut reversed = r.clone();
        reversed.components.reverse();
        let rev = predict_hybrid(&model, &reversed, &corpus, &cfg.lexicon, opts).unwrap();

        let mut split = r.clone();
        let first = split.components[0].clone();
        split.components[0].mass_fraction = first.mass_fraction / 2.0;
        split.components.push(Component::new(first.ingredient_id, first.mass_fraction / 2.0));
        let spl = predict_hybrid(&model, &split, &corpus, &cfg.lexicon, opts).unwrap();

        for dim in Dimension::ALL {
            assert!((base.get(dim) - rev.get(dim)).abs() < 1e-9);
            assert!((base.get(dim) - spl.get(dim)).abs() < 1e-9);
        }
    }
}

#[test]
fn clipping_is_opt_in() {
    let corpus = synthetic();
    let cfg = TrainingConfig::default();
    let model = train_hybrid(&corpus, &cfg).unwrap();
    let mut any_outside = false;
    for r in corpus.recipes() {
        let raw = predict_hybrid(&model, r, &corpus, &cfg.lexicon, PredictOptions::default()).unwrap();
        let clipped = predict_hybrid(&model, r, &corpus, &cfg.lexicon, PredictOptions { clip: true }).unwrap();
        assert_eq!(raw.clipped(), clipped);
        any_outside |= raw.out_of_scale().is_some();
        assert!(clipped.out_of_scale().is_none());
    }
    // near-zero bitterness corrections dip below zero on this corpus
    assert!(any_outside);
}

#[test]
fn lexicon_mismatch_is_detected() {
    let cfg = TrainingConfig::default();
    let model = train_hybrid(&synthetic(), &cfg).unwrap();
    model.check_lexicon(&cfg.lexicon).unwrap();
    let mut other = CategoryLexicon::default();
    other.allium.push("scallion".into());
    assert!(matches!(model.check_lexicon(&other), Err(Error::BundleMismatch(_))));
}

#[test]
fn training_needs_three_recipes() {
    let corpus = synthetic();
    let few = corpus.with_recipes(corpus.recipes()[..2].to_vec()).unwrap();
    assert!(matches!(
        train_hybrid(&few, &TrainingConfig::default()),
        Err(Error::InsufficientData(_))
    ));
    assert!(matches!(
        train_model(&corpus, ModelKind::HsMidpoint, &TrainingConfig::default()),
        Err(Error::InvalidConfig(_))
    ));
}
