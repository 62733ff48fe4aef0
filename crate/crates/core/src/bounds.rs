//! Reuss, Voigt and multi-phase Hashin–Shtrikman bounds on the effective
//! taste score of an N-phase mixture.
//!
//! Scores are floored at `epsilon` before entering any harmonic sum, so a
//! phase with zero intensity (sugar on the sour axis, water everywhere) keeps
//! every denominator positive. The HS auxiliary function
//!
//! ```text
//! A(t0) = [ sum_i v_i / (T_i + (d-1) t0) ]^-1 - (d-1) t0
//! ```
//!
//! is nondecreasing in `t0`, runs from the Reuss mean at `t0 = 0` towards the
//! Voigt mean as `t0` grows, and gives the bracket `A(T_min) <= T* <= A(T_max)`.

use serde::{Deserialize, Serialize};

use crate::dataset::{Corpus, RecipeComposition};
use crate::{Dimension, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsConfig {
    /// Floor applied to phase scores in harmonic sums.
    pub epsilon: f64,
    /// Shape parameter; the auxiliary function uses `d - 1`.
    pub d: f64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig {
            epsilon: 0.01,
            d: 3.0,
        }
    }
}

impl BoundsConfig {
    pub fn with_d(self, d: f64) -> Self {
        BoundsConfig { d, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "epsilon must be > 0, got {}",
                self.epsilon
            )));
        }
        if !(self.d.is_finite() && self.d > 1.0) {
            return Err(Error::InvalidConfig(format!(
                "d must be > 1, got {}",
                self.d
            )));
        }
        Ok(())
    }

    fn shape_factor(&self) -> f64 {
        self.d - 1.0
    }

    fn floor(&self, t: f64) -> f64 {
        t.max(self.epsilon)
    }
}

fn check_lengths(scores: &[f64], fractions: &[f64]) -> Result<()> {
    if scores.len() != fractions.len() {
        return Err(Error::DimensionMismatch {
            scores: scores.len(),
            fractions: fractions.len(),
        });
    }
    if scores.is_empty() {
        return Err(Error::validation("mixture", "mixture has no phases"));
    }
    Ok(())
}

/// Arithmetic mean of the phase scores weighted by fraction.
pub fn voigt(scores: &[f64], fractions: &[f64]) -> Result<f64> {
    check_lengths(scores, fractions)?;
    Ok(scores.iter().zip(fractions).map(|(t, v)| t * v).sum())
}

/// Weighted harmonic mean of the floored phase scores.
pub fn reuss(scores: &[f64], fractions: &[f64], cfg: &BoundsConfig) -> Result<f64> {
    check_lengths(scores, fractions)?;
    let s: f64 = scores
        .iter()
        .zip(fractions)
        .map(|(t, v)| v / cfg.floor(*t))
        .sum();
    Ok(1.0 / s)
}

/// HS auxiliary function evaluated at reference score `t0 >= 0`.
pub fn hs_auxiliary(
    scores: &[f64],
    fractions: &[f64],
    t0: f64,
    cfg: &BoundsConfig,
) -> Result<f64> {
    check_lengths(scores, fractions)?;
    let shift = cfg.shape_factor() * t0;
    let mut s = 0.0;
    for (t, v) in scores.iter().zip(fractions) {
        let denom = cfg.floor(*t) + shift;
        if !(denom > 0.0) {
            return Err(Error::Numerical(format!(
                "non-positive HS denominator {denom} at t0 = {t0}"
            )));
        }
        s += v / denom;
    }
    Ok(1.0 / s - shift)
}

/// `(A(T_min), A(T_max))` over floored phase scores.
pub fn hs_bounds(scores: &[f64], fractions: &[f64], cfg: &BoundsConfig) -> Result<(f64, f64)> {
    check_lengths(scores, fractions)?;
    let (lo, hi) = scores
        .iter()
        .map(|t| cfg.floor(*t))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), t| {
            (lo.min(t), hi.max(t))
        });
    let lower = hs_auxiliary(scores, fractions, lo, cfg)?;
    let upper = hs_auxiliary(scores, fractions, hi, cfg)?;
    Ok((lower, upper))
}

/// All bounds for one taste dimension of one mixture. Every field is computed
/// from floored scores, so `reuss <= hs_lower <= hs_upper <= voigt` always
/// holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionBounds {
    pub reuss: f64,
    pub voigt: f64,
    pub hs_lower: f64,
    pub hs_upper: f64,
    pub hs_midpoint: f64,
}

impl DimensionBounds {
    pub fn compute(scores: &[f64], fractions: &[f64], cfg: &BoundsConfig) -> Result<Self> {
        let (hs_lower, hs_upper) = hs_bounds(scores, fractions, cfg)?;
        let floored: Vec<f64> = scores.iter().map(|t| cfg.floor(*t)).collect();
        Ok(DimensionBounds {
            reuss: reuss(scores, fractions, cfg)?,
            voigt: voigt(&floored, fractions)?,
            hs_lower,
            hs_upper,
            hs_midpoint: (hs_lower + hs_upper) / 2.0,
        })
    }

    /// A single phase of score `t`: every bound equals `t`.
    pub fn point(t: f64) -> Self {
        DimensionBounds {
            reuss: t,
            voigt: t,
            hs_lower: t,
            hs_upper: t,
            hs_midpoint: t,
        }
    }
}

/// Bounds for all five dimensions of a recipe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsResult {
    pub sweet: DimensionBounds,
    pub sour: DimensionBounds,
    pub bitter: DimensionBounds,
    pub umami: DimensionBounds,
    pub salt: DimensionBounds,
}

impl BoundsResult {
    pub fn get(&self, dim: Dimension) -> &DimensionBounds {
        match dim {
            Dimension::Sweet => &self.sweet,
            Dimension::Sour => &self.sour,
            Dimension::Bitter => &self.bitter,
            Dimension::Umami => &self.umami,
            Dimension::Salt => &self.salt,
        }
    }

    fn from_fn(mut f: impl FnMut(Dimension) -> Result<DimensionBounds>) -> Result<Self> {
        Ok(BoundsResult {
            sweet: f(Dimension::Sweet)?,
            sour: f(Dimension::Sour)?,
            bitter: f(Dimension::Bitter)?,
            umami: f(Dimension::Umami)?,
            salt: f(Dimension::Salt)?,
        })
    }
}

/// Bounds of a recipe whose ingredients resolve in `corpus`.
pub fn recipe_bounds(
    recipe: &RecipeComposition,
    corpus: &Corpus,
    cfg: &BoundsConfig,
) -> Result<BoundsResult> {
    let fractions = recipe.fractions();
    BoundsResult::from_fn(|dim| {
        let scores = corpus.phase_scores(recipe, dim)?;
        DimensionBounds::compute(&scores, &fractions, cfg)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub d: f64,
    /// Share of recipe–dimension pairs whose ground truth exceeds `hs_upper`.
    pub fraction_above_upper: f64,
    pub pairs: usize,
}

/// Tolerance used when classifying a score against a bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;

/// Recompute the HS bracket for each `d` and report how often ground truth
/// lies above the upper bound.
pub fn sweep_d(corpus: &Corpus, d_values: &[f64], template: &BoundsConfig) -> Result<Vec<SweepRow>> {
    let (recipes, _) = corpus.ground_truth_recipes();
    if recipes.is_empty() {
        return Err(Error::NoGroundTruth);
    }
    d_values
        .iter()
        .map(|&d| {
            let cfg = template.with_d(d);
            cfg.validate()?;
            let mut above = 0usize;
            for recipe in &recipes {
                let b = recipe_bounds(recipe, corpus, &cfg)?;
                let gt = recipe.ground_truth.expect("filtered");
                above += Dimension::ALL
                    .iter()
                    .filter(|&&dim| gt.get(dim) > b.get(dim).hs_upper + BOUND_TOLERANCE)
                    .count();
            }
            let pairs = recipes.len() * Dimension::ALL.len();
            Ok(SweepRow {
                d,
                fraction_above_upper: above as f64 / pairs as f64,
                pairs,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: BoundsConfig = BoundsConfig {
        epsilon: 0.01,
        d: 3.0,
    };

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn voigt_examples() {
        assert_eq!(voigt(&[10.0, 30.0], &[0.5, 0.5]).unwrap(), 20.0);
        assert_eq!(voigt(&[7.0], &[1.0]).unwrap(), 7.0);
        assert!(close(
            voigt(&[0.0, 50.0, 100.0], &[0.2, 0.3, 0.5]).unwrap(),
            65.0,
            1e-12
        ));
    }

    #[test]
    fn reuss_examples() {
        assert!(close(reuss(&[10.0, 30.0], &[0.5, 0.5], &CFG).unwrap(), 15.0, 1e-12));
        assert!(close(reuss(&[7.0], &[1.0], &CFG).unwrap(), 7.0, 1e-12));
        let zero_guard = 1.0 / (0.5 / 0.01 + 0.05);
        assert!(close(
            reuss(&[0.0, 10.0], &[0.5, 0.5], &CFG).unwrap(),
            zero_guard,
            1e-12
        ));
        assert!(close(zero_guard, 0.01998, 1e-5));
    }

    #[test]
    fn auxiliary_examples() {
        let t = [10.0, 30.0];
        let v = [0.5, 0.5];
        assert!(close(hs_auxiliary(&t, &v, 10.0, &CFG).unwrap(), 17.5, 1e-12));
        assert!(close(hs_auxiliary(&t, &v, 30.0, &CFG).unwrap(), 18.75, 1e-12));
        for t0 in [0.0, 1.0, 42.0, 99.0] {
            assert!(close(
                hs_auxiliary(&[13.0, 13.0], &[0.3, 0.7], t0, &CFG).unwrap(),
                13.0,
                1e-10
            ));
        }
    }

    #[test]
    fn auxiliary_rejects_negative_denominator() {
        let err = hs_auxiliary(&[10.0, 30.0], &[0.5, 0.5], -20.0, &CFG).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
    }

    #[test]
    fn hs_examples() {
        let (lo, hi) = hs_bounds(&[10.0, 30.0], &[0.5, 0.5], &CFG).unwrap();
        assert!(close(lo, 17.5, 1e-9) && close(hi, 18.75, 1e-9));
        let (lo, hi) = hs_bounds(&[4.0; 4], &[0.25; 4], &CFG).unwrap();
        assert!(close(lo, 4.0, 1e-12) && close(hi, 4.0, 1e-12));
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(matches!(
            voigt(&[1.0, 2.0], &[1.0]),
            Err(Error::DimensionMismatch {
                scores: 2,
                fractions: 1
            })
        ));
        assert!(reuss(&[], &[], &CFG).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(CFG.validate().is_ok());
        assert!(CFG.with_d(1.0).validate().is_err());
        assert!(BoundsConfig {
            epsilon: 0.0,
            d: 3.0
        }
        .validate()
        .is_err());
    }

    #[test]
    fn midpoint_is_exact_mean() {
        let b = DimensionBounds::compute(&[3.0, 40.0, 90.0], &[0.2, 0.5, 0.3], &CFG).unwrap();
        assert_eq!(b.hs_midpoint, (b.hs_lower + b.hs_upper) / 2.0);
        assert!(b.reuss <= b.hs_lower && b.hs_lower <= b.hs_upper && b.hs_upper <= b.voigt);
    }
}
