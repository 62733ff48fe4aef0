//! Lasso regression by cyclic coordinate descent with soft-thresholding.
//!
//! Minimises `(1/2n) ||y - b0 - Xs b||^2 + alpha ||b||_1` where `Xs` is the
//! design standardised with the training rows' mean and population standard
//! deviation. The intercept is not penalised; because standardised columns
//! are centred it equals the mean of `y`. A constant column gets std 1, stays
//! all-zero after centring and keeps a zero coefficient.
//!
//! Cross-validation runs the whole alpha grid per fold from the largest alpha
//! down, warm-starting each fit from the previous solution.

use ndarray::{Array2, ArrayView2, Axis};
use serde::{Deserialize, Serialize};

use crate::par::Execution;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LassoOptions {
    /// Converged once no coefficient moves more than this in a sweep.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for LassoOptions {
    fn default() -> Self {
        LassoOptions {
            tol: 1e-6,
            max_sweeps: 10_000,
        }
    }
}

/// `n` log-spaced values from `lo` to `hi` inclusive, ascending.
pub fn log_grid(n: usize, lo: f64, hi: f64) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.log10(), hi.log10());
            (0..n)
                .map(|i| 10f64.powf(a + (b - a) * i as f64 / (n - 1) as f64))
                .collect()
        }
    }
}

/// 30 log-spaced alphas in `[1e-3, 1e1]`.
pub fn default_alpha_grid() -> Vec<f64> {
    log_grid(30, 1e-3, 1e1)
}

pub fn soft_threshold(z: f64, gamma: f64) -> f64 {
    if z > gamma {
        z - gamma
    } else if z < -gamma {
        z + gamma
    } else {
        0.0
    }
}

/// Per-column mean and population standard deviation of a training block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Standardizer {
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl Standardizer {
    pub fn fit(x: ArrayView2<f64>) -> Self {
        let n = x.nrows() as f64;
        let mut means = Vec::with_capacity(x.ncols());
        let mut stds = Vec::with_capacity(x.ncols());
        for col in x.axis_iter(Axis(1)) {
            let m = col.sum() / n;
            let var = col.iter().map(|v| (v - m).powi(2)).sum::<f64>() / n;
            let s = var.sqrt();
            means.push(m);
            // relative threshold so that columns equal up to rounding count as constant
            stds.push(if s > 1e-12 * m.abs().max(1.0) { s } else { 1.0 });
        }
        Standardizer { means, stds }
    }

    /// Standardised copy of the given rows, column-major.
    fn columns(&self, x: ArrayView2<f64>, rows: &[usize]) -> Vec<Vec<f64>> {
        (0..x.ncols())
            .map(|k| {
                let (m, s) = (self.means[k], self.stds[k]);
                rows.iter().map(|&i| (x[[i, k]] - m) / s).collect()
            })
            .collect()
    }
}

/// A fitted single-target Lasso model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LassoModel {
    pub feature_names: Vec<String>,
    /// Intercept in the standardised parameterisation (mean of the target).
    pub intercept: f64,
    /// Coefficients on standardised features.
    pub coefficients: Vec<f64>,
    pub alpha: f64,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
}

impl LassoModel {
    pub fn predict(&self, features: &[f64]) -> f64 {
        debug_assert_eq!(features.len(), self.coefficients.len());
        self.intercept
            + features
                .iter()
                .zip(&self.coefficients)
                .zip(self.means.iter().zip(&self.stds))
                .map(|((x, b), (m, s))| b * (x - m) / s)
                .sum::<f64>()
    }

    /// Coefficients on the original feature scale.
    pub fn raw_coefficients(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .zip(&self.stds)
            .map(|(b, s)| b / s)
            .collect()
    }

    /// Intercept on the original feature scale.
    pub fn raw_intercept(&self) -> f64 {
        self.intercept
            - self
                .raw_coefficients()
                .iter()
                .zip(&self.means)
                .map(|(b, m)| b * m)
                .sum::<f64>()
    }

    pub fn validate(&self) -> Result<()> {
        let p = self.coefficients.len();
        if self.means.len() != p || self.stds.len() != p || self.feature_names.len() != p {
            return Err(Error::InvalidConfig(
                "lasso model parameter lengths disagree".into(),
            ));
        }
        if self.stds.iter().any(|s| !(*s > 0.0)) {
            return Err(Error::InvalidConfig(
                "standardisation std must be positive".into(),
            ));
        }
        Ok(())
    }
}

fn default_names(p: usize) -> Vec<String> {
    (0..p).map(|k| format!("x{k}")).collect()
}

/// Result of [`lasso_fit`], with solver diagnostics.
#[derive(Debug, Clone)]
pub struct LassoFit {
    pub model: LassoModel,
    pub sweeps: usize,
    pub converged: bool,
    /// Objective after each sweep.
    pub objective_trace: Vec<f64>,
}

impl LassoFit {
    /// Turn a non-converged fit into [`Error::NoConvergence`].
    pub fn require_converged(self) -> Result<LassoModel> {
        if self.converged {
            Ok(self.model)
        } else {
            Err(Error::NoConvergence {
                sweeps: self.sweeps,
            })
        }
    }
}

/// Coordinate descent on the covariance form: with `G = Xs'Xs / n` and
/// `c = Xs'(y - mean y) / n`, the solver keeps `grad = c - G b` so that a
/// coordinate update costs `O(p)` instead of `O(n)`.
struct Solver {
    p: usize,
    gram: Vec<f64>,
    c: Vec<f64>,
    /// Mean squared centred target.
    yy: f64,
}

struct State {
    beta: Vec<f64>,
    grad: Vec<f64>,
}

struct Progress {
    sweeps: usize,
    converged: bool,
    trace: Vec<f64>,
}

impl Solver {
    fn new(cols: &[Vec<f64>], centred_y: &[f64]) -> Self {
        let p = cols.len();
        let n = centred_y.len() as f64;
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / n;
        let mut gram = vec![0.0; p * p];
        for i in 0..p {
            for j in i..p {
                let g = dot(&cols[i], &cols[j]);
                gram[i * p + j] = g;
                gram[j * p + i] = g;
            }
        }
        Solver {
            p,
            gram,
            c: cols.iter().map(|col| dot(col, centred_y)).collect(),
            yy: dot(centred_y, centred_y),
        }
    }

    fn start(&self) -> State {
        State {
            beta: vec![0.0; self.p],
            grad: self.c.clone(),
        }
    }

    fn objective(&self, st: &State, alpha: f64) -> f64 {
        // |r|^2 / n = yy - b'c - b'grad
        let fit: f64 = st
            .beta
            .iter()
            .zip(self.c.iter().zip(&st.grad))
            .map(|(b, (c, g))| b * (c + g))
            .sum();
        (self.yy - fit) / 2.0 + alpha * st.beta.iter().map(|b| b.abs()).sum::<f64>()
    }

    fn update(&self, k: usize, alpha: f64, st: &mut State) -> f64 {
        let p = self.p;
        let scale = self.gram[k * p + k];
        let old = st.beta[k];
        let new = if scale <= 1e-14 {
            0.0
        } else {
            soft_threshold(st.grad[k] + scale * old, alpha) / scale
        };
        let delta = new - old;
        if delta != 0.0 {
            let col = &self.gram[k * p..(k + 1) * p];
            for (g, gk) in st.grad.iter_mut().zip(col) {
                *g -= gk * delta;
            }
            st.beta[k] = new;
        }
        delta.abs()
    }

    /// Coordinate descent from the current state. Alternates full sweeps with
    /// sweeps over the nonzero coordinates; every sweep is counted and
    /// recorded.
    fn run(&self, alpha: f64, st: &mut State, opts: &LassoOptions, record: bool) -> Progress {
        let p = self.p;
        let mut trace = Vec::new();
        let mut sweeps = 0;
        while sweeps < opts.max_sweeps {
            let mut max_delta = 0.0f64;
            for k in 0..p {
                max_delta = max_delta.max(self.update(k, alpha, st));
            }
            sweeps += 1;
            if record {
                trace.push(self.objective(st, alpha));
            }
            if max_delta < opts.tol {
                return Progress {
                    sweeps,
                    converged: true,
                    trace,
                };
            }
            let active: Vec<usize> = (0..p).filter(|&k| st.beta[k] != 0.0).collect();
            if active.len() == p {
                continue;
            }
            while sweeps < opts.max_sweeps {
                let mut max_delta = 0.0f64;
                for &k in &active {
                    max_delta = max_delta.max(self.update(k, alpha, st));
                }
                sweeps += 1;
                if record {
                    trace.push(self.objective(st, alpha));
                }
                if max_delta < opts.tol {
                    break;
                }
            }
        }
        Progress {
            sweeps,
            converged: false,
            trace,
        }
    }
}

fn check_inputs(x: ArrayView2<f64>, y: &[f64]) -> Result<()> {
    if x.nrows() != y.len() {
        return Err(Error::DimensionMismatch {
            scores: x.nrows(),
            fractions: y.len(),
        });
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("design matrix".into()));
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("targets".into()));
    }
    Ok(())
}

/// Fit a Lasso model on all rows of `x`.
pub fn lasso_fit(x: ArrayView2<f64>, y: &[f64], alpha: f64, opts: &LassoOptions) -> Result<LassoFit> {
    check_inputs(x, y)?;
    if y.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "lasso needs at least 2 rows, got {}",
            y.len()
        )));
    }
    if !(alpha >= 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidConfig(format!("alpha must be >= 0, got {alpha}")));
    }
    let rows: Vec<usize> = (0..y.len()).collect();
    let std = Standardizer::fit(x);
    let cols = std.columns(x, &rows);
    let intercept = y.iter().sum::<f64>() / y.len() as f64;
    let centred: Vec<f64> = y.iter().map(|v| v - intercept).collect();
    let solver = Solver::new(&cols, &centred);
    let mut state = solver.start();
    let progress = solver.run(alpha, &mut state, opts, true);
    if !progress.converged {
        log::warn!(
            "lasso (alpha = {alpha}) stopped after {} sweeps without converging",
            progress.sweeps
        );
    }
    Ok(LassoFit {
        model: LassoModel {
            feature_names: default_names(x.ncols()),
            intercept,
            coefficients: state.beta,
            alpha,
            means: std.means,
            stds: std.stds,
        },
        sweeps: progress.sweeps,
        converged: progress.converged,
        objective_trace: progress.trace,
    })
}

/// Held-out predictions of every alpha on every fold.
#[derive(Debug, Clone, PartialEq)]
pub struct CvPath {
    /// Ascending.
    pub alphas: Vec<f64>,
    /// `predictions[a][i]`: prediction for row `i` from the fold that held it
    /// out, at `alphas[a]`.
    pub predictions: Vec<Vec<f64>>,
    /// Mean squared held-out error per alpha.
    pub mse: Vec<f64>,
}

impl CvPath {
    /// Index of the alpha with the lowest CV error; ties go to the larger
    /// alpha.
    pub fn best_index(&self) -> usize {
        let mut best = 0;
        for (i, &m) in self.mse.iter().enumerate() {
            if m <= self.mse[best] {
                best = i;
            }
        }
        best
    }

    pub fn best_alpha(&self) -> f64 {
        self.alphas[self.best_index()]
    }
}

/// Leave-one-out folds over `n` rows.
pub fn loo_folds(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| vec![i]).collect()
}

/// Run the alpha grid on each fold (standardising on the training rows only)
/// and collect held-out predictions.
pub fn cv_path(
    x: ArrayView2<f64>,
    y: &[f64],
    folds: &[Vec<usize>],
    grid: &[f64],
    opts: &LassoOptions,
    exec: Execution,
) -> Result<CvPath> {
    check_inputs(x, y)?;
    if grid.is_empty() {
        return Err(Error::InvalidConfig("empty alpha grid".into()));
    }
    let n = y.len();
    let mut alphas = grid.to_vec();
    alphas.sort_by(f64::total_cmp);

    let per_fold = exec.try_map(folds.len(), |f| {
        let held = &folds[f];
        let mut is_held = vec![false; n];
        for &i in held {
            is_held[i] = true;
        }
        let train: Vec<usize> = (0..n).filter(|&i| !is_held[i]).collect();
        if train.len() < 2 {
            return Err(Error::InsufficientData(
                "cross-validation fold leaves fewer than 2 training rows".into(),
            ));
        }
        let train_x = x.select(Axis(0), &train);
        let std = Standardizer::fit(train_x.view());
        let cols = std.columns(x, &train);
        let intercept = train.iter().map(|&i| y[i]).sum::<f64>() / train.len() as f64;
        let centred: Vec<f64> = train.iter().map(|&i| y[i] - intercept).collect();
        let solver = Solver::new(&cols, &centred);
        let mut state = solver.start();
        let held_std: Vec<Vec<f64>> = held
            .iter()
            .map(|&i| {
                (0..x.ncols())
                    .map(|k| (x[[i, k]] - std.means[k]) / std.stds[k])
                    .collect()
            })
            .collect();
        let mut out = vec![vec![0.0; held.len()]; alphas.len()];
        for a in (0..alphas.len()).rev() {
            let progress = solver.run(alphas[a], &mut state, opts, false);
            if !progress.converged {
                log::warn!(
                    "lasso (alpha = {}) stopped after {} sweeps without converging",
                    alphas[a],
                    progress.sweeps
                );
            }
            for (h, row) in held_std.iter().enumerate() {
                out[a][h] = intercept + row.iter().zip(&state.beta).map(|(v, b)| v * b).sum::<f64>();
            }
        }
        Ok(out)
    })?;

    let mut predictions = vec![vec![f64::NAN; n]; alphas.len()];
    for (fold, out) in folds.iter().zip(per_fold) {
        for (a, preds) in out.into_iter().enumerate() {
            for (&i, p) in fold.iter().zip(preds) {
                predictions[a][i] = p;
            }
        }
    }
    let scored: Vec<usize> = folds.iter().flatten().copied().collect();
    let mse = predictions
        .iter()
        .map(|p| scored.iter().map(|&i| (p[i] - y[i]).powi(2)).sum::<f64>() / scored.len() as f64)
        .collect();
    Ok(CvPath {
        alphas,
        predictions,
        mse,
    })
}

/// Alpha from `grid` with the lowest leave-one-out error.
pub fn select_alpha(
    x: ArrayView2<f64>,
    y: &[f64],
    grid: &[f64],
    opts: &LassoOptions,
    exec: Execution,
) -> Result<f64> {
    if y.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "alpha selection needs at least 3 rows, got {}",
            y.len()
        )));
    }
    if grid.len() == 1 {
        return Ok(grid[0]);
    }
    Ok(cv_path(x, y, &loo_folds(y.len()), grid, opts, exec)?.best_alpha())
}

/// Build an `n x p` design from row vectors.
pub fn design_from_rows(rows: &[Vec<f64>], p: usize) -> Array2<f64> {
    let mut x = Array2::zeros((rows.len(), p));
    for (i, r) in rows.iter().enumerate() {
        for (k, v) in r.iter().enumerate() {
            x[[i, k]] = *v;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(3.0, 1.0), 2.0);
        assert_eq!(soft_threshold(-3.0, 1.0), -2.0);
        assert_eq!(soft_threshold(0.5, 1.0), 0.0);
    }

    #[test]
    fn grid_is_log_spaced() {
        let g = default_alpha_grid();
        assert_eq!(g.len(), 30);
        assert!((g[0] - 1e-3).abs() < 1e-15);
        assert!((g[29] - 10.0).abs() < 1e-12);
        let r = g[1] / g[0];
        for w in g.windows(2) {
            assert!((w[1] / w[0] - r).abs() < 1e-9);
        }
    }

    #[test]
    fn large_alpha_gives_intercept_only() {
        let x = array![[1.0, 0.3], [2.0, -0.1], [3.0, 0.7], [4.0, 0.2]];
        let y = [1.0, 3.0, 2.0, 6.0];
        let std = Standardizer::fit(x.view());
        let cols = std.columns(x.view(), &[0, 1, 2, 3]);
        let my = 3.0;
        let threshold = cols
            .iter()
            .map(|c| c.iter().zip(&y).map(|(a, b)| a * (b - my)).sum::<f64>().abs() / 4.0)
            .fold(0.0, f64::max);
        let fit = lasso_fit(x.view(), &y, threshold, &LassoOptions::default()).unwrap();
        assert!(fit.model.coefficients.iter().all(|b| *b == 0.0));
        assert_eq!(fit.model.intercept, 3.0);
        let below = lasso_fit(x.view(), &y, threshold * 0.9, &LassoOptions::default()).unwrap();
        assert!(below.model.coefficients.iter().any(|b| *b != 0.0));
    }

    #[test]
    fn constant_column_keeps_zero_coefficient() {
        let x = array![[1.0, 5.0], [2.0, 5.0], [3.0, 5.0], [4.0, 5.0]];
        let y = [2.0, 4.0, 6.0, 8.0];
        let fit = lasso_fit(x.view(), &y, 1e-3, &LassoOptions::default()).unwrap();
        assert_eq!(fit.model.stds[1], 1.0);
        assert_eq!(fit.model.coefficients[1], 0.0);
        assert!((fit.model.raw_coefficients()[0] - 2.0).abs() < 1e-2);
        fit.model.validate().unwrap();
    }

    #[test]
    fn rejects_bad_inputs() {
        let x = array![[1.0], [f64::NAN]];
        assert!(matches!(
            lasso_fit(x.view(), &[1.0, 2.0], 0.1, &LassoOptions::default()),
            Err(Error::NonFinite(_))
        ));
        let x = array![[1.0], [2.0]];
        assert!(lasso_fit(x.view(), &[1.0, 2.0], -1.0, &LassoOptions::default()).is_err());
        assert!(lasso_fit(x.view(), &[1.0], 0.1, &LassoOptions::default()).is_err());
    }

    #[test]
    fn non_convergence_is_reported() {
        let x = array![[1.0, 1.1], [2.0, 1.9], [3.0, 3.2], [4.0, 3.9]];
        let y = [1.0, 2.5, 2.7, 4.4];
        let opts = LassoOptions {
            tol: 1e-300,
            max_sweeps: 3,
        };
        let fit = lasso_fit(x.view(), &y, 0.0, &opts).unwrap();
        assert!(!fit.converged);
        assert_eq!(fit.sweeps, 3);
        assert!(matches!(
            fit.require_converged(),
            Err(Error::NoConvergence { sweeps: 3 })
        ));
    }

    #[test]
    fn single_value_grid_is_returned() {
        let x = array![[1.0], [2.0], [3.0]];
        let a = select_alpha(x.view(), &[1.0, 2.0, 3.0], &[0.5], &LassoOptions::default(), Execution::Sequential).unwrap();
        assert_eq!(a, 0.5);
    }

    #[test]
    fn ties_prefer_larger_alpha() {
        let path = CvPath {
            alphas: vec![0.1, 1.0, 10.0],
            predictions: vec![],
            mse: vec![2.0, 1.0, 1.0],
        };
        assert_eq!(path.best_alpha(), 10.0);
    }
}
