//! Small summary statistics shared by evaluation and tests.

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (n - 1 denominator).
pub fn sample_std(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m).powi(2)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Population standard deviation (n denominator).
pub fn population_std(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
}

pub fn mae(predicted: &[f64], actual: &[f64]) -> f64 {
    mean(
        &predicted
            .iter()
            .zip(actual)
            .map(|(p, a)| (p - a).abs())
            .collect::<Vec<_>>(),
    )
}

pub fn rmse(predicted: &[f64], actual: &[f64]) -> f64 {
    mean(
        &predicted
            .iter()
            .zip(actual)
            .map(|(p, a)| (p - a).powi(2))
            .collect::<Vec<_>>(),
    )
    .sqrt()
}

/// Mean of `predicted - actual`.
pub fn bias(predicted: &[f64], actual: &[f64]) -> f64 {
    mean(
        &predicted
            .iter()
            .zip(actual)
            .map(|(p, a)| p - a)
            .collect::<Vec<_>>(),
    )
}

/// Pearson correlation; `None` when either side has zero variance or there
/// are fewer than two points.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (mx, my) = (mean(xs), mean(ys));
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    let scale = mx.abs().max(my.abs()).max(1.0);
    if sxx <= 1e-24 * scale * scale || syy <= 1e-24 * scale * scale {
        return None;
    }
    Some((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// Coefficient of determination of `predicted` against `actual`; `None`
/// when `actual` is constant.
pub fn r_squared(predicted: &[f64], actual: &[f64]) -> Option<f64> {
    let m = mean(actual);
    let ss_tot: f64 = actual.iter().map(|a| (a - m).powi(2)).sum();
    if ss_tot <= 0.0 {
        return None;
    }
    let ss_res: f64 = predicted
        .iter()
        .zip(actual)
        .map(|(p, a)| (a - p).powi(2))
        .sum();
    Some(1.0 - ss_res / ss_tot)
}
