//! Plain-text tables for terminal output.

use std::fmt::Write;
use std::path::Path;

use taste_core::bounds::SweepRow;
use taste_core::evaluation::Report;
use taste_core::forward::ForwardResult;
use taste_core::inverse::DesignResult;
use taste_core::Dimension;

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "n/a".into(), |x| format!("{x:.digits$}"))
}

pub fn forward_table(r: &ForwardResult) -> String {
    let mut s = String::new();
    if let Some(id) = &r.recipe_id {
        let _ = writeln!(s, "recipe {id}");
    }
    for c in &r.components {
        let _ = writeln!(s, "  {:<24} {:>7.4}", c.ingredient_id, c.mass_fraction);
    }
    let _ = writeln!(
        s,
        "\n{:<8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "dim", "reuss", "hs_low", "hs_mid", "hs_up", "voigt", "hybrid", "corr", "actual"
    );
    for dim in Dimension::ALL {
        let b = r.bounds.get(dim);
        let _ = writeln!(
            s,
            "{:<8} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>8.2} {:>+8.2} {:>8}",
            dim.name(),
            b.reuss,
            b.hs_lower,
            b.hs_midpoint,
            b.hs_upper,
            b.voigt,
            r.hybrid_prediction.get(dim),
            r.correction.get(dim),
            opt(r.ground_truth.map(|t| t.get(dim)), 1)
        );
    }
    let names = [
        "phi_protein",
        "phi_sugar",
        "phi_maillard",
        "phi_salt",
        "phi_water",
        "phi_concentration",
        "phi_allium",
        "phi_fermented",
    ];
    let _ = writeln!(s);
    for (name, v) in names.iter().zip(r.chemistry_features.to_array()) {
        let _ = writeln!(s, "{name:<18} {v:>9.4}");
    }
    s
}

pub fn report_summary(r: &Report, dir: &Path) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} recipes evaluated, {} skipped", r.n_recipes, r.n_skipped);
    let _ = writeln!(s, "\ncoverage  {:>6} {:>6} {:>6}", "below%", "in%", "above%");
    for row in r.coverage.per_dimension.iter().chain([&r.coverage.overall]) {
        let _ = writeln!(
            s,
            "{:<9} {:>6.1} {:>6.1} {:>6.1}",
            row.scope, row.below_pct, row.in_pct, row.above_pct
        );
    }
    let _ = writeln!(s, "\n{:<24} {:>5} {:>8} {:>8} {:>8}", "model (avg 4D)", "p", "MAE", "PCC", "bias");
    for c in &r.model_comparison {
        let _ = writeln!(
            s,
            "{:<24} {:>5} {:>8.2} {:>8} {:>+8.2}",
            c.label,
            c.n_features,
            c.avg4d_mae,
            opt(c.avg4d_pcc, 2),
            c.avg4d_bias
        );
    }
    if !r.sweep_d.is_empty() {
        let _ = writeln!(s, "\n{}", sweep_table(&r.sweep_d).trim_end());
    }
    let _ = writeln!(s, "\nwrote {}", dir.join("report.json").display());
    s
}

pub fn design_table(r: &DesignResult) -> String {
    let mut s = String::new();
    let title = r.scenario.as_deref().unwrap_or("scenario");
    let _ = writeln!(s, "{title} on {} (seed {})", r.recipe_id, r.seed);
    let _ = writeln!(
        s,
        "objective {:.4} -> {:.4} after {} generations ({}converged)",
        r.initial_objective,
        r.objective,
        r.generations,
        if r.converged { "" } else { "not " }
    );
    let _ = writeln!(s, "\n{:<24} {:>8} {:>8} {:>8}", "ingredient", "before", "after", "delta");
    for c in &r.ingredients {
        let _ = writeln!(
            s,
            "{:<24} {:>7.1}% {:>7.1}% {:>+7.1}%",
            c.ingredient_id,
            100.0 * c.original,
            100.0 * c.optimized,
            100.0 * c.delta
        );
    }
    let _ = writeln!(s, "\n{:<8} {:>8} {:>8} {:>8} {:>8}", "dim", "before", "after", "target", "change");
    for d in &r.dimensions {
        let _ = writeln!(
            s,
            "{:<8} {:>8.1} {:>8.1} {:>8.1} {:>8}",
            d.dimension.name(),
            d.original,
            d.optimized,
            d.target,
            d.change_pct.map_or_else(|| "n/a".into(), |p| format!("{p:+.1}%"))
        );
    }
    s
}

pub fn sweep_table(rows: &[SweepRow]) -> String {
    let mut s = format!("{:>8} {:>10} {:>6}\n", "d", "above_hs%", "pairs");
    for r in rows {
        let _ = writeln!(s, "{:>8} {:>10.1} {:>6}", r.d, 100.0 * r.fraction_above_upper, r.pairs);
    }
    s
}
