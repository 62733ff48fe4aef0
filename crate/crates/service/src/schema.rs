//! JSON Schema (draft 2020-12) documents for request and response bodies.

use serde_json::{json, Value};

fn taste_vector() -> Value {
    let score = json!({"type": "number"});
    json!({
        "type": "object",
        "required": ["sweet", "sour", "bitter", "umami", "salt"],
        "properties": {
            "sweet": score, "sour": score, "bitter": score, "umami": score, "salt": score
        },
        "additionalProperties": false
    })
}

fn partial_taste_map() -> Value {
    json!({
        "type": "object",
        "propertyNames": {"enum": ["sweet", "sour", "bitter", "umami", "salt"]},
        "additionalProperties": {"type": "number"}
    })
}

fn component() -> Value {
    json!({
        "type": "object",
        "required": ["ingredient_id", "mass_fraction"],
        "properties": {
            "ingredient_id": {"type": "string"},
            "mass_fraction": {"type": "number", "minimum": 0, "maximum": 1}
        },
        "additionalProperties": false
    })
}

fn dimension_bounds() -> Value {
    let n = json!({"type": "number"});
    json!({
        "type": "object",
        "required": ["reuss", "voigt", "hs_lower", "hs_upper", "hs_midpoint"],
        "properties": {"reuss": n, "voigt": n, "hs_lower": n, "hs_upper": n, "hs_midpoint": n}
    })
}

pub fn error() -> Value {
    json!({
        "type": "object",
        "required": ["error"],
        "properties": {
            "error": {
                "type": "object",
                "required": ["code", "message"],
                "properties": {
                    "code": {"type": "string"},
                    "message": {"type": "string"},
                    "field": {"type": "string"}
                }
            }
        }
    })
}

pub fn predict_request() -> Value {
    json!({
        "type": "object",
        "description": "Exactly one of recipe_id or components. Fractions must sum to 1 within 0.001.",
        "properties": {
            "recipe_id": {"type": "string"},
            "components": {"type": "array", "minItems": 1, "items": component()}
        },
        "additionalProperties": false
    })
}

pub fn forward_result() -> Value {
    let b = dimension_bounds();
    let n = json!({"type": "number"});
    json!({
        "type": "object",
        "required": ["components", "bounds", "chemistry_features", "hybrid_prediction", "correction"],
        "properties": {
            "recipe_id": {"type": "string"},
            "components": {"type": "array", "items": component()},
            "bounds": {
                "type": "object",
                "required": ["sweet", "sour", "bitter", "umami", "salt"],
                "properties": {"sweet": b, "sour": b, "bitter": b, "umami": b, "salt": b}
            },
            "chemistry_features": {
                "type": "object",
                "required": ["phi_protein", "phi_sugar", "phi_maillard", "phi_salt", "phi_water",
                             "phi_concentration", "phi_allium", "phi_fermented"],
                "properties": {
                    "phi_protein": n, "phi_sugar": n, "phi_maillard": n, "phi_salt": n,
                    "phi_water": n, "phi_concentration": n, "phi_allium": n, "phi_fermented": n
                }
            },
            "hybrid_prediction": taste_vector(),
            "correction": taste_vector(),
            "ground_truth": taste_vector()
        }
    })
}

pub fn scenario() -> Value {
    json!({
        "type": "object",
        "required": ["recipe_id"],
        "properties": {
            "name": {"type": "string"},
            "recipe_id": {"type": "string"},
            "target": partial_taste_map(),
            "target_delta": partial_taste_map(),
            "weights": partial_taste_map(),
            "bounds": {
                "type": "object",
                "additionalProperties": {
                    "type": "array",
                    "items": {"type": "number", "minimum": 0, "maximum": 1},
                    "minItems": 2,
                    "maxItems": 2
                }
            },
            "seed": {"type": "integer", "minimum": 0}
        },
        "additionalProperties": false
    })
}

pub fn design_result() -> Value {
    let n = json!({"type": "number"});
    json!({
        "type": "object",
        "required": ["recipe_id", "fractions", "ingredients", "original_prediction", "optimized_prediction",
                     "target", "weights", "dimensions", "initial_objective", "objective", "generations",
                     "evaluations", "converged", "seed", "trace"],
        "properties": {
            "recipe_id": {"type": "string"},
            "scenario": {"type": "string"},
            "fractions": {"type": "array", "items": n},
            "ingredients": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["ingredient_id", "original", "optimized", "delta", "lower", "upper"],
                    "properties": {
                        "ingredient_id": {"type": "string"},
                        "original": n, "optimized": n, "delta": n, "lower": n, "upper": n
                    }
                }
            },
            "original_prediction": taste_vector(),
            "optimized_prediction": taste_vector(),
            "target": taste_vector(),
            "weights": taste_vector(),
            "dimensions": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["dimension", "original", "optimized", "target", "weight"],
                    "properties": {
                        "dimension": {"enum": ["sweet", "sour", "bitter", "umami", "salt"]},
                        "original": n, "optimized": n, "target": n, "weight": n,
                        "change_pct": {"type": ["number", "null"]}
                    }
                }
            },
            "initial_objective": n,
            "objective": n,
            "generations": {"type": "integer"},
            "evaluations": {"type": "integer"},
            "converged": {"type": "boolean"},
            "seed": {"type": "integer"},
            "trace": {"type": "array", "items": n}
        }
    })
}

pub fn job() -> Value {
    json!({
        "type": "object",
        "required": ["job_id", "status"],
        "properties": {
            "job_id": {"type": "string"},
            "status": {"enum": ["pending", "running", "done", "failed"]},
            "result": design_result(),
            "error": error()["properties"]["error"].clone()
        }
    })
}

pub fn ingredient() -> Value {
    json!({
        "type": "object",
        "required": ["ingredient_id", "display_name", "taste", "source_tier", "categories"],
        "properties": {
            "ingredient_id": {"type": "string"},
            "display_name": {"type": "string"},
            "taste": taste_vector(),
            "source_tier": {"enum": ["SVT_PANEL", "PUBLISHED", "ESTIMATED"]},
            "categories": {
                "type": "array",
                "items": {"enum": ["protein", "sugar", "salt", "water", "allium", "fermented"]}
            }
        }
    })
}

/// Every published schema, keyed by name.
pub fn all() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "schemas": {
            "error": error(),
            "ingredient": ingredient(),
            "predict_request": predict_request(),
            "forward_result": forward_result(),
            "scenario": scenario(),
            "design_result": design_result(),
            "design_job": job()
        }
    })
}
