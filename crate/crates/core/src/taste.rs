use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// One of the five modelled taste dimensions, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Sweet,
    Sour,
    Bitter,
    Umami,
    Salt,
}

impl Dimension {
    pub const ALL: [Dimension; 5] = [
        Dimension::Sweet,
        Dimension::Sour,
        Dimension::Bitter,
        Dimension::Umami,
        Dimension::Salt,
    ];

    /// Dimensions averaged in summary metrics. Bitterness sits on the scale
    /// floor and is left out.
    pub const AVG_4D: [Dimension; 4] = [
        Dimension::Sweet,
        Dimension::Sour,
        Dimension::Umami,
        Dimension::Salt,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Dimension::Sweet => "sweet",
            Dimension::Sour => "sour",
            Dimension::Bitter => "bitter",
            Dimension::Umami => "umami",
            Dimension::Salt => "salt",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dimension {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sweet" | "sweetness" => Ok(Dimension::Sweet),
            "sour" | "sourness" => Ok(Dimension::Sour),
            "bitter" | "bitterness" => Ok(Dimension::Bitter),
            "umami" => Ok(Dimension::Umami),
            "salt" | "salty" | "saltiness" => Ok(Dimension::Salt),
            other => Err(format!("unknown taste dimension `{other}`")),
        }
    }
}

/// Scores on the five taste dimensions (0–100 intensity scale for measured
/// data; model outputs are not clipped unless asked to be).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TasteVector {
    pub sweet: f64,
    pub sour: f64,
    pub bitter: f64,
    pub umami: f64,
    pub salt: f64,
}

impl TasteVector {
    pub const ZERO: TasteVector = TasteVector {
        sweet: 0.0,
        sour: 0.0,
        bitter: 0.0,
        umami: 0.0,
        salt: 0.0,
    };

    pub fn from_array(values: [f64; 5]) -> Self {
        let [sweet, sour, bitter, umami, salt] = values;
        TasteVector {
            sweet,
            sour,
            bitter,
            umami,
            salt,
        }
    }

    pub fn splat(value: f64) -> Self {
        Self::from_array([value; 5])
    }

    pub fn to_array(self) -> [f64; 5] {
        [self.sweet, self.sour, self.bitter, self.umami, self.salt]
    }

    pub fn get(&self, dim: Dimension) -> f64 {
        match dim {
            Dimension::Sweet => self.sweet,
            Dimension::Sour => self.sour,
            Dimension::Bitter => self.bitter,
            Dimension::Umami => self.umami,
            Dimension::Salt => self.salt,
        }
    }

    pub fn set(&mut self, dim: Dimension, value: f64) {
        match dim {
            Dimension::Sweet => self.sweet = value,
            Dimension::Sour => self.sour = value,
            Dimension::Bitter => self.bitter = value,
            Dimension::Umami => self.umami = value,
            Dimension::Salt => self.salt = value,
        }
    }

    pub fn map(self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_array(self.to_array().map(f))
    }

    /// First dimension whose score is non-finite or outside `[0, 100]`.
    pub fn out_of_scale(&self) -> Option<(Dimension, f64)> {
        Dimension::ALL
            .into_iter()
            .map(|d| (d, self.get(d)))
            .find(|(_, v)| !v.is_finite() || *v < 0.0 || *v > 100.0)
    }

    pub fn clipped(self) -> Self {
        self.map(|v| v.clamp(0.0, 100.0))
    }
}

impl From<[f64; 5]> for TasteVector {
    fn from(values: [f64; 5]) -> Self {
        TasteVector::from_array(values)
    }
}
