//! The classification taxonomy for `it` instances.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Category of an `it` occurrence.
///
/// Gold annotations use the full taxonomy. The classifier itself only ever
/// emits `Extraposition`, `Cleft`, `WeatherTime`, or `Referential` (its
/// negative class): telling nominal from clause antecedents is out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ItLabel {
    Nominal,
    Clause,
    Extraposition,
    Cleft,
    WeatherTime,
    Idiom,
    Other,
    Referential,
}

impl ItLabel {
    /// Extraposition, cleft, and weather/time form the pleonastic union used
    /// for "overall" scoring.
    pub fn is_pleonastic(self) -> bool {
        matches!(
            self,
            ItLabel::Extraposition | ItLabel::Cleft | ItLabel::WeatherTime
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ItLabel::Nominal => "nominal",
            ItLabel::Clause => "clause",
            ItLabel::Extraposition => "extraposition",
            ItLabel::Cleft => "cleft",
            ItLabel::WeatherTime => "weather_time",
            ItLabel::Idiom => "idiom",
            ItLabel::Other => "other",
            ItLabel::Referential => "referential",
        }
    }
}

impl fmt::Display for ItLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ItLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "nominal" => Ok(ItLabel::Nominal),
            "clause" => Ok(ItLabel::Clause),
            "extraposition" => Ok(ItLabel::Extraposition),
            "cleft" => Ok(ItLabel::Cleft),
            "weather_time" | "weather-time" | "weather" => Ok(ItLabel::WeatherTime),
            "idiom" => Ok(ItLabel::Idiom),
            "other" => Ok(ItLabel::Other),
            "referential" => Ok(ItLabel::Referential),
            other => Err(format!("unknown label `{other}`")),
        }
    }
}
