//! Distances between uncertain sequences: the uncertain Euclidean distance
//! (UED), its best-matching-window form, and the DUST and plain squared
//! Euclidean baselines.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::OrderingStrategy;
use crate::uncertain::UncertainValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DustFlavor {
    Uniform,
    Normal,
}

/// Dissimilarity used between a series and a shapelet candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Measure {
    /// Squared Euclidean distance on best guesses only.
    Ed,
    /// Uncertain Euclidean distance.
    Ued,
    DustUniform,
    DustNormal,
}

impl Measure {
    pub fn as_str(self) -> &'static str {
        match self {
            Measure::Ed => "ed",
            Measure::Ued => "ued",
            Measure::DustUniform => "dust-uniform",
            Measure::DustNormal => "dust-normal",
        }
    }

    /// Whether the measure carries a propagated deviation.
    pub fn is_uncertain(self) -> bool {
        matches!(self, Measure::Ued)
    }

    /// Distance between two equal-length windows.
    pub fn distance(self, a: &[UncertainValue], b: &[UncertainValue]) -> Result<UncertainValue> {
        check_lengths(a.len(), b.len())?;
        Ok(self.distance_unchecked(a, b))
    }

    #[inline]
    fn distance_unchecked(self, a: &[UncertainValue], b: &[UncertainValue]) -> UncertainValue {
        match self {
            Measure::Ued => ued_unchecked(a, b),
            Measure::Ed => {
                let d = a.iter().zip(b).map(|(x, y)| (x.best() - y.best()).powi(2)).sum();
                UncertainValue::from_parts(d, 0.0)
            }
            Measure::DustUniform => UncertainValue::from_parts(dust_unchecked(a, b, DustFlavor::Uniform), 0.0),
            Measure::DustNormal => UncertainValue::from_parts(dust_unchecked(a, b, DustFlavor::Normal), 0.0),
        }
    }

    /// Distance from `shapelet` to its best-matching window of `series`.
    pub fn subsequence_distance(
        self,
        series: &[UncertainValue],
        shapelet: &[UncertainValue],
        ordering: &OrderingStrategy,
    ) -> Result<UncertainValue> {
        best_window(self, series, shapelet, ordering).map(|(_, d)| d)
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Measure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "ed" => Ok(Measure::Ed),
            "ued" => Ok(Measure::Ued),
            "dust-uniform" => Ok(Measure::DustUniform),
            "dust-normal" => Ok(Measure::DustNormal),
            other => {
                Err(Error::Config(format!("unknown measure {other:?}; expected ed, ued, dust-uniform or dust-normal")))
            }
        }
    }
}

fn check_lengths(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::LengthMismatch { left, right });
    }
    Ok(())
}

/// Uncertain Euclidean distance, kept in squared form:
/// `Σ (â - b̂)² ± 2 Σ |â - b̂| (δa + δb)`.
pub fn ued(a: &[UncertainValue], b: &[UncertainValue]) -> Result<UncertainValue> {
    check_lengths(a.len(), b.len())?;
    Ok(ued_unchecked(a, b))
}

#[inline]
fn ued_unchecked(a: &[UncertainValue], b: &[UncertainValue]) -> UncertainValue {
    let mut best = 0.0;
    let mut spread = 0.0;
    for (x, y) in a.iter().zip(b) {
        let d = x.best() - y.best();
        best += d * d;
        spread += d.abs() * (x.delta() + y.delta());
    }
    UncertainValue::from_parts(best, 2.0 * spread)
}

/// UED from `shapelet` to the window of `series` it matches best.
///
/// Windows are compared with `ordering`; ties go to the earliest offset.
pub fn ued_subseq(
    series: &[UncertainValue],
    shapelet: &[UncertainValue],
    ordering: &OrderingStrategy,
) -> Result<UncertainValue> {
    best_window(Measure::Ued, series, shapelet, ordering).map(|(_, d)| d)
}

/// Offset and distance of the best-matching window under `measure`.
pub fn best_window(
    measure: Measure,
    series: &[UncertainValue],
    shapelet: &[UncertainValue],
    ordering: &OrderingStrategy,
) -> Result<(usize, UncertainValue)> {
    let l = shapelet.len();
    if l > series.len() {
        return Err(Error::SubsequenceTooLong { subsequence: l, series: series.len() });
    }
    if l == 0 {
        return Err(Error::EmptySeries);
    }
    let mut best = (0, measure.distance_unchecked(&series[..l], shapelet));
    for (offset, window) in series.windows(l).enumerate().skip(1) {
        let d = measure.distance_unchecked(window, shapelet);
        if ordering.compare(&d, &best.1) == Ordering::Less {
            best = (offset, d);
        }
    }
    Ok(best)
}

/// Pointwise DUST with `σ = max(δx, δy)`.
///
/// Falls back to `|x̂ - ŷ|` when both values are certain.
pub fn dust_point(x: &UncertainValue, y: &UncertainValue, flavor: DustFlavor) -> f64 {
    let gap = (x.best() - y.best()).abs();
    let sigma = x.delta().max(y.delta());
    if sigma == 0.0 {
        return gap;
    }
    match flavor {
        DustFlavor::Uniform => gap / (2.0 * sigma),
        DustFlavor::Normal => gap / (2.0 * sigma * (1.0 + sigma * sigma)),
    }
}

/// Root-sum-of-squares of pointwise DUST values.
pub fn dust(a: &[UncertainValue], b: &[UncertainValue], flavor: DustFlavor) -> Result<f64> {
    check_lengths(a.len(), b.len())?;
    Ok(dust_unchecked(a, b, flavor))
}

#[inline]
fn dust_unchecked(a: &[UncertainValue], b: &[UncertainValue], flavor: DustFlavor) -> f64 {
    a.iter().zip(b).map(|(x, y)| dust_point(x, y, flavor).powi(2)).sum::<f64>().sqrt()
}

/// Squared Euclidean distance between plain sequences.
pub fn ed_sq(a: &[f64], b: &[f64]) -> Result<f64> {
    check_lengths(a.len(), b.len())?;
    Ok(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
}
