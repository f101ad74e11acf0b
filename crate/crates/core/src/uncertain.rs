//! The PDF-model uncertain scalar (`best ± delta`) and the worst-case
//! propagation rules for sums, differences and integer powers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An observation known only up to a maximum deviation around a best guess.
///
/// The exact value lies somewhere in `[best - delta, best + delta]`. Both
/// components are finite and `delta` is never negative.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "RawValue", into = "RawValue")]
pub struct UncertainValue {
    best: f64,
    delta: f64,
}

#[derive(Serialize, Deserialize)]
struct RawValue {
    best: f64,
    delta: f64,
}

impl TryFrom<RawValue> for UncertainValue {
    type Error = Error;

    fn try_from(raw: RawValue) -> Result<Self> {
        UncertainValue::new(raw.best, raw.delta)
    }
}

impl From<UncertainValue> for RawValue {
    fn from(v: UncertainValue) -> Self {
        RawValue { best: v.best, delta: v.delta }
    }
}

impl UncertainValue {
    pub fn new(best: f64, delta: f64) -> Result<Self> {
        if !best.is_finite() || !delta.is_finite() {
            return Err(Error::NonFinite { best, delta });
        }
        if delta < 0.0 {
            return Err(Error::NegativeDelta(delta));
        }
        Ok(Self { best, delta })
    }

    /// A value with no uncertainty. Panics if `best` is not finite.
    pub fn certain(best: f64) -> Self {
        assert!(best.is_finite(), "best guess must be finite, got {best}");
        Self { best, delta: 0.0 }
    }

    /// Builds a value from components the caller has already validated.
    pub(crate) const fn from_parts(best: f64, delta: f64) -> Self {
        Self { best, delta }
    }

    #[inline]
    pub fn best(&self) -> f64 {
        self.best
    }

    #[inline]
    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn is_certain(&self) -> bool {
        self.delta == 0.0
    }

    /// Lower end of the plausible interval.
    pub fn lower(&self) -> f64 {
        self.best - self.delta
    }

    /// Upper end of the plausible interval.
    pub fn upper(&self) -> f64 {
        self.best + self.delta
    }

    /// Integer power with propagated uncertainty `|n * best^(n-1)| * delta`.
    ///
    /// This is the usual relative-error rule `|n * (delta / best) * best^n|`
    /// rewritten so that it stays defined when `best == 0`.
    pub fn powi(self, n: u32) -> Self {
        if n == 0 {
            return Self { best: 1.0, delta: 0.0 };
        }
        let exp = n as i32;
        let best = self.best.powi(exp);
        let delta = (f64::from(n) * self.best.powi(exp - 1)).abs() * self.delta;
        Self { best, delta }
    }
}

impl Add for UncertainValue {
    type Output = UncertainValue;

    fn add(self, rhs: Self) -> Self {
        Self { best: self.best + rhs.best, delta: self.delta + rhs.delta }
    }
}

/// Deviations add under subtraction: `x - x` is `0 ± 2δ`, not `0 ± 0`.
impl Sub for UncertainValue {
    type Output = UncertainValue;

    fn sub(self, rhs: Self) -> Self {
        Self { best: self.best - rhs.best, delta: self.delta + rhs.delta }
    }
}

impl std::iter::Sum for UncertainValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

impl fmt::Display for UncertainValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.best, self.delta)
    }
}

/// A non-empty, fixed-length sequence of uncertain observations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<UncertainValue>", into = "Vec<UncertainValue>")]
pub struct UncertainSeries {
    values: Vec<UncertainValue>,
}

impl TryFrom<Vec<UncertainValue>> for UncertainSeries {
    type Error = Error;

    fn try_from(values: Vec<UncertainValue>) -> Result<Self> {
        Self::new(values)
    }
}

impl From<UncertainSeries> for Vec<UncertainValue> {
    fn from(s: UncertainSeries) -> Self {
        s.values
    }
}

impl UncertainSeries {
    pub fn new(values: Vec<UncertainValue>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { values })
    }

    /// Wraps plain readings as zero-uncertainty observations.
    pub fn certain(values: &[f64]) -> Result<Self> {
        values.iter().map(|&v| UncertainValue::new(v, 0.0)).collect::<Result<Vec<_>>>().and_then(Self::new)
    }

    /// Pairs best guesses with deviations.
    pub fn from_parts(best: &[f64], delta: &[f64]) -> Result<Self> {
        if best.len() != delta.len() {
            return Err(Error::LengthMismatch { left: best.len(), right: delta.len() });
        }
        best.iter().zip(delta).map(|(&b, &d)| UncertainValue::new(b, d)).collect::<Result<Vec<_>>>().and_then(Self::new)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[UncertainValue] {
        &self.values
    }

    pub fn window(&self, offset: usize, len: usize) -> &[UncertainValue] {
        &self.values[offset..offset + len]
    }

    pub fn bests(&self) -> Vec<f64> {
        self.values.iter().map(UncertainValue::best).collect()
    }

    pub fn deltas(&self) -> Vec<f64> {
        self.values.iter().map(UncertainValue::delta).collect()
    }
}

impl std::ops::Index<usize> for UncertainSeries {
    type Output = UncertainValue;

    fn index(&self, i: usize) -> &UncertainValue {
        &self.values[i]
    }
}

/// Labeled collection of equal-length uncertain series.
#[derive(Debug, Clone, PartialEq)]
pub struct UncertainDataset {
    series: Vec<UncertainSeries>,
    labels: Vec<String>,
}

impl UncertainDataset {
    pub fn new(series: Vec<UncertainSeries>, labels: Vec<String>) -> Result<Self> {
        if series.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if series.len() != labels.len() {
            return Err(Error::LabelCountMismatch { series: series.len(), labels: labels.len() });
        }
        let expected = series[0].len();
        if let Some((index, s)) = series.iter().enumerate().find(|(_, s)| s.len() != expected) {
            return Err(Error::RaggedDataset { index, expected, found: s.len() });
        }
        Ok(Self { series, labels })
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    /// Common length `m` of every series.
    pub fn series_len(&self) -> usize {
        self.series[0].len()
    }

    pub fn series(&self) -> &[UncertainSeries] {
        &self.series
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Distinct labels in sorted order.
    pub fn classes(&self) -> Vec<String> {
        self.labels.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Labels mapped to indices into [`classes`](Self::classes).
    pub fn class_indices(&self) -> (Vec<String>, Vec<usize>) {
        encode_labels(&self.labels)
    }

    /// Fails unless the dataset has at least two classes.
    pub fn require_two_classes(&self) -> Result<()> {
        let n = self.classes().len();
        if n < 2 {
            return Err(Error::SingleClass(n));
        }
        Ok(())
    }
}

/// Maps labels onto dense indices into their sorted distinct values.
pub fn encode_labels(labels: &[String]) -> (Vec<String>, Vec<usize>) {
    let classes: Vec<String> = labels.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let idx = labels.iter().map(|l| classes.binary_search(l).expect("label drawn from its own class set")).collect();
    (classes, idx)
}
