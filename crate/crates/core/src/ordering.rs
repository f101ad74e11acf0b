//! Comparators over uncertain measures.
//!
//! Three strategies are available for `best ± delta` values: a lexicographic
//! (simple) order, a relaxed stochastic-dominance order on Gaussian CDFs, and
//! an interval-number order built on the possibility degree. Stochastic and
//! interval comparisons that come out inconclusive fall back to the simple
//! order so every comparator is total.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

use crate::error::{Error, Result};
use crate::uncertain::UncertainValue;

/// Default number of discretization steps for the stochastic comparator.
pub const DEFAULT_CDF_STEPS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingKind {
    Simple,
    Stochastic,
    Interval,
    /// Plain order on real numbers; used by measures that produce certain values.
    Natural,
}

impl OrderingKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderingKind::Simple => "simple",
            OrderingKind::Stochastic => "stochastic",
            OrderingKind::Interval => "interval",
            OrderingKind::Natural => "natural",
        }
    }
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "simple" => Ok(OrderingKind::Simple),
            "stochastic" | "cdf" => Ok(OrderingKind::Stochastic),
            "interval" => Ok(OrderingKind::Interval),
            "natural" => Ok(OrderingKind::Natural),
            other => Err(Error::Config(format!(
                "unknown ordering {other:?}; expected simple, stochastic, interval or natural"
            ))),
        }
    }
}

/// A comparator choice plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingStrategy {
    kind: OrderingKind,
    cdf_steps: usize,
}

impl Default for OrderingStrategy {
    fn default() -> Self {
        Self::simple()
    }
}

impl OrderingStrategy {
    pub fn new(kind: OrderingKind, cdf_steps: usize) -> Result<Self> {
        if kind == OrderingKind::Stochastic && cdf_steps < 2 {
            return Err(Error::TooFewCdfPoints(cdf_steps));
        }
        Ok(Self { kind, cdf_steps })
    }

    pub const fn simple() -> Self {
        Self { kind: OrderingKind::Simple, cdf_steps: DEFAULT_CDF_STEPS }
    }

    pub const fn interval() -> Self {
        Self { kind: OrderingKind::Interval, cdf_steps: DEFAULT_CDF_STEPS }
    }

    pub const fn natural() -> Self {
        Self { kind: OrderingKind::Natural, cdf_steps: DEFAULT_CDF_STEPS }
    }

    pub fn stochastic(cdf_steps: usize) -> Result<Self> {
        Self::new(OrderingKind::Stochastic, cdf_steps)
    }

    pub fn kind(&self) -> OrderingKind {
        self.kind
    }

    pub fn cdf_steps(&self) -> usize {
        self.cdf_steps
    }

    pub fn compare(&self, x: &UncertainValue, y: &UncertainValue) -> Ordering {
        match self.kind {
            OrderingKind::Simple | OrderingKind::Natural => cmp_simple(x, y),
            OrderingKind::Stochastic => cmp_stochastic(x, y, self.cdf_steps),
            OrderingKind::Interval => cmp_interval(x, y),
        }
    }

    /// Stable sort of `0..values.len()` by this comparator.
    ///
    /// The stochastic comparator is not guaranteed to be transitive, which the
    /// standard library sorts may reject with a panic; a plain merge sort has
    /// no such requirement and gives the same answer on consistent inputs.
    pub fn argsort(&self, values: &[UncertainValue]) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        let mut buf = idx.clone();
        merge_sort(&mut idx, &mut buf, &|a, b| self.compare(&values[a], &values[b]));
        idx
    }
}

fn merge_sort<F>(v: &mut [usize], buf: &mut [usize], cmp: &F)
where
    F: Fn(usize, usize) -> Ordering,
{
    let n = v.len();
    if n <= 16 {
        // insertion sort
        for i in 1..n {
            let mut j = i;
            while j > 0 && cmp(v[j - 1], v[j]) == Ordering::Greater {
                v.swap(j - 1, j);
                j -= 1;
            }
        }
        return;
    }
    let mid = n / 2;
    {
        let (lo, hi) = v.split_at_mut(mid);
        let (blo, bhi) = buf[..n].split_at_mut(mid);
        merge_sort(lo, blo, cmp);
        merge_sort(hi, bhi, cmp);
    }
    let (mut i, mut j) = (0, mid);
    for slot in buf[..n].iter_mut() {
        if j >= n || (i < mid && cmp(v[i], v[j]) != Ordering::Greater) {
            *slot = v[i];
            i += 1;
        } else {
            *slot = v[j];
            j += 1;
        }
    }
    v.copy_from_slice(&buf[..n]);
}

#[inline]
fn cmp_f64(a: f64, b: f64) -> Ordering {
    a.partial_cmp(&b).unwrap_or_else(|| a.total_cmp(&b))
}

/// Lexicographic order on `(best, delta)`: equal best guesses are ordered by
/// their uncertainty, smaller first.
pub fn cmp_simple(x: &UncertainValue, y: &UncertainValue) -> Ordering {
    cmp_f64(x.best(), y.best()).then_with(|| cmp_f64(x.delta(), y.delta()))
}

/// CDF at `t` of a normal variable with mean `best` and standard deviation
/// `delta`; a zero deviation gives the unit step at `best`.
pub fn gaussian_cdf(t: f64, x: &UncertainValue) -> f64 {
    if x.delta() > 0.0 {
        0.5 * (1.0 + erf((t - x.best()) / (x.delta() * std::f64::consts::SQRT_2)))
    } else if t < x.best() {
        0.0
    } else {
        1.0
    }
}

/// Relaxed stochastic order.
///
/// Both CDFs are evaluated at `steps + 1` evenly spaced points covering the
/// union of the two plausible intervals. `x` precedes `y` when its CDF lies
/// above `y`'s at more points than it lies below.
pub fn cmp_stochastic(x: &UncertainValue, y: &UncertainValue, steps: usize) -> Ordering {
    let (above, below) = cdf_dominance_counts(x, y, steps);
    match above.cmp(&below) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => cmp_simple(x, y),
    }
}

/// Counts `(#t: CDF_x(t) > CDF_y(t), #t: CDF_x(t) < CDF_y(t))` over the grid.
pub fn cdf_dominance_counts(x: &UncertainValue, y: &UncertainValue, steps: usize) -> (usize, usize) {
    let lo = x.lower().min(y.lower());
    let hi = x.upper().max(y.upper());
    let width = hi - lo;
    let mut above = 0;
    let mut below = 0;
    for i in 0..=steps {
        let t = lo + width * (i as f64) / (steps as f64);
        let fx = gaussian_cdf(t, x);
        let fy = gaussian_cdf(t, y);
        if fx > fy {
            above += 1;
        } else if fx < fy {
            below += 1;
        }
    }
    (above, below)
}

/// Possibility degree that `x ≥ y`, treating each value as the interval
/// `[best - delta, best + delta]`.
///
/// Returns `((x.upper) - (y.lower)) / (2 δx + 2 δy)` clamped to `[0, 1]`. When
/// both deviations are zero the answer is the crisp `x.best >= y.best`.
pub fn interval_geq_prob(x: &UncertainValue, y: &UncertainValue) -> f64 {
    let spread = 2.0 * (x.delta() + y.delta());
    if spread > 0.0 {
        ((x.best() - y.best() + x.delta() + y.delta()) / spread).clamp(0.0, 1.0)
    } else if x.best() >= y.best() {
        1.0
    } else {
        0.0
    }
}

/// `x` precedes `y` when `Pr[x ≤ y] > 0.5`.
pub fn cmp_interval(x: &UncertainValue, y: &UncertainValue) -> Ordering {
    if x.delta() + y.delta() == 0.0 {
        // the crisp degree is 1 both ways for equal points
        return cmp_simple(x, y);
    }
    let p = interval_geq_prob(y, x);
    if p > 0.5 {
        Ordering::Less
    } else if p < 0.5 {
        Ordering::Greater
    } else {
        cmp_simple(x, y)
    }
}
