use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ordering::OrderingStrategy;
use crate::uncertain::UncertainValue;

/// A distance threshold splitting a dataset into near (`≤`) and far (`>`)
/// series, with the information gain it achieves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitThreshold {
    pub threshold: UncertainValue,
    pub gain: f64,
    /// Number of series on the near side.
    pub near: usize,
}

/// Base-2 entropy of a class histogram.
///
/// Counts are summed in sorted order so that permuted histograms give
/// bit-identical results.
pub fn entropy(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let mut sorted: Vec<usize> = counts.iter().copied().filter(|&c| c > 0).collect();
    sorted.sort_unstable();
    let n = total as f64;
    -sorted
        .iter()
        .map(|&c| {
            let p = c as f64 / n;
            p * p.log2()
        })
        .sum::<f64>()
}

/// Information gain of splitting `parent` into `near` and the remainder.
pub fn split_gain(parent: &[usize], near: &[usize]) -> f64 {
    let far: Vec<usize> = parent.iter().zip(near).map(|(p, n)| p - n).collect();
    let total: usize = parent.iter().sum();
    let n_near: usize = near.iter().sum();
    let n = total as f64;
    let w_near = n_near as f64 / n;
    let w_far = (total - n_near) as f64 / n;
    (entropy(parent) - (w_near * entropy(near) + w_far * entropy(&far))).max(0.0)
}

/// Best threshold over the sorted distances.
///
/// Only boundaries between consecutive distances that the comparator tells
/// apart are considered. Equal gains go to the more balanced split, then to the
/// smaller threshold. When every distance compares equal the gain is zero and
/// the threshold is the largest distance.
pub fn best_split(
    distances: &[UncertainValue],
    labels: &[usize],
    ordering: &OrderingStrategy,
) -> Result<SplitThreshold> {
    if distances.len() != labels.len() {
        return Err(Error::LengthMismatch { left: distances.len(), right: labels.len() });
    }
    let n_classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut parent = vec![0usize; n_classes];
    for &l in labels {
        parent[l] += 1;
    }
    let distinct = parent.iter().filter(|&&c| c > 0).count();
    if distinct < 2 {
        return Err(Error::SingleClass(distinct));
    }

    let n = distances.len();
    let order = ordering.argsort(distances);
    let mut near = vec![0usize; n_classes];
    let mut best: Option<(f64, usize)> = None;
    for i in 1..n {
        near[labels[order[i - 1]]] += 1;
        let (lo, hi) = (&distances[order[i - 1]], &distances[order[i]]);
        if ordering.compare(lo, hi) == Ordering::Equal {
            continue;
        }
        let gain = split_gain(&parent, &near);
        let better = match best {
            None => true,
            Some((g, at)) => gain > g || (gain == g && balance(i, n) < balance(at, n)),
        };
        if better {
            best = Some((gain, i));
        }
    }
    Ok(match best {
        Some((gain, at)) => SplitThreshold { threshold: distances[order[at - 1]], gain, near: at },
        None => SplitThreshold { threshold: distances[order[n - 1]], gain: 0.0, near: n },
    })
}

fn balance(near: usize, n: usize) -> usize {
    (2 * near).abs_diff(n)
}
