use crate::error::{Error, Result};
use crate::uncertain::{UncertainSeries, UncertainValue};

/// A contiguous window of a series, borrowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Subsequence<'a> {
    pub offset: usize,
    pub values: &'a [UncertainValue],
}

impl Subsequence<'_> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_bounds(series_len: usize, min_len: usize, max_len: usize) -> Result<()> {
    if min_len == 0 || min_len > max_len || max_len > series_len {
        return Err(Error::InvalidLengthBounds { min: min_len, max: max_len, series: series_len });
    }
    Ok(())
}

/// Number of windows with length in `[min_len, max_len]` in a series of
/// length `series_len`.
pub fn candidate_count(series_len: usize, min_len: usize, max_len: usize) -> usize {
    (min_len..=max_len.min(series_len)).map(|l| series_len - l + 1).sum()
}

/// Every window of `series` with length in `[min_len, max_len]`, shortest
/// first and by increasing offset within a length.
pub fn gen_candidates(series: &UncertainSeries, min_len: usize, max_len: usize) -> Result<Vec<Subsequence<'_>>> {
    let m = series.len();
    check_bounds(m, min_len, max_len)?;
    let mut out = Vec::with_capacity(candidate_count(m, min_len, max_len));
    for l in min_len..=max_len {
        for offset in 0..=m - l {
            out.push(Subsequence { offset, values: series.window(offset, l) });
        }
    }
    Ok(out)
}

/// Flat indexing over the candidates of every series of a dataset, in the
/// order the selection walks them: by series, then as in [`gen_candidates`].
#[derive(Debug, Clone, Copy)]
pub struct CandidateSpace {
    n_series: usize,
    series_len: usize,
    min_len: usize,
    max_len: usize,
    per_series: usize,
}

impl CandidateSpace {
    pub fn new(n_series: usize, series_len: usize, min_len: usize, max_len: usize) -> Result<Self> {
        check_bounds(series_len, min_len, max_len)?;
        Ok(Self { n_series, series_len, min_len, max_len, per_series: candidate_count(series_len, min_len, max_len) })
    }

    pub fn len(&self) -> usize {
        self.n_series * self.per_series
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(source series, offset, length)` of the `index`-th candidate.
    pub fn locate(&self, index: usize) -> (usize, usize, usize) {
        debug_assert!(index < self.len());
        let source = index / self.per_series;
        let mut rest = index % self.per_series;
        for l in self.min_len..=self.max_len {
            let count = self.series_len - l + 1;
            if rest < count {
                return (source, rest, l);
            }
            rest -= count;
        }
        unreachable!("index within per-series candidate count")
    }
}
