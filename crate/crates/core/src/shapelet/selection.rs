//! Time-contracted top-k shapelet search.
//!
//! Candidates are claimed from a shared counter by a pool of workers. After
//! every assessment a worker checks the wall-clock contract; once it is
//! exhausted no further candidates are claimed, but in-flight assessments
//! complete. The final ranking only depends on the set of assessed
//! candidates, so an unlimited contract gives the same answer for any worker
//! count.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::thread;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dissimilarity::Measure;
use crate::error::{Error, Result};
use crate::ordering::OrderingStrategy;
use crate::shapelet::candidates::CandidateSpace;
use crate::shapelet::split::{best_split, SplitThreshold};
use crate::uncertain::{UncertainDataset, UncertainSeries, UncertainValue};

/// Wall-clock budget for the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Contract {
    Unlimited,
    Limited(Duration),
}

impl Contract {
    pub fn seconds(secs: f64) -> Result<Self> {
        if !secs.is_finite() || secs <= 0.0 {
            return Err(Error::ZeroContract);
        }
        Ok(Contract::Limited(Duration::from_secs_f64(secs)))
    }
}

#[derive(Debug, Clone)]
pub struct SelectionConfig {
    /// Number of shapelets to keep.
    pub k: usize,
    /// Shortest candidate; 3 when unset.
    pub min_len: Option<usize>,
    /// Longest candidate; `m - 1` when unset.
    pub max_len: Option<usize>,
    pub contract: Contract,
    pub ordering: OrderingStrategy,
    pub measure: Measure,
    /// Worker threads; 0 picks the available parallelism.
    pub workers: usize,
    /// Time kept free at the end of a limited contract, counted in average
    /// single-thread candidate assessments.
    pub tail_reserve: f64,
}

impl SelectionConfig {
    pub fn new(k: usize, measure: Measure, ordering: OrderingStrategy) -> Self {
        Self {
            k,
            min_len: None,
            max_len: None,
            contract: Contract::Unlimited,
            ordering,
            measure,
            workers: 0,
            tail_reserve: 0.0,
        }
    }

    pub fn with_contract(mut self, contract: Contract) -> Self {
        self.contract = contract;
        self
    }

    pub fn with_lengths(mut self, min_len: usize, max_len: usize) -> Self {
        self.min_len = Some(min_len);
        self.max_len = Some(max_len);
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_tail_reserve(mut self, assessments: f64) -> Self {
        self.tail_reserve = assessments.max(0.0);
        self
    }

    /// Concrete `(min_len, max_len)` for series of length `m`.
    pub fn length_bounds(&self, m: usize) -> Result<(usize, usize)> {
        let min = self.min_len.unwrap_or(3);
        let max = self.max_len.unwrap_or(m.saturating_sub(1));
        if min < 3 || min > max || max + 1 > m {
            return Err(Error::InvalidLengthBounds { min, max, series: m });
        }
        Ok((min, max))
    }

    fn validate(&self, m: usize) -> Result<(usize, usize)> {
        if self.k == 0 {
            return Err(Error::ZeroShapeletCount);
        }
        if self.contract == Contract::Limited(Duration::ZERO) {
            return Err(Error::ZeroContract);
        }
        self.length_bounds(m)
    }

    fn worker_count(&self) -> usize {
        if self.workers > 0 {
            self.workers
        } else {
            thread::available_parallelism().map_or(1, |n| n.get())
        }
    }
}

/// A selected shapelet and where it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Shapelet {
    pub values: UncertainSeries,
    pub source_index: usize,
    pub offset: usize,
    pub length: usize,
    /// Information gain in bits.
    pub quality: f64,
    pub threshold: UncertainValue,
}

impl Shapelet {
    pub fn total_delta(&self) -> f64 {
        self.values.values().iter().map(UncertainValue::delta).sum()
    }
}

/// Outcome of a search.
#[derive(Debug, Clone)]
pub struct Selection {
    /// Best shapelets by descending quality.
    pub shapelets: Vec<Shapelet>,
    /// Distances from every training series to each selected shapelet, in
    /// the same order as `shapelets`.
    pub distances: Vec<Vec<UncertainValue>>,
    pub evaluated: usize,
    pub total_candidates: usize,
    pub elapsed: Duration,
}

impl Selection {
    pub fn completed(&self) -> bool {
        self.evaluated == self.total_candidates
    }
}

/// Information gain of `candidate` as a separator for `dataset`.
pub fn assess_candidate(
    candidate: &[UncertainValue],
    dataset: &UncertainDataset,
    cfg: &SelectionConfig,
) -> Result<SplitThreshold> {
    let (_, labels) = dataset.class_indices();
    assess(candidate, dataset, &labels, cfg).map(|(split, _)| split)
}

fn assess(
    candidate: &[UncertainValue],
    dataset: &UncertainDataset,
    labels: &[usize],
    cfg: &SelectionConfig,
) -> Result<(SplitThreshold, Vec<UncertainValue>)> {
    let distances = dataset
        .series()
        .iter()
        .map(|s| cfg.measure.subsequence_distance(s.values(), candidate, &cfg.ordering))
        .collect::<Result<Vec<_>>>()?;
    let split = best_split(&distances, labels, &cfg.ordering)?;
    Ok((split, distances))
}

struct Entry {
    gain: f64,
    total_delta: f64,
    source: usize,
    length: usize,
    offset: usize,
    threshold: UncertainValue,
    distances: Vec<UncertainValue>,
}

/// Higher gain first, then less uncertain, then by position.
fn rank(a: &Entry, b: &Entry) -> Ordering {
    b.gain
        .total_cmp(&a.gain)
        .then_with(|| a.total_delta.total_cmp(&b.total_delta))
        .then_with(|| (a.source, a.length, a.offset).cmp(&(b.source, b.length, b.offset)))
}

struct TopK {
    k: usize,
    entries: Vec<Entry>,
}

impl TopK {
    fn new(k: usize) -> Self {
        Self { k, entries: Vec::new() }
    }

    fn push(&mut self, e: Entry) {
        self.entries.push(e);
        if self.entries.len() >= 2 * self.k + 32 {
            self.shrink();
        }
    }

    fn shrink(&mut self) {
        self.entries.sort_by(rank);
        self.entries.truncate(self.k);
    }

    fn merge(mut self, other: TopK) -> TopK {
        self.entries.extend(other.entries);
        self.shrink();
        self
    }
}

/// Top-k candidates of `dataset` by information gain.
pub fn select_shapelets(dataset: &UncertainDataset, cfg: &SelectionConfig) -> Result<Selection> {
    dataset.require_two_classes()?;
    let m = dataset.series_len();
    let (min_len, max_len) = cfg.validate(m)?;
    let space = CandidateSpace::new(dataset.len(), m, min_len, max_len)?;
    let (_, labels) = dataset.class_indices();

    let start = Instant::now();
    let deadline = match cfg.contract {
        Contract::Unlimited => None,
        Contract::Limited(d) => Some(start + d),
    };
    let next = AtomicUsize::new(0);
    let evaluated = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let failure: Mutex<Option<Error>> = Mutex::new(None);

    let workers = cfg.worker_count().min(space.len()).max(1);
    let worker = || {
        let mut top = TopK::new(cfg.k);
        while !stop.load(AtomicOrdering::Acquire) {
            let idx = next.fetch_add(1, AtomicOrdering::AcqRel);
            if idx >= space.len() {
                break;
            }
            let (source, offset, length) = space.locate(idx);
            let values = dataset.series()[source].window(offset, length);
            match assess(values, dataset, &labels, cfg) {
                Ok((split, distances)) => top.push(Entry {
                    gain: split.gain,
                    total_delta: values.iter().map(UncertainValue::delta).sum(),
                    source,
                    length,
                    offset,
                    threshold: split.threshold,
                    distances,
                }),
                Err(e) => {
                    failure.lock().expect("failure slot").get_or_insert(e);
                    stop.store(true, AtomicOrdering::Release);
                }
            }
            let done = evaluated.fetch_add(1, AtomicOrdering::AcqRel) + 1;
            if let Some(d) = deadline {
                let now = Instant::now();
                let reserve = (now - start).mul_f64(workers as f64 * cfg.tail_reserve / done as f64);
                if now + reserve >= d {
                    stop.store(true, AtomicOrdering::Release);
                }
            }
        }
        top
    };

    let top = if workers == 1 {
        worker()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|_| scope.spawn(worker)).collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("selection worker panicked"))
                .fold(TopK::new(cfg.k), TopK::merge)
        })
    };
    if let Some(e) = failure.into_inner().expect("failure slot") {
        return Err(e);
    }
    let mut top = top;
    top.shrink();

    let mut shapelets = Vec::with_capacity(top.entries.len());
    let mut distances = Vec::with_capacity(top.entries.len());
    for e in top.entries {
        let values = UncertainSeries::new(dataset.series()[e.source].window(e.offset, e.length).to_vec())?;
        shapelets.push(Shapelet {
            values,
            source_index: e.source,
            offset: e.offset,
            length: e.length,
            quality: e.gain,
            threshold: e.threshold,
        });
        distances.push(e.distances);
    }
    Ok(Selection {
        shapelets,
        distances,
        evaluated: evaluated.into_inner(),
        total_candidates: space.len(),
        elapsed: start.elapsed(),
    })
}
