//! Shapelet-transform classification of uncertain time series.
//!
//! Observations are `best ± delta` values. Distances between uncertain
//! sequences propagate the deviations ([`dissimilarity::ued`]), uncertain
//! distances are ranked with one of several comparators ([`ordering`]), and
//! the top-k shapelets found under a time contract ([`shapelet`]) turn each
//! series into an uncertain feature vector for a naive Bayes classifier
//! ([`classify`]). [`harness`] wires the steps into reproducible experiments.

pub mod classify;
pub mod dissimilarity;
mod error;
pub mod harness;
pub mod ordering;
pub mod shapelet;
pub mod uncertain;

pub use classify::{flatten, Classifier, GaussianNb};
pub use dissimilarity::{dust, dust_point, ed_sq, ued, ued_subseq, DustFlavor, Measure};
pub use error::{Error, Result};
pub use harness::{ExperimentResult, InjectionConfig, ModelSpec, RawDataset};
pub use ordering::{
    cmp_interval, cmp_simple, cmp_stochastic, gaussian_cdf, interval_geq_prob, OrderingKind, OrderingStrategy,
};
pub use shapelet::{
    best_split, select_shapelets, transform_apply, transform_fit, Contract, Selection, SelectionConfig, Shapelet,
    SplitThreshold, UncertainFeatureMatrix,
};
pub use uncertain::{UncertainDataset, UncertainSeries, UncertainValue};
