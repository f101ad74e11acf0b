//! Top-k uncertain shapelet selection and the shapelet transform.

mod candidates;
mod selection;
mod split;
mod transform;

pub use candidates::{candidate_count, gen_candidates, CandidateSpace, Subsequence};
pub use selection::{assess_candidate, select_shapelets, Contract, Selection, SelectionConfig, Shapelet};
pub use split::{best_split, entropy, split_gain, SplitThreshold};
pub(crate) use transform::transform_fit_from_columns;
pub use transform::{transform_apply, transform_fit, ColumnScaling, ScaledFeature, UncertainFeatureMatrix};
