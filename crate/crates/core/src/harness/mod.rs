//! Dataset ingestion, synthetic uncertainty, and experiment orchestration.

mod experiment;
mod inject;
mod io;
pub mod synthetic;

pub use experiment::{
    accuracy, read_results, run_experiment, run_on_datasets, write_results, ExperimentResult, ModelSpec, ResultWriter,
};
pub use inject::{column_std, inject_uncertainty, recorded_deviation, InjectionConfig};
pub use io::{
    load_ucr_tsv, load_uncertain_tsv, parse_ucr_tsv, parse_uncertain_tsv, save_uncertain_tsv, write_uncertain_tsv,
    RawDataset,
};
