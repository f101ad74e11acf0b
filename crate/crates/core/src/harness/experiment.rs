//! One train/test experiment: inject, select, transform, fit, predict, score.

use std::fs::OpenOptions;
use std::io::{Read, Write};
use std::path::Path;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::classify::{flatten, Classifier, GaussianNb};
use crate::dissimilarity::Measure;
use crate::error::{Error, Result};
use crate::harness::inject::{inject_uncertainty, InjectionConfig};
use crate::harness::io::{load_ucr_tsv, RawDataset};
use crate::ordering::{OrderingKind, OrderingStrategy};
use crate::shapelet::{
    select_shapelets, transform_apply, transform_fit_from_columns, Contract, SelectionConfig, UncertainFeatureMatrix,
};

/// Measure, ordering and final classifier of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelSpec {
    pub measure: Measure,
    pub ordering: OrderingStrategy,
    pub classifier: Classifier,
}

const VALID_COMBINATIONS: &str = "ed|dust-uniform|dust-normal with natural ordering and gnb; \
     ued with simple|stochastic|interval ordering and gnb|ugnb";

impl ModelSpec {
    pub fn new(measure: Measure, ordering: OrderingStrategy, classifier: Classifier) -> Result<Self> {
        let spec = Self { measure, ordering, classifier };
        spec.validate()?;
        Ok(spec)
    }

    /// Classical shapelet transform: squared ED on best guesses, GNB.
    pub fn st() -> Self {
        Self { measure: Measure::Ed, ordering: OrderingStrategy::natural(), classifier: Classifier::Gnb }
    }

    pub fn dust(measure: Measure) -> Self {
        Self { measure, ordering: OrderingStrategy::natural(), classifier: Classifier::Gnb }
    }

    pub fn ued(ordering: OrderingStrategy, classifier: Classifier) -> Self {
        Self { measure: Measure::Ued, ordering, classifier }
    }

    /// The compared model matrix, with `ordering` for the UED models.
    pub fn model_matrix(ordering: OrderingStrategy) -> Vec<Self> {
        vec![
            Self::st(),
            Self::dust(Measure::DustNormal),
            Self::dust(Measure::DustUniform),
            Self::ued(ordering, Classifier::Gnb),
            Self::ued(ordering, Classifier::Ugnb),
        ]
    }

    pub fn validate(&self) -> Result<()> {
        let natural = self.ordering.kind() == OrderingKind::Natural;
        let ok = match self.measure {
            Measure::Ued => !natural,
            Measure::Ed | Measure::DustUniform | Measure::DustNormal => natural && self.classifier == Classifier::Gnb,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "measure {} with ordering {} and classifier {} is not supported; valid combinations: {VALID_COMBINATIONS}",
                self.measure,
                self.ordering.kind(),
                self.classifier
            )))
        }
    }

    pub fn name(&self) -> String {
        match self.measure {
            Measure::Ed => "ST".into(),
            Measure::DustNormal => "UST(DUST_NORMAL)".into(),
            Measure::DustUniform => "UST(DUST_UNIFORM)".into(),
            Measure::Ued => format!("UST(UED, {})", self.classifier.as_str().to_uppercase()),
        }
    }

    /// `base` with this model's measure and ordering.
    pub fn selection_config(&self, base: &SelectionConfig) -> SelectionConfig {
        SelectionConfig { measure: self.measure, ordering: self.ordering, ..base.clone() }
    }

    fn features_for_gnb(&self, m: &UncertainFeatureMatrix) -> Vec<Vec<f64>> {
        if self.measure.is_uncertain() {
            m.rows.iter().map(|r| flatten(r)).collect()
        } else {
            m.rows.iter().map(|r| r.iter().map(|f| f.best).collect()).collect()
        }
    }
}

/// One row of the results table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub dataset: String,
    pub model: String,
    pub ordering: String,
    pub measure: String,
    pub classifier: String,
    pub c: f64,
    pub seed: u64,
    pub accuracy: f64,
    pub train_seconds: f64,
    pub test_seconds: f64,
    pub shapelets_evaluated: usize,
}

/// Fraction of predictions equal to their label.
pub fn accuracy<A: AsRef<str>, B: AsRef<str>>(predictions: &[A], labels: &[B]) -> Result<f64> {
    if predictions.len() != labels.len() {
        return Err(Error::LengthMismatch { left: predictions.len(), right: labels.len() });
    }
    if predictions.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let correct = predictions.iter().zip(labels).filter(|(p, l)| p.as_ref() == l.as_ref()).count();
    Ok(correct as f64 / predictions.len() as f64)
}

/// Loads both splits from UCR TSV files and runs [`run_on_datasets`].
pub fn run_experiment(
    train_path: impl AsRef<Path>,
    test_path: impl AsRef<Path>,
    spec: &ModelSpec,
    injection: &InjectionConfig,
    selection: &SelectionConfig,
) -> Result<ExperimentResult> {
    spec.validate()?;
    let started = Instant::now();
    let train = load_ucr_tsv(train_path).map_err(Error::at_stage("loading the training split"))?;
    let test = load_ucr_tsv(test_path).map_err(Error::at_stage("loading the test split"))?;
    run_from(started, &train, &test, spec, injection, selection)
}

/// Injects uncertainty into both splits (seeds `seed` and `seed + 1`), trains
/// on the first and scores on the second.
pub fn run_on_datasets(
    train: &RawDataset,
    test: &RawDataset,
    spec: &ModelSpec,
    injection: &InjectionConfig,
    selection: &SelectionConfig,
) -> Result<ExperimentResult> {
    run_from(Instant::now(), train, test, spec, injection, selection)
}

/// A limited contract covers everything from `run_started` on.
fn run_from(
    run_started: Instant,
    train: &RawDataset,
    test: &RawDataset,
    spec: &ModelSpec,
    injection: &InjectionConfig,
    selection: &SelectionConfig,
) -> Result<ExperimentResult> {
    spec.validate()?;
    let mut cfg = spec.selection_config(selection);
    // scoring the test split costs about k distances per test series, while
    // one assessment costs one distance per training series
    let tail = cfg.k as f64 * test.len() as f64 / train.len().max(1) as f64;
    cfg.tail_reserve = cfg.tail_reserve.max(tail);

    let train_u = inject_uncertainty(train, injection).map_err(Error::at_stage("injecting training uncertainty"))?;
    let test_cfg = InjectionConfig { seed: injection.seed.wrapping_add(1), ..*injection };
    let test_u = inject_uncertainty(test, &test_cfg).map_err(Error::at_stage("injecting test uncertainty"))?;

    if let Contract::Limited(budget) = cfg.contract {
        let left = budget.saturating_sub(run_started.elapsed()).max(Duration::from_nanos(1));
        cfg.contract = Contract::Limited(left);
    }

    let started = Instant::now();
    let selected = select_shapelets(&train_u, &cfg).map_err(Error::at_stage("shapelet selection"))?;
    let train_x = transform_fit_from_columns(&selected.distances).map_err(Error::at_stage("training transform"))?;
    let model = match spec.classifier {
        Classifier::Gnb => GaussianNb::fit(&spec.features_for_gnb(&train_x), train_u.labels()),
        Classifier::Ugnb => GaussianNb::fit_uncertain(&train_x.rows, train_u.labels()),
    }
    .map_err(Error::at_stage("classifier training"))?;
    let train_seconds = started.elapsed().as_secs_f64();

    let started = Instant::now();
    let test_x = transform_apply(&test_u, &selected.shapelets, &train_x, cfg.measure, &cfg.ordering)
        .map_err(Error::at_stage("test transform"))?;
    let predictions = match spec.classifier {
        Classifier::Gnb => spec.features_for_gnb(&test_x).iter().map(|x| model.predict(x)).collect::<Result<Vec<_>>>(),
        Classifier::Ugnb => test_x.rows.iter().map(|x| model.predict_uncertain(x)).collect::<Result<Vec<_>>>(),
    }
    .map_err(Error::at_stage("prediction"))?;
    let test_seconds = started.elapsed().as_secs_f64();

    Ok(ExperimentResult {
        dataset: train.name.clone(),
        model: spec.name(),
        ordering: spec.ordering.kind().to_string(),
        measure: spec.measure.to_string(),
        classifier: spec.classifier.to_string(),
        c: injection.c,
        seed: injection.seed,
        accuracy: accuracy(&predictions, test_u.labels())?,
        train_seconds,
        test_seconds,
        shapelets_evaluated: selected.evaluated,
    })
}

/// Writes results as CSV with a header row.
pub fn write_results<W: Write>(out: W, results: &[ExperimentResult]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in results {
        w.serialize(r)?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn read_results<R: Read>(input: R) -> Result<Vec<ExperimentResult>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(Error::from)).collect()
}

/// Appends rows to a CSV file, writing the header only when the file is new
/// or empty. All appends go through the single writer.
pub struct ResultWriter {
    inner: csv::Writer<std::fs::File>,
}

impl ResultWriter {
    pub fn append(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let io_err = |source| Error::Io { path: path.to_path_buf(), source };
        let file = OpenOptions::new().create(true).append(true).open(path).map_err(io_err)?;
        let fresh = file.metadata().map_err(io_err)?.len() == 0;
        let inner = csv::WriterBuilder::new().has_headers(fresh).from_writer(file);
        Ok(Self { inner })
    }

    pub fn write(&mut self, result: &ExperimentResult) -> Result<()> {
        self.inner.serialize(result)?;
        self.inner.flush().map_err(csv::Error::from)?;
        Ok(())
    }
}
