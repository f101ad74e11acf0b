//! Shapelet transform: distances from each series to each shapelet, with
//! per-column standard scaling of the best-guess and deviation channels.

use serde::{Deserialize, Serialize};

use crate::dissimilarity::Measure;
use crate::error::{Error, Result};
use crate::ordering::OrderingStrategy;
use crate::shapelet::selection::Shapelet;
use crate::uncertain::{UncertainDataset, UncertainValue};

/// A scaled feature. After centering the deviation channel may be negative,
/// so this is not an [`UncertainValue`].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ScaledFeature {
    pub best: f64,
    pub delta: f64,
}

/// Per-column mean and population standard deviation of both channels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnScaling {
    pub best_mean: Vec<f64>,
    pub best_std: Vec<f64>,
    pub delta_mean: Vec<f64>,
    pub delta_std: Vec<f64>,
}

impl ColumnScaling {
    fn fit(raw: &[Vec<UncertainValue>], k: usize) -> Self {
        let mut s = ColumnScaling {
            best_mean: vec![0.0; k],
            best_std: vec![0.0; k],
            delta_mean: vec![0.0; k],
            delta_std: vec![0.0; k],
        };
        for j in 0..k {
            let (bm, bs) = mean_std(raw.iter().map(|r| r[j].best()));
            let (dm, ds) = mean_std(raw.iter().map(|r| r[j].delta()));
            s.best_mean[j] = bm;
            s.best_std[j] = bs;
            s.delta_mean[j] = dm;
            s.delta_std[j] = ds;
        }
        s
    }

    fn apply(&self, raw: &[Vec<UncertainValue>]) -> Vec<Vec<ScaledFeature>> {
        raw.iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| ScaledFeature {
                        best: zscore(v.best(), self.best_mean[j], self.best_std[j]),
                        delta: zscore(v.delta(), self.delta_mean[j], self.delta_std[j]),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.best_mean.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best_mean.is_empty()
    }
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

#[inline]
fn zscore(v: f64, mean: f64, std: f64) -> f64 {
    if std > 0.0 {
        (v - mean) / std
    } else {
        0.0
    }
}

/// `n × k` transformed dataset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UncertainFeatureMatrix {
    /// Unscaled distances.
    pub raw: Vec<Vec<UncertainValue>>,
    /// Scaled features.
    pub rows: Vec<Vec<ScaledFeature>>,
    /// Statistics fitted on this matrix; `None` for matrices scaled with
    /// statistics borrowed from a training matrix.
    pub scaling: Option<ColumnScaling>,
}

impl UncertainFeatureMatrix {
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_features(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

fn distances(
    dataset: &UncertainDataset,
    shapelets: &[Shapelet],
    measure: Measure,
    ordering: &OrderingStrategy,
) -> Result<Vec<Vec<UncertainValue>>> {
    if shapelets.is_empty() {
        return Err(Error::NoShapelets);
    }
    let m = dataset.series_len();
    if let Some(s) = shapelets.iter().find(|s| s.values.len() > m) {
        return Err(Error::SubsequenceTooLong { subsequence: s.values.len(), series: m });
    }
    dataset
        .series()
        .iter()
        .map(|t| {
            shapelets.iter().map(|s| measure.subsequence_distance(t.values(), s.values.values(), ordering)).collect()
        })
        .collect()
}

/// Transforms `dataset` and fits the scaling statistics on it.
pub fn transform_fit(
    dataset: &UncertainDataset,
    shapelets: &[Shapelet],
    measure: Measure,
    ordering: &OrderingStrategy,
) -> Result<UncertainFeatureMatrix> {
    let raw = distances(dataset, shapelets, measure, ordering)?;
    Ok(fit_raw(raw, shapelets.len()))
}

/// Same as [`transform_fit`] for distances already computed during the
/// search, given column by column (one vector per shapelet).
pub(crate) fn transform_fit_from_columns(columns: &[Vec<UncertainValue>]) -> Result<UncertainFeatureMatrix> {
    if columns.is_empty() {
        return Err(Error::NoShapelets);
    }
    let n = columns[0].len();
    let raw = (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    Ok(fit_raw(raw, columns.len()))
}

fn fit_raw(raw: Vec<Vec<UncertainValue>>, k: usize) -> UncertainFeatureMatrix {
    let scaling = ColumnScaling::fit(&raw, k);
    let rows = scaling.apply(&raw);
    UncertainFeatureMatrix { raw, rows, scaling: Some(scaling) }
}

/// Transforms `dataset` and scales it with the statistics of `fitted`.
pub fn transform_apply(
    dataset: &UncertainDataset,
    shapelets: &[Shapelet],
    fitted: &UncertainFeatureMatrix,
    measure: Measure,
    ordering: &OrderingStrategy,
) -> Result<UncertainFeatureMatrix> {
    let scaling =
        fitted.scaling.as_ref().ok_or_else(|| Error::Config("fitted matrix carries no scaling statistics".into()))?;
    if scaling.len() != shapelets.len() {
        return Err(Error::DimensionMismatch { expected: scaling.len(), found: shapelets.len() });
    }
    let raw = distances(dataset, shapelets, measure, ordering)?;
    let rows = scaling.apply(&raw);
    Ok(UncertainFeatureMatrix { raw, rows, scaling: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uncertain::UncertainSeries;

    fn shapelet(v: &[f64]) -> Shapelet {
        Shapelet {
            values: UncertainSeries::certain(v).unwrap(),
            source_index: 0,
            offset: 0,
            length: v.len(),
            quality: 0.0,
            threshold: UncertainValue::default(),
        }
    }

    fn dataset(rows: &[&[f64]]) -> UncertainDataset {
        let series = rows.iter().map(|r| UncertainSeries::certain(r).unwrap()).collect();
        let labels = (0..rows.len()).map(|i| (i % 2).to_string()).collect();
        UncertainDataset::new(series, labels).unwrap()
    }

    #[test]
    fn zscore_column() {
        let column: Vec<UncertainValue> = [1.0, 2.0, 3.0].iter().map(|&v| UncertainValue::certain(v)).collect();
        let m = transform_fit_from_columns(&[column]).unwrap();
        let got: Vec<f64> = m.rows.iter().map(|r| r[0].best).collect();
        let want = (3.0f64 / 2.0).sqrt();
        assert!((got[0] + want).abs() < 1e-12 && got[1].abs() < 1e-12 && (got[2] - want).abs() < 1e-12);
        assert!((want - 1.2247).abs() < 1e-4);
        // certain distances: the deviation channel is constant, hence zero
        assert!(m.rows.iter().all(|r| r[0].delta == 0.0));
    }

    #[test]
    fn scaled_channels_are_standardized() {
        let d = dataset(&[&[1.0, 9.0, 3.0], &[2.0, 7.0, 1.0], &[3.0, 9.5, 0.0], &[0.2, 0.1, 4.0]]);
        let s = [shapelet(&[0.0, 1.0]), shapelet(&[9.0])];
        let m = transform_fit(&d, &s, Measure::Ed, &OrderingStrategy::natural()).unwrap();
        for j in 0..2 {
            let (mean, std) = mean_std(m.rows.iter().map(|r| r[j].best));
            assert!(mean.abs() < 1e-9 && (std - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_column_and_single_row() {
        let d = dataset(&[&[1.0, 2.0], &[1.0, 2.0]]);
        let m = transform_fit(&d, &[shapelet(&[5.0])], Measure::Ued, &OrderingStrategy::simple()).unwrap();
        assert!(m.rows.iter().all(|r| r[0] == ScaledFeature::default()));

        let one = dataset(&[&[1.0, 4.0, 2.0]]);
        let m =
            transform_fit(&one, &[shapelet(&[5.0]), shapelet(&[0.0, 1.0])], Measure::Ued, &OrderingStrategy::simple())
                .unwrap();
        assert_eq!(m.rows, vec![vec![ScaledFeature::default(); 2]]);
    }

    #[test]
    fn apply_reuses_training_statistics() {
        let train = dataset(&[&[1.0, 9.0], &[2.0, 9.0], &[3.0, 9.0]]);
        let s = [shapelet(&[0.0]), shapelet(&[9.0, 9.0])];
        let ord = OrderingStrategy::simple();
        let fitted = transform_fit(&train, &s, Measure::Ued, &ord).unwrap();
        let again = transform_apply(&train, &s, &fitted, Measure::Ued, &ord).unwrap();
        assert_eq!(again.rows, fitted.rows);
        assert!(again.scaling.is_none());

        // the training mean of column 0 is a squared distance of 14/3
        let mean = fitted.scaling.as_ref().unwrap().best_mean[0];
        assert!((mean - 14.0 / 3.0).abs() < 1e-12);
        let test = dataset(&[&[mean.sqrt(), 100.0]]);
        let t = transform_apply(&test, &s, &fitted, Measure::Ued, &ord).unwrap();
        assert_eq!((t.n_rows(), t.n_features()), (1, 2));
        assert!(t.rows[0][0].best.abs() < 1e-12);
    }

    #[test]
    fn errors() {
        let d = dataset(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let ord = OrderingStrategy::simple();
        assert!(matches!(transform_fit(&d, &[], Measure::Ued, &ord), Err(Error::NoShapelets)));
        assert!(matches!(
            transform_fit(&d, &[shapelet(&[1.0, 2.0, 3.0])], Measure::Ued, &ord),
            Err(Error::SubsequenceTooLong { .. })
        ));
    }

    #[test]
    fn columns_route_matches_direct_route() {
        let d = dataset(&[&[1.0, 2.0, 0.5], &[3.0, 4.0, 1.0], &[0.0, 0.0, 2.0]]);
        let s = [shapelet(&[1.0, 1.0]), shapelet(&[0.0])];
        let ord = OrderingStrategy::simple();
        let direct = transform_fit(&d, &s, Measure::Ued, &ord).unwrap();
        let columns: Vec<Vec<UncertainValue>> = (0..2).map(|j| direct.raw.iter().map(|r| r[j]).collect()).collect();
        assert_eq!(transform_fit_from_columns(&columns).unwrap(), direct);
    }
}
