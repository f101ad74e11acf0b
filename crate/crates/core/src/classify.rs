//! Gaussian naive Bayes on plain feature vectors, and an uncertainty-aware
//! variant that treats every feature as a Gaussian measurement with a known
//! deviation.
//!
//! The uncertain variant moment-matches the mixture of per-sample Gaussians
//! `N(best_i, delta_i²)` at fit time (class variance = variance of the best
//! guesses + mean squared deviation) and scores an uncertain observation with
//! the convolved likelihood `N(best; mean, variance + delta²)`. With all
//! deviations at zero both reduce to the plain model.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapelet::ScaledFeature;
use crate::uncertain::{encode_labels, UncertainValue};

const VAR_SMOOTHING: f64 = 1e-9;

/// Anything carrying a best guess and a deviation.
pub trait BestDelta {
    fn best(&self) -> f64;
    fn delta(&self) -> f64;
}

impl BestDelta for UncertainValue {
    fn best(&self) -> f64 {
        UncertainValue::best(self)
    }

    fn delta(&self) -> f64 {
        UncertainValue::delta(self)
    }
}

impl BestDelta for ScaledFeature {
    fn best(&self) -> f64 {
        self.best
    }

    fn delta(&self) -> f64 {
        self.delta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classifier {
    Gnb,
    Ugnb,
}

impl Classifier {
    pub fn as_str(self) -> &'static str {
        match self {
            Classifier::Gnb => "gnb",
            Classifier::Ugnb => "ugnb",
        }
    }
}

impl fmt::Display for Classifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Classifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gnb" => Ok(Classifier::Gnb),
            "ugnb" => Ok(Classifier::Ugnb),
            other => Err(Error::Config(format!("unknown classifier {other:?}; expected gnb or ugnb"))),
        }
    }
}

/// Bests first, then deviations.
pub fn flatten<T: BestDelta>(row: &[T]) -> Vec<f64> {
    row.iter().map(T::best).chain(row.iter().map(T::delta)).collect()
}

/// Fitted per-class Gaussian statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianNb {
    classes: Vec<String>,
    priors: Vec<f64>,
    means: Vec<Vec<f64>>,
    /// Includes `variance_floor`.
    variances: Vec<Vec<f64>>,
    variance_floor: f64,
}

impl GaussianNb {
    /// Plain Gaussian naive Bayes.
    pub fn fit(x: &[Vec<f64>], y: &[String]) -> Result<Self> {
        let rows: Vec<Vec<(f64, f64)>> = x.iter().map(|r| r.iter().map(|&v| (v, 0.0)).collect()).collect();
        Self::fit_pairs(&rows, y)
    }

    /// Uncertainty-aware fit on `(best, delta)` features.
    pub fn fit_uncertain<T: BestDelta>(x: &[Vec<T>], y: &[String]) -> Result<Self> {
        let rows: Vec<Vec<(f64, f64)>> = x.iter().map(|r| r.iter().map(|v| (v.best(), v.delta())).collect()).collect();
        Self::fit_pairs(&rows, y)
    }

    fn fit_pairs(x: &[Vec<(f64, f64)>], y: &[String]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::LabelCountMismatch { series: x.len(), labels: y.len() });
        }
        if x.is_empty() {
            return Err(Error::EmptyDataset);
        }
        let d = x[0].len();
        if let Some(r) = x.iter().find(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: r.len() });
        }
        let (classes, idx) = encode_labels(y);
        if classes.len() < 2 {
            return Err(Error::SingleClass(classes.len()));
        }

        let floor = VAR_SMOOTHING * {
            let all: Vec<usize> = (0..x.len()).collect();
            let max = (0..d).map(|j| moment_variance(x, &all, j)).fold(0.0, f64::max);
            if max > 0.0 {
                max
            } else {
                1.0
            }
        };

        let n = x.len() as f64;
        let mut priors = Vec::with_capacity(classes.len());
        let mut means = Vec::with_capacity(classes.len());
        let mut variances = Vec::with_capacity(classes.len());
        for c in 0..classes.len() {
            let members: Vec<usize> = (0..x.len()).filter(|&i| idx[i] == c).collect();
            priors.push(members.len() as f64 / n);
            let cnt = members.len() as f64;
            means.push((0..d).map(|j| members.iter().map(|&i| x[i][j].0).sum::<f64>() / cnt).collect());
            variances.push((0..d).map(|j| moment_variance(x, &members, j) + floor).collect());
        }
        Ok(Self { classes, priors, means, variances, variance_floor: floor })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn priors(&self) -> &[f64] {
        &self.priors
    }

    pub fn means(&self) -> &[Vec<f64>] {
        &self.means
    }

    pub fn variances(&self) -> &[Vec<f64>] {
        &self.variances
    }

    pub fn variance_floor(&self) -> f64 {
        self.variance_floor
    }

    pub fn n_features(&self) -> usize {
        self.means.first().map_or(0, Vec::len)
    }

    pub fn predict_proba(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        Ok(self.posterior(x.iter().map(|&v| (v, 0.0))))
    }

    /// Posterior for an uncertain observation, scoring each feature with
    /// `N(best; mean, variance + delta²)`.
    pub fn predict_proba_uncertain<T: BestDelta>(&self, x: &[T]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        Ok(self.posterior(x.iter().map(|v| (v.best(), v.delta()))))
    }

    pub fn predict(&self, x: &[f64]) -> Result<&str> {
        self.predict_proba(x).map(|p| self.classes[argmax(&p)].as_str())
    }

    pub fn predict_uncertain<T: BestDelta>(&self, x: &[T]) -> Result<&str> {
        self.predict_proba_uncertain(x).map(|p| self.classes[argmax(&p)].as_str())
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        let expected = self.n_features();
        if found != expected {
            return Err(Error::DimensionMismatch { expected, found });
        }
        Ok(())
    }

    fn posterior(&self, x: impl Iterator<Item = (f64, f64)> + Clone) -> Vec<f64> {
        let log_joint: Vec<f64> = (0..self.classes.len())
            .map(|c| {
                let ll: f64 = x
                    .clone()
                    .enumerate()
                    .map(|(j, (v, dv))| log_normal_pdf(v, self.means[c][j], self.variances[c][j] + dv * dv))
                    .sum();
                self.priors[c].ln() + ll
            })
            .collect();
        let max = log_joint.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let unnorm: Vec<f64> = log_joint.iter().map(|l| (l - max).exp()).collect();
        let z: f64 = unnorm.iter().sum();
        unnorm.into_iter().map(|u| u / z).collect()
    }
}

/// Variance of the moment-matched mixture of `N(best_i, delta_i²)` over
/// `members` for feature `j`.
fn moment_variance(x: &[Vec<(f64, f64)>], members: &[usize], j: usize) -> f64 {
    let n = members.len() as f64;
    let mean = members.iter().map(|&i| x[i][j].0).sum::<f64>() / n;
    let spread = members.iter().map(|&i| (x[i][j].0 - mean).powi(2)).sum::<f64>() / n;
    let noise = members.iter().map(|&i| x[i][j].1 * x[i][j].1).sum::<f64>() / n;
    spread + noise
}

fn log_normal_pdf(x: f64, mean: f64, var: f64) -> f64 {
    -0.5 * ((2.0 * std::f64::consts::PI * var).ln() + (x - mean) * (x - mean) / var)
}

/// Index of the largest probability; the first one on ties.
pub fn argmax(p: &[f64]) -> usize {
    p.iter().enumerate().fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) }).0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn uv(b: f64, d: f64) -> UncertainValue {
        UncertainValue::new(b, d).unwrap()
    }

    #[test]
    fn flatten_examples() {
        assert_eq!(flatten(&[uv(1.0, 0.1), uv(2.0, 0.2)]), vec![1.0, 2.0, 0.1, 0.2]);
        assert_eq!(flatten(&[uv(1.0, 0.0), uv(2.0, 0.0)]), vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(flatten(&[uv(3.0, 0.5)]), vec![3.0, 0.5]);
    }

    #[test]
    fn gnb_moments() {
        let m = GaussianNb::fit(&[vec![0.0], vec![2.0], vec![10.0]], &labels(&["a", "a", "b"])).unwrap();
        assert_eq!(m.means()[0], vec![1.0]);
        assert_eq!(m.variances()[0][0], 1.0 + m.variance_floor());
        // one row in class b
        assert_eq!(m.variances()[1][0], m.variance_floor());
        let m = GaussianNb::fit(&[vec![1.0], vec![1.0], vec![1.0], vec![2.0]], &labels(&["a", "a", "a", "b"])).unwrap();
        assert_eq!(m.priors(), &[0.75, 0.25]);
    }

    #[test]
    fn gnb_rejects_single_class_and_bad_dims() {
        assert!(matches!(GaussianNb::fit(&[vec![0.0], vec![1.0]], &labels(&["a", "a"])), Err(Error::SingleClass(1))));
        let m = GaussianNb::fit(&[vec![0.0], vec![1.0]], &labels(&["a", "b"])).unwrap();
        assert!(matches!(m.predict_proba(&[0.0, 1.0]), Err(Error::DimensionMismatch { expected: 1, found: 2 })));
    }

    #[test]
    fn gnb_predictions() {
        let x = vec![vec![-1.0], vec![1.0], vec![99.0], vec![101.0]];
        let m = GaussianNb::fit(&x, &labels(&["a", "a", "b", "b"])).unwrap();
        assert!(m.predict_proba(&[0.0]).unwrap()[0] > 0.99);
        assert_eq!(m.predict(&[0.0]).unwrap(), "a");
        let p = m.predict_proba(&[50.0]).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ugnb_moments() {
        let y = labels(&["a", "a", "b", "b"]);
        let x = vec![vec![uv(0.0, 1.0)], vec![uv(0.0, 1.0)], vec![uv(5.0, 0.0)], vec![uv(7.0, 0.0)]];
        let m = GaussianNb::fit_uncertain(&x, &y).unwrap();
        assert_eq!(m.means()[0][0], 0.0);
        assert!((m.variances()[0][0] - (1.0 + m.variance_floor())).abs() < 1e-15);

        let x = vec![vec![uv(-1.0, 0.0)], vec![uv(1.0, 0.0)], vec![uv(5.0, 0.0)], vec![uv(7.0, 0.0)]];
        let m = GaussianNb::fit_uncertain(&x, &y).unwrap();
        assert_eq!(m.means()[0][0], 0.0);
        assert_eq!(m.variances()[0][0], 1.0 + m.variance_floor());
    }

    #[test]
    fn ugnb_reduces_to_gnb() {
        let y = labels(&["a", "b", "a", "b", "c"]);
        let bests = vec![vec![0.1, 2.0], vec![1.5, -1.0], vec![0.3, 2.2], vec![1.1, -0.7], vec![5.0, 5.0]];
        let certain: Vec<Vec<UncertainValue>> = bests.iter().map(|r| r.iter().map(|&b| uv(b, 0.0)).collect()).collect();
        let g = GaussianNb::fit(&bests, &y).unwrap();
        let u = GaussianNb::fit_uncertain(&certain, &y).unwrap();
        assert_eq!(g, u);
        let q = [uv(0.7, 0.0), uv(0.4, 0.0)];
        let pg = g.predict_proba(&[0.7, 0.4]).unwrap();
        let pu = u.predict_proba_uncertain(&q).unwrap();
        for (a, b) in pg.iter().zip(&pu) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn ugnb_density_at_mean() {
        // a class with mean 0 and variance 1 on a single feature
        let m = GaussianNb {
            classes: labels(&["a", "b"]),
            priors: vec![0.5, 0.5],
            means: vec![vec![0.0], vec![3.0]],
            variances: vec![vec![1.0], vec![1.0]],
            variance_floor: 0.0,
        };
        let density = log_normal_pdf(0.0, m.means[0][0], m.variances[0][0] + 0.0).exp();
        assert!((density - 0.398_942).abs() < 1e-6);
        let p = m.predict_proba_uncertain(&[uv(0.0, 0.0)]).unwrap();
        let want = 0.398_942_280_401_432_7 / (0.398_942_280_401_432_7 + (-4.5f64).exp() * 0.398_942_280_401_432_7);
        assert!((p[0] - want).abs() < 1e-12);
    }

    #[test]
    fn huge_deviation_returns_priors() {
        let y = labels(&["a", "a", "a", "b"]);
        let x = vec![vec![uv(0.0, 0.1)], vec![uv(0.5, 0.1)], vec![uv(0.2, 0.0)], vec![uv(9.0, 0.3)]];
        let m = GaussianNb::fit_uncertain(&x, &y).unwrap();
        let p = m.predict_proba_uncertain(&[uv(9.0, 1e6)]).unwrap();
        assert!((p[0] - 0.75).abs() < 1e-3 && (p[1] - 0.25).abs() < 1e-3);
    }

    #[test]
    fn classifier_names() {
        assert_eq!("UGNB".parse::<Classifier>().unwrap(), Classifier::Ugnb);
        assert!("svm".parse::<Classifier>().is_err());
    }
}
