//! Synthetic uncertainty for datasets recorded without any.
//!
//! For every timestep `i` the population standard deviation `σᵢ` of that
//! column is computed. Each observation then draws a scale `σ ~ N(0, σᵢ)`,
//! sets `s = c·|σ|`, perturbs the reading by `e ~ N(0, s)` and records `s` as
//! its deviation. Draws happen in row-major order from a seeded generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harness::io::RawDataset;
use crate::uncertain::{UncertainDataset, UncertainSeries, UncertainValue};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InjectionConfig {
    /// Uncertainty level.
    pub c: f64,
    pub seed: u64,
}

impl InjectionConfig {
    pub fn new(c: f64, seed: u64) -> Result<Self> {
        if !c.is_finite() || c < 0.0 {
            return Err(Error::InvalidLevel(c));
        }
        Ok(Self { c, seed })
    }
}

/// Population standard deviation of every column.
pub fn column_std(raw: &RawDataset) -> Vec<f64> {
    let n = raw.len() as f64;
    (0..raw.series_len())
        .map(|i| {
            let mean = raw.series.iter().map(|s| s[i]).sum::<f64>() / n;
            (raw.series.iter().map(|s| (s[i] - mean).powi(2)).sum::<f64>() / n).sqrt()
        })
        .collect()
}

/// Deviation recorded for an observation perturbed with noise of scale `s`.
pub fn recorded_deviation(noise_scale: f64) -> f64 {
    noise_scale
}

pub fn inject_uncertainty(raw: &RawDataset, cfg: &InjectionConfig) -> Result<UncertainDataset> {
    let cfg = InjectionConfig::new(cfg.c, cfg.seed)?;
    let sigmas = column_std(raw);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut series = Vec::with_capacity(raw.len());
    for row in &raw.series {
        let mut values = Vec::with_capacity(row.len());
        for (&x, &sigma_i) in row.iter().zip(&sigmas) {
            let z_scale: f64 = rng.sample(StandardNormal);
            let z_noise: f64 = rng.sample(StandardNormal);
            let s = cfg.c * (sigma_i * z_scale).abs();
            let e = s * z_noise;
            values.push(UncertainValue::new(x + e, recorded_deviation(s))?);
        }
        series.push(UncertainSeries::new(values)?);
    }
    UncertainDataset::new(series, raw.labels.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw() -> RawDataset {
        RawDataset::new(
            "t",
            vec![vec![0.0, 1.0, 5.0], vec![2.0, 1.0, -5.0], vec![4.0, 1.0, 0.0]],
            vec!["a".into(), "b".into(), "a".into()],
        )
        .unwrap()
    }

    #[test]
    fn zero_level_keeps_readings() {
        let r = raw();
        let d = inject_uncertainty(&r, &InjectionConfig::new(0.0, 7).unwrap()).unwrap();
        for (s, orig) in d.series().iter().zip(&r.series) {
            for (v, &x) in s.values().iter().zip(orig) {
                assert_eq!(v.best(), x);
                assert_eq!(v.delta(), 0.0);
            }
        }
    }

    #[test]
    fn same_seed_same_output() {
        let cfg = InjectionConfig::new(0.8, 42).unwrap();
        assert_eq!(inject_uncertainty(&raw(), &cfg).unwrap(), inject_uncertainty(&raw(), &cfg).unwrap());
        let other = InjectionConfig::new(0.8, 43).unwrap();
        assert_ne!(inject_uncertainty(&raw(), &cfg).unwrap(), inject_uncertainty(&raw(), &other).unwrap());
    }

    #[test]
    fn constant_column_stays_certain() {
        let d = inject_uncertainty(&raw(), &InjectionConfig::new(2.0, 1).unwrap()).unwrap();
        assert!(d.series().iter().all(|s| s[1].delta() == 0.0 && s[1].best() == 1.0));
    }

    #[test]
    fn column_std_is_population() {
        let s = column_std(&raw());
        assert!((s[0] - (8.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert_eq!(s[1], 0.0);
    }

    #[test]
    fn rejects_negative_level() {
        assert!(matches!(InjectionConfig::new(-0.1, 0), Err(Error::InvalidLevel(_))));
        assert!(InjectionConfig::new(f64::NAN, 0).is_err());
    }

    #[test]
    fn mean_deviation_matches_half_normal() {
        // 10^6 observations of one timestep with σᵢ = 1: E[c|σ|] = c·√(2/π)
        let n = 1_000_000;
        let series: Vec<Vec<f64>> = (0..n).map(|i| vec![if i % 2 == 0 { 1.0 } else { -1.0 }]).collect();
        let labels = vec!["x".to_string(); n];
        let r = RawDataset::new("hn", series, labels).unwrap();
        let c = 0.4;
        let d = inject_uncertainty(&r, &InjectionConfig::new(c, 2024).unwrap()).unwrap();
        let mean = d.series().iter().map(|s| s[0].delta()).sum::<f64>() / n as f64;
        let expected = c * (2.0 / std::f64::consts::PI).sqrt();
        assert!((mean / expected - 1.0).abs() < 0.01, "mean {mean}, expected {expected}");
    }
}
