//! Seeded generators for toy and stand-in datasets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Normal, StandardNormal};

use crate::harness::io::RawDataset;

/// Two classes: `"a"` series carry `pattern` at a random offset over low-level
/// Gaussian noise, `"b"` series are noise only. Rows alternate between the
/// classes.
pub fn planted_pattern(n_per_class: usize, m: usize, pattern: &[f64], noise: f64, seed: u64) -> RawDataset {
    assert!(pattern.len() <= m, "pattern longer than series");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut series = Vec::with_capacity(2 * n_per_class);
    let mut labels = Vec::with_capacity(2 * n_per_class);
    for _ in 0..n_per_class {
        for class in ["a", "b"] {
            let mut s: Vec<f64> = (0..m).map(|_| noise * rng.sample::<f64, _>(StandardNormal)).collect();
            if class == "a" {
                let at = rng.gen_range(0..=m - pattern.len());
                for (i, p) in pattern.iter().enumerate() {
                    s[at + i] += p;
                }
            }
            series.push(s);
            labels.push(class.to_string());
        }
    }
    RawDataset::new("Planted", series, labels).expect("generator output is rectangular")
}

/// Stand-in for the three-class smooth-subspace benchmark: 15 timesteps, and
/// for class `k` (1..=3) the segment `5(k-1)..5k` is a smooth low-amplitude
/// drift while every other timestep is independent standard-normal noise.
pub fn smooth_subspace(n_per_class: usize, seed: u64) -> RawDataset {
    const LEN: usize = 15;
    const SEGMENT: usize = 5;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let level = Normal::new(0.0, 0.3).expect("valid normal");
    let step = Normal::new(0.0, 0.05).expect("valid normal");
    let mut series = Vec::with_capacity(3 * n_per_class);
    let mut labels = Vec::with_capacity(3 * n_per_class);
    for _ in 0..n_per_class {
        for class in 0..3 {
            let mut s: Vec<f64> = (0..LEN).map(|_| rng.sample(StandardNormal)).collect();
            let mut v: f64 = rng.sample(level);
            for x in &mut s[class * SEGMENT..(class + 1) * SEGMENT] {
                *x = v;
                v += rng.sample(step);
            }
            series.push(s);
            labels.push((class + 1).to_string());
        }
    }
    RawDataset::new("SmoothSubspace", series, labels).expect("generator output is rectangular")
}

/// `n` Gaussian random walks of length `m`, labeled alternately `"a"`/`"b"`.
pub fn random_walks(n: usize, m: usize, seed: u64) -> RawDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let series = (0..n)
        .map(|_| {
            let mut acc = 0.0;
            (0..m)
                .map(|_| {
                    acc += rng.sample::<f64, _>(StandardNormal);
                    acc
                })
                .collect()
        })
        .collect();
    let labels = (0..n).map(|i| if i % 2 == 0 { "a".to_string() } else { "b".to_string() }).collect();
    RawDataset::new("RandomWalks", series, labels).expect("generator output is rectangular")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_determinism() {
        let p = planted_pattern(3, 10, &[0.0, 5.0, 0.0], 0.1, 1);
        assert_eq!((p.len(), p.series_len()), (6, 10));
        assert_eq!(p, planted_pattern(3, 10, &[0.0, 5.0, 0.0], 0.1, 1));
        let s = smooth_subspace(50, 3);
        assert_eq!((s.len(), s.series_len()), (150, 15));
        assert_eq!(s.labels.iter().filter(|l| *l == "2").count(), 50);
        let r = random_walks(4, 7, 0);
        assert_eq!((r.len(), r.series_len()), (4, 7));
    }

    #[test]
    fn smooth_segment_is_smooth() {
        let s = smooth_subspace(20, 9);
        for (row, label) in s.series.iter().zip(&s.labels) {
            let k: usize = label.parse::<usize>().unwrap() - 1;
            let seg = &row[5 * k..5 * k + 5];
            assert!(seg.windows(2).all(|w| (w[1] - w[0]).abs() < 0.5));
        }
    }
}
