//! Seeded synthetic labeled-dataset generator: cluster centers on hypercube
//! vertices scaled by a separation knob, unit-variance isotropic Gaussian
//! noise, balanced classes.

use crate::error::{Error, Result};
use crate::geometry::PointCloud;
use crate::rng::SplitMix64;
use alloc::format;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub n_samples: usize,
    pub n_features: usize,
    pub n_classes: usize,
    pub clusters_per_class: usize,
    pub class_sep: f64,
    pub seed: u64,
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_features == 0 || self.n_classes == 0 || self.clusters_per_class == 0 {
            return Err(Error::InvalidConfig(format!(
                "counts must be positive: features={}, classes={}, clusters_per_class={}",
                self.n_features, self.n_classes, self.clusters_per_class
            )));
        }
        if self.class_sep <= 0.0 || !self.class_sep.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "class_sep must be a positive real, got {}",
                self.class_sep
            )));
        }
        let centers = self.n_classes * self.clusters_per_class;
        let enough_vertices =
            self.n_features >= 64 || (centers as u128) <= (1u128 << self.n_features);
        if !enough_vertices {
            return Err(Error::InvalidConfig(format!(
                "{} cluster centers do not fit on the {} vertices of a {}-cube",
                centers,
                1u128 << self.n_features,
                self.n_features
            )));
        }
        if self.n_samples < self.n_classes {
            return Err(Error::InvalidConfig(format!(
                "n_samples={} cannot represent {} classes",
                self.n_samples, self.n_classes
            )));
        }
        Ok(())
    }
}

/// Distinct hypercube-vertex sign patterns, one per cluster center.
fn sample_centers(rng: &mut SplitMix64, count: usize, dim: usize) -> Vec<Vec<bool>> {
    let mut centers: Vec<Vec<bool>> = Vec::with_capacity(count);
    while centers.len() < count {
        let mut signs = Vec::with_capacity(dim);
        let mut word = rng.next_u64();
        for bit in 0..dim {
            if bit > 0 && bit % 64 == 0 {
                word = rng.next_u64();
            }
            signs.push(word >> (bit % 64) & 1 == 1);
        }
        if !centers.contains(&signs) {
            centers.push(signs);
        }
    }
    centers
}

/// Generates a labeled point cloud: cluster centers at distinct vertices of
/// {-class_sep, +class_sep}^d assigned to classes round-robin, points drawn
/// from unit-variance isotropic Gaussians at the centers, class counts
/// balanced within one.  Pure function of the config.
pub fn make_classification(cfg: &SynthConfig) -> Result<PointCloud> {
    cfg.validate()?;
    let mut rng = SplitMix64::new(cfg.seed);
    let n_centers = cfg.n_classes * cfg.clusters_per_class;
    let centers = sample_centers(&mut rng, n_centers, cfg.n_features);

    // center t belongs to class t % n_classes
    let mut data = Vec::with_capacity(cfg.n_samples * cfg.n_features);
    let mut labels = Vec::with_capacity(cfg.n_samples);
    let base = cfg.n_samples / cfg.n_classes;
    let extra = cfg.n_samples % cfg.n_classes;
    for class in 0..cfg.n_classes {
        let count = base + usize::from(class < extra);
        for j in 0..count {
            let cluster = j % cfg.clusters_per_class;
            let center = &centers[cluster * cfg.n_classes + class];
            for &sign in center {
                let offset = if sign { cfg.class_sep } else { -cfg.class_sep };
                data.push(offset + rng.next_standard_normal());
            }
            labels.push(class);
        }
    }

    // shuffle row order so contiguous splits stay class-balanced
    let mut order: Vec<usize> = (0..cfg.n_samples).collect();
    rng.shuffle(&mut order);
    let mut shuffled = Vec::with_capacity(data.len());
    let mut shuffled_labels = Vec::with_capacity(cfg.n_samples);
    for &i in &order {
        shuffled.extend_from_slice(&data[i * cfg.n_features..(i + 1) * cfg.n_features]);
        shuffled_labels.push(labels[i]);
    }
    PointCloud::with_labels(shuffled, cfg.n_features, shuffled_labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learners::FitConfig;
    use crate::metrics::{roc_auc_n, thornton_index};

    fn cfg(class_sep: f64, seed: u64) -> SynthConfig {
        SynthConfig {
            n_samples: 200,
            n_features: 6,
            n_classes: 2,
            clusters_per_class: 2,
            class_sep,
            seed,
        }
    }

    #[test]
    fn shapes_and_balance() {
        let pc = make_classification(&SynthConfig {
            n_samples: 203,
            n_features: 5,
            n_classes: 3,
            clusters_per_class: 2,
            class_sep: 1.0,
            seed: 1,
        })
        .unwrap();
        assert_eq!(pc.len(), 203);
        assert_eq!(pc.dim(), 5);
        let labels = pc.labels().unwrap();
        let mut counts = [0usize; 3];
        for &l in labels {
            counts[l] += 1;
        }
        assert!(counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = make_classification(&cfg(0.5, 42)).unwrap();
        let b = make_classification(&cfg(0.5, 42)).unwrap();
        assert_eq!(a, b);
        let c = make_classification(&cfg(0.5, 43)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn extreme_separation_gives_pure_neighborhoods() {
        let pc = make_classification(&cfg(1000.0, 0)).unwrap();
        assert_eq!(thornton_index(&pc, 5).unwrap(), 1.0);
    }

    #[test]
    fn vanishing_separation_carries_no_signal() {
        let pc = make_classification(&SynthConfig {
            n_samples: 2000,
            n_features: 4,
            n_classes: 2,
            clusters_per_class: 1,
            class_sep: 1e-9,
            seed: 5,
        })
        .unwrap();
        let report = roc_auc_n(
            &pc,
            5,
            0,
            FitConfig {
                lr: 0.1,
                epochs: 100,
            },
        )
        .unwrap();
        assert!((report.value - 0.5).abs() < 0.06, "auc {}", report.value);
    }

    #[test]
    fn rejects_too_many_centers() {
        let bad = SynthConfig {
            n_samples: 100,
            n_features: 2,
            n_classes: 3,
            clusters_per_class: 3,
            class_sep: 1.0,
            seed: 0,
        };
        assert!(make_classification(&bad).is_err());
    }

    #[test]
    fn separability_metrics_rise_with_class_sep() {
        // Spearman rho over the sweep should be strongly positive for both
        // the Thornton index and cross-validated AUC.
        let sweep = [0.1, 0.3, 0.5, 1.0, 2.0, 4.0];
        let mut thorntons = Vec::new();
        let mut aucs = Vec::new();
        for &sep in &sweep {
            let pc = make_classification(&SynthConfig {
                n_samples: 300,
                n_features: 8,
                n_classes: 2,
                clusters_per_class: 1,
                class_sep: sep,
                seed: 11,
            })
            .unwrap();
            thorntons.push(thornton_index(&pc, 5).unwrap());
            aucs.push(
                roc_auc_n(
                    &pc,
                    5,
                    0,
                    FitConfig {
                        lr: 0.1,
                        epochs: 150,
                    },
                )
                .unwrap()
                .value,
            );
        }
        let rho_t = spearman(&sweep, &thorntons);
        let rho_a = spearman(&sweep, &aucs);
        assert!(rho_t >= 0.9, "thornton rho {rho_t}: {thorntons:?}");
        assert!(rho_a >= 0.9, "auc rho {rho_a}: {aucs:?}");
    }

    fn ranks(xs: &[f64]) -> Vec<f64> {
        let mut order: Vec<usize> = (0..xs.len()).collect();
        order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
        let mut r = alloc::vec![0.0; xs.len()];
        for (rank, &i) in order.iter().enumerate() {
            r[i] = rank as f64;
        }
        r
    }

    fn spearman(a: &[f64], b: &[f64]) -> f64 {
        let (ra, rb) = (ranks(a), ranks(b));
        let n = a.len() as f64;
        let mean = (n - 1.0) / 2.0;
        let mut num = 0.0;
        let mut da = 0.0;
        let mut db = 0.0;
        for (x, y) in ra.iter().zip(&rb) {
            num += (x - mean) * (y - mean);
            da += (x - mean) * (x - mean);
            db += (y - mean) * (y - mean);
        }
        num / (da.sqrt() * db.sqrt())
    }
}
