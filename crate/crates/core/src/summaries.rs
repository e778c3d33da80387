//! The unsupervised separability statistic P(persistence < t), persistence
//! densities, inter-epoch density distances, and the convergence detector.

use crate::error::{Error, Result};
use crate::homology::NormalizedPersistences;
use crate::mathx;
use alloc::vec::Vec;

/// Normalized histogram of normalized persistence times on [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    pub bin_edges: Vec<f64>,
    pub masses: Vec<f64>,
}

/// One statistic value per tracked epoch, epochs strictly increasing.
#[derive(Debug, Clone, PartialEq)]
pub struct StatisticSeries {
    epochs: Vec<usize>,
    values: Vec<f64>,
}

impl StatisticSeries {
    pub fn new(epochs: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if epochs.len() != values.len() {
            return Err(Error::InvalidArgument("epoch and value counts must match"));
        }
        if epochs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("epochs must be strictly increasing"));
        }
        Ok(Self { epochs, values })
    }

    pub fn epochs(&self) -> &[usize] {
        &self.epochs
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }
}

/// Fraction of normalized persistence times strictly below `t`.
pub fn persistence_statistic(np: &NormalizedPersistences, t: f64) -> Result<f64> {
    if !t.is_finite() {
        return Err(Error::InvalidArgument("threshold must be finite"));
    }
    if np.is_empty() {
        return Err(Error::NoFiniteBars);
    }
    let below = np.values().iter().filter(|&&v| v < t).count();
    Ok(below as f64 / np.len() as f64)
}

/// Equal-width histogram on [0, 1]; the last bin is right-inclusive and the
/// masses sum to 1.
pub fn persistence_density(np: &NormalizedPersistences, bins: usize) -> Result<Density> {
    if bins == 0 {
        return Err(Error::InvalidArgument("bins must be at least 1"));
    }
    if np.is_empty() {
        return Err(Error::NoFiniteBars);
    }
    let mut counts = alloc::vec![0usize; bins];
    for &v in np.values() {
        let idx = ((v * bins as f64) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let total = np.len() as f64;
    Ok(Density {
        bin_edges: (0..=bins).map(|i| i as f64 / bins as f64).collect(),
        masses: counts.iter().map(|&c| c as f64 / total).collect(),
    })
}

/// 1-Wasserstein distance between two empirical distributions on [0, 1]:
/// the integral of |CDF_a - CDF_b|.
pub fn density_distance(a: &NormalizedPersistences, b: &NormalizedPersistences) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::NoFiniteBars);
    }
    let mut xs: Vec<f64> = a.values().to_vec();
    let mut ys: Vec<f64> = b.values().to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (na, nb) = (xs.len() as f64, ys.len() as f64);

    // Walk the merged breakpoints, integrating |F_a - F_b| between them.
    let (mut i, mut j) = (0usize, 0usize);
    let mut prev = 0.0;
    let mut dist = 0.0;
    while i < xs.len() || j < ys.len() {
        let next = match (xs.get(i), ys.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        dist += (next - prev) * mathx::abs(i as f64 / na - j as f64 / nb);
        while i < xs.len() && xs[i] == next {
            i += 1;
        }
        while j < ys.len() && ys[j] == next {
            j += 1;
        }
        prev = next;
    }
    Ok(dist)
}

/// Earliest epoch at which the statistic changed by less than `delta` for
/// `window` consecutive steps. `None` when the series never settles or is
/// shorter than `window + 1`.
pub fn detect_convergence(
    series: &StatisticSeries,
    delta: f64,
    window: usize,
) -> Result<Option<usize>> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::InvalidArgument("delta must be positive"));
    }
    if window == 0 {
        return Err(Error::InvalidArgument("window must be at least 1"));
    }
    let values = series.values();
    if values.len() < window + 1 {
        return Ok(None);
    }
    let mut run = 0usize;
    for i in 1..values.len() {
        if mathx::abs(values[i] - values[i - 1]) < delta {
            run += 1;
            if run >= window {
                return Ok(Some(series.epochs()[i]));
            }
        } else {
            run = 0;
        }
    }
    Ok(None)
}
