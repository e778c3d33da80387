//! Baseline separability measures and the cross-metric normalization used
//! when plotting metric trajectories side by side.

use crate::error::{Error, Result};
use crate::geometry::{pairwise_distances, PointCloud};
use crate::learners::{auc_binary, auc_ovo, kmeans, knn_indices, softmax_fit, FitConfig};
use crate::mathx;
use crate::rng::SplitMix64;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub name: String,
    pub value: f64,
    pub ci_low: Option<f64>,
    pub ci_high: Option<f64>,
    pub epoch: Option<usize>,
}

/// How the Thornton index aggregates neighbor agreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThorntonEstimator {
    /// Mean per-neighbor agreement: each of the k neighbors contributes 1/(N*k).
    PerNeighborMean,
    /// A point counts only when all k neighbors share its label.
    AllNeighborsAgree,
}

/// Probability that a point's label matches its k nearest neighbors'.
pub fn thornton_index(pc: &PointCloud, k: usize) -> Result<f64> {
    thornton_index_with(pc, k, ThorntonEstimator::PerNeighborMean)
}

pub fn thornton_index_with(pc: &PointCloud, k: usize, estimator: ThorntonEstimator) -> Result<f64> {
    let labels = pc.labels().ok_or(Error::MissingLabels)?;
    let dm = pairwise_distances(pc)?;
    let n = pc.len();
    if k > n.saturating_sub(1) {
        return Err(Error::InvalidArgument("k must be at most N-1"));
    }
    let mut total = 0.0;
    for i in 0..n {
        let neighbors = knn_indices(&dm, i, k)?;
        let same = neighbors
            .iter()
            .filter(|&&j| labels[j] == labels[i])
            .count();
        total += match estimator {
            ThorntonEstimator::PerNeighborMean => same as f64 / k as f64,
            ThorntonEstimator::AllNeighborsAgree => {
                if same == k {
                    1.0
                } else {
                    0.0
                }
            }
        };
    }
    Ok(total / n as f64)
}

/// Calinski-Harabasz index over k-means assignments (label-free).
/// Returns `f64::INFINITY` when the within-cluster dispersion is exactly
/// zero, the defined marker for degenerate "infinite separability".
pub fn calinski_harabasz(pc: &PointCloud, k: usize, seed: u64) -> Result<f64> {
    let n = pc.len();
    if k < 2 {
        return Err(Error::InvalidArgument("k must be at least 2"));
    }
    if n <= k {
        return Err(Error::InvalidArgument("N must exceed k"));
    }
    let km = kmeans(pc, k, seed)?;
    let d = pc.dim();

    let mut global_mean = alloc::vec![0.0; d];
    for p in pc.points() {
        for (g, &x) in global_mean.iter_mut().zip(p) {
            *g += x;
        }
    }
    for g in global_mean.iter_mut() {
        *g /= n as f64;
    }

    let mut counts = alloc::vec![0usize; k];
    for &a in &km.assignments {
        counts[a] += 1;
    }

    let ss_w = km.inertia;
    let mut ss_b = 0.0;
    for c in 0..k {
        if counts[c] == 0 {
            continue;
        }
        let sep: f64 = km.centroids[c]
            .iter()
            .zip(&global_mean)
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        ss_b += counts[c] as f64 * sep;
    }

    if ss_w == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((ss_b / (k - 1) as f64) / (ss_w / (n - k) as f64))
}

/// Two-sided 97.5% Student-t quantiles for df 1..=30; beyond that the
/// normal approximation is close enough.
const T_975: [f64; 30] = [
    12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228, 2.201, 2.179, 2.160,
    2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064, 2.060, 2.056,
    2.052, 2.048, 2.045, 2.042,
];

fn t_quantile_975(df: usize) -> f64 {
    if df == 0 {
        return f64::INFINITY;
    }
    T_975.get(df - 1).copied().unwrap_or(1.96)
}

/// Stratified fold ids, one per point, deterministic in the seed.
fn stratified_folds(labels: &[usize], folds: usize, seed: u64) -> Result<Vec<usize>> {
    let classes = labels.iter().max().map_or(0, |m| m + 1);
    let mut fold_of = alloc::vec![0usize; labels.len()];
    let rng = SplitMix64::new(seed);
    for c in 0..classes {
        let mut members: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == c).collect();
        if members.len() < folds {
            return Err(Error::CannotStratify {
                class: c,
                count: members.len(),
                folds,
            });
        }
        let mut class_rng = rng.fork(c as u64);
        class_rng.shuffle(&mut members);
        for (pos, &i) in members.iter().enumerate() {
            fold_of[i] = pos % folds;
        }
    }
    Ok(fold_of)
}

/// ROC-AUC estimated by stratified n-fold cross-validation of a softmax
/// classifier: mean over fold AUCs with a 95% Student-t confidence interval.
/// Binary labels use the positive-class probability; three or more classes
/// use the one-vs-one average.
pub fn roc_auc_n(pc: &PointCloud, n: usize, seed: u64, fit: FitConfig) -> Result<MetricReport> {
    let labels = pc.labels().ok_or(Error::MissingLabels)?;
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two folds"));
    }
    let classes = pc.num_classes().unwrap();
    if classes < 2 {
        return Err(Error::DegenerateLabels);
    }
    let fold_of = stratified_folds(labels, n, seed)?;

    let mut fold_aucs = Vec::with_capacity(n);
    for fold in 0..n {
        let train_idx: Vec<usize> = (0..pc.len()).filter(|&i| fold_of[i] != fold).collect();
        let test_idx: Vec<usize> = (0..pc.len()).filter(|&i| fold_of[i] == fold).collect();
        let train = pc.select(&train_idx);
        let test = pc.select(&test_idx);
        let model = softmax_fit(&train, fit.lr, fit.epochs, seed)?;
        let probs = model.predict_proba(&test)?;
        let test_labels = test.labels().unwrap();
        let auc = if classes == 2 {
            let scores: Vec<f64> = probs.iter().map(|r| r[1]).collect();
            let is_pos: Vec<bool> = test_labels.iter().map(|&l| l == 1).collect();
            auc_binary(&scores, &is_pos)?
        } else {
            auc_ovo(&probs, test_labels)?
        };
        fold_aucs.push(auc);
    }

    let mean = fold_aucs.iter().sum::<f64>() / n as f64;
    let var = fold_aucs
        .iter()
        .map(|a| (a - mean) * (a - mean))
        .sum::<f64>()
        / (n - 1) as f64;
    let half_width = t_quantile_975(n - 1) * mathx::sqrt(var / n as f64);
    Ok(MetricReport {
        name: String::from("roc_auc_n"),
        value: mean,
        ci_low: Some(mean - half_width),
        ci_high: Some(mean + half_width),
        epoch: None,
    })
}

/// Divides a trajectory by its maximum so the peak is exactly 1.
pub fn normalize_series(values: &[f64]) -> Result<Vec<f64>> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidArgument(
            "series must be finite and nonnegative",
        ));
    }
    let max = values.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return Err(Error::CannotNormalize);
    }
    Ok(values.iter().map(|v| v / max).collect())
}
