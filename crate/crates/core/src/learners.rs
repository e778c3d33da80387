//! From-scratch learners backing the baseline metrics: k-means, k-nearest
//! neighbors, softmax regression, and AUC estimation.

use crate::error::{Error, Result};
use crate::geometry::{DistanceMatrix, PointCloud};
use crate::mathx;
use crate::rng::SplitMix64;
use alloc::vec::Vec;

pub const KMEANS_MAX_ITERS: usize = 300;

#[derive(Debug, Clone)]
pub struct KMeansResult {
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<f64>>,
    pub inertia: f64,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest_centroid(p: &[f64], centroids: &[Vec<f64>]) -> (usize, f64) {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(p, centroid);
        if d < best_d {
            best_d = d;
            best = c;
        }
    }
    (best, best_d)
}

/// Lloyd's algorithm from k-means++ seeding, at most [`KMEANS_MAX_ITERS`]
/// iterations or until the assignments stop changing.  Empty clusters are
/// reseeded to the point farthest from its current centroid.
pub fn kmeans(pc: &PointCloud, k: usize, seed: u64) -> Result<KMeansResult> {
    let n = pc.len();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument("k must satisfy 1 <= k <= N"));
    }
    let mut rng = SplitMix64::new(seed);

    // k-means++ seeding: next center drawn with probability proportional to
    // the squared distance to the nearest center chosen so far.
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    centroids.push(pc.point(rng.next_below(n as u64) as usize).to_vec());
    let mut d2: Vec<f64> = (0..n)
        .map(|i| sq_dist(pc.point(i), &centroids[0]))
        .collect();
    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let idx = if total > 0.0 {
            let mut target = rng.next_f64() * total;
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                target -= w;
                if target <= 0.0 {
                    pick = i;
                    break;
                }
            }
            pick
        } else {
            // all points coincide with existing centers
            rng.next_below(n as u64) as usize
        };
        centroids.push(pc.point(idx).to_vec());
        for i in 0..n {
            d2[i] = d2[i].min(sq_dist(pc.point(i), centroids.last().unwrap()));
        }
    }

    let mut assignments: Vec<usize> = (0..n)
        .map(|i| nearest_centroid(pc.point(i), &centroids).0)
        .collect();
    let mut prev_inertia = f64::INFINITY;

    for _ in 0..KMEANS_MAX_ITERS {
        // update step
        let d = pc.dim();
        let mut sums = alloc::vec![alloc::vec![0.0; d]; k];
        let mut counts = alloc::vec![0usize; k];
        for (i, &a) in assignments.iter().enumerate() {
            counts[a] += 1;
            for (s, &x) in sums[a].iter_mut().zip(pc.point(i)) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                for s in sums[c].iter_mut() {
                    *s /= counts[c] as f64;
                }
                centroids[c] = sums[c].clone();
            }
        }
        // reseed empty clusters to the point farthest from its centroid
        for c in 0..k {
            if counts[c] == 0 {
                let far = (0..n)
                    .max_by(|&a, &b| {
                        let da = sq_dist(pc.point(a), &centroids[assignments[a]]);
                        let db = sq_dist(pc.point(b), &centroids[assignments[b]]);
                        da.total_cmp(&db)
                    })
                    .unwrap();
                centroids[c] = pc.point(far).to_vec();
            }
        }

        // assignment step
        let mut changed = false;
        let mut inertia = 0.0;
        for i in 0..n {
            let (c, dist) = nearest_centroid(pc.point(i), &centroids);
            inertia += dist;
            if assignments[i] != c {
                assignments[i] = c;
                changed = true;
            }
        }
        debug_assert!(inertia <= prev_inertia + 1e-9 * (1.0 + prev_inertia.min(1e300)));
        prev_inertia = inertia;
        if !changed {
            break;
        }
    }

    let inertia = (0..n)
        .map(|i| sq_dist(pc.point(i), &centroids[assignments[i]]))
        .sum();
    Ok(KMeansResult {
        assignments,
        centroids,
        inertia,
    })
}

/// Indices of the `k` nearest points to `i`, excluding `i` itself, ties
/// broken by lower index.
pub fn knn_indices(dm: &DistanceMatrix, i: usize, k: usize) -> Result<Vec<usize>> {
    let n = dm.len();
    if i >= n {
        return Err(Error::InvalidArgument("index out of range"));
    }
    if k > n.saturating_sub(1) {
        return Err(Error::InvalidArgument("k must be at most N-1"));
    }
    let mut order: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    order.sort_by(|&a, &b| dm.get(i, a).total_cmp(&dm.get(i, b)).then(a.cmp(&b)));
    order.truncate(k);
    Ok(order)
}

/// Multinomial logistic regression with per-feature standardization fit on
/// the training data.
#[derive(Debug, Clone)]
pub struct SoftmaxModel {
    /// C x d, row-major.
    pub weights: Vec<f64>,
    pub bias: Vec<f64>,
    pub classes: usize,
    pub dim: usize,
    feat_mean: Vec<f64>,
    feat_std: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct FitConfig {
    pub lr: f64,
    pub epochs: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            lr: 0.1,
            epochs: 300,
        }
    }
}

fn softmax_row(logits: &mut [f64]) {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for l in logits.iter_mut() {
        *l = mathx::exp(*l - max);
        sum += *l;
    }
    for l in logits.iter_mut() {
        *l /= sum;
    }
}

/// Mean cross-entropy and its gradient for a softmax linear model on
/// already-standardized inputs.  Exposed so tests can check the analytic
/// gradient against finite differences.
pub fn softmax_loss_grad(
    weights: &[f64],
    bias: &[f64],
    x: &[f64],
    labels: &[usize],
    classes: usize,
    dim: usize,
) -> (f64, Vec<f64>, Vec<f64>) {
    let n = labels.len();
    let mut loss = 0.0;
    let mut grad_w = alloc::vec![0.0; classes * dim];
    let mut grad_b = alloc::vec![0.0; classes];
    let mut probs = alloc::vec![0.0; classes];
    for (i, &y) in labels.iter().enumerate() {
        let row = &x[i * dim..(i + 1) * dim];
        for c in 0..classes {
            let w = &weights[c * dim..(c + 1) * dim];
            probs[c] = bias[c] + w.iter().zip(row).map(|(a, b)| a * b).sum::<f64>();
        }
        softmax_row(&mut probs);
        loss -= mathx::ln(probs[y].max(1e-300));
        for c in 0..classes {
            let err = probs[c] - if c == y { 1.0 } else { 0.0 };
            grad_b[c] += err;
            for (g, &xv) in grad_w[c * dim..(c + 1) * dim].iter_mut().zip(row) {
                *g += err * xv;
            }
        }
    }
    let inv_n = 1.0 / n as f64;
    for g in grad_w.iter_mut() {
        *g *= inv_n;
    }
    for g in grad_b.iter_mut() {
        *g *= inv_n;
    }
    (loss * inv_n, grad_w, grad_b)
}

/// Full-batch gradient descent on cross-entropy, weights initialized to
/// zero.  The seed is reserved for an optional minibatch mode and does not
/// affect the default full-batch path.
pub fn softmax_fit(pc: &PointCloud, lr: f64, epochs: usize, _seed: u64) -> Result<SoftmaxModel> {
    let labels = pc.labels().ok_or(Error::MissingLabels)?;
    let classes = pc.num_classes().unwrap();
    if classes < 2 {
        return Err(Error::DegenerateLabels);
    }
    let n = pc.len();
    let dim = pc.dim();

    // per-feature standardization, constant features left untouched
    let mut mean = alloc::vec![0.0; dim];
    for p in pc.points() {
        for (m, &x) in mean.iter_mut().zip(p) {
            *m += x;
        }
    }
    for m in mean.iter_mut() {
        *m /= n as f64;
    }
    let mut std = alloc::vec![0.0; dim];
    for p in pc.points() {
        for (s, (&x, &m)) in std.iter_mut().zip(p.iter().zip(&mean)) {
            *s += (x - m) * (x - m);
        }
    }
    for s in std.iter_mut() {
        *s = mathx::sqrt(*s / n as f64);
        if *s == 0.0 {
            *s = 1.0;
        }
    }

    let mut x = alloc::vec![0.0; n * dim];
    for (i, p) in pc.points().enumerate() {
        for j in 0..dim {
            x[i * dim + j] = (p[j] - mean[j]) / std[j];
        }
    }

    let mut weights = alloc::vec![0.0; classes * dim];
    let mut bias = alloc::vec![0.0; classes];
    for _ in 0..epochs {
        let (_, grad_w, grad_b) = softmax_loss_grad(&weights, &bias, &x, labels, classes, dim);
        for (w, g) in weights.iter_mut().zip(&grad_w) {
            *w -= lr * g;
        }
        for (b, g) in bias.iter_mut().zip(&grad_b) {
            *b -= lr * g;
        }
    }

    Ok(SoftmaxModel {
        weights,
        bias,
        classes,
        dim,
        feat_mean: mean,
        feat_std: std,
    })
}

impl SoftmaxModel {
    /// Class probabilities, one row per point; rows sum to 1.
    pub fn predict_proba(&self, pc: &PointCloud) -> Result<Vec<Vec<f64>>> {
        if pc.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: pc.dim(),
            });
        }
        let mut out = Vec::with_capacity(pc.len());
        for p in pc.points() {
            let mut logits = alloc::vec![0.0; self.classes];
            for c in 0..self.classes {
                let w = &self.weights[c * self.dim..(c + 1) * self.dim];
                logits[c] = self.bias[c]
                    + w.iter()
                        .enumerate()
                        .map(|(j, &wj)| wj * (p[j] - self.feat_mean[j]) / self.feat_std[j])
                        .sum::<f64>();
            }
            softmax_row(&mut logits);
            out.push(logits);
        }
        Ok(out)
    }
}

/// Mann-Whitney AUC estimate: ordered pairs get full credit, ties half.
pub fn auc_binary(scores: &[f64], labels: &[bool]) -> Result<f64> {
    if scores.len() != labels.len() {
        return Err(Error::InvalidArgument("scores and labels must align"));
    }
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos == 0 || neg == 0 {
        return Err(Error::DegenerateLabels);
    }

    // rank-sum formulation with average ranks over ties
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j < order.len() && scores[order[j]] == scores[order[i]] {
            j += 1;
        }
        let avg_rank = (i + j + 1) as f64 / 2.0; // 1-based ranks i+1..=j
        for &idx in &order[i..j] {
            if labels[idx] {
                rank_sum_pos += avg_rank;
            }
        }
        i = j;
    }
    let u = rank_sum_pos - (pos * (pos + 1)) as f64 / 2.0;
    Ok(u / (pos * neg) as f64)
}

/// Hand-and-Till one-vs-one multi-class AUC: the mean over unordered class
/// pairs (i, j) of (A(i|j) + A(j|i)) / 2, where A(i|j) scores the points of
/// classes i and j by the predicted probability of class i.
pub fn auc_ovo(probabilities: &[Vec<f64>], labels: &[usize]) -> Result<f64> {
    if probabilities.len() != labels.len() {
        return Err(Error::InvalidArgument(
            "probabilities and labels must align",
        ));
    }
    if probabilities.is_empty() {
        return Err(Error::EmptyInput);
    }
    let classes = probabilities[0].len();
    if classes < 2 {
        return Err(Error::DegenerateLabels);
    }
    for c in 0..classes {
        if !labels.contains(&c) {
            return Err(Error::DegenerateLabels);
        }
    }

    let mut total = 0.0;
    let mut pairs = 0usize;
    for i in 0..classes {
        for j in (i + 1)..classes {
            let subset: Vec<usize> = (0..labels.len())
                .filter(|&p| labels[p] == i || labels[p] == j)
                .collect();
            let auc_dir = |pos_class: usize| -> Result<f64> {
                let scores: Vec<f64> = subset
                    .iter()
                    .map(|&p| probabilities[p][pos_class])
                    .collect();
                let is_pos: Vec<bool> = subset.iter().map(|&p| labels[p] == pos_class).collect();
                auc_binary(&scores, &is_pos)
            };
            total += 0.5 * (auc_dir(i)? + auc_dir(j)?);
            pairs += 1;
        }
    }
    Ok(total / pairs as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::pairwise_distances;

    fn labeled(points: &[(&[f64], usize)]) -> PointCloud {
        let dim = points[0].0.len();
        let mut data = Vec::new();
        let mut labels = Vec::new();
        for (p, l) in points {
            data.extend_from_slice(p);
            labels.push(*l);
        }
        PointCloud::with_labels(data, dim, labels).unwrap()
    }

    #[test]
    fn kmeans_k_equals_n_has_zero_inertia() {
        let pc = PointCloud::from_points(&[&[0.0], &[1.0], &[5.0]]).unwrap();
        let r = kmeans(&pc, 3, 0).unwrap();
        assert!(r.inertia < 1e-12);
        let mut ids = r.assignments.clone();
        ids.sort_unstable();
        assert_eq!(ids, alloc::vec![0, 1, 2]);
    }

    #[test]
    fn kmeans_recovers_two_far_blobs() {
        let mut rng = SplitMix64::new(4);
        let mut data = Vec::new();
        let mut truth = Vec::new();
        for _ in 0..5 {
            data.push(rng.next_f64());
            data.push(rng.next_f64());
            truth.push(0);
        }
        for _ in 0..5 {
            data.push(100.0 + rng.next_f64());
            data.push(rng.next_f64());
            truth.push(1);
        }
        let pc = PointCloud::new(data, 2).unwrap();
        let r = kmeans(&pc, 2, 0).unwrap();
        let flip = r.assignments[0] != truth[0];
        for (a, t) in r.assignments.iter().zip(&truth) {
            let a = if flip { 1 - a } else { *a };
            assert_eq!(a, *t);
        }
    }

    #[test]
    fn kmeans_k1_is_mean_and_variance() {
        let pc = PointCloud::from_points(&[&[0.0], &[2.0], &[4.0]]).unwrap();
        let r = kmeans(&pc, 1, 0).unwrap();
        assert!((r.centroids[0][0] - 2.0).abs() < 1e-12);
        assert!((r.inertia - 8.0).abs() < 1e-12); // 4 + 0 + 4
    }

    #[test]
    fn kmeans_inertia_matches_recomputation() {
        let mut rng = SplitMix64::new(12);
        let data: Vec<f64> = (0..200).map(|_| rng.next_f64() * 4.0).collect();
        let pc = PointCloud::new(data, 2).unwrap();
        let r = kmeans(&pc, 5, 3).unwrap();
        let recomputed: f64 = (0..pc.len())
            .map(|i| sq_dist(pc.point(i), &r.centroids[r.assignments[i]]))
            .sum();
        assert!((r.inertia - recomputed).abs() <= 1e-6 * recomputed.max(1.0));
    }

    #[test]
    fn kmeans_rejects_k_above_n() {
        let pc = PointCloud::from_points(&[&[0.0]]).unwrap();
        assert!(kmeans(&pc, 2, 0).is_err());
    }

    #[test]
    fn knn_line_and_ties() {
        let pc = PointCloud::from_points(&[&[0.0], &[1.0], &[3.0]]).unwrap();
        let dm = pairwise_distances(&pc).unwrap();
        assert_eq!(knn_indices(&dm, 0, 1).unwrap(), alloc::vec![1]);
        assert_eq!(knn_indices(&dm, 0, 2).unwrap(), alloc::vec![1, 2]);

        // exact tie: points 1 and 2 both at distance 1 from point 0
        let tri = PointCloud::from_points(&[&[0.0, 0.0], &[1.0, 0.0], &[0.0, 1.0]]).unwrap();
        let dm = pairwise_distances(&tri).unwrap();
        assert_eq!(knn_indices(&dm, 0, 1).unwrap(), alloc::vec![1]);
    }

    #[test]
    fn knn_matches_full_sort_oracle() {
        let mut rng = SplitMix64::new(8);
        let data: Vec<f64> = (0..60).map(|_| rng.next_f64()).collect();
        let pc = PointCloud::new(data, 3).unwrap();
        let dm = pairwise_distances(&pc).unwrap();
        for i in 0..pc.len() {
            let mut all: Vec<usize> = (0..pc.len()).filter(|&j| j != i).collect();
            all.sort_by(|&a, &b| dm.get(i, a).total_cmp(&dm.get(i, b)).then(a.cmp(&b)));
            for k in 1..pc.len() {
                assert_eq!(knn_indices(&dm, i, k).unwrap(), all[..k]);
            }
        }
    }

    #[test]
    fn softmax_zero_epochs_is_uniform() {
        let pc = labeled(&[(&[0.0], 0), (&[1.0], 1), (&[2.0], 2)]);
        let model = softmax_fit(&pc, 0.1, 0, 0).unwrap();
        for row in model.predict_proba(&pc).unwrap() {
            for p in row {
                assert!((p - 1.0 / 3.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn softmax_separable_reaches_perfect_auc() {
        let pc = labeled(&[
            (&[0.0], 0),
            (&[0.5], 0),
            (&[1.0], 0),
            (&[5.0], 1),
            (&[5.5], 1),
            (&[6.0], 1),
        ]);
        let model = softmax_fit(&pc, 0.1, 500, 0).unwrap();
        let probs = model.predict_proba(&pc).unwrap();
        let scores: Vec<f64> = probs.iter().map(|r| r[1]).collect();
        let labels: Vec<bool> = pc.labels().unwrap().iter().map(|&l| l == 1).collect();
        assert_eq!(auc_binary(&scores, &labels).unwrap(), 1.0);
    }

    #[test]
    fn softmax_rejects_single_class() {
        let pc = labeled(&[(&[0.0], 0), (&[1.0], 0)]);
        assert_eq!(
            softmax_fit(&pc, 0.1, 10, 0).unwrap_err(),
            Error::DegenerateLabels
        );
    }

    #[test]
    fn softmax_gradient_matches_finite_differences() {
        let mut rng = SplitMix64::new(6);
        let (n, dim, classes) = (7, 3, 3);
        let x: Vec<f64> = (0..n * dim).map(|_| rng.next_standard_normal()).collect();
        let labels: Vec<usize> = (0..n)
            .map(|_| rng.next_below(classes as u64) as usize)
            .collect();
        let mut w: Vec<f64> = (0..classes * dim)
            .map(|_| rng.next_standard_normal() * 0.3)
            .collect();
        let mut b: Vec<f64> = (0..classes)
            .map(|_| rng.next_standard_normal() * 0.3)
            .collect();

        let (_, gw, gb) = softmax_loss_grad(&w, &b, &x, &labels, classes, dim);
        let h = 1e-5;
        for idx in 0..w.len() {
            let orig = w[idx];
            w[idx] = orig + h;
            let (lp, _, _) = softmax_loss_grad(&w, &b, &x, &labels, classes, dim);
            w[idx] = orig - h;
            let (lm, _, _) = softmax_loss_grad(&w, &b, &x, &labels, classes, dim);
            w[idx] = orig;
            assert!(((lp - lm) / (2.0 * h) - gw[idx]).abs() < 1e-6);
        }
        for idx in 0..b.len() {
            let orig = b[idx];
            b[idx] = orig + h;
            let (lp, _, _) = softmax_loss_grad(&w, &b, &x, &labels, classes, dim);
            b[idx] = orig - h;
            let (lm, _, _) = softmax_loss_grad(&w, &b, &x, &labels, classes, dim);
            b[idx] = orig;
            assert!(((lp - lm) / (2.0 * h) - gb[idx]).abs() < 1e-6);
        }
    }

    #[test]
    fn softmax_loss_nonincreasing() {
        let mut rng = SplitMix64::new(9);
        let mut data = Vec::new();
        let mut labels = Vec::new();
        for i in 0..40 {
            let c = i % 2;
            data.push(c as f64 * 2.0 + rng.next_standard_normal());
            data.push(rng.next_standard_normal());
            labels.push(c);
        }
        let pc = PointCloud::with_labels(data, 2, labels.clone()).unwrap();
        // re-run fit epoch by epoch and watch the loss through the public grad fn
        let mut prev = f64::INFINITY;
        for epochs in 0..30 {
            let m = softmax_fit(&pc, 0.1, epochs, 0).unwrap();
            let probs = m.predict_proba(&pc).unwrap();
            let loss: f64 = labels
                .iter()
                .enumerate()
                .map(|(i, &y)| -mathx::ln(probs[i][y]))
                .sum::<f64>()
                / labels.len() as f64;
            assert!(
                loss <= prev + 1e-12,
                "loss rose at {epochs}: {loss} > {prev}"
            );
            prev = loss;
        }
    }

    #[test]
    fn auc_textbook_example() {
        let auc = auc_binary(&[0.1, 0.4, 0.35, 0.8], &[false, false, true, true]).unwrap();
        assert_eq!(auc, 0.75);
    }

    #[test]
    fn auc_perfect_and_ties() {
        assert_eq!(
            auc_binary(&[1.0, 2.0, 3.0, 4.0], &[false, false, true, true]).unwrap(),
            1.0
        );
        assert_eq!(
            auc_binary(&[0.5, 0.5, 0.5, 0.5], &[false, true, false, true]).unwrap(),
            0.5
        );
    }

    #[test]
    fn auc_matches_pair_counting_oracle() {
        let mut rng = SplitMix64::new(14);
        for _ in 0..100 {
            let n = 4 + rng.next_below(40) as usize;
            // quantized scores to force ties
            let scores: Vec<f64> = (0..n)
                .map(|_| (rng.next_f64() * 8.0) as u32 as f64)
                .collect();
            let mut labels: Vec<bool> = (0..n).map(|_| rng.next_f64() < 0.5).collect();
            labels[0] = true;
            labels[1] = false;
            let expected = {
                let mut num = 0.0;
                let mut pairs = 0.0;
                for i in 0..n {
                    for j in 0..n {
                        if labels[i] && !labels[j] {
                            pairs += 1.0;
                            if scores[i] > scores[j] {
                                num += 1.0;
                            } else if scores[i] == scores[j] {
                                num += 0.5;
                            }
                        }
                    }
                }
                num / pairs
            };
            let got = auc_binary(&scores, &labels).unwrap();
            assert!((got - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn auc_flip_complements_to_one() {
        let mut rng = SplitMix64::new(15);
        let n = 50;
        let scores: Vec<f64> = (0..n).map(|_| rng.next_f64()).collect();
        let mut labels: Vec<bool> = (0..n).map(|_| rng.next_f64() < 0.5).collect();
        labels[0] = true;
        labels[1] = false;
        let flipped: Vec<bool> = labels.iter().map(|l| !l).collect();
        let a = auc_binary(&scores, &labels).unwrap();
        let b = auc_binary(&scores, &flipped).unwrap();
        assert!((a + b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn auc_invariant_under_monotone_transform() {
        let mut rng = SplitMix64::new(16);
        let scores: Vec<f64> = (0..30).map(|_| rng.next_f64()).collect();
        let mut labels: Vec<bool> = (0..30).map(|_| rng.next_f64() < 0.5).collect();
        labels[0] = true;
        labels[1] = false;
        let transformed: Vec<f64> = scores.iter().map(|s| mathx::exp(3.0 * s) + 1.0).collect();
        assert_eq!(
            auc_binary(&scores, &labels).unwrap(),
            auc_binary(&transformed, &labels).unwrap()
        );
    }

    #[test]
    fn ovo_collapses_to_binary_for_two_classes() {
        let mut rng = SplitMix64::new(17);
        let n = 40;
        let labels: Vec<usize> = (0..n).map(|i| i % 2).collect();
        let probs: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let p = rng.next_f64();
                alloc::vec![1.0 - p, p]
            })
            .collect();
        let scores: Vec<f64> = probs.iter().map(|r| r[1]).collect();
        let is_pos: Vec<bool> = labels.iter().map(|&l| l == 1).collect();
        let binary = auc_binary(&scores, &is_pos).unwrap();
        let ovo = auc_ovo(&probs, &labels).unwrap();
        assert!((binary - ovo).abs() < 1e-12);
    }

    #[test]
    fn ovo_perfectly_separated_three_classes() {
        let mut probs = Vec::new();
        let mut labels = Vec::new();
        for c in 0..3usize {
            for _ in 0..4 {
                let mut row = alloc::vec![0.05; 3];
                row[c] = 0.9;
                probs.push(row);
                labels.push(c);
            }
        }
        assert_eq!(auc_ovo(&probs, &labels).unwrap(), 1.0);
    }

    #[test]
    fn ovo_permutation_null_is_near_half() {
        let mut rng = SplitMix64::new(18);
        let n = 2000;
        let labels: Vec<usize> = (0..n).map(|_| rng.next_below(3) as usize).collect();
        let probs: Vec<Vec<f64>> = (0..n)
            .map(|_| {
                let a = rng.next_f64();
                let b = rng.next_f64() * (1.0 - a);
                alloc::vec![a, b, 1.0 - a - b]
            })
            .collect();
        let auc = auc_ovo(&probs, &labels).unwrap();
        assert!((auc - 0.5).abs() < 0.05, "auc {auc}");
    }

    #[test]
    fn ovo_missing_class_is_an_error() {
        let probs = alloc::vec![alloc::vec![0.5, 0.3, 0.2], alloc::vec![0.1, 0.8, 0.1]];
        assert!(auc_ovo(&probs, &[0, 1]).is_err());
    }
}
