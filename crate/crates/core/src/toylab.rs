//! Self-contained reproduction of the two-hidden-layer toy classifier:
//! manual forward/backward passes, optional LayerNorm after the second
//! hidden layer, full-batch Adam on cross-entropy, and per-epoch capture of
//! the second-hidden-layer embeddings of a tracking set.

use crate::error::{Error, Result};
use crate::geometry::PointCloud;
use crate::learners::auc_binary;
use crate::mathx;
use crate::rng::SplitMix64;
use alloc::vec::Vec;

pub const OUTPUT_CLASSES: usize = 2;

#[derive(Debug, Clone, PartialEq)]
pub struct ToyNetConfig {
    pub input_dim: usize,
    pub hidden1: usize,
    pub hidden2: usize,
    pub use_layer_norm: bool,
    pub seed: u64,
}

impl ToyNetConfig {
    pub fn new(input_dim: usize, use_layer_norm: bool, seed: u64) -> Self {
        Self {
            input_dim,
            hidden1: 20,
            hidden2: 5,
            use_layer_norm,
            seed,
        }
    }
}

/// Standard LayerNorm with population (1/d) variance.
pub fn layer_norm(v: &[f64], gain: &[f64], offset: &[f64], eps: f64) -> Vec<f64> {
    let d = v.len() as f64;
    let mean = v.iter().sum::<f64>() / d;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / d;
    let inv = 1.0 / mathx::sqrt(var + eps);
    v.iter()
        .zip(gain.iter().zip(offset))
        .map(|(&x, (&g, &o))| (x - mean) * inv * g + o)
        .collect()
}

const LN_EPS: f64 = 1e-5;

/// The toy network, parameters stored in one flat vector:
/// w1, b1, w2, b2, w3, b3, then LayerNorm gain and offset when enabled.
/// Weight matrices are row-major with one row per output unit.
#[derive(Debug, Clone, PartialEq)]
pub struct ToyNet {
    pub cfg: ToyNetConfig,
    pub params: Vec<f64>,
}

struct Layout {
    w1: usize,
    b1: usize,
    w2: usize,
    b2: usize,
    w3: usize,
    b3: usize,
    gain: usize,
    offset: usize,
    total: usize,
}

impl ToyNetConfig {
    fn layout(&self) -> Layout {
        let (i, h1, h2) = (self.input_dim, self.hidden1, self.hidden2);
        let w1 = 0;
        let b1 = w1 + h1 * i;
        let w2 = b1 + h1;
        let b2 = w2 + h2 * h1;
        let w3 = b2 + h2;
        let b3 = w3 + OUTPUT_CLASSES * h2;
        let gain = b3 + OUTPUT_CLASSES;
        let offset = gain + if self.use_layer_norm { h2 } else { 0 };
        let total = offset + if self.use_layer_norm { h2 } else { 0 };
        Layout {
            w1,
            b1,
            w2,
            b2,
            w3,
            b3,
            gain,
            offset,
            total,
        }
    }
}

impl ToyNet {
    /// Seed-deterministic init: each layer's weights and biases uniform in
    /// +-1/sqrt(fan_in); LayerNorm gain 1, offset 0.
    pub fn new(cfg: ToyNetConfig) -> Result<Self> {
        if cfg.input_dim == 0 || cfg.hidden1 == 0 || cfg.hidden2 == 0 {
            return Err(Error::InvalidArgument("all dimensions must be at least 1"));
        }
        let layout = cfg.layout();
        let mut rng = SplitMix64::new(cfg.seed);
        let mut params = alloc::vec![0.0; layout.total];
        init_uniform(&mut params, layout.w1..layout.w2, cfg.input_dim, &mut rng);
        init_uniform(&mut params, layout.w2..layout.w3, cfg.hidden1, &mut rng);
        init_uniform(&mut params, layout.w3..layout.gain, cfg.hidden2, &mut rng);
        if cfg.use_layer_norm {
            for p in &mut params[layout.gain..layout.offset] {
                *p = 1.0;
            }
        }
        Ok(Self { cfg, params })
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    fn slices(&self) -> NetSlices<'_> {
        NetSlices::new(&self.cfg, &self.params)
    }

    /// Forward pass to class probabilities, one row per point.
    pub fn forward(&self, pc: &PointCloud) -> Result<Vec<[f64; 2]>> {
        if pc.dim() != self.cfg.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.cfg.input_dim,
                got: pc.dim(),
            });
        }
        let s = self.slices();
        Ok(pc.points().map(|x| s.forward_probs(x)).collect())
    }

    /// Second-hidden-layer embeddings (post-ReLU, post-LayerNorm when
    /// enabled); labels carried through.
    pub fn encode(&self, pc: &PointCloud) -> Result<PointCloud> {
        if pc.dim() != self.cfg.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.cfg.input_dim,
                got: pc.dim(),
            });
        }
        let s = self.slices();
        let mut data = Vec::with_capacity(pc.len() * self.cfg.hidden2);
        for x in pc.points() {
            data.extend_from_slice(&s.embed(x));
        }
        match pc.labels() {
            Some(ls) => PointCloud::with_labels(data, self.cfg.hidden2, ls.to_vec()),
            None => PointCloud::new(data, self.cfg.hidden2),
        }
    }
}

fn init_uniform(
    params: &mut [f64],
    range: core::ops::Range<usize>,
    fan_in: usize,
    rng: &mut SplitMix64,
) {
    let bound = 1.0 / mathx::sqrt(fan_in as f64);
    for p in &mut params[range] {
        *p = (rng.next_f64() * 2.0 - 1.0) * bound;
    }
}

/// Borrowed views of the parameter vector.
struct NetSlices<'a> {
    cfg: &'a ToyNetConfig,
    w1: &'a [f64],
    b1: &'a [f64],
    w2: &'a [f64],
    b2: &'a [f64],
    w3: &'a [f64],
    b3: &'a [f64],
    gain: &'a [f64],
    offset: &'a [f64],
}

impl<'a> NetSlices<'a> {
    fn new(cfg: &'a ToyNetConfig, params: &'a [f64]) -> Self {
        let l = cfg.layout();
        Self {
            cfg,
            w1: &params[l.w1..l.b1],
            b1: &params[l.b1..l.w2],
            w2: &params[l.w2..l.b2],
            b2: &params[l.b2..l.w3],
            w3: &params[l.w3..l.b3],
            b3: &params[l.b3..l.gain],
            gain: &params[l.gain..l.offset],
            offset: &params[l.offset..],
        }
    }

    fn affine(w: &[f64], b: &[f64], x: &[f64], out: &mut [f64]) {
        let d = x.len();
        for (u, o) in out.iter_mut().enumerate() {
            let row = &w[u * d..(u + 1) * d];
            *o = b[u] + row.iter().zip(x).map(|(a, v)| a * v).sum::<f64>();
        }
    }

    fn hidden(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let mut a1 = alloc::vec![0.0; self.cfg.hidden1];
        Self::affine(self.w1, self.b1, x, &mut a1);
        let h1: Vec<f64> = a1.iter().map(|&v| v.max(0.0)).collect();
        let mut a2 = alloc::vec![0.0; self.cfg.hidden2];
        Self::affine(self.w2, self.b2, &h1, &mut a2);
        (h1, a2)
    }

    /// Embedding of one point: ReLU(a2), LayerNorm when enabled.
    fn embed(&self, x: &[f64]) -> Vec<f64> {
        let (_, a2) = self.hidden(x);
        let h2: Vec<f64> = a2.iter().map(|&v| v.max(0.0)).collect();
        if self.cfg.use_layer_norm {
            layer_norm(&h2, self.gain, self.offset, LN_EPS)
        } else {
            h2
        }
    }

    fn forward_probs(&self, x: &[f64]) -> [f64; 2] {
        let z = self.embed(x);
        let mut logits = [0.0; 2];
        Self::affine(self.w3, self.b3, &z, &mut logits);
        let max = logits[0].max(logits[1]);
        let e0 = mathx::exp(logits[0] - max);
        let e1 = mathx::exp(logits[1] - max);
        [e0 / (e0 + e1), e1 / (e0 + e1)]
    }
}

/// Mean cross-entropy over a labeled batch and its gradient with respect to
/// the flat parameter vector.  Public so the analytic backward pass can be
/// checked against central finite differences.
pub fn toy_loss_grad(net: &ToyNet, batch: &PointCloud) -> Result<(f64, Vec<f64>)> {
    let labels = batch.labels().ok_or(Error::MissingLabels)?;
    if batch.dim() != net.cfg.input_dim {
        return Err(Error::DimensionMismatch {
            expected: net.cfg.input_dim,
            got: batch.dim(),
        });
    }
    if labels.iter().any(|&l| l >= OUTPUT_CLASSES) {
        return Err(Error::InvalidArgument("toy labels must be 0 or 1"));
    }
    let cfg = &net.cfg;
    let l = cfg.layout();
    let s = net.slices();
    let (h1n, h2n) = (cfg.hidden1, cfg.hidden2);

    let mut grad = alloc::vec![0.0; net.params.len()];
    let mut loss = 0.0;
    let n = batch.len() as f64;

    for (x, &y) in batch.points().zip(labels) {
        let (h1, a2) = s.hidden(x);
        let h2: Vec<f64> = a2.iter().map(|&v| v.max(0.0)).collect();

        // LayerNorm intermediates for the backward pass
        let (z, xhat, inv_std) = if cfg.use_layer_norm {
            let d = h2n as f64;
            let mean = h2.iter().sum::<f64>() / d;
            let var = h2.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / d;
            let inv = 1.0 / mathx::sqrt(var + LN_EPS);
            let xhat: Vec<f64> = h2.iter().map(|v| (v - mean) * inv).collect();
            let z: Vec<f64> = xhat
                .iter()
                .zip(s.gain.iter().zip(s.offset))
                .map(|(&xh, (&g, &o))| xh * g + o)
                .collect();
            (z, xhat, inv)
        } else {
            (h2.clone(), Vec::new(), 0.0)
        };

        let mut logits = [0.0; 2];
        NetSlices::affine(s.w3, s.b3, &z, &mut logits);
        let max = logits[0].max(logits[1]);
        let e0 = mathx::exp(logits[0] - max);
        let e1 = mathx::exp(logits[1] - max);
        let probs = [e0 / (e0 + e1), e1 / (e0 + e1)];
        loss -= mathx::ln(probs[y].max(1e-300));

        // dL/dlogits = probs - onehot(y), for a single sample
        let dlogits = [
            probs[0] - if y == 0 { 1.0 } else { 0.0 },
            probs[1] - if y == 1 { 1.0 } else { 0.0 },
        ];
        let mut dz = alloc::vec![0.0; h2n];
        for u in 0..OUTPUT_CLASSES {
            grad[l.b3 + u] += dlogits[u];
            for j in 0..h2n {
                grad[l.w3 + u * h2n + j] += dlogits[u] * z[j];
                dz[j] += dlogits[u] * s.w3[u * h2n + j];
            }
        }

        let dh2: Vec<f64> = if cfg.use_layer_norm {
            let d = h2n as f64;
            let mut dxhat = alloc::vec![0.0; h2n];
            for j in 0..h2n {
                grad[l.gain + j] += dz[j] * xhat[j];
                grad[l.offset + j] += dz[j];
                dxhat[j] = dz[j] * s.gain[j];
            }
            let mean_dxhat = dxhat.iter().sum::<f64>() / d;
            let mean_dxhat_xhat = dxhat.iter().zip(&xhat).map(|(a, b)| a * b).sum::<f64>() / d;
            (0..h2n)
                .map(|j| inv_std * (dxhat[j] - mean_dxhat - xhat[j] * mean_dxhat_xhat))
                .collect()
        } else {
            dz
        };

        let mut dh1 = alloc::vec![0.0; h1n];
        for u in 0..h2n {
            let da2 = if a2[u] > 0.0 { dh2[u] } else { 0.0 };
            grad[l.b2 + u] += da2;
            for j in 0..h1n {
                grad[l.w2 + u * h1n + j] += da2 * h1[j];
                dh1[j] += da2 * s.w2[u * h1n + j];
            }
        }

        for u in 0..h1n {
            let da1 = if h1[u] > 0.0 { dh1[u] } else { 0.0 };
            grad[l.b1 + u] += da1;
            for (g, &xv) in grad[l.w1 + u * cfg.input_dim..l.w1 + (u + 1) * cfg.input_dim]
                .iter_mut()
                .zip(x)
            {
                *g += da1 * xv;
            }
        }
    }

    for g in grad.iter_mut() {
        *g /= n;
    }
    Ok((loss / n, grad))
}

/// Full-batch Adam with the usual bias correction.
#[derive(Debug)]
pub struct Adam {
    lr: f64,
    m: Vec<f64>,
    v: Vec<f64>,
    t: u64,
}

const ADAM_BETA1: f64 = 0.9;
const ADAM_BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

impl Adam {
    pub fn new(lr: f64, param_count: usize) -> Self {
        Self {
            lr,
            m: alloc::vec![0.0; param_count],
            v: alloc::vec![0.0; param_count],
            t: 0,
        }
    }

    pub fn step(&mut self, params: &mut [f64], grad: &[f64]) {
        self.t += 1;
        let bc1 = 1.0 - powi(ADAM_BETA1, self.t);
        let bc2 = 1.0 - powi(ADAM_BETA2, self.t);
        for i in 0..params.len() {
            self.m[i] = ADAM_BETA1 * self.m[i] + (1.0 - ADAM_BETA1) * grad[i];
            self.v[i] = ADAM_BETA2 * self.v[i] + (1.0 - ADAM_BETA2) * grad[i] * grad[i];
            let m_hat = self.m[i] / bc1;
            let v_hat = self.v[i] / bc2;
            params[i] -= self.lr * m_hat / (mathx::sqrt(v_hat) + ADAM_EPS);
        }
    }
}

fn powi(base: f64, mut exp: u64) -> f64 {
    let mut acc = 1.0;
    let mut b = base;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= b;
        }
        b *= b;
        exp >>= 1;
    }
    acc
}

/// Per-epoch record of a toy training run: the tracking set's embeddings,
/// the training loss, and the tracking-set AUC at that epoch.  Epoch 0 is
/// the untrained network.
#[derive(Debug, Clone)]
pub struct EmbeddingTrace {
    pub epochs: Vec<usize>,
    pub clouds: Vec<PointCloud>,
    pub losses: Vec<f64>,
    pub aucs: Vec<f64>,
}

/// Trains the toy network with full-batch Adam on cross-entropy, recording
/// the tracking set before training and after every epoch.
pub fn train_toy(
    cfg: &ToyNetConfig,
    train: &PointCloud,
    track: &PointCloud,
    epochs: usize,
    lr: f64,
) -> Result<EmbeddingTrace> {
    let train_labels = train.labels().ok_or(Error::MissingLabels)?;
    track.labels().ok_or(Error::MissingLabels)?;
    if train.dim() != cfg.input_dim || track.dim() != cfg.input_dim {
        return Err(Error::DimensionMismatch {
            expected: cfg.input_dim,
            got: if train.dim() != cfg.input_dim {
                train.dim()
            } else {
                track.dim()
            },
        });
    }
    if !train_labels.contains(&0) || !train_labels.contains(&1) {
        return Err(Error::DegenerateLabels);
    }

    let mut net = ToyNet::new(cfg.clone())?;
    let mut adam = Adam::new(lr, net.param_count());

    let mut trace = EmbeddingTrace {
        epochs: Vec::with_capacity(epochs + 1),
        clouds: Vec::with_capacity(epochs + 1),
        losses: Vec::with_capacity(epochs + 1),
        aucs: Vec::with_capacity(epochs + 1),
    };
    record_epoch(&mut trace, 0, &net, train, track)?;

    for epoch in 1..=epochs {
        let (_, grad) = toy_loss_grad(&net, train)?;
        adam.step(&mut net.params, &grad);
        record_epoch(&mut trace, epoch, &net, train, track)?;
    }
    Ok(trace)
}

fn record_epoch(
    trace: &mut EmbeddingTrace,
    epoch: usize,
    net: &ToyNet,
    train: &PointCloud,
    track: &PointCloud,
) -> Result<()> {
    let (loss, _) = toy_loss_grad(net, train)?;
    let probs = net.forward(track)?;
    let scores: Vec<f64> = probs.iter().map(|p| p[1]).collect();
    let is_pos: Vec<bool> = track.labels().unwrap().iter().map(|&l| l == 1).collect();
    let auc = auc_binary(&scores, &is_pos)?;
    trace.epochs.push(epoch);
    trace.clouds.push(net.encode(track)?);
    trace.losses.push(loss);
    trace.aucs.push(auc);
    Ok(())
}
