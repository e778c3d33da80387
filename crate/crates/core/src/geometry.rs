//! Point-cloud container, pairwise Euclidean distances, and diameter.

use crate::error::{Error, Result};
use crate::mathx;
use alloc::vec::Vec;

/// N points in R^d with optional class labels, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    data: Vec<f64>,
    n: usize,
    dim: usize,
    labels: Option<Vec<usize>>,
}

impl PointCloud {
    /// Builds an unlabeled cloud from flat row-major coordinates.
    pub fn new(data: Vec<f64>, dim: usize) -> Result<Self> {
        Self::build(data, dim, None)
    }

    pub fn with_labels(data: Vec<f64>, dim: usize, labels: Vec<usize>) -> Result<Self> {
        Self::build(data, dim, Some(labels))
    }

    pub fn from_points(points: &[&[f64]]) -> Result<Self> {
        let dim = points.first().map_or(0, |p| p.len());
        let mut data = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            data.extend_from_slice(p);
        }
        Self::new(data, dim.max(1))
    }

    fn build(data: Vec<f64>, dim: usize, labels: Option<Vec<usize>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1"));
        }
        if !data.len().is_multiple_of(dim) {
            return Err(Error::InvalidArgument(
                "coordinate count is not a multiple of the dimension",
            ));
        }
        if data.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidArgument("coordinates must be finite"));
        }
        let n = data.len() / dim;
        if let Some(ref ls) = labels {
            if ls.len() != n {
                return Err(Error::InvalidArgument("label count must equal point count"));
            }
        }
        Ok(Self {
            data,
            n,
            dim,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim)
    }

    pub fn coords(&self) -> &[f64] {
        &self.data
    }

    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> Option<usize> {
        self.labels.as_ref().map(|ls| ls[i])
    }

    /// Number of classes, `max(label) + 1`.  `None` when unlabeled.
    pub fn num_classes(&self) -> Option<usize> {
        self.labels
            .as_ref()
            .map(|ls| ls.iter().max().map_or(0, |m| m + 1))
    }

    /// Same coordinates without labels.
    pub fn unlabeled(&self) -> PointCloud {
        PointCloud {
            data: self.data.clone(),
            n: self.n,
            dim: self.dim,
            labels: None,
        }
    }

    /// The subset of points at `indices`, labels carried through.
    pub fn select(&self, indices: &[usize]) -> PointCloud {
        let mut data = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            data.extend_from_slice(self.point(i));
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| indices.iter().map(|&i| ls[i]).collect());
        PointCloud {
            data,
            n: indices.len(),
            dim: self.dim,
            labels,
        }
    }
}

/// Symmetric matrix of pairwise distances.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    entries: Vec<f64>,
    n: usize,
}

impl DistanceMatrix {
    /// Validates symmetry, zero diagonal, and nonnegative finite entries.
    pub fn from_entries(entries: Vec<f64>, n: usize) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidArgument("entry count must be n*n"));
        }
        for i in 0..n {
            if entries[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument("diagonal must be zero"));
            }
            for j in 0..i {
                let a = entries[i * n + j];
                let b = entries[j * n + i];
                if !a.is_finite() || a < 0.0 || a != b {
                    return Err(Error::InvalidArgument(
                        "entries must be symmetric, finite and nonnegative",
                    ));
                }
            }
        }
        Ok(Self { entries, n })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (x, y) in a.iter().zip(b) {
        let diff = x - y;
        acc += diff * diff;
    }
    mathx::sqrt(acc)
}

/// Euclidean distance matrix of a point cloud.
pub fn pairwise_distances(pc: &PointCloud) -> Result<DistanceMatrix> {
    if pc.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = pc.len();
    let mut entries = alloc::vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = euclidean(pc.point(i), pc.point(j));
            entries[i * n + j] = d;
            entries[j * n + i] = d;
        }
    }
    Ok(DistanceMatrix { entries, n })
}

/// Largest pairwise distance; 0 for a single point.
pub fn diameter(dm: &DistanceMatrix) -> f64 {
    dm.entries.iter().copied().fold(0.0, f64::max)
}
