//! H0 persistence of the Vietoris-Rips filtration.
//!
//! Two engines with the same contract: [`h0_persistence`] computes the bars
//! from a minimum spanning tree of the distance matrix (exact for H0,
//! O(N^2 log N)), and [`h0_persistence_oracle`] builds the 1-skeleton
//! filtration explicitly and performs boundary-matrix reduction over Z/2,
//! the slow textbook path kept as an independent check.

use crate::error::{Error, Result};
use crate::geometry::DistanceMatrix;
use alloc::vec::Vec;

/// Default point bound for the reduction oracle.
pub const ORACLE_SIZE_LIMIT: usize = 256;

/// Birth/death pairs of H0 features.  The component surviving to scale
/// infinity is carried as a flag rather than a sentinel death value.
#[derive(Debug, Clone, PartialEq)]
pub struct PersistenceDiagram {
    pub finite_bars: Vec<(f64, f64)>,
    pub has_infinite_bar: bool,
}

impl PersistenceDiagram {
    /// Finite persistence times (death - birth), in bar order.
    pub fn finite_persistences(&self) -> Vec<f64> {
        self.finite_bars.iter().map(|(b, d)| d - b).collect()
    }

    /// Finite death times sorted ascending; the canonical form for
    /// comparing the two engines.
    pub fn sorted_finite_deaths(&self) -> Vec<f64> {
        let mut deaths: Vec<f64> = self.finite_bars.iter().map(|&(_, d)| d).collect();
        deaths.sort_by(f64::total_cmp);
        deaths
    }
}

/// Finite persistence times divided by their maximum, all in [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPersistences {
    values: Vec<f64>,
}

impl NormalizedPersistences {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// For tests and external pipelines that already hold values in [0, 1].
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::InvalidArgument(
                "normalized persistences must lie in [0, 1]",
            ));
        }
        Ok(Self { values })
    }
}

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: alloc::vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]]; // path halving
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// All edges of the complete graph, sorted by (length, min index, max index)
/// so diagrams are deterministic under ties.
fn sorted_edges(dm: &DistanceMatrix) -> Vec<(f64, usize, usize)> {
    let n = dm.len();
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((dm.get(i, j), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    edges
}

/// H0 persistence diagram via Kruskal's minimum spanning tree.
///
/// Every H0 bar of the VR filtration is born at 0 and dies at the scale
/// where its component merges into an older one; those merge scales are
/// exactly the MST edge weights.
pub fn h0_persistence(dm: &DistanceMatrix) -> Result<PersistenceDiagram> {
    let n = dm.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    let mut uf = UnionFind::new(n);
    let mut finite_bars = Vec::with_capacity(n - 1);
    for (w, i, j) in sorted_edges(dm) {
        if uf.union(i, j) {
            finite_bars.push((0.0, w));
            if finite_bars.len() == n - 1 {
                break;
            }
        }
    }
    Ok(PersistenceDiagram {
        finite_bars,
        has_infinite_bar: true,
    })
}

/// H0 via boundary-matrix reduction over Z/2 on the 1-skeleton filtration.
///
/// Vertices enter at scale 0, edges in the tie-broken order of
/// [`sorted_edges`].  Columns are reduced left to right; an edge column that
/// stays nonzero pairs its pivot vertex, killing the component that vertex
/// was born with.
pub fn h0_persistence_oracle(dm: &DistanceMatrix) -> Result<PersistenceDiagram> {
    h0_persistence_oracle_bounded(dm, ORACLE_SIZE_LIMIT)
}

pub fn h0_persistence_oracle_bounded(
    dm: &DistanceMatrix,
    limit: usize,
) -> Result<PersistenceDiagram> {
    let n = dm.len();
    if n < 2 {
        return Err(Error::InvalidArgument("oracle needs at least two points"));
    }
    if n > limit {
        return Err(Error::OracleSizeLimit { n, limit });
    }

    let edges = sorted_edges(dm);

    // Boundary columns of the edge simplices, as sorted vertex-index lists.
    // Vertex columns are empty and need no storage.
    let mut pivot_owner: Vec<Option<usize>> = alloc::vec![None; n]; // vertex -> edge column
    let mut columns: Vec<Vec<usize>> = Vec::with_capacity(edges.len());
    let mut finite_bars = Vec::with_capacity(n - 1);

    for (col_idx, &(w, i, j)) in edges.iter().enumerate() {
        let mut col = alloc::vec![i, j];
        while let Some(&low) = col.last() {
            let Some(owner) = pivot_owner[low] else { break };
            col = symmetric_difference(&col, &columns[owner]);
        }
        if let Some(&low) = col.last() {
            pivot_owner[low] = Some(col_idx);
            // vertex `low` was born at scale 0 and dies when this edge enters
            finite_bars.push((0.0, w));
        }
        columns.push(col);
    }

    debug_assert_eq!(finite_bars.len(), n - 1);
    Ok(PersistenceDiagram {
        finite_bars,
        has_infinite_bar: true,
    })
}

/// Z/2 column addition on sorted index lists.
fn symmetric_difference(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() && y < b.len() {
        match a[x].cmp(&b[y]) {
            core::cmp::Ordering::Less => {
                out.push(a[x]);
                x += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[y]);
                y += 1;
            }
            core::cmp::Ordering::Equal => {
                x += 1;
                y += 1;
            }
        }
    }
    out.extend_from_slice(&a[x..]);
    out.extend_from_slice(&b[y..]);
    out
}

/// Drops the infinite bar and divides finite persistences by their maximum.
/// All-coincident clouds (every persistence zero) normalize to all zeros.
pub fn normalize_diagram(pd: &PersistenceDiagram) -> Result<NormalizedPersistences> {
    if pd.finite_bars.is_empty() {
        return Err(Error::DegenerateDiagram);
    }
    let persistences = pd.finite_persistences();
    let max = persistences.iter().copied().fold(0.0, f64::max);
    let values = if max == 0.0 {
        persistences
    } else {
        persistences.iter().map(|p| p / max).collect()
    };
    Ok(NormalizedPersistences { values })
}
