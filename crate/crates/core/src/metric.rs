//! Pairwise dissimilarities: the Euclidean point-cloud metric and the
//! border-masked matrix used for the weighted border graph.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ingest::{BorderEdge, IndicatorDataset};

/// Default filtration cap for point clouds.
pub const POINT_CLOUD_MAX_FILTRATION: f64 = 1.0;
/// Default filtration cap for border graphs.
pub const BORDER_GRAPH_MAX_FILTRATION: f64 = 2.0;
/// The "no border" sentinel is this multiple of the filtration cap.
pub const UNREACHABLE_FACTOR: f64 = 10.0;

/// Euclidean distance between two scaled indicator vectors.
pub fn distance(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    Ok(euclid(x, y))
}

#[inline]
fn euclid(x: &[f64], y: &[f64]) -> f64 {
    x.iter()
        .zip(y)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Symmetric n×n dissimilarity matrix, row-major.
///
/// Entries at or above `unreachable` are masked: the pair is treated as
/// infinitely far apart.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
    unreachable: f64,
    labels: Vec<String>,
}

impl DistanceMatrix {
    /// Builds a matrix from the strict upper triangle given by `f(i, j)`, `i < j`.
    pub fn from_fn(labels: Vec<String>, unreachable: f64, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let n = labels.len();
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = f(i, j);
                entries[i * n + j] = d;
                entries[j * n + i] = d;
            }
        }
        Self {
            n,
            entries,
            unreachable,
            labels,
        }
    }

    /// Builds from full rows; only the upper triangle is read. Non-finite
    /// entries become the sentinel.
    pub fn from_rows(rows: &[Vec<f64>], unreachable: f64) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: r.len(),
            });
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self::from_fn(labels, unreachable, |i, j| {
            let d = rows[i][j];
            if d.is_finite() {
                d
            } else {
                unreachable
            }
        }))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn unreachable(&self) -> f64 {
        self.unreachable
    }

    #[inline]
    pub fn is_masked(&self, i: usize, j: usize) -> bool {
        i != j && self.get(i, j) >= self.unreachable
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Largest non-masked entry.
    pub fn max_finite(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.is_masked(i, j) {
                    m = m.max(self.get(i, j));
                }
            }
        }
        m
    }

    /// Same matrix with rows and columns reordered: new index `k` is old
    /// index `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        Self::from_fn(labels, self.unreachable, |i, j| self.get(perm[i], perm[j]))
    }

    /// CSV with ISO2 row/column headers; masked entries are written as `inf`.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for l in &self.labels {
            s.push(',');
            s.push_str(l);
        }
        s.push('\n');
        for i in 0..self.n {
            s.push_str(&self.labels[i]);
            for j in 0..self.n {
                if self.is_masked(i, j) {
                    s.push_str(",inf");
                } else {
                    s.push_str(&format!(",{:.6}", self.get(i, j)));
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Euclidean distances between every pair of countries in the dataset.
pub fn pairwise(dataset: &IndicatorDataset) -> DistanceMatrix {
    DistanceMatrix::from_fn(dataset.countries.clone(), f64::INFINITY, |i, j| {
        euclid(&dataset.values[i], &dataset.values[j])
    })
}

/// Symmetric 0/1 border adjacency restricted to a label set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMatrix {
    n: usize,
    entries: Vec<bool>,
    labels: Vec<String>,
}

impl AdjacencyMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries[i * self.n + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    pub fn degree(&self, i: usize) -> usize {
        self.neighbors(i).count()
    }

    pub fn edge_count(&self) -> usize {
        self.entries.iter().filter(|&&b| b).count() / 2
    }

    /// Adjacency built from index pairs over `labels`.
    pub fn from_index_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        let mut entries = vec![false; n * n];
        for &(a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop(labels[a].clone()));
            }
            entries[a * n + b] = true;
            entries[b * n + a] = true;
        }
        Ok(Self { n, entries, labels })
    }
}

/// Border adjacency over `labels`; edges touching a country outside `labels`
/// are dropped.
pub fn border_adjacency(edges: &[BorderEdge], labels: &[String]) -> Result<AdjacencyMatrix> {
    let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut pairs = Vec::with_capacity(edges.len());
    for e in edges {
        if e.a == e.b {
            return Err(Error::SelfLoop(e.a.clone()));
        }
        if let (Some(&a), Some(&b)) = (index.get(e.a.as_str()), index.get(e.b.as_str())) {
            pairs.push((a, b));
        }
    }
    AdjacencyMatrix::from_index_edges(labels.to_vec(), &pairs)
}

/// Distances along borders only; every other pair gets the sentinel
/// `UNREACHABLE_FACTOR * max_filtration`.
pub fn border_distances(
    adjacency: &AdjacencyMatrix,
    dataset: &IndicatorDataset,
    max_filtration: f64,
) -> Result<DistanceMatrix> {
    if adjacency.labels() != dataset.countries.as_slice() {
        return Err(Error::InvalidArgument(
            "adjacency and dataset labels differ".into(),
        ));
    }
    if max_filtration.is_nan() || max_filtration <= 0.0 {
        return Err(Error::InvalidArgument("max_filtration must be > 0".into()));
    }
    let unreachable = UNREACHABLE_FACTOR * max_filtration;
    Ok(DistanceMatrix::from_fn(dataset.countries.clone(), unreachable, |i, j| {
        if adjacency.get(i, j) {
            euclid(&dataset.values[i], &dataset.values[j])
        } else {
            unreachable
        }
    }))
}
