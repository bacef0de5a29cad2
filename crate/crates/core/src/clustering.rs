//! Clusters from degree-0 slices (single linkage through union-find) and a
//! K-means baseline.

use std::fmt::Write as _;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ingest::IndicatorDataset;
use crate::metric::DistanceMatrix;
use crate::persistence::Barcode;
use crate::stats;

/// Disjoint sets with path compression and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Method {
    H0Slice { eps: f64 },
    KMeans { k: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Partition {
    /// Cluster id per vertex; ids index into `clusters`.
    pub assignment: Vec<usize>,
    /// Member lists sorted by size (descending), then smallest member.
    pub clusters: Vec<Vec<usize>>,
    pub method: Method,
}

impl Partition {
    /// Canonical partition from arbitrary block labels.
    pub fn from_labels(labels: &[usize], method: Method) -> Self {
        let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (v, &l) in labels.iter().enumerate() {
            blocks.entry(l).or_default().push(v);
        }
        let mut clusters: Vec<Vec<usize>> = blocks.into_values().collect();
        clusters.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        let mut assignment = vec![0; labels.len()];
        for (id, members) in clusters.iter().enumerate() {
            for &v in members {
                assignment[v] = id;
            }
        }
        Self {
            assignment,
            clusters,
            method,
        }
    }

    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.clusters.iter().map(Vec::len).collect()
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.clusters
            .iter()
            .all(|c| c.iter().all(|&v| coarser.assignment[v] == coarser.assignment[c[0]]))
    }

    /// `country,cluster_id,cluster_size`, rows in dataset order.
    pub fn to_csv(&self, labels: &[String]) -> String {
        let mut s = String::from("country,cluster_id,cluster_size\n");
        for (v, &c) in self.assignment.iter().enumerate() {
            let _ = writeln!(s, "{},{},{}", labels[v], c, self.clusters[c].len());
        }
        s
    }
}

/// Connected components of the graph joining every unmasked pair at
/// distance `<= eps`.
pub fn components_at(matrix: &DistanceMatrix, eps: f64) -> Partition {
    let n = matrix.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if !matrix.is_masked(i, j) && matrix.get(i, j) <= eps {
                uf.union(i, j);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|v| uf.find(v)).collect();
    Partition::from_labels(&labels, Method::H0Slice { eps })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSummary {
    pub cluster_id: usize,
    pub size: usize,
    pub members: Vec<String>,
    /// Mean of each scaled indicator over the members.
    pub means: Vec<f64>,
}

/// The `n` largest clusters with per-indicator means.
pub fn largest(partition: &Partition, dataset: &IndicatorDataset, n: usize) -> Vec<ClusterSummary> {
    partition
        .clusters
        .iter()
        .take(n)
        .enumerate()
        .map(|(cluster_id, members)| ClusterSummary {
            cluster_id,
            size: members.len(),
            members: members.iter().map(|&v| dataset.countries[v].clone()).collect(),
            means: (0..dataset.dim())
                .map(|j| stats::mean(&members.iter().map(|&v| dataset.values[v][j]).collect::<Vec<_>>()))
                .collect(),
        })
        .collect()
}

/// `cluster_id,size,<indicator>_mean...`
pub fn summaries_to_csv(summaries: &[ClusterSummary], dataset: &IndicatorDataset) -> String {
    let mut s = String::from("cluster_id,size");
    for id in &dataset.indicators {
        let _ = write!(s, ",{id}_mean");
    }
    s.push('\n');
    for c in summaries {
        let _ = write!(s, "{},{}", c.cluster_id, c.size);
        for m in &c.means {
            let _ = write!(s, ",{m:.6}");
        }
        s.push('\n');
    }
    s
}

/// Degree-0 Betti number at `eps` agrees with the union-find block count.
pub fn h0_consistency(barcode: &Barcode, matrix: &DistanceMatrix, eps: f64) -> bool {
    barcode.betti_at(0, eps) == components_at(matrix, eps).len()
}

pub const KMEANS_MAX_ITERATIONS: usize = 300;
pub const KMEANS_DEFAULT_RESTARTS: usize = 100;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KMeansResult {
    pub partition: Partition,
    pub centers: Vec<Vec<f64>>,
    /// Within-cluster sum of squared Euclidean distances.
    pub objective: f64,
    pub best_restart: usize,
}

/// One Lloyd run, with the objective after every iteration.
#[derive(Debug, Clone)]
pub struct LloydRun {
    pub labels: Vec<usize>,
    pub centers: Vec<Vec<f64>>,
    pub objective_trace: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl LloydRun {
    pub fn objective(&self) -> f64 {
        *self.objective_trace.last().unwrap_or(&f64::INFINITY)
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centers: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (c, center) in centers.iter().enumerate() {
        let d = sq_dist(point, center);
        if d < best.1 {
            best = (c, d);
        }
    }
    best
}

fn objective(points: &[Vec<f64>], labels: &[usize], centers: &[Vec<f64>]) -> f64 {
    points
        .iter()
        .zip(labels)
        .map(|(p, &l)| sq_dist(p, &centers[l]))
        .sum()
}

/// Lloyd iterations from the given initial centers.
pub fn lloyd(points: &[Vec<f64>], init: Vec<Vec<f64>>) -> LloydRun {
    let k = init.len();
    let dim = points.first().map_or(0, Vec::len);
    let mut centers = init;
    let mut labels: Vec<usize> = vec![usize::MAX; points.len()];
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;

    while iterations < KMEANS_MAX_ITERATIONS {
        iterations += 1;
        let mut changed = false;
        let mut dists = vec![0.0; points.len()];
        for (i, p) in points.iter().enumerate() {
            let (c, d) = nearest(p, &centers);
            dists[i] = d;
            if labels[i] != c {
                labels[i] = c;
                changed = true;
            }
        }

        // Empty clusters take the point farthest from its own center.
        let mut counts = vec![0usize; k];
        for &l in &labels {
            counts[l] += 1;
        }
        for c in 0..k {
            if counts[c] > 0 {
                continue;
            }
            let far = (0..points.len())
                .filter(|&i| counts[labels[i]] > 1)
                .max_by(|&a, &b| dists[a].total_cmp(&dists[b]).then(b.cmp(&a)));
            if let Some(i) = far {
                counts[labels[i]] -= 1;
                labels[i] = c;
                counts[c] = 1;
                dists[i] = 0.0;
                centers[c] = points[i].clone();
                changed = true;
            }
        }

        if !changed && !trace.is_empty() {
            converged = true;
            break;
        }

        let mut sums = vec![vec![0.0; dim]; k];
        for (p, &l) in points.iter().zip(&labels) {
            for (s, x) in sums[l].iter_mut().zip(p) {
                *s += x;
            }
        }
        for c in 0..k {
            if counts[c] > 0 {
                centers[c] = sums[c].iter().map(|s| s / counts[c] as f64).collect();
            }
        }
        trace.push(objective(points, &labels, &centers));
    }

    LloydRun {
        labels,
        centers,
        objective_trace: trace,
        iterations,
        converged,
    }
}

/// Random generator for one restart: the seed picks the generator and the
/// restart index picks its stream.
pub fn restart_rng(seed: u64, restart: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart as u64);
    rng
}

/// Initial centers: `k` distinct data points chosen uniformly.
pub fn random_init(points: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut idx = sample(rng, points.len(), k).into_vec();
    idx.sort_unstable();
    idx.into_iter().map(|i| points[i].clone()).collect()
}

/// Best of `restarts` Lloyd runs by objective; ties keep the earliest run.
pub fn kmeans(dataset: &IndicatorDataset, k: usize, restarts: usize, seed: u64) -> Result<KMeansResult> {
    let points = &dataset.values;
    if k == 0 || k > points.len() {
        return Err(Error::InvalidArgument(format!(
            "K = {k} must be between 1 and the number of points ({})",
            points.len()
        )));
    }
    if restarts == 0 {
        return Err(Error::InvalidArgument("restarts must be >= 1".into()));
    }
    let mut best: Option<(usize, LloydRun)> = None;
    for r in 0..restarts {
        let mut rng = restart_rng(seed, r);
        let run = lloyd(points, random_init(points, k, &mut rng));
        if best.as_ref().is_none_or(|(_, b)| run.objective() < b.objective()) {
            best = Some((r, run));
        }
    }
    let (best_restart, run) = best.expect("restarts >= 1");
    Ok(KMeansResult {
        objective: run.objective(),
        partition: Partition::from_labels(&run.labels, Method::KMeans { k }),
        centers: run.centers,
        best_restart,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::IndicatorId;
    use proptest::prelude::*;

    fn line_matrix(xs: &[f64]) -> DistanceMatrix {
        let labels = (0..xs.len()).map(|i| format!("{i}")).collect();
        DistanceMatrix::from_fn(labels, f64::INFINITY, |i, j| (xs[i] - xs[j]).abs())
    }

    fn dataset(pts: Vec<Vec<f64>>) -> IndicatorDataset {
        let labels = (0..pts.len()).map(|i| format!("P{i:03}")).collect();
        let ids = IndicatorId::ALL[..pts[0].len()].to_vec();
        IndicatorDataset::from_points(labels, ids, pts).unwrap()
    }

    #[test]
    fn union_find_counts() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(!uf.union(1, 0));
        uf.union(3, 4);
        assert_eq!(uf.set_count(), 3);
        assert_eq!(uf.find(4), uf.find(3));
    }

    #[test]
    fn slices_of_a_line() {
        let m = line_matrix(&[0.0, 0.1, 0.5, 0.55, 2.0]);
        assert_eq!(components_at(&m, 0.0).len(), 5);
        let p = components_at(&m, 0.1);
        assert_eq!(p.sizes(), vec![2, 2, 1]);
        assert_eq!(p.clusters[0], vec![0, 1]);
        assert!(p.refines(&components_at(&m, 0.5)));
        assert_eq!(components_at(&m, 5.0).len(), 1);
    }

    #[test]
    fn masked_pairs_never_join() {
        let m = DistanceMatrix::from_rows(
            &[vec![0.0, 0.1, f64::INFINITY], vec![0.1, 0.0, f64::INFINITY], vec![f64::INFINITY; 3]],
            20.0,
        )
        .unwrap();
        assert_eq!(components_at(&m, 100.0).len(), 2);
    }

    #[test]
    fn largest_and_summary() {
        let d = dataset(vec![vec![0.0, 0.2], vec![0.1, 0.4], vec![0.9, 0.9]]);
        let p = components_at(&crate::metric::pairwise(&d), 0.3);
        let top = largest(&p, &d, 3);
        assert_eq!(top.len(), 2);
        assert_eq!(top[0].size, 2);
        assert!((top[0].means[0] - 0.05).abs() < 1e-12 && (top[0].means[1] - 0.3).abs() < 1e-12);
        let single = Partition::from_labels(&[0, 0, 0], Method::H0Slice { eps: 1.0 });
        assert_eq!(largest(&single, &d, 3).len(), 1);
        let csv = summaries_to_csv(&top, &d);
        assert!(csv.starts_with("cluster_id,size,GDP_mean,LE_mean\n0,2,0.050000,0.300000\n"));
    }

    #[test]
    fn kmeans_two_blobs() {
        let mut pts = Vec::new();
        for i in 0..20 {
            let t = i as f64 * 0.005;
            pts.push(vec![-0.5 + t, -0.5 - t]);
            pts.push(vec![0.5 - t, 0.5 + t]);
        }
        let d = dataset(pts);
        let r = kmeans(&d, 2, 5, 7).unwrap();
        assert_eq!(r.partition.sizes(), vec![20, 20]);
        for c in &r.partition.clusters {
            let first = d.values[c[0]][0] < 0.0;
            assert!(c.iter().all(|&v| (d.values[v][0] < 0.0) == first));
        }
    }

    #[test]
    fn kmeans_k1_objective_is_total_scatter() {
        let d = dataset(vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let r = kmeans(&d, 1, 3, 1).unwrap();
        assert!((r.objective - 2.0).abs() < 1e-12);
        assert!(kmeans(&d, 5, 1, 1).is_err());
        assert!(kmeans(&d, 2, 0, 1).is_err());
    }

    #[test]
    fn empty_cluster_is_repaired() {
        // Two identical starting centers: the second one starts empty.
        let pts = vec![vec![0.0], vec![0.1], vec![5.0]];
        let run = lloyd(&pts, vec![vec![0.0], vec![0.0]]);
        let mut sizes = [0; 2];
        for &l in &run.labels {
            sizes[l] += 1;
        }
        assert!(sizes.iter().all(|&s| s > 0));
        assert_eq!(run.labels[0], run.labels[1]);
    }

    proptest! {
        #[test]
        fn lloyd_objective_never_increases(
            pts in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 6..40),
            k in 1usize..5,
            seed in any::<u64>(),
        ) {
            let mut rng = restart_rng(seed, 0);
            let run = lloyd(&pts, random_init(&pts, k.min(pts.len()), &mut rng));
            for w in run.objective_trace.windows(2) {
                prop_assert!(w[1] <= w[0] * (1.0 + 1e-12) + 1e-15);
            }
            if run.converged {
                for (p, &l) in pts.iter().zip(&run.labels) {
                    let (c, d) = nearest(p, &run.centers);
                    prop_assert!(c == l || (sq_dist(p, &run.centers[l]) - d).abs() < 1e-15);
                }
            }
        }
    }
}
