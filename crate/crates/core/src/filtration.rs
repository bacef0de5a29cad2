//! Vietoris–Rips (weighted rank clique) filtrations built from a
//! [`DistanceMatrix`].
//!
//! A simplex enters at the largest pairwise distance among its vertices.
//! Masked pairs never form an edge, so any simplex containing them is absent.
//! Simplices are stored in the canonical order `(birth, dim, vertices)`,
//! which is a linear extension of the face order: a face never has a larger
//! birth, and on equal births it has a smaller dimension.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use log::warn;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::metric::DistanceMatrix;

pub type Vertices = SmallVec<[u32; 4]>;

#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub vertices: Vertices,
    pub birth: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Codimension-one faces, each with strictly increasing vertices.
    pub fn facets(&self) -> impl Iterator<Item = Vertices> + '_ {
        let k = self.vertices.len();
        (0..if k > 1 { k } else { 0 }).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }
}

/// Canonical filtration order.
pub fn canonical_cmp(a: &Simplex, b: &Simplex) -> Ordering {
    a.birth
        .total_cmp(&b.birth)
        .then_with(|| a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

#[derive(Debug, Clone)]
pub struct Filtration {
    simplices: Vec<Simplex>,
    n_vertices: usize,
    max_dim: usize,
    max_filtration: f64,
    index: HashMap<Vertices, usize>,
}

impl Filtration {
    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn get(&self, idx: usize) -> &Simplex {
        &self.simplices[idx]
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn max_filtration(&self) -> f64 {
        self.max_filtration
    }

    /// Position of a simplex given by its sorted vertex list.
    pub fn index_of(&self, vertices: &[u32]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Boundary of simplex `idx` as sorted filtration indices.
    pub fn boundary(&self, idx: usize) -> Vec<usize> {
        let mut col: Vec<usize> = self.simplices[idx]
            .facets()
            .map(|f| self.index[&f])
            .collect();
        col.sort_unstable();
        col
    }

    /// The complex at scale `eps`: every simplex with birth `<= eps`. Always a
    /// prefix of the filtration.
    pub fn complex_at(&self, eps: f64) -> &[Simplex] {
        &self.simplices[..self.prefix_len(eps)]
    }

    pub fn prefix_len(&self, eps: f64) -> usize {
        self.simplices.partition_point(|s| s.birth <= eps)
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_dim + 1];
        for s in &self.simplices {
            counts[s.dim()] += 1;
        }
        counts
    }

    /// One `dim birth v0 v1 ...` line per simplex, in filtration order.
    pub fn debug_dump(&self) -> String {
        let mut s = String::new();
        for simplex in &self.simplices {
            let _ = write!(s, "{} {:.6}", simplex.dim(), simplex.birth);
            for v in &simplex.vertices {
                let _ = write!(s, " {v}");
            }
            s.push('\n');
        }
        s
    }
}

/// Enumerates the Rips filtration of `matrix` up to dimension `max_dim`,
/// keeping simplices with birth `<= max_filtration`.
pub fn build(matrix: &DistanceMatrix, max_dim: usize, max_filtration: f64) -> Result<Filtration> {
    if max_filtration.is_nan() || max_filtration <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "max_filtration must be > 0, got {max_filtration}"
        )));
    }
    let n = matrix.len();
    let mut max_dim = max_dim;
    if n > 0 && max_dim > n - 1 {
        warn!("max_dim {max_dim} exceeds {} for {n} points; clamping", n - 1);
        max_dim = n - 1;
    }

    // Higher-indexed neighbors of each vertex, sorted.
    let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (i, nbrs) in up.iter_mut().enumerate() {
        for j in (i + 1)..n {
            if !matrix.is_masked(i, j) && matrix.get(i, j) <= max_filtration {
                nbrs.push(j as u32);
            }
        }
    }

    let mut simplices: Vec<Simplex> = (0..n)
        .map(|v| Simplex {
            vertices: smallvec::smallvec![v as u32],
            birth: 0.0,
        })
        .collect();

    let mut stack: Vertices = SmallVec::new();
    for v in 0..n {
        stack.clear();
        stack.push(v as u32);
        expand(matrix, &up, &mut stack, &up[v], 0.0, max_dim, &mut simplices);
    }

    simplices.sort_by(canonical_cmp);
    let index = simplices
        .iter()
        .enumerate()
        .map(|(i, s)| (s.vertices.clone(), i))
        .collect();
    Ok(Filtration {
        simplices,
        n_vertices: n,
        max_dim,
        max_filtration,
        index,
    })
}

/// Adds every coface of `clique` obtained from vertices in `candidates`
/// (common higher neighbors of all of `clique`).
fn expand(
    matrix: &DistanceMatrix,
    up: &[Vec<u32>],
    clique: &mut Vertices,
    candidates: &[u32],
    birth: f64,
    max_dim: usize,
    out: &mut Vec<Simplex>,
) {
    if clique.len() > max_dim {
        return;
    }
    for (pos, &w) in candidates.iter().enumerate() {
        let b = clique
            .iter()
            .map(|&u| matrix.get(u as usize, w as usize))
            .fold(birth, f64::max);
        clique.push(w);
        out.push(Simplex {
            vertices: clique.clone(),
            birth: b,
        });
        if clique.len() <= max_dim {
            let next = intersect_sorted(&candidates[pos + 1..], &up[w as usize]);
            if !next.is_empty() {
                expand(matrix, up, clique, &next, b, max_dim, out);
            }
        }
        clique.pop();
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
