//! Persistent homology over Z/2 by boundary-matrix column reduction.
//!
//! Columns are reduced one dimension at a time from the top down. Once a
//! dimension is reduced, every pivot row it produced belongs to a simplex
//! that is already paired, so that column is cleared instead of reduced.
//! Below the top dimension the reduction also keeps the column operations
//! (`V`), which give representatives for classes that never die.

use std::fmt::Write as _;

use serde::Serialize;

use crate::filtration::Filtration;

/// A bar `[birth, death)`; `death == None` means it never dies.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PersistenceInterval {
    pub dim: usize,
    pub birth: f64,
    pub death: Option<f64>,
    pub birth_simplex: usize,
    pub death_simplex: Option<usize>,
    /// Filtration indices of a cycle representing the class, for `dim >= 1`.
    pub representative: Option<Vec<usize>>,
}

impl PersistenceInterval {
    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    pub fn is_zero_length(&self) -> bool {
        self.death == Some(self.birth)
    }

    pub fn persistence(&self) -> f64 {
        self.death.map_or(f64::INFINITY, |d| d - self.birth)
    }

    /// Alive on `[birth, death)`.
    pub fn contains(&self, eps: f64) -> bool {
        self.birth <= eps && self.death.is_none_or(|d| eps < d)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Barcode {
    /// Every interval, zero-length ones included, sorted by
    /// `(dim, birth, death, birth_simplex)` with infinite deaths last.
    intervals: Vec<PersistenceInterval>,
    max_filtration: f64,
    n_vertices: usize,
    n_simplices: usize,
    dim_cap: usize,
}

impl Barcode {
    pub fn all_intervals(&self) -> &[PersistenceInterval] {
        &self.intervals
    }

    /// Intervals of positive length.
    pub fn intervals(&self) -> impl Iterator<Item = &PersistenceInterval> {
        self.intervals.iter().filter(|i| !i.is_zero_length())
    }

    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &PersistenceInterval> {
        self.intervals().filter(move |i| i.dim == dim)
    }

    pub fn max_filtration(&self) -> f64 {
        self.max_filtration
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_simplices(&self) -> usize {
        self.n_simplices
    }

    /// Dimension cap of the filtration this came from.
    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    pub fn max_dim(&self) -> usize {
        self.intervals.iter().map(|i| i.dim).max().unwrap_or(0)
    }

    /// Number of degree-`k` bars alive at `eps`.
    pub fn betti_at(&self, k: usize, eps: f64) -> usize {
        self.intervals
            .iter()
            .filter(|i| i.dim == k && i.contains(eps))
            .count()
    }

    pub fn infinite_intervals(&self, k: usize) -> Vec<&PersistenceInterval> {
        self.intervals
            .iter()
            .filter(|i| i.dim == k && i.is_infinite())
            .collect()
    }

    /// Largest finite death in degree `k`, e.g. the scale where the last two
    /// components merge for `k = 0`.
    pub fn last_finite_death(&self, k: usize) -> Option<f64> {
        self.in_dim(k).filter_map(|i| i.death).reduce(f64::max)
    }

    /// `(dim, birth, death)` of the positive-length bars, sorted; handy for
    /// comparing barcodes.
    pub fn diagram(&self) -> Vec<(usize, f64, Option<f64>)> {
        self.intervals().map(|i| (i.dim, i.birth, i.death)).collect()
    }

    /// Highest degree worth reporting. Nothing of dimension `max_dim + 1`
    /// exists to kill top-degree classes, so those bars are artifacts of the
    /// cap; degree 1 is kept even when it is the top (graph cycles).
    pub fn reported_max_dim(&self) -> usize {
        let cap = self.dim_cap;
        cap.saturating_sub(1).max(cap.min(1))
    }

    /// `dim,birth,death,representative`, one row per positive-length bar up
    /// to [`Barcode::reported_max_dim`].
    pub fn to_csv(&self, filtration: &Filtration) -> String {
        let mut s = String::from("dim,birth,death,representative\n");
        let top = self.reported_max_dim();
        for i in self.intervals().filter(|i| i.dim <= top) {
            let death = i.death.map_or_else(|| "inf".to_string(), |d| format!("{d:.6}"));
            let rep = representative_edges(filtration, i)
                .iter()
                .map(|(a, b)| format!("{a}-{b}"))
                .collect::<Vec<_>>()
                .join(";");
            let _ = writeln!(s, "{},{:.6},{},{}", i.dim, i.birth, death, rep);
        }
        s
    }
}

/// A cycle carrying the interval's class at its birth: the birth vertex for
/// degree 0, the stored chain otherwise.
pub fn representative(interval: &PersistenceInterval) -> Vec<usize> {
    match (&interval.representative, interval.dim) {
        (Some(rep), _) => rep.clone(),
        (None, 0) => vec![interval.birth_simplex],
        (None, _) => Vec::new(),
    }
}

/// The representative of a degree-1 interval as vertex pairs.
pub fn representative_edges(filtration: &Filtration, interval: &PersistenceInterval) -> Vec<(u32, u32)> {
    if interval.dim != 1 {
        return Vec::new();
    }
    representative(interval)
        .into_iter()
        .map(|idx| {
            let v = &filtration.get(idx).vertices;
            (v[0], v[1])
        })
        .collect()
}

/// Z/2 sum of two sorted index lists.
pub(crate) fn add_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

const NONE: usize = usize::MAX;

/// Computes the barcode of `filtration` in every dimension it contains.
pub fn reduce(filtration: &Filtration) -> Barcode {
    let n = filtration.len();
    let max_dim = filtration
        .simplices()
        .iter()
        .map(|s| s.dim())
        .max()
        .unwrap_or(0);

    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); max_dim + 1];
    for (i, s) in filtration.simplices().iter().enumerate() {
        by_dim[s.dim()].push(i);
    }

    // pivot row -> owning column
    let mut owner = vec![NONE; n];
    let mut cleared = vec![false; n];
    let mut reduced: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut ops: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut intervals = Vec::new();

    let cap = filtration.max_dim();
    for dim in (1..=max_dim).rev() {
        // Top-dimension classes are truncation artifacts; skip V there, except
        // that degree-1 cycles always get representatives.
        let track = dim < cap || dim == 1;
        for &idx in &by_dim[dim] {
            if cleared[idx] {
                continue;
            }
            let mut col = filtration.boundary(idx);
            let mut v = if track { vec![idx] } else { Vec::new() };
            while let Some(&low) = col.last() {
                let other = owner[low];
                if other == NONE {
                    break;
                }
                col = add_sorted(&col, &reduced[other]);
                if track {
                    v = add_sorted(&v, &ops[other]);
                }
            }
            if let Some(&low) = col.last() {
                owner[low] = idx;
                cleared[low] = true;
                reduced[idx] = col;
                if track {
                    ops[idx] = v;
                }
            } else if track {
                ops[idx] = v;
            }
        }
    }

    for (idx, simplex) in filtration.simplices().iter().enumerate() {
        if let Some(&low) = reduced[idx].last() {
            let dim = simplex.dim() - 1;
            intervals.push(PersistenceInterval {
                dim,
                birth: filtration.get(low).birth,
                death: Some(simplex.birth),
                birth_simplex: low,
                death_simplex: Some(idx),
                representative: (dim >= 1).then(|| reduced[idx].clone()),
            });
        } else if !cleared[idx] {
            let dim = simplex.dim();
            let representative = if dim >= 1 && !ops[idx].is_empty() {
                Some(std::mem::take(&mut ops[idx]))
            } else {
                None
            };
            intervals.push(PersistenceInterval {
                dim,
                birth: simplex.birth,
                death: None,
                birth_simplex: idx,
                death_simplex: None,
                representative,
            });
        }
    }

    intervals.sort_by(|a, b| {
        a.dim
            .cmp(&b.dim)
            .then(a.birth.total_cmp(&b.birth))
            .then_with(|| match (a.death, b.death) {
                (Some(x), Some(y)) => x.total_cmp(&y),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
            .then(a.birth_simplex.cmp(&b.birth_simplex))
    });

    Barcode {
        intervals,
        max_filtration: filtration.max_filtration(),
        n_vertices: filtration.n_vertices(),
        n_simplices: n,
        dim_cap: filtration.max_dim(),
    }
}

/// Z/2 boundary of a chain of filtration indices, as sorted indices.
pub fn chain_boundary(filtration: &Filtration, chain: &[usize]) -> Vec<usize> {
    let mut acc: Vec<usize> = Vec::new();
    for &idx in chain {
        acc = add_sorted(&acc, &filtration.boundary(idx));
    }
    acc
}

/// Whether `chain` (sorted edge indices) bounds in the complex made of the
/// first `prefix` simplices of the filtration.
pub fn is_boundary_in_prefix(filtration: &Filtration, prefix: usize, chain: &[usize]) -> bool {
    let n = prefix.min(filtration.len());
    let mut owner = vec![NONE; n];
    let mut reduced: Vec<Vec<usize>> = vec![Vec::new(); n];
    for idx in 0..n {
        if filtration.get(idx).dim() != 2 {
            continue;
        }
        let mut col = filtration.boundary(idx);
        while let Some(&low) = col.last() {
            if owner[low] == NONE {
                break;
            }
            col = add_sorted(&col, &reduced[owner[low]]);
        }
        if let Some(&low) = col.last() {
            owner[low] = idx;
            reduced[idx] = col;
        }
    }
    let mut c = chain.to_vec();
    while let Some(&low) = c.last() {
        if low >= n || owner[low] == NONE {
            return false;
        }
        c = add_sorted(&c, &reduced[owner[low]]);
    }
    true
}
