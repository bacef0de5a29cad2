//! Degree-1 classes of the border graph as readable loops of countries.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::filtration::{self, Filtration};
use crate::ingest::IndicatorDataset;
use crate::metric::{AdjacencyMatrix, DistanceMatrix};
use crate::persistence::{self, Barcode, PersistenceInterval};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosingEdge {
    pub a: String,
    pub b: String,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorRow {
    pub country: String,
    pub values: Vec<f64>,
    pub mean: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicatorExtremes {
    pub indicator: String,
    pub max: String,
    pub min: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    pub birth: f64,
    /// `None` for classes that never die.
    pub death: Option<f64>,
    /// Closed walk; consecutive entries (and last/first) share a border.
    pub countries: Vec<String>,
    #[serde(skip)]
    pub vertices: Vec<usize>,
    pub closing_edge: Option<ClosingEdge>,
    pub indicator_table: Vec<IndicatorRow>,
    /// `(maximal, minimal)` country by mean scaled indicator.
    pub extremes: (String, String),
    pub per_indicator_extremes: Vec<IndicatorExtremes>,
    /// Other loops of the same representative, if it had several.
    pub auxiliary: Vec<Vec<String>>,
}

impl CycleReport {
    pub fn is_infinite(&self) -> bool {
        self.death.is_none()
    }

    pub fn persistence(&self) -> f64 {
        self.death.map_or(f64::INFINITY, |d| d - self.birth)
    }
}

/// Splits an edge set with even degrees into simple loops.
///
/// Walks start at the smallest vertex with an unused edge and always take
/// the smallest unused neighbor. Each loop is rotated to start at its
/// smallest vertex, heading towards the smaller of its two neighbors.
pub fn decompose_loops(edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        let (a, b) = (a.min(b), a.max(b));
        if a == b || !adj.entry(a).or_default().insert(b) {
            return Err(Error::NotACycle(format!("repeated or degenerate edge {a}-{b}")));
        }
        adj.entry(b).or_default().insert(a);
    }
    if let Some((v, _)) = adj.iter().find(|(_, n)| n.len() % 2 == 1) {
        return Err(Error::NotACycle(format!("vertex {v} has odd degree")));
    }

    let mut loops = Vec::new();
    while let Some(start) = adj.iter().find(|(_, n)| !n.is_empty()).map(|(&v, _)| v) {
        let mut path = vec![start];
        let mut pos: HashMap<usize, usize> = HashMap::from([(start, 0)]);
        let mut cur = start;
        while let Some(next) = adj[&cur].first().copied() {
            adj.get_mut(&cur).unwrap().remove(&next);
            adj.get_mut(&next).unwrap().remove(&cur);
            if let Some(&p) = pos.get(&next) {
                let cycle: Vec<usize> = path[p..].to_vec();
                for v in &path[p + 1..] {
                    pos.remove(v);
                }
                path.truncate(p + 1);
                loops.push(canonical_loop(cycle));
                if path.len() == 1 && adj[&start].is_empty() {
                    break;
                }
            } else {
                pos.insert(next, path.len());
                path.push(next);
            }
            cur = next;
        }
    }
    Ok(loops)
}

fn canonical_loop(mut cycle: Vec<usize>) -> Vec<usize> {
    let n = cycle.len();
    let (k, _) = cycle.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
    cycle.rotate_left(k);
    if n > 2 && cycle[n - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

fn loop_edges(cycle: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..cycle.len()).map(move |i| (cycle[i], cycle[(i + 1) % cycle.len()]))
}

/// The longest edge of the triangle that kills a finite degree-1 class.
/// Its weight is the interval's death.
pub fn closing_edge(interval: &PersistenceInterval, filtration: &Filtration) -> Result<(usize, usize, f64)> {
    let Some(idx) = interval.death_simplex else {
        return Err(Error::NoClosingSimplex);
    };
    let tri = filtration.get(idx);
    if tri.dim() != 2 {
        return Err(Error::InvalidArgument(format!(
            "death simplex of a degree-{} class",
            interval.dim
        )));
    }
    let v = &tri.vertices;
    let mut best: Option<(usize, usize, f64)> = None;
    for (a, b) in [(v[0], v[1]), (v[0], v[2]), (v[1], v[2])] {
        let w = filtration.get(filtration.index_of(&[a, b]).expect("face present")).birth;
        if best.is_none_or(|(_, _, bw)| w > bw) {
            best = Some((a as usize, b as usize, w));
        }
    }
    Ok(best.unwrap())
}

fn indicator_table(vertices: &[usize], dataset: &IndicatorDataset) -> Vec<IndicatorRow> {
    vertices
        .iter()
        .map(|&v| IndicatorRow {
            country: dataset.countries[v].clone(),
            values: dataset.values[v].clone(),
            mean: dataset.row_mean(v),
        })
        .collect()
}

/// Country with the largest and smallest mean scaled indicator; ties go to
/// the smaller code.
pub fn extremes(report: &CycleReport) -> (String, String) {
    pick_extremes(report.indicator_table.iter().map(|r| (r.country.as_str(), r.mean)))
}

fn pick_extremes<'a>(rows: impl Iterator<Item = (&'a str, f64)> + Clone) -> (String, String) {
    let better = |best: Option<(&'a str, f64)>, (c, v): (&'a str, f64), greater: bool| match best {
        None => Some((c, v)),
        Some((bc, bv)) => {
            let wins = if greater { v > bv } else { v < bv };
            if wins || (v == bv && c < bc) {
                Some((c, v))
            } else {
                Some((bc, bv))
            }
        }
    };
    let max = rows.clone().fold(None, |b, r| better(b, r, true));
    let min = rows.fold(None, |b, r| better(b, r, false));
    (
        max.map(|m| m.0.to_string()).unwrap_or_default(),
        min.map(|m| m.0.to_string()).unwrap_or_default(),
    )
}

fn per_indicator_extremes(table: &[IndicatorRow], dataset: &IndicatorDataset) -> Vec<IndicatorExtremes> {
    dataset
        .indicators
        .iter()
        .enumerate()
        .map(|(j, id)| {
            let (max, min) = pick_extremes(table.iter().map(|r| (r.country.as_str(), r.values[j])));
            IndicatorExtremes {
                indicator: id.code().to_string(),
                max,
                min,
            }
        })
        .collect()
}

fn fill_tables(report: &mut CycleReport, dataset: &IndicatorDataset) {
    report.countries = report.vertices.iter().map(|&v| dataset.countries[v].clone()).collect();
    report.indicator_table = indicator_table(&report.vertices, dataset);
    report.extremes = extremes(report);
    report.per_indicator_extremes = per_indicator_extremes(&report.indicator_table, dataset);
}

/// One report per positive-length degree-1 interval with
/// `persistence >= min_persistence`, sorted by birth.
pub fn report_cycles(
    barcode: &Barcode,
    filtration: &Filtration,
    dataset: &IndicatorDataset,
    adjacency: &AdjacencyMatrix,
    min_persistence: f64,
) -> Result<Vec<CycleReport>> {
    let mut reports = Vec::new();
    for interval in barcode.in_dim(1) {
        if interval.persistence() < min_persistence {
            continue;
        }
        let edges: Vec<(usize, usize)> = persistence::representative_edges(filtration, interval)
            .into_iter()
            .map(|(a, b)| (a as usize, b as usize))
            .collect();
        if edges.is_empty() {
            return Err(Error::NotACycle("missing representative".into()));
        }
        let loops = decompose_loops(&edges)?;
        let bv = &filtration.get(interval.birth_simplex).vertices;
        let birth_edge = (bv[0] as usize, bv[1] as usize);
        let primary = loops
            .iter()
            .position(|l| {
                loop_edges(l).any(|(a, b)| (a.min(b), a.max(b)) == birth_edge)
            })
            .unwrap_or(0);
        for l in &loops {
            for (a, b) in loop_edges(l) {
                if !adjacency.get(a, b) {
                    return Err(Error::NotACycle(format!(
                        "loop edge {}-{} is not a border",
                        dataset.countries[a], dataset.countries[b]
                    )));
                }
            }
        }
        let closing = match interval.death {
            Some(_) => {
                let (a, b, weight) = closing_edge(interval, filtration)?;
                Some(ClosingEdge {
                    a: dataset.countries[a].clone(),
                    b: dataset.countries[b].clone(),
                    weight,
                })
            }
            None => None,
        };
        let mut report = CycleReport {
            birth: interval.birth,
            death: interval.death,
            countries: Vec::new(),
            vertices: loops[primary].clone(),
            closing_edge: closing,
            indicator_table: Vec::new(),
            extremes: Default::default(),
            per_indicator_extremes: Vec::new(),
            auxiliary: loops
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != primary)
                .map(|(_, l)| l.iter().map(|&v| dataset.countries[v].clone()).collect())
                .collect(),
        };
        fill_tables(&mut report, dataset);
        reports.push(report);
    }
    reports.sort_by(|a, b| {
        a.birth
            .total_cmp(&b.birth)
            .then_with(|| match (a.death, b.death) {
                (Some(x), Some(y)) => x.total_cmp(&y),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
    });
    Ok(reports)
}

/// Shrinks a finite loop along internal borders that appear before the
/// class dies.
///
/// The shortest such border splits the loop in two. The half that bounds at
/// the scale where both halves exist is dropped and the other half kept. If
/// neither half bounds on its own, that border is skipped. Repeats until no
/// internal border shorter than the death remains usable.
pub fn tighten(report: &CycleReport, matrix: &DistanceMatrix, dataset: &IndicatorDataset) -> Result<CycleReport> {
    let Some(death) = report.death else {
        return Ok(report.clone());
    };
    let mut cycle = report.vertices.clone();
    let mut cache: HashMap<u64, Filtration> = HashMap::new();

    'outer: loop {
        let n = cycle.len();
        if n <= 3 {
            break;
        }
        let loop_max = loop_edges(&cycle)
            .map(|(a, b)| matrix.get(a, b))
            .fold(0.0, f64::max);
        let mut internal: Vec<(f64, usize, usize)> = Vec::new();
        for i in 0..n {
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (cycle[i], cycle[j]);
                if !matrix.is_masked(a, b) && matrix.get(a, b) < death {
                    internal.push((matrix.get(a, b), i, j));
                }
            }
        }
        internal.sort_by(|x, y| x.0.total_cmp(&y.0).then((x.1, x.2).cmp(&(y.1, y.2))));

        for (w, i, j) in internal {
            let first: Vec<usize> = cycle[i..=j].to_vec();
            let second: Vec<usize> = cycle[j..].iter().chain(&cycle[..=i]).copied().collect();
            let scale = w.max(loop_max);
            let filt = match cache.entry(scale.to_bits()) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => e.insert(filtration::build(matrix, 2, scale)?),
            };
            let bounds = |part: &[usize]| -> bool {
                let mut chain: Vec<usize> = loop_edges(part)
                    .map(|(a, b)| {
                        let (a, b) = (a.min(b) as u32, a.max(b) as u32);
                        filt.index_of(&[a, b]).expect("edge below scale")
                    })
                    .collect();
                chain.sort_unstable();
                persistence::is_boundary_in_prefix(filt, filt.len(), &chain)
            };
            let keep = if bounds(&first) {
                second
            } else if bounds(&second) {
                first
            } else {
                continue;
            };
            cycle = canonical_loop(keep);
            continue 'outer;
        }
        break;
    }

    let mut out = report.clone();
    out.vertices = cycle;
    fill_tables(&mut out, dataset);
    Ok(out)
}

/// Plain-text table: birth, death, generating countries.
pub fn render_text(reports: &[CycleReport]) -> String {
    let mut s = String::new();
    let finite: Vec<&CycleReport> = reports.iter().filter(|r| !r.is_infinite()).collect();
    let infinite: Vec<&CycleReport> = reports.iter().filter(|r| r.is_infinite()).collect();
    let _ = writeln!(s, "{:<10}{:<10}Generating countries", "Birth", "Death");
    for r in &finite {
        let _ = writeln!(
            s,
            "{:<10}{:<10}{}",
            format!("{:.6}", r.birth),
            format!("{:.6}", r.death.unwrap()),
            r.countries.join(", ")
        );
    }
    if !infinite.is_empty() {
        let _ = writeln!(s);
        let _ = writeln!(s, "Infinite intervals (inherent to the border graph):");
        for r in &infinite {
            let _ = writeln!(s, "{:<10}{:<10}{}", format!("{:.6}", r.birth), "inf", r.countries.join(", "));
        }
    }
    s
}
