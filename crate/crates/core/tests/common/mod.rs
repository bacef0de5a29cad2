//! Reference implementations used only by the integration tests. None of
//! this goes through the filtration or reduction code under test.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fmt::Write as _;

/// `(dim, birth, death)` with `None` for a bar that never dies.
pub type Bar = (usize, f64, Option<f64>);

fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Rank over Z/2 of vectors stored as bit masks.
fn rank(vectors: &[u64]) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for &v in vectors {
        let mut x = v;
        for &b in &basis {
            x = x.min(x ^ b);
        }
        if x != 0 {
            basis.push(x);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Kernel basis of the Z/2 map sending basis vector `c` to `images[c]`.
fn kernel(columns: &[usize], images: &[u64]) -> Vec<u64> {
    // pivot bit -> (reduced image, source combination)
    let mut pivots: BTreeMap<u32, (u64, u64)> = BTreeMap::new();
    let mut out = Vec::new();
    for &c in columns {
        let mut img = images[c];
        let mut src = 1u64 << c;
        while img != 0 {
            let top = 63 - img.leading_zeros();
            match pivots.get(&top) {
                Some(&(pi, ps)) => {
                    img ^= pi;
                    src ^= ps;
                }
                None => break,
            }
        }
        if img == 0 {
            out.push(src);
        } else {
            pivots.insert(63 - img.leading_zeros(), (img, src));
        }
    }
    out
}

/// Barcode in degrees 0 and 1 of the full Rips complex of a small point
/// cloud, from persistent Betti numbers computed by dense Z/2 elimination
/// at every critical value.
pub fn brute_force_barcode(points: &[Vec<f64>]) -> Vec<Bar> {
    let n = points.len();
    assert!(n <= 8, "oracle sized for tiny clouds");
    let d = |i: usize, j: usize| euclid(&points[i], &points[j]);

    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j, d(i, j)));
        }
    }
    let edge_id = |i: usize, j: usize| edges.iter().position(|&(a, b, _)| a == i && b == j).unwrap();
    let mut tris: Vec<([usize; 3], f64)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                tris.push(([i, j, k], d(i, j).max(d(i, k)).max(d(j, k))));
            }
        }
    }
    assert!(edges.len() <= 64 && tris.len() <= 64);

    let edge_bd: Vec<u64> = edges.iter().map(|&(a, b, _)| (1u64 << a) | (1u64 << b)).collect();
    let tri_bd: Vec<u64> = tris
        .iter()
        .map(|&([a, b, c], _)| (1u64 << edge_id(a, b)) | (1u64 << edge_id(a, c)) | (1u64 << edge_id(b, c)))
        .collect();

    let mut crit: Vec<f64> = std::iter::once(0.0)
        .chain(edges.iter().map(|e| e.2))
        .chain(tris.iter().map(|t| t.1))
        .collect();
    crit.sort_by(f64::total_cmp);
    crit.dedup();
    let m = crit.len();

    let edges_at = |eps: f64| -> Vec<usize> { (0..edges.len()).filter(|&e| edges[e].2 <= eps).collect() };
    let tris_at = |eps: f64| -> Vec<usize> { (0..tris.len()).filter(|&t| tris[t].1 <= eps).collect() };

    // cycles and boundaries at each critical value, per degree
    let z0: Vec<Vec<u64>> = (0..m).map(|_| (0..n).map(|v| 1u64 << v).collect()).collect();
    let b0: Vec<Vec<u64>> = (0..m).map(|i| edges_at(crit[i]).iter().map(|&e| edge_bd[e]).collect()).collect();
    let z1: Vec<Vec<u64>> = (0..m).map(|i| kernel(&edges_at(crit[i]), &edge_bd)).collect();
    let b1: Vec<Vec<u64>> = (0..m).map(|i| tris_at(crit[i]).iter().map(|&t| tri_bd[t]).collect()).collect();

    let persistent_betti = |z: &[Vec<u64>], b: &[Vec<u64>], i: usize, j: usize| -> i64 {
        let dz = rank(&z[i]) as i64;
        let db = rank(&b[j]) as i64;
        let sum: Vec<u64> = z[i].iter().chain(&b[j]).copied().collect();
        let inter = dz + db - rank(&sum) as i64;
        dz - inter
    };

    let mut bars = Vec::new();
    for (dim, z, b) in [(0usize, &z0, &b0), (1, &z1, &b1)] {
        let beta = |i: isize, j: usize| -> i64 {
            if i < 0 {
                0
            } else {
                persistent_betti(z, b, i as usize, j)
            }
        };
        for i in 0..m {
            let ii = i as isize;
            for j in (i + 1)..m {
                let mu = beta(ii, j - 1) - beta(ii, j) - beta(ii - 1, j - 1) + beta(ii - 1, j);
                assert!(mu >= 0, "negative multiplicity");
                for _ in 0..mu {
                    bars.push((dim, crit[i], Some(crit[j])));
                }
            }
            let mu = beta(ii, m - 1) - beta(ii - 1, m - 1);
            assert!(mu >= 0);
            for _ in 0..mu {
                bars.push((dim, crit[i], None));
            }
        }
    }
    sort_bars(&mut bars);
    bars
}

/// `(β0, β1)` of the Rips complex at `eps` by rank-nullity on dense Z/2
/// boundary matrices.
pub fn betti_at(points: &[Vec<f64>], eps: f64) -> (usize, usize) {
    let n = points.len();
    assert!(n <= 8);
    let d = |i: usize, j: usize| euclid(&points[i], &points[j]);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if d(i, j) <= eps {
                edges.push((i, j));
            }
        }
    }
    let edge_bd: Vec<u64> = edges.iter().map(|&(a, b)| (1u64 << a) | (1u64 << b)).collect();
    let mut tri_bd = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let pos = |a: usize, b: usize| edges.iter().position(|&e| e == (a, b));
                if let (Some(x), Some(y), Some(z)) = (pos(i, j), pos(i, k), pos(j, k)) {
                    tri_bd.push((1u64 << x) | (1u64 << y) | (1u64 << z));
                }
            }
        }
    }
    let r1 = rank(&edge_bd);
    let r2 = rank(&tri_bd);
    (n - r1, edges.len() - r1 - r2)
}

pub fn sort_bars(bars: &mut [Bar]) {
    bars.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(a.1.total_cmp(&b.1))
            .then_with(|| match (a.2, b.2) {
                (Some(x), Some(y)) => x.total_cmp(&y),
                (Some(_), None) => std::cmp::Ordering::Less,
                (None, Some(_)) => std::cmp::Ordering::Greater,
                (None, None) => std::cmp::Ordering::Equal,
            })
    });
}

pub fn bars_equal(a: &[Bar], b: &[Bar], tol: f64) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.0 == y.0
                && (x.1 - y.1).abs() <= tol
                && match (x.2, y.2) {
                    (Some(p), Some(q)) => (p - q).abs() <= tol,
                    (None, None) => true,
                    _ => false,
                }
        })
}

/// Single-linkage partition at height `eps` read off a minimum spanning
/// forest (Prim). `None` entries are pairs that are never joined. Returns a
/// block label per vertex, normalised to the smallest member of the block.
pub fn mst_cut(weights: &[Vec<Option<f64>>], eps: f64) -> Vec<usize> {
    let n = weights.len();
    let mut in_tree = vec![false; n];
    let mut forest: Vec<(usize, usize, f64)> = Vec::new();
    for root in 0..n {
        if in_tree[root] {
            continue;
        }
        in_tree[root] = true;
        let mut best: Vec<Option<(f64, usize)>> = (0..n).map(|v| weights[root][v].map(|w| (w, root))).collect();
        loop {
            let next = (0..n)
                .filter(|&v| !in_tree[v])
                .filter_map(|v| best[v].map(|(w, p)| (w, v, p)))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let Some((w, v, p)) = next else { break };
            in_tree[v] = true;
            forest.push((p, v, w));
            for u in 0..n {
                if in_tree[u] {
                    continue;
                }
                if let Some(wu) = weights[v][u] {
                    if best[u].is_none_or(|(bw, _)| wu < bw) {
                        best[u] = Some((wu, v));
                    }
                }
            }
        }
    }
    // components of the forest edges at or below eps, by graph search
    let mut adj = vec![Vec::new(); n];
    for &(a, b, w) in &forest {
        if w <= eps {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut label = vec![usize::MAX; n];
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        label[s] = s;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if label[u] == usize::MAX {
                    label[u] = s;
                    stack.push(u);
                }
            }
        }
    }
    label
}

/// Block label per vertex, normalised to the smallest member of its block.
pub fn normalise_labels(assignment: &[usize]) -> Vec<usize> {
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    for (v, &a) in assignment.iter().enumerate() {
        first.entry(a).or_insert(v);
    }
    assignment.iter().map(|a| first[a]).collect()
}

/// A synthetic "world": countries on a `w × h` grid bordering their four
/// neighbours, with indicator values from a smooth field plus a few
/// outliers. Returns `(indicator_csv, border_csv)`.
pub fn synthetic_world(w: usize, h: usize, holes: &[(usize, usize)]) -> (String, String) {
    let code = |x: usize, y: usize| format!("{}{}", (b'A' + x as u8) as char, (b'A' + y as u8) as char);
    let mut ind = String::from("country,indicator,year,value\n");
    let mut borders = String::from("country_a,country_b\n");
    for x in 0..w {
        for y in 0..h {
            let c = code(x, y);
            let t = (x as f64 * 0.7 + y as f64 * 1.3).sin();
            let u = (x as f64 * 1.1 - y as f64 * 0.4).cos();
            let gdp = 8000.0 + 6000.0 * t + if (x + y) % 7 == 0 { 60000.0 } else { 0.0 };
            let _ = writeln!(ind, "{c},GDP,2014,{:.1}", gdp * 0.9);
            let _ = writeln!(ind, "{c},GDP,2015,{gdp:.1}");
            let _ = writeln!(ind, "{c},LE,2016,{:.2}", 70.0 + 8.0 * u);
            if !holes.contains(&(x, y)) {
                let _ = writeln!(ind, "{c},IM,2015,{:.2}", 30.0 - 20.0 * u + 3.0 * t);
            }
            let _ = writeln!(ind, "{c},GNI,2011,{:.1}", gdp * 0.8 + 500.0 * u);
            let _ = writeln!(ind, "{c},GNI,2012,");
            if x + 1 < w {
                let _ = writeln!(borders, "{c},{}", code(x + 1, y));
            }
            if y + 1 < h {
                let _ = writeln!(borders, "{c},{}", code(x, y + 1));
            }
        }
    }
    // an island with no borders
    let _ = writeln!(ind, "ZZ,GDP,2015,12000");
    let _ = writeln!(ind, "ZZ,LE,2016,75");
    let _ = writeln!(ind, "ZZ,IM,2015,10");
    let _ = writeln!(ind, "ZZ,GNI,2011,11000");
    (ind, borders)
}
