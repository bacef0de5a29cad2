//! Browser front end for `devtopo`: points placed on a canvas go through the
//! same filtration and reduction as the command line tool.
//!
//! Points cross the boundary as a flat `[x0, y0, x1, y1, ...]` array and
//! results come back as SVG or JSON strings. The `*_json`/`*_svg` functions
//! are plain Rust so they can be tested natively.

use devtopo::clustering;
use devtopo::cycles;
use devtopo::filtration;
use devtopo::metric::DistanceMatrix;
use devtopo::persistence;
use devtopo::plot;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Beyond this the page stops feeling interactive.
pub const MAX_POINTS: usize = 200;

fn matrix(xy: &[f64]) -> Result<DistanceMatrix, String> {
    if !xy.len().is_multiple_of(2) {
        return Err("coordinates must come in pairs".into());
    }
    let n = xy.len() / 2;
    if n == 0 {
        return Err("no points".into());
    }
    if n > MAX_POINTS {
        return Err(format!("at most {MAX_POINTS} points"));
    }
    if xy.iter().any(|v| !v.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    Ok(DistanceMatrix::from_fn(labels, f64::INFINITY, |i, j| {
        let dx = xy[2 * i] - xy[2 * j];
        let dy = xy[2 * i + 1] - xy[2 * j + 1];
        (dx * dx + dy * dy).sqrt()
    }))
}

fn check_scale(scale: f64) -> Result<(), String> {
    if scale.is_finite() && scale > 0.0 {
        Ok(())
    } else {
        Err("scale must be a positive number".into())
    }
}

/// Degree 0 and 1 barcode of the Rips filtration up to `max_filtration`.
pub fn barcode_svg(xy: &[f64], max_filtration: f64) -> Result<String, String> {
    check_scale(max_filtration)?;
    let f = filtration::build(&matrix(xy)?, 2, max_filtration).map_err(|e| e.to_string())?;
    Ok(plot::barcode_svg(&persistence::reduce(&f), 1))
}

#[derive(Serialize)]
struct Slice {
    eps: f64,
    /// Cluster id per point, 0 being the largest cluster.
    cluster: Vec<usize>,
    sizes: Vec<usize>,
    /// Pairs within `eps`, for drawing the 1-skeleton.
    edges: Vec<(usize, usize)>,
}

/// Connected components of the `eps` slice, with its edges.
pub fn components_json(xy: &[f64], eps: f64) -> Result<String, String> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err("eps must be a non-negative number".into());
    }
    let m = matrix(xy)?;
    let p = clustering::components_at(&m, eps);
    let n = m.len();
    let edges = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .filter(|&(i, j)| m.get(i, j) <= eps)
        .collect();
    let slice = Slice {
        eps,
        sizes: p.sizes(),
        cluster: p.assignment,
        edges,
    };
    serde_json::to_string(&slice).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Loop {
    birth: f64,
    death: Option<f64>,
    /// Point indices in walking order.
    loops: Vec<Vec<usize>>,
}

/// Every degree-1 bar with the loops of its representative cycle, longest
/// lived first.
pub fn cycles_json(xy: &[f64], max_filtration: f64) -> Result<String, String> {
    check_scale(max_filtration)?;
    let f = filtration::build(&matrix(xy)?, 2, max_filtration).map_err(|e| e.to_string())?;
    let b = persistence::reduce(&f);
    let mut out = Vec::new();
    for i in b.in_dim(1) {
        let edges: Vec<(usize, usize)> = persistence::representative_edges(&f, i)
            .into_iter()
            .map(|(a, b)| (a as usize, b as usize))
            .collect();
        let loops = cycles::decompose_loops(&edges).map_err(|e| e.to_string())?;
        out.push(Loop {
            birth: i.birth,
            death: i.death,
            loops,
        });
    }
    out.sort_by(|a, b| {
        let p = |l: &Loop| l.death.unwrap_or(max_filtration) - l.birth;
        p(b).total_cmp(&p(a))
    });
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn barcode(xy: &[f64], max_filtration: f64) -> Result<String, JsError> {
    barcode_svg(xy, max_filtration).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn components(xy: &[f64], eps: f64) -> Result<String, JsError> {
    components_json(xy, eps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn loops(xy: &[f64], max_filtration: f64) -> Result<String, JsError> {
    cycles_json(xy, max_filtration).map_err(|e| JsError::new(&e))
}
