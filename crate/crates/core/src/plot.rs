//! SVG rendering of barcodes.

use std::fmt::Write as _;

use crate::persistence::Barcode;

const WIDTH: f64 = 800.0;
const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 30.0;
const AXIS_HEIGHT: f64 = 40.0;
const PANEL_GAP: f64 = 30.0;
const BAR_PITCH: f64 = 4.0;
const MIN_PANEL: f64 = 60.0;

const COLORS: [&str; 3] = ["#1f77b4", "#d62728", "#2ca02c"];

/// Horizontal bars grouped by degree (one panel per degree up to
/// `max_dim`), x axis from 0 to the barcode's filtration cap. Bars that never
/// die run to the right edge and end in an arrowhead.
pub fn barcode_svg(barcode: &Barcode, max_dim: usize) -> String {
    let cap = barcode.max_filtration();
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let x = |v: f64| MARGIN_LEFT + plot_w * (v.min(cap) / cap);

    let panels: Vec<Vec<(f64, Option<f64>)>> = (0..=max_dim)
        .map(|k| barcode.in_dim(k).map(|i| (i.birth, i.death)).collect())
        .collect();
    let heights: Vec<f64> = panels
        .iter()
        .map(|bars| (bars.len() as f64 * BAR_PITCH + 10.0).max(MIN_PANEL))
        .collect();
    let height = MARGIN_TOP + heights.iter().map(|h| h + AXIS_HEIGHT + PANEL_GAP).sum::<f64>();

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(
        s,
        r#"<defs><marker id="arrow" markerWidth="6" markerHeight="6" refX="5" refY="3" orient="auto"><path d="M0,0 L6,3 L0,6 z" fill="context-stroke"/></marker></defs>"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);

    let mut top = MARGIN_TOP;
    for (k, bars) in panels.iter().enumerate() {
        let h = heights[k];
        let color = COLORS[k % COLORS.len()];
        let _ = writeln!(s, r#"<g class="dim{k}">"#);
        let _ = writeln!(
            s,
            r#"<text x="10" y="{:.2}" transform="rotate(-90 10 {:.2})" text-anchor="middle">H{k}</text>"#,
            top + h / 2.0,
            top + h / 2.0
        );
        for (row, (birth, death)) in bars.iter().enumerate() {
            let y = top + 5.0 + row as f64 * BAR_PITCH;
            let x0 = x(*birth);
            match death {
                Some(d) => {
                    let _ = writeln!(
                        s,
                        r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2"/>"#,
                        x(*d)
                    );
                }
                None => {
                    let _ = writeln!(
                        s,
                        r#"<line x1="{x0:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{color}" stroke-width="2" marker-end="url(#arrow)"/>"#,
                        x(cap) - 4.0
                    );
                }
            }
        }
        let axis_y = top + h;
        let _ = writeln!(
            s,
            r#"<line x1="{MARGIN_LEFT:.2}" y1="{axis_y:.2}" x2="{:.2}" y2="{axis_y:.2}" stroke="black"/>"#,
            WIDTH - MARGIN_RIGHT
        );
        for t in 0..=10 {
            let v = cap * t as f64 / 10.0;
            let tx = x(v);
            let _ = writeln!(
                s,
                r#"<line x1="{tx:.2}" y1="{axis_y:.2}" x2="{tx:.2}" y2="{:.2}" stroke="black"/><text x="{tx:.2}" y="{:.2}" text-anchor="middle">{v:.2}</text>"#,
                axis_y + 4.0,
                axis_y + 16.0
            );
        }
        let _ = writeln!(s, "</g>");
        top += h + AXIS_HEIGHT + PANEL_GAP;
    }
    s.push_str("</svg>\n");
    s
}
