//! Distance-graph drawings: every pair joined by an edge colored by its
//! distance class.

use std::fmt::Write;

use crescent_core::predicates::Configuration;
use crescent_core::Result;

const PALETTE: [&str; 12] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
    "#393b79", "#637939",
];

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;

pub fn distance_graph_svg(cfg: &Configuration) -> Result<String> {
    let table = cfg.distance_table()?;
    let n = cfg.len();
    let mut classes: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| table[i][j].clone())
        .collect();
    classes.sort();
    classes.dedup();

    let pts: Vec<(f64, f64)> = cfg.points.iter().map(|p| p.to_f64()).collect();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    // flip y so the picture matches the usual axes
    let at = |(x, y): (f64, f64)| (MARGIN + (x - x0) * scale, SIZE - MARGIN - (y - y0) * scale);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for i in 0..n {
        for j in i + 1..n {
            let k = classes.binary_search(&table[i][j]).expect("class present");
            let (a, b) = (at(pts[i]), at(pts[j]));
            let _ = writeln!(
                s,
                r#"<line class="edge" data-class="{k}" data-distance="{}" x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}" stroke-width="2"/>"#,
                table[i][j],
                a.0,
                a.1,
                b.0,
                b.1,
                PALETTE[k % PALETTE.len()]
            );
        }
    }
    for (i, &p) in pts.iter().enumerate() {
        let (x, y) = at(p);
        let _ = writeln!(s, r#"<circle class="node" data-index="{i}" cx="{x:.3}" cy="{y:.3}" r="6" fill="black"/>"#);
    }
    s.push_str("</svg>\n");
    Ok(s)
}
