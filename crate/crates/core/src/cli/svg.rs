//! Self-contained SVG run report: trajectory over the final map, and
//! exploration rate against time.

use std::fmt::Write;

use crate::explorer::RunRecord;
use crate::grid::{CellState, OccupancyGrid};

const PANEL: f64 = 400.0;
const MARGIN: f64 = 40.0;
const TRAJECTORY_PIECES: usize = 64;

/// Blue at `t = 0` to red at `t = 1`.
fn time_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    let r = (40.0 + 200.0 * t).round() as u8;
    let b = (240.0 - 200.0 * t).round() as u8;
    format!("#{r:02x}40{b:02x}")
}

fn map_panel(out: &mut String, rec: &RunRecord, belief: &OccupancyGrid) {
    let (w, h) = (belief.width() as f64, belief.height() as f64);
    let cell = PANEL / w.max(h);
    let (ox, oy) = belief.origin();
    let res = belief.resolution();
    let left = MARGIN;
    let top = MARGIN;
    // Row j = 0 sits at the bottom of the panel.
    let py = |j: f64| top + (h - j) * cell;
    let _ = writeln!(
        out,
        r##"<rect x="{left}" y="{top}" width="{:.3}" height="{:.3}" fill="#9e9e9e"/>"##,
        w * cell,
        h * cell
    );
    for j in 0..belief.height() {
        let mut i = 0;
        while i < belief.width() {
            let s = belief.state(i, j);
            let start = i;
            while i < belief.width() && belief.state(i, j) == s {
                i += 1;
            }
            let fill = match s {
                CellState::Unknown => continue,
                CellState::Free => "#ffffff",
                CellState::Occupied => "#202020",
            };
            let _ = writeln!(
                out,
                r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{fill}"/>"#,
                left + start as f64 * cell,
                py(j as f64 + 1.0),
                (i - start) as f64 * cell,
                cell
            );
        }
    }

    let to_px = |x: f64, y: f64| (left + (x - ox) / res * cell, py((y - oy) / res));
    let n = rec.samples.len();
    let t_end = rec.time().max(f64::MIN_POSITIVE);
    let pieces = TRAJECTORY_PIECES.min(n.saturating_sub(1)).max(1);
    for p in 0..pieces {
        let a = p * (n - 1) / pieces;
        let b = ((p + 1) * (n - 1) / pieces).max(a);
        let pts: Vec<String> = rec.samples[a..=b]
            .iter()
            .map(|s| {
                let (x, y) = to_px(s.x, s.y);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let color = time_color(rec.samples[a].t / t_end);
        let _ = writeln!(
            out,
            r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
    }
    let (sx, sy) = to_px(rec.start.x, rec.start.y);
    let _ = writeln!(
        out,
        r##"<circle cx="{sx:.2}" cy="{sy:.2}" r="4" fill="#00a000"/>"##
    );
    let _ = writeln!(
        out,
        r#"<text x="{left}" y="{:.1}" font-size="14">Trajectory ({}, {:.1} m)</text>"#,
        top - 12.0,
        rec.selector,
        rec.distance()
    );
}

fn coverage_panel(out: &mut String, rec: &RunRecord) {
    let left = 2.0 * MARGIN + PANEL + 20.0;
    let top = MARGIN;
    let t_end = rec.time().max(rec.dt);
    let px = |t: f64| left + t / t_end * PANEL;
    let py = |r: f64| top + (1.0 - r) * PANEL;
    let _ = writeln!(
        out,
        r#"<line x1="{left}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/><line x1="{left}" y1="{top}" x2="{left}" y2="{b}" stroke="black"/>"#,
        b = top + PANEL,
        r = left + PANEL
    );
    for k in 0..=4 {
        let frac = k as f64 / 4.0;
        let y = py(frac);
        let x = px(frac * t_end);
        let _ = writeln!(
            out,
            r#"<line x1="{:.1}" y1="{y:.1}" x2="{left}" y2="{y:.1}" stroke="black"/><text x="{:.1}" y="{:.1}" font-size="11" text-anchor="end">{}%</text>"#,
            left - 5.0,
            left - 8.0,
            y + 4.0,
            (frac * 100.0) as u32
        );
        let _ = writeln!(
            out,
            r#"<line x1="{x:.1}" y1="{b:.1}" x2="{x:.1}" y2="{:.1}" stroke="black"/><text x="{x:.1}" y="{:.1}" font-size="11" text-anchor="middle">{:.0}</text>"#,
            top + PANEL + 5.0,
            top + PANEL + 18.0,
            frac * t_end,
            b = top + PANEL
        );
    }
    let pts: Vec<String> = rec
        .samples
        .iter()
        .map(|s| format!("{:.2},{:.2}", px(s.t), py(s.exploration_rate)))
        .collect();
    let _ = writeln!(
        out,
        r##"<polyline points="{}" fill="none" stroke="#1f5fbf" stroke-width="1.5"/>"##,
        pts.join(" ")
    );
    let _ = writeln!(
        out,
        r#"<text x="{left}" y="{:.1}" font-size="14">Exploration rate by time (s)</text>"#,
        top - 12.0
    );
}

/// Renders both panels into one SVG document.
pub fn render_run(rec: &RunRecord, belief: &OccupancyGrid) -> String {
    let width = 3.0 * MARGIN + 2.0 * PANEL + 20.0;
    let height = 2.0 * MARGIN + PANEL + 20.0;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    map_panel(&mut out, rec, belief);
    coverage_panel(&mut out, rec);
    out.push_str("</svg>\n");
    out
}
