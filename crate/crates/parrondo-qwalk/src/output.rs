//! CSV and SVG emitters. All output is deterministic: floats are printed
//! with Rust's shortest round-trip formatting and rows follow the result
//! table order.

use crate::contour::{GridField, Polyline};
use crate::error::{Error, Result};
use crate::observables::ObservableSeries;
use crate::sweep::{RecordMode, SweepResult};
use crate::ClassicalTrajectory;
use std::fmt::Write as _;

fn metadata_block(metadata: &[String]) -> String {
    let mut out = String::new();
    for line in metadata {
        let _ = writeln!(out, "# {line}");
    }
    out
}

/// Observable series as CSV: `step,expected_position,delta_p,entropy`.
pub fn series_csv(series: &ObservableSeries, metadata: &[String]) -> String {
    let mut out = metadata_block(metadata);
    out.push_str("step,expected_position,delta_p,entropy\n");
    for t in 0..series.len() {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            t + 1,
            series.expected_position[t],
            series.delta_p[t],
            series.entropy[t]
        );
    }
    out
}

/// Observable series as a JSON document with the metadata embedded.
pub fn series_json(series: &ObservableSeries, metadata: &[String]) -> String {
    let rows: Vec<serde_json::Value> = (0..series.len())
        .map(|t| {
            serde_json::json!({
                "step": t + 1,
                "expected_position": series.expected_position[t],
                "delta_p": series.delta_p[t],
                "entropy": series.entropy[t],
            })
        })
        .collect();
    let doc = serde_json::json!({ "metadata": metadata, "rows": rows });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

/// Monte Carlo trajectory as CSV: `step,mean_capital,stderr`.
pub fn classical_csv(traj: &ClassicalTrajectory, metadata: &[String]) -> String {
    let mut out = metadata_block(metadata);
    out.push_str("step,mean_capital,stderr\n");
    for (t, (m, se)) in traj.mean_capital.iter().zip(&traj.stderr).enumerate() {
        let _ = writeln!(out, "{},{},{}", t + 1, m, se);
    }
    out
}

/// Sweep result as CSV. Columns adapt to the sweep shape:
/// `<axis1>[,<axis2>][,step],expected_position,delta_p,entropy`.
pub fn sweep_csv(result: &SweepResult, metadata: &[String]) -> String {
    let mut out = metadata_block(metadata);
    let mut header = Vec::new();
    for axis in &result.spec.axes {
        header.push(axis.name.as_str().to_string());
    }
    if result.spec.record_mode == RecordMode::FullSeries {
        header.push("step".into());
    }
    header.extend(["expected_position".into(), "delta_p".into(), "entropy".into()]);
    out.push_str(&header.join(","));
    out.push('\n');
    for row in &result.rows {
        let mut cols = Vec::new();
        if let Some(v) = row.axis1 {
            cols.push(v.to_string());
        }
        if let Some(v) = row.axis2 {
            cols.push(v.to_string());
        }
        if let Some(step) = row.step {
            cols.push(step.to_string());
        }
        cols.push(row.expected_position.to_string());
        cols.push(row.delta_p.to_string());
        cols.push(row.entropy.to_string());
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    out
}

const CELL_PX: usize = 8;
const MARGIN_PX: usize = 20;

/// Diverging color map centered at zero: blue for negative, white at zero,
/// red for positive.
fn diverging_color(value: f64, vmax: f64) -> String {
    let t = if vmax > 0.0 { (value / vmax).clamp(-1.0, 1.0) } else { 0.0 };
    let (r, g, b) = if t >= 0.0 {
        let f = 1.0 - t;
        (255, (255.0 * f).round() as u8, (255.0 * f).round() as u8)
    } else {
        let f = 1.0 + t;
        ((255.0 * f).round() as u8, (255.0 * f).round() as u8, 255u8)
    };
    format!("#{r:02x}{g:02x}{b:02x}")
}

struct HeatmapGrid {
    /// column coordinate labels (x axis)
    ncols: usize,
    nrows: usize,
    /// value at (col, row)
    values: Vec<Vec<f64>>,
    x_name: String,
    y_name: String,
    /// axis ranges for mapping contour coordinates into cells
    x_range: (f64, f64),
    y_range: (f64, f64),
}

fn heatmap_grid(result: &SweepResult) -> Result<HeatmapGrid> {
    match (result.spec.axes.len(), result.spec.record_mode) {
        (2, RecordMode::FinalOnly) => {
            let field = GridField::from_sweep(result)?;
            Ok(HeatmapGrid {
                ncols: field.xs.len(),
                nrows: field.ys.len(),
                x_range: (field.xs[0], *field.xs.last().unwrap()),
                y_range: (field.ys[0], *field.ys.last().unwrap()),
                values: field.values,
                x_name: result.spec.axes[0].name.as_str().into(),
                y_name: result.spec.axes[1].name.as_str().into(),
            })
        }
        (1, RecordMode::FullSeries) => {
            // axis on x, step on y
            let axis = &result.spec.axes[0];
            let steps = result.spec.base.steps;
            let mut values = vec![vec![0.0; steps]; axis.points];
            for (k, row) in result.rows.iter().enumerate() {
                values[k / steps][k % steps] = row.expected_position;
            }
            Ok(HeatmapGrid {
                ncols: axis.points,
                nrows: steps,
                values,
                x_name: axis.name.as_str().into(),
                y_name: "step".into(),
                x_range: (axis.start, axis.stop),
                y_range: (1.0, steps as f64),
            })
        }
        _ => Err(Error::InvalidSweep(
            "SVG heatmap requires a two-axis final-only sweep or a one-axis full-series sweep"
                .into(),
        )),
    }
}

/// Render the sweep as a fixed-cell-size SVG heatmap of the expected
/// position, with optional zero-contour polylines overlaid in red.
pub fn heatmap_svg(result: &SweepResult, contours: Option<&[Polyline]>) -> Result<String> {
    let grid = heatmap_grid(result)?;
    let width = grid.ncols * CELL_PX + 2 * MARGIN_PX;
    let height = grid.nrows * CELL_PX + 2 * MARGIN_PX;
    let vmax = grid
        .values
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        svg,
        r#"<rect width="{width}" height="{height}" fill="white"/>"#
    );
    // y axis points upward: row 0 at the bottom
    for col in 0..grid.ncols {
        for row in 0..grid.nrows {
            let x = MARGIN_PX + col * CELL_PX;
            let y = MARGIN_PX + (grid.nrows - 1 - row) * CELL_PX;
            let color = diverging_color(grid.values[col][row], vmax);
            let _ = writeln!(
                svg,
                r#"<rect x="{x}" y="{y}" width="{CELL_PX}" height="{CELL_PX}" fill="{color}"/>"#
            );
        }
    }
    if let Some(contours) = contours {
        let map_x = |v: f64| {
            let (lo, hi) = grid.x_range;
            MARGIN_PX as f64 + (v - lo) / (hi - lo) * ((grid.ncols - 1) * CELL_PX) as f64
                + CELL_PX as f64 / 2.0
        };
        let map_y = |v: f64| {
            let (lo, hi) = grid.y_range;
            MARGIN_PX as f64
                + (1.0 - (v - lo) / (hi - lo)) * ((grid.nrows - 1) * CELL_PX) as f64
                + CELL_PX as f64 / 2.0
        };
        for polyline in contours {
            if polyline.points.is_empty() {
                continue;
            }
            let pts: Vec<String> = polyline
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", map_x(x), map_y(y)))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="red" stroke-width="1.5"/>"#,
                pts.join(" ")
            );
        }
    }
    // axis labels
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">{}</text>"#,
        width / 2,
        height - 4,
        grid.x_name
    );
    let _ = writeln!(
        svg,
        r#"<text x="12" y="{}" font-size="12" text-anchor="middle" transform="rotate(-90 12 {})">{}</text>"#,
        height / 2,
        height / 2,
        grid.y_name
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
