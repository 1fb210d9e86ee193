//! Deterministic SVG heatmaps of sweep records.
//!
//! The emitter draws one colored cell per grid point on two chosen record
//! columns, with a linear color ramp from zero to the maximum observed
//! value. The document is plain text assembled in a fixed order, so
//! identical records always produce byte-identical SVG — convenient for
//! golden tests and plain-text diffs. Cells whose value is absent (zero
//! success probability) are drawn unfilled rather than as fabricated zeros.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::sweep::SweepRecord;

/// Record columns that can serve as heatmap axes.
pub const AXIS_COLUMNS: [&str; 4] = ["d1", "d2", "mu", "p"];
/// Record columns that can serve as the cell value.
pub const VALUE_COLUMNS: [&str; 2] = ["negativity", "probability"];

// Five-stop ramp (dark violet -> blue -> teal -> green -> yellow),
// interpolated linearly in RGB between neighboring stops.
const RAMP: [(f64, [u8; 3]); 5] = [
    (0.00, [0x44, 0x01, 0x54]),
    (0.25, [0x3b, 0x52, 0x8b]),
    (0.50, [0x21, 0x91, 0x8c]),
    (0.75, [0x5e, 0xc9, 0x62]),
    (1.00, [0xfd, 0xe7, 0x25]),
];

const MARGIN_LEFT: usize = 70;
const MARGIN_TOP: usize = 20;
const MARGIN_BOTTOM: usize = 50;
const MARGIN_RIGHT: usize = 110;
const LEGEND_SEGMENTS: usize = 64;

/// Color for a normalized value t in [0, 1] on the ramp.
fn ramp_color(t: f64) -> String {
    let t = t.clamp(0.0, 1.0);
    for window in RAMP.windows(2) {
        let (t0, c0) = window[0];
        let (t1, c1) = window[1];
        if t <= t1 {
            let s = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
            let mix = |a: u8, b: u8| (f64::from(a) + (f64::from(b) - f64::from(a)) * s).round() as u8;
            return format!(
                "#{:02x}{:02x}{:02x}",
                mix(c0[0], c1[0]),
                mix(c0[1], c1[1]),
                mix(c0[2], c1[2])
            );
        }
    }
    unreachable!("ramp covers [0, 1]")
}

fn axis_value(record: &SweepRecord, column: &str) -> f64 {
    match column {
        "d1" => record.d1,
        "d2" => record.d2,
        "mu" => record.mu,
        "p" => record.p,
        _ => unreachable!("columns are validated before use"),
    }
}

fn cell_value(record: &SweepRecord, column: &str) -> Option<f64> {
    match column {
        "negativity" => record.negativity,
        "probability" => record.probability,
        _ => unreachable!("columns are validated before use"),
    }
}

fn check_columns(
    records: &[SweepRecord],
    x_axis: &str,
    y_axis: &str,
    value_column: &str,
) -> Result<()> {
    let mut violations = Vec::new();
    for (kind, name) in [("x", x_axis), ("y", y_axis)] {
        if !AXIS_COLUMNS.contains(&name) {
            violations.push(format!(
                "heatmap {kind} axis `{name}` must be one of [{}]",
                AXIS_COLUMNS.join(", ")
            ));
        }
    }
    if x_axis == y_axis {
        violations.push("heatmap x and y axes must differ".into());
    }
    if !VALUE_COLUMNS.contains(&value_column) {
        violations.push(format!(
            "heatmap value column `{value_column}` must be one of [{}]",
            VALUE_COLUMNS.join(", ")
        ));
    }
    if records.is_empty() {
        violations.push("heatmap needs at least one record".into());
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::ConfigInvalid { violations })
    }
}

/// Sorted, deduplicated coordinate values of one axis column.
fn axis_ticks(records: &[SweepRecord], column: &str) -> Vec<f64> {
    let mut values: Vec<f64> = records.iter().map(|r| axis_value(r, column)).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    values
}

/// Renders records as a heatmap on `(x_axis, y_axis)`, colored by
/// `value_column`. The records must cover every (x, y) pair exactly once;
/// otherwise this fails with [`Error::IncompleteGrid`]. The y axis points
/// upward and the color scale is linear over [0, max observed value].
pub fn emit_svg_heatmap(
    records: &[SweepRecord],
    x_axis: &str,
    y_axis: &str,
    value_column: &str,
) -> Result<String> {
    check_columns(records, x_axis, y_axis, value_column)?;
    let xs = axis_ticks(records, x_axis);
    let ys = axis_ticks(records, y_axis);

    let mut cells: HashMap<(u64, u64), Option<f64>> = HashMap::with_capacity(records.len());
    for r in records {
        let (x, y) = (axis_value(r, x_axis), axis_value(r, y_axis));
        if cells
            .insert((x.to_bits(), y.to_bits()), cell_value(r, value_column))
            .is_some()
        {
            return Err(Error::IncompleteGrid {
                x_axis: x_axis.into(),
                y_axis: y_axis.into(),
                x,
                y,
            });
        }
    }
    for &x in &xs {
        for &y in &ys {
            if !cells.contains_key(&(x.to_bits(), y.to_bits())) {
                return Err(Error::IncompleteGrid {
                    x_axis: x_axis.into(),
                    y_axis: y_axis.into(),
                    x,
                    y,
                });
            }
        }
    }

    let vmax = cells
        .values()
        .flatten()
        .fold(0.0_f64, |acc, &v| acc.max(v));
    let scale = if vmax > 0.0 { 1.0 / vmax } else { 0.0 };

    let (nx, ny) = (xs.len(), ys.len());
    let cell_w = (640 / nx).clamp(4, 120);
    let cell_h = (400 / ny).clamp(4, 120);
    let plot_w = cell_w * nx;
    let plot_h = cell_h * ny;
    let width = MARGIN_LEFT + plot_w + MARGIN_RIGHT;
    let height = MARGIN_TOP + plot_h + MARGIN_BOTTOM;
    let plot_bottom = MARGIN_TOP + plot_h;

    let mut svg = String::with_capacity(128 * (nx * ny + LEGEND_SEGMENTS + 16));
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="12">"#
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>"##
    );

    // Data cells, column-major with y drawn bottom-up.
    for (ix, &x) in xs.iter().enumerate() {
        for (iy, &y) in ys.iter().enumerate() {
            let px = MARGIN_LEFT + ix * cell_w;
            let py = MARGIN_TOP + (ny - 1 - iy) * cell_h;
            let fill = match cells[&(x.to_bits(), y.to_bits())] {
                Some(v) => ramp_color(v * scale),
                None => "none".to_string(),
            };
            let _ = writeln!(
                svg,
                r#"<rect class="cell" x="{px}" y="{py}" width="{cell_w}" height="{cell_h}" fill="{fill}"/>"#
            );
        }
    }

    // Frame and axis annotations.
    let _ = writeln!(
        svg,
        r##"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#000000"/>"##
    );
    let x_label_y = plot_bottom + 16;
    let _ = writeln!(
        svg,
        r#"<text x="{MARGIN_LEFT}" y="{x_label_y}" text-anchor="start">{:.3}</text>"#,
        xs[0]
    );
    let x_right = MARGIN_LEFT + plot_w;
    let _ = writeln!(
        svg,
        r#"<text x="{x_right}" y="{x_label_y}" text-anchor="end">{:.3}</text>"#,
        xs[nx - 1]
    );
    let x_name_x = MARGIN_LEFT + plot_w / 2;
    let x_name_y = plot_bottom + 36;
    let _ = writeln!(
        svg,
        r#"<text x="{x_name_x}" y="{x_name_y}" text-anchor="middle">{x_axis}</text>"#
    );
    let y_label_x = MARGIN_LEFT - 6;
    let _ = writeln!(
        svg,
        r#"<text x="{y_label_x}" y="{plot_bottom}" text-anchor="end">{:.3}</text>"#,
        ys[0]
    );
    let y_top_label = MARGIN_TOP + 10;
    let _ = writeln!(
        svg,
        r#"<text x="{y_label_x}" y="{y_top_label}" text-anchor="end">{:.3}</text>"#,
        ys[ny - 1]
    );
    let _ = writeln!(svg, r#"<text x="8" y="12" text-anchor="start">{y_axis}</text>"#);

    // Legend: a vertical ramp bar with the value range.
    let legend_x = x_right + 24;
    let seg_h = plot_h as f64 / LEGEND_SEGMENTS as f64;
    for k in 0..LEGEND_SEGMENTS {
        let t = k as f64 / (LEGEND_SEGMENTS - 1) as f64;
        let y = plot_bottom as f64 - (k + 1) as f64 * seg_h;
        let _ = writeln!(
            svg,
            r#"<rect x="{legend_x}" y="{y:.2}" width="16" height="{seg_h:.2}" fill="{}"/>"#,
            ramp_color(t)
        );
    }
    let legend_text_x = legend_x + 20;
    let _ = writeln!(
        svg,
        r#"<text x="{legend_text_x}" y="{plot_bottom}" text-anchor="start">0.000</text>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{legend_text_x}" y="{y_top_label}" text-anchor="start">{vmax:.3}</text>"#
    );
    let _ = writeln!(
        svg,
        r#"<text x="{legend_x}" y="12" text-anchor="start">{value_column}</text>"#
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
