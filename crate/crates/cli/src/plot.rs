//! Static SVG line charts from sweep CSV files.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{CliError, Result};
use crate::sweep::write_file;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// Named columns of a CSV file; the first column is the x axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub x_label: String,
    pub x: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

fn parse_cell(s: &str) -> f64 {
    s.trim().parse().unwrap_or(f64::NAN)
}

/// Reads the x column and the requested columns from a CSV file.
pub fn read_csv(path: &Path, columns: &[String]) -> Result<Series> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let bad = |message: String| CliError::Csv {
        path: path.to_path_buf(),
        message,
    };
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| bad(e.to_string()))?.clone();
    if header.is_empty() {
        return Err(bad("empty header".into()));
    }
    let index: Vec<usize> = columns
        .iter()
        .map(|c| {
            header
                .iter()
                .position(|h| h == c)
                .ok_or_else(|| bad(format!("no column `{c}`")))
        })
        .collect::<Result<_>>()?;
    let mut x = Vec::new();
    let mut ys = vec![Vec::new(); columns.len()];
    for rec in reader.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        x.push(parse_cell(&rec[0]));
        for (y, &k) in ys.iter_mut().zip(&index) {
            y.push(parse_cell(&rec[k]));
        }
    }
    Ok(Series {
        x_label: header[0].to_string(),
        x,
        columns: columns.iter().cloned().zip(ys).collect(),
    })
}

fn range(values: impl Iterator<Item = f64>) -> Option<(f64, f64)> {
    values.filter(|v| v.is_finite()).fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    if hi - lo < 1e-12 {
        let pad = if lo.abs() > 1e-12 { 0.1 * lo.abs() } else { 1.0 };
        (lo - pad, hi + pad)
    } else {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }
}

/// Round tick positions covering `[lo, hi]`.
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 6.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn label(v: f64) -> String {
    let s = format!("{:.4}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders the series as an SVG document with dashed horizontal lines at `bounds`.
pub fn render_svg(series: &Series, bounds: &[f64]) -> String {
    let (x0, x1) = padded_x(series);
    let all_y = series
        .columns
        .iter()
        .flat_map(|(_, y)| y.iter().copied())
        .chain(bounds.iter().copied());
    let (y0, y1) = range(all_y).map_or((0.0, 1.0), |(lo, hi)| padded(lo, hi));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<g class="axes" stroke="black"><line x1="{LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.2}"/></g>"#,
        TOP + ph,
        LEFT + pw,
        TOP + ph,
        TOP + ph
    );
    for t in ticks(x0, x1) {
        let _ = writeln!(
            out,
            r#"<g class="xtick"><line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="black"/><text x="{0:.2}" y="{3:.2}" text-anchor="middle">{4}</text></g>"#,
            sx(t),
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0,
            label(t)
        );
    }
    for t in ticks(y0, y1) {
        let _ = writeln!(
            out,
            r#"<g class="ytick"><line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}" stroke="black"/><text x="{3:.2}" y="{4:.2}" text-anchor="end">{5}</text></g>"#,
            LEFT - 5.0,
            sy(t),
            LEFT,
            LEFT - 8.0,
            sy(t) + 4.0,
            label(t)
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="xlabel" x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 15.0,
        escape(&series.x_label)
    );
    let _ = writeln!(
        out,
        r#"<text class="ylabel" x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">value</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );
    for &b in bounds {
        let _ = writeln!(
            out,
            r#"<line class="bound" data-y="{b}" x1="{LEFT}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}" stroke="gray" stroke-dasharray="6 4"/>"#,
            sy(b),
            LEFT + pw
        );
    }
    for (k, (name, ys)) in series.columns.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let points: Vec<String> = series
            .x
            .iter()
            .zip(ys)
            .filter(|(x, y)| x.is_finite() && y.is_finite())
            .map(|(&x, &y)| format!("{:.2},{:.2}", sx(x), sy(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline data-column="{}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            escape(name),
            points.join(" ")
        );
        let ly = TOP + 10.0 + 20.0 * k as f64;
        let lx = LEFT + pw + 15.0;
        let _ = writeln!(
            out,
            r#"<g class="legend"><line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text></g>"#,
            lx + 25.0,
            lx + 30.0,
            ly + 4.0,
            escape(name)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn padded_x(series: &Series) -> (f64, f64) {
    match range(series.x.iter().copied()) {
        Some((lo, hi)) if hi > lo => (lo, hi),
        Some((lo, hi)) => padded(lo, hi),
        None => (0.0, 1.0),
    }
}

/// Reads `csv_path`, renders the requested columns and writes the SVG.
pub fn plot(csv_path: &Path, columns: &[String], bounds: &[f64], out: &Path) -> Result<()> {
    if columns.is_empty() {
        return Err(CliError::usage("no columns to plot"));
    }
    let series = read_csv(csv_path, columns)?;
    write_file(out, &render_svg(&series, bounds))
}
