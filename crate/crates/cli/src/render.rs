//! Barcode rendering: plain text and SVG.
//!
//! Both renderers draw exactly the visible (positive-length) intervals, in
//! the barcode's own (degree, birth, death) order, so their interval counts
//! always agree. All numbers are printed with a fixed precision to keep
//! outputs byte-stable across runs.

use std::fmt::Write as _;

use concept_homology::{Barcode, PersistenceInterval, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("canvas is zero-sized ({width_px}x{row_height_px})")]
    ZeroCanvas { width_px: u32, row_height_px: u32 },
}

/// Layout for the SVG renderer.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    /// Total drawing width in pixels.
    pub width_px: u32,
    /// Height of one interval row in pixels.
    pub row_height_px: u32,
    /// Degrees to draw, one panel each, in the order given. Empty means
    /// every degree from 0 up to the largest with a visible interval.
    pub degree_panels: Vec<usize>,
    /// Draw an arrowhead on intervals that never die.
    pub infinite_marker: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width_px: 640,
            row_height_px: 18,
            degree_panels: Vec::new(),
            infinite_marker: true,
        }
    }
}

/// Six significant digits, no exponent, so parameters such as sqrt(2) print
/// as "1.41421" and integers as "1.00000". Infinities print as "inf".
pub fn format_parameter(x: f64) -> String {
    if x.is_infinite() {
        return if x > 0.0 { "inf".to_string() } else { "-inf".to_string() };
    }
    if x == 0.0 {
        return "0.00000".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// One line per visible interval: `dim <d>: [<birth>, <death|inf>)`.
pub fn render_barcode_text<T: Scalar>(barcode: &Barcode<T>) -> String {
    let mut out = String::new();
    for iv in barcode.visible() {
        let death = if iv.is_infinite() {
            "inf".to_string()
        } else {
            format_parameter(iv.death().as_f64())
        };
        let birth = format_parameter(iv.birth().as_f64());
        writeln!(out, "dim {}: [{birth}, {death})", iv.degree()).unwrap();
    }
    out
}

const MARGIN_L: f64 = 60.0;
const MARGIN_R: f64 = 30.0;
const TOP: f64 = 16.0;
const BOTTOM: f64 = 10.0;
const PANEL_HEADER: f64 = 18.0;
const AXIS_H: f64 = 26.0;
const PANEL_GAP: f64 = 14.0;

/// Draws one horizontal panel per degree, a bar per visible interval, and a
/// parameter axis under each panel. Infinite intervals run to the right
/// margin and get an arrowhead when the spec asks for one. Output is a pure
/// function of the barcode and spec.
pub fn render_barcode_svg<T: Scalar>(
    barcode: &Barcode<T>,
    spec: &RenderSpec,
) -> Result<String, RenderError> {
    if spec.width_px == 0 || spec.row_height_px == 0 {
        return Err(RenderError::ZeroCanvas {
            width_px: spec.width_px,
            row_height_px: spec.row_height_px,
        });
    }

    let bars: Vec<&PersistenceInterval<T>> = barcode.visible().collect();
    let degrees: Vec<usize> = if spec.degree_panels.is_empty() {
        match bars.iter().map(|iv| iv.degree()).max() {
            Some(top) => (0..=top).collect(),
            None => Vec::new(),
        }
    } else {
        spec.degree_panels.clone()
    };
    let panels: Vec<(usize, Vec<&PersistenceInterval<T>>)> = degrees
        .iter()
        .map(|&d| (d, bars.iter().copied().filter(|iv| iv.degree() == d).collect()))
        .collect();

    let width = f64::from(spec.width_px);
    let row_h = f64::from(spec.row_height_px);
    let plot_l = MARGIN_L.min(width * 0.3);
    let plot_r = (width - MARGIN_R).max(plot_l + 1.0);
    let reach = barcode.final_parameter().as_f64();
    let span = if reach > 0.0 { reach * 1.05 } else { 1.0 };
    let x_of = |v: f64| plot_l + (v / span) * (plot_r - plot_l);

    let mut height = TOP + BOTTOM;
    if panels.is_empty() {
        height += AXIS_H;
    } else {
        for (_, rows) in &panels {
            height += PANEL_HEADER + rows.len() as f64 * row_h + AXIS_H + PANEL_GAP;
        }
        height -= PANEL_GAP;
    }

    let mut svg = String::new();
    writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
    )
    .unwrap();

    let axis = |svg: &mut String, y: f64| {
        writeln!(
            svg,
            "  <line class=\"axis\" x1=\"{plot_l:.2}\" y1=\"{y:.2}\" \
             x2=\"{plot_r:.2}\" y2=\"{y:.2}\" stroke=\"#444444\" stroke-width=\"1\"/>"
        )
        .unwrap();
        let mut tick = |v: f64| {
            let tx = x_of(v);
            writeln!(
                svg,
                "  <line class=\"tick\" x1=\"{tx:.2}\" y1=\"{y:.2}\" \
                 x2=\"{tx:.2}\" y2=\"{:.2}\" stroke=\"#444444\" stroke-width=\"1\"/>",
                y + 4.0
            )
            .unwrap();
            writeln!(
                svg,
                "  <text class=\"tick-label\" x=\"{tx:.2}\" y=\"{:.2}\" \
                 font-family=\"monospace\" font-size=\"10\" fill=\"#222222\" \
                 text-anchor=\"middle\">{}</text>",
                y + 16.0,
                format_parameter(v)
            )
            .unwrap();
        };
        tick(0.0);
        if reach > 0.0 {
            tick(reach);
        }
    };

    let mut y = TOP;
    if panels.is_empty() {
        axis(&mut svg, y + 4.0);
    }
    for (i, (degree, rows)) in panels.iter().enumerate() {
        writeln!(svg, " <g class=\"panel\" data-degree=\"{degree}\">").unwrap();
        writeln!(
            svg,
            "  <text class=\"panel-label\" x=\"8\" y=\"{:.2}\" \
             font-family=\"monospace\" font-size=\"11\" fill=\"#222222\">dim {degree}</text>",
            y + 12.0
        )
        .unwrap();
        y += PANEL_HEADER;
        for iv in rows {
            let x0 = x_of(iv.birth().as_f64());
            let x1 = if iv.is_infinite() {
                plot_r
            } else {
                x_of(iv.death().as_f64())
            };
            let bar_w = (x1 - x0).max(0.75);
            let bar_y = y + 3.0;
            let bar_h = (row_h - 6.0).max(2.0);
            writeln!(
                svg,
                "  <rect class=\"bar\" x=\"{x0:.2}\" y=\"{bar_y:.2}\" \
                 width=\"{bar_w:.2}\" height=\"{bar_h:.2}\" fill=\"#2b6cb0\"/>"
            )
            .unwrap();
            if iv.is_infinite() && spec.infinite_marker {
                let mid = y + row_h / 2.0;
                writeln!(
                    svg,
                    "  <polygon class=\"arrow\" points=\"{x1:.2},{:.2} {:.2},{mid:.2} {x1:.2},{:.2}\" \
                     fill=\"#2b6cb0\"/>",
                    mid - 4.0,
                    x1 + 7.0,
                    mid + 4.0
                )
                .unwrap();
            }
            y += row_h;
        }
        axis(&mut svg, y + 4.0);
        y += AXIS_H;
        writeln!(svg, " </g>").unwrap();
        if i + 1 < panels.len() {
            y += PANEL_GAP;
        }
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits_across_magnitudes() {
        assert_eq!(format_parameter(0.0), "0.00000");
        assert_eq!(format_parameter(1.0), "1.00000");
        assert_eq!(format_parameter(2.0_f64.sqrt()), "1.41421");
        assert_eq!(format_parameter(10.0), "10.0000");
        assert_eq!(format_parameter(123456.4), "123456");
        assert_eq!(format_parameter(0.5), "0.500000");
        assert_eq!(format_parameter(-2.5), "-2.50000");
        assert_eq!(format_parameter(f64::INFINITY), "inf");
    }
}
