use std::fmt::Write;

use super::escape;
use super::plot::{PyramidPlotData, ScatterPlotData, ScatterPoint};

pub const BLUE: &str = "#1f77b4";
pub const ORANGE: &str = "#ff7f0e";
const RED_AREA: &str = "#d62728";

const SIZE: f64 = 400.0;
const MARGIN: f64 = 48.0;
const SPAN: f64 = SIZE - 2.0 * MARGIN;

fn px(x: f64) -> f64 {
    MARGIN + x / 100.0 * SPAN
}

fn py(y: f64) -> f64 {
    SIZE - MARGIN - y / 100.0 * SPAN
}

fn scatter_svg_with(points: &[ScatterPoint], title: &str) -> String {
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(s, "<title>{}</title>", escape(title)).unwrap();
    writeln!(s, r#"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<polygon class="low-quality-region" points="{},{} {},{} {},{}" fill="{RED_AREA}" fill-opacity="0.18"/>"#,
        px(0.0),
        py(0.0),
        px(100.0),
        py(0.0),
        px(100.0),
        py(100.0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{RED_AREA}" stroke-dasharray="4 3"/>"#,
        px(0.0),
        py(0.0),
        px(100.0),
        py(100.0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{SPAN}" height="{SPAN}" fill="none" stroke="black"/>"#
    )
    .unwrap();
    for t in [0.0, 25.0, 50.0, 75.0, 100.0] {
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{t}</text>"#,
            px(t),
            SIZE - MARGIN + 16.0
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{t}</text>"#,
            MARGIN - 6.0,
            py(t) + 4.0
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">FPr (%)</text>"#,
        SIZE / 2.0,
        SIZE - 10.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">TPr (%)</text>"#,
        SIZE / 2.0,
        SIZE / 2.0
    )
    .unwrap();
    for p in points {
        let fill = if p.low_quality { RED_AREA } else { BLUE };
        writeln!(
            s,
            r#"<circle class="rule-point" data-rule="{}" cx="{:.2}" cy="{:.2}" r="5" fill="{fill}" stroke="black" stroke-width="0.5"><title>Rule {} (FPr {}%, TPr {}%)</title></circle>"#,
            p.rule_id,
            px(p.x),
            py(p.y),
            p.rule_id,
            p.x,
            p.y
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

/// TPr-vs-FPr dot plot with the region below the diagonal shaded red.
pub fn scatter_svg(data: &ScatterPlotData) -> String {
    scatter_svg_with(&data.points, "Rules by FPr and TPr")
}

/// The same plot restricted to one rule.
pub fn rule_scatter_svg(point: &ScatterPoint) -> String {
    scatter_svg_with(std::slice::from_ref(point), &format!("Rule {}", point.rule_id))
}

/// Mirrored bars: TPr to the left of the axis, FPr to the right.
pub fn pyramid_svg(data: &PyramidPlotData) -> String {
    const ROW: f64 = 22.0;
    const HALF: f64 = 150.0;
    let width = 2.0 * HALF + 2.0 * MARGIN + 40.0;
    let center = MARGIN + 40.0 + HALF;
    let height = MARGIN * 2.0 + ROW * data.rows.len().max(1) as f64;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    s.push_str("<title>TPr and FPr per rule</title>\n");
    writeln!(
        s,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" fill="{BLUE}">TPr</text>"#,
        center - HALF / 2.0,
        MARGIN - 14.0
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle" fill="{ORANGE}">FPr</text>"#,
        center + HALF / 2.0,
        MARGIN - 14.0
    )
    .unwrap();
    for (i, row) in data.rows.iter().enumerate() {
        let y = MARGIN + i as f64 * ROW;
        let left = row.tpr * HALF;
        let right = row.fpr * HALF;
        writeln!(
            s,
            r#"<text x="{}" y="{:.2}" text-anchor="end">Rule {}</text>"#,
            MARGIN + 30.0,
            y + ROW / 2.0 + 4.0,
            row.rule_id
        )
        .unwrap();
        writeln!(
            s,
            r#"<rect class="tpr-bar" data-rule="{}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{BLUE}"><title>Rule {} TPr {}</title></rect>"#,
            row.rule_id,
            center - left,
            y + 2.0,
            left,
            ROW - 4.0,
            row.rule_id,
            row.tpr
        )
        .unwrap();
        writeln!(
            s,
            r#"<rect class="fpr-bar" data-rule="{}" x="{center:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{ORANGE}"><title>Rule {} FPr {}</title></rect>"#,
            row.rule_id,
            y + 2.0,
            right,
            ROW - 4.0,
            row.rule_id,
            row.fpr
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<line x1="{center}" y1="{}" x2="{center}" y2="{}" stroke="black"/>"#,
        MARGIN - 4.0,
        height - MARGIN + 4.0
    )
    .unwrap();
    s.push_str("</svg>\n");
    s
}
