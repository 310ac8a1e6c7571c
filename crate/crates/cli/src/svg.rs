//! Minimal SVG scatter plots on log-log axes with a y = x reference line.

use std::fmt::Write;

const SIZE: f64 = 400.0;
const MARGIN: f64 = 50.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Points are (x, y) pairs; non-positive coordinates are clamped to the axis minimum.
pub fn scatter(title: &str, x_label: &str, y_label: &str, points: &[(f64, f64)]) -> String {
    let finite: Vec<f64> = points
        .iter()
        .flat_map(|&(x, y)| [x, y])
        .filter(|v| v.is_finite() && *v > 0.0)
        .collect();
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (lo, hi) = if finite.is_empty() { (0.1, 10.0) } else { (lo / 2.0, hi * 2.0) };
    let (llo, lhi) = (lo.log10(), hi.log10());
    let span = SIZE - 2.0 * MARGIN;
    let proj = |v: f64| {
        let v = if v.is_finite() && v > 0.0 { v } else { lo };
        (v.log10() - llo) / (lhi - llo) * span
    };
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, SIZE / 2.0, escape(title));
    let (x0, y0, x1, y1) = (MARGIN, SIZE - MARGIN, SIZE - MARGIN, MARGIN);
    let _ = writeln!(out, r#"<rect x="{x0}" y="{y1}" width="{span}" height="{span}" fill="none" stroke="black"/>"#);
    let _ = writeln!(out, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="grey" stroke-dasharray="4 4"/>"#);
    for (v, anchor) in [(lo, "start"), (hi, "end")] {
        let p = proj(v);
        let _ = writeln!(out, r#"<text x="{:.1}" y="{}" font-size="10" text-anchor="{anchor}">{v:.3}</text>"#, x0 + p, y0 + 14.0);
        let _ = writeln!(out, r#"<text x="{}" y="{:.1}" font-size="10" text-anchor="end">{v:.3}</text>"#, x0 - 4.0, y0 - p);
    }
    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle" font-size="12">{}</text>"#, SIZE / 2.0, SIZE - 12.0, escape(x_label));
    let _ = writeln!(
        out,
        r#"<text x="14" y="{}" text-anchor="middle" font-size="12" transform="rotate(-90 14 {})">{}</text>"#,
        SIZE / 2.0,
        SIZE / 2.0,
        escape(y_label)
    );
    for &(x, y) in points {
        let _ = writeln!(out, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="steelblue"/>"#, x0 + proj(x), y0 - proj(y));
    }
    out.push_str("</svg>\n");
    out
}
