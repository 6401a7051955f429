//! Static SVG 1.1 rendering of partition points and their disks.
//!
//! Plane coordinates are used directly with `y` flipped. Dots shrink with
//! the ladder level; disks are drawn at their true radius `c4`. The base
//! disk is not drawn.

use std::fmt::Write;

use hyperpart_core::disks::DiskAssignment;
use hyperpart_core::partition::PartitionPoint;

/// Pixel size of the longer side.
const CANVAS: f64 = 800.0;

/// Shortest round-trip decimal, with `-0` normalised to `0`.
fn num(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

fn open_group(out: &mut String, id: &str, attrs: &str, empty: bool) {
    let close = if empty { "/" } else { "" };
    let _ = writeln!(out, "  <g id=\"{id}\" {attrs}{close}>");
}

pub fn render(points: &[PartitionPoint], disks: &[DiskAssignment]) -> String {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |x: f64, y: f64, r: f64| {
        lo = (lo.0.min(x - r), lo.1.min(y - r));
        hi = (hi.0.max(x + r), hi.1.max(y + r));
    };
    for p in points {
        grow(p.value.re, -p.value.im, 0.0);
    }
    for d in disks {
        grow(d.disk.center.re, -d.disk.center.im, d.disk.radius);
    }
    if points.is_empty() && disks.is_empty() {
        lo = (-1.0, -1.0);
        hi = (1.0, 1.0);
    }
    let extent = (hi.0 - lo.0).max(hi.1 - lo.1).max(f64::MIN_POSITIVE);
    let pad = 0.02 * extent;
    let (x0, y0, w, h) = (
        lo.0 - pad,
        lo.1 - pad,
        hi.0 - lo.0 + 2.0 * pad,
        hi.1 - lo.1 + 2.0 * pad,
    );
    let scale = CANVAS / w.max(h);
    let dot = 0.004 * extent;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        num((w * scale).round()),
        num((h * scale).round()),
        num(x0),
        num(y0),
        num(w),
        num(h)
    );
    open_group(&mut out, "points", "fill=\"black\"", points.is_empty());
    if !points.is_empty() {
        for p in points {
            let _ = writeln!(
                out,
                "    <circle class=\"level-{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                p.level,
                num(p.value.re),
                num(-p.value.im),
                num(dot / (1 + p.level) as f64)
            );
        }
        out.push_str("  </g>\n");
    }
    let stroke = format!(
        "fill=\"none\" stroke=\"steelblue\" stroke-width=\"{}\"",
        num(0.002 * extent)
    );
    open_group(&mut out, "disks", &stroke, disks.is_empty());
    if !disks.is_empty() {
        for d in disks {
            let _ = writeln!(
                out,
                "    <circle class=\"level-{}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
                d.point.level,
                num(d.disk.center.re),
                num(-d.disk.center.im),
                num(d.disk.radius)
            );
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_window_gives_empty_groups() {
        let svg = render(&[], &[]);
        assert!(svg.contains("<g id=\"points\" fill=\"black\"/>"));
        assert!(svg.contains("<g id=\"disks\" "));
        assert!(!svg.contains("<circle"));
        assert_eq!(svg, render(&[], &[]));
    }

    #[test]
    fn negative_zero_is_normalised() {
        assert_eq!(num(-0.0), "0");
        assert_eq!(num(1.05), "1.05");
    }
}
