//! Static SVG scatter plots of zeros with region boundaries.

use std::fmt::Write;

use num_complex::Complex64;

use crate::regions::{Region, RegionKind};

const SIZE: f64 = 600.0;
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// One class of points, drawn as circles of a single color.
pub struct Markers<'a> {
    pub label: &'a str,
    pub points: &'a [Complex64],
}

pub struct Boundary<'a> {
    pub label: &'a str,
    pub region: &'a Region,
}

/// Renders the plot. The view is square, centered at the origin, and spans
/// 1.2 times the largest modulus among the points and region extents.
pub fn render(markers: &[Markers<'_>], boundaries: &[Boundary<'_>]) -> String {
    let mut extent: f64 = markers
        .iter()
        .flat_map(|m| m.points.iter())
        .map(|p| p.norm())
        .fold(0.0, f64::max);
    for b in boundaries {
        let r = b.region;
        let reach = match r.kind {
            RegionKind::HalfPlane => r.center.norm(),
            _ => r.center.norm() + r.radius,
        };
        extent = extent.max(reach);
    }
    if !extent.is_finite() || extent <= 0.0 {
        extent = 1.0;
    }
    let extent = 1.2 * extent;
    let scale = SIZE / (2.0 * extent);
    let to_svg = |z: Complex64| (SIZE / 2.0 + z.re * scale, SIZE / 2.0 - z.im * scale);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="{SIZE}" height="{SIZE}" fill="white"/>"#);
    let (ox, oy) = to_svg(Complex64::new(0.0, 0.0));
    let _ = writeln!(
        s,
        r##"<g class="axes" stroke="#bbbbbb" stroke-width="1"><line x1="0" y1="{oy:.3}" x2="{SIZE}" y2="{oy:.3}"/><line x1="{ox:.3}" y1="0" x2="{ox:.3}" y2="{SIZE}"/></g>"##
    );

    for (i, b) in boundaries.iter().enumerate() {
        let color = PALETTE[(i + 2) % PALETTE.len()];
        let d = match b.region.kind {
            RegionKind::Disk | RegionKind::ExteriorDisk => {
                let (cx, cy) = to_svg(b.region.center);
                let r = b.region.radius * scale;
                format!(
                    "M {:.3} {cy:.3} A {r:.3} {r:.3} 0 1 0 {:.3} {cy:.3} A {r:.3} {r:.3} 0 1 0 {:.3} {cy:.3} Z",
                    cx + r,
                    cx - r,
                    cx + r
                )
            }
            RegionKind::HalfPlane => {
                let dir = b.region.normal * Complex64::new(0.0, 1.0);
                let len = 4.0 * extent;
                let (x1, y1) = to_svg(b.region.center - dir * len);
                let (x2, y2) = to_svg(b.region.center + dir * len);
                format!("M {x1:.3} {y1:.3} L {x2:.3} {y2:.3}")
            }
        };
        let dash = if b.region.closed {
            ""
        } else {
            r#" stroke-dasharray="6 4""#
        };
        let _ = writeln!(
            s,
            r#"<path class="region" data-label="{}" d="{d}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
            escape(b.label)
        );
    }

    for (i, m) in markers.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        for p in m.points {
            let (x, y) = to_svg(*p);
            let _ = writeln!(
                s,
                r#"<circle class="zero" data-label="{}" cx="{x:.3}" cy="{y:.3}" r="3.5" fill="{color}"/>"#,
                escape(m.label)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_well_formed() {
        let pts = [Complex64::new(1.0, 0.0), Complex64::new(0.0, -2.0)];
        let disk = Region::disk(Complex64::new(0.0, 0.0), 1.0, true);
        let half = Region::half_plane(Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), false);
        let svg = render(
            &[Markers {
                label: "Z(Q)",
                points: &pts,
            }],
            &[
                Boundary {
                    label: "K <&>",
                    region: &disk,
                },
                Boundary {
                    label: "H",
                    region: &half,
                },
            ],
        );
        let doc = roxmltree::Document::parse(&svg).unwrap();
        let count = |tag: &str| doc.descendants().filter(|n| n.has_tag_name(tag)).count();
        assert_eq!(count("circle"), 2);
        assert_eq!(count("path"), 2);
    }

    #[test]
    fn empty_view_defaults() {
        let svg = render(
            &[Markers {
                label: "z",
                points: &[Complex64::new(0.0, 0.0)],
            }],
            &[],
        );
        assert!(svg.contains(r#"cx="300.000" cy="300.000""#));
    }
}
