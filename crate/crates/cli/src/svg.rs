//! Deterministic SVG drawings of a diagram and its curves.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use troplag::topology::{classify_end, EndKind};
use troplag::tropical::validate;
use troplag::{RatPoint, Rational};

use crate::format::Document;

const DRAWING: f64 = 480.0;
const MARGIN: f64 = 24.0;
const CURVE: &str = "#c0141b";

struct Frame {
    min_x: f64,
    max_y: f64,
    scale: f64,
}

impl Frame {
    fn x(&self, p: &RatPoint) -> f64 {
        MARGIN + (f(&p.x) - self.min_x) * self.scale
    }

    fn y(&self, p: &RatPoint) -> f64 {
        MARGIN + (self.max_y - f(&p.y)) * self.scale
    }
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn cross(out: &mut String, x: f64, y: f64, r: f64, stroke: &str) {
    let _ = writeln!(
        out,
        r##"<path d="M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}" stroke="{stroke}" stroke-width="2" fill="none"/>"##,
        x - r,
        y - r,
        x + r,
        y + r,
        x - r,
        y + r,
        x + r,
        y - r
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Polygon shaded grey, cuts dashed, nodes as ×, curves in red with
/// ⊗ at cross-caps, ∘ at collars and a red × at node-caps.
pub fn render(doc: &Document) -> String {
    let d = &doc.diagram;
    let xs: Vec<f64> = d.polygon_vertices().iter().map(|p| f(&p.x)).collect();
    let ys: Vec<f64> = d.polygon_vertices().iter().map(|p| f(&p.y)).collect();
    let (min_x, max_x) = xs
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let (min_y, max_y) = ys
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let scale = DRAWING / (max_x - min_x).max(max_y - min_y);
    let frame = Frame {
        min_x,
        max_y,
        scale,
    };
    let width = (max_x - min_x) * scale + 2.0 * MARGIN;
    let height = (max_y - min_y) * scale + 2.0 * MARGIN;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"##
    );
    let _ = writeln!(out, "<title>{}</title>", escape(d.name()));

    out.push_str("<path d=\"");
    for (i, p) in d.polygon_vertices().iter().enumerate() {
        let _ = write!(
            out,
            "{} {:.2} {:.2} ",
            if i == 0 { "M" } else { "L" },
            frame.x(p),
            frame.y(p)
        );
    }
    out.push_str("Z\" fill=\"#d9d9d9\" stroke=\"#000000\" stroke-width=\"1.5\"/>\n");

    for i in 0..d.nodes().len() {
        let (p, q) = d.cut_segment(i);
        let _ = writeln!(
            out,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#000000" stroke-width="1" stroke-dasharray="6,4"/>"##,
            frame.x(p),
            frame.y(p),
            frame.x(q),
            frame.y(q)
        );
    }
    for n in d.nodes() {
        cross(
            &mut out,
            frame.x(&n.position),
            frame.y(&n.position),
            6.0,
            "#000000",
        );
    }

    for nc in &doc.curves {
        let c = &nc.curve;
        let valid = validate(d, c).is_valid();
        let _ = writeln!(out, "<g id=\"curve-{}\">", escape(&nc.name));
        let segment = |out: &mut String, p: &RatPoint, q: &RatPoint| {
            let _ = writeln!(
                out,
                r##"<polyline points="{:.2},{:.2} {:.2},{:.2}" stroke="{CURVE}" stroke-width="2.5" fill="none"/>"##,
                frame.x(p),
                frame.y(p),
                frame.x(q),
                frame.y(q)
            );
        };
        for e in &c.edges {
            if let (Some(p), Some(q)) = (c.vertex(&e.from), c.vertex(&e.to)) {
                segment(&mut out, &p.position, &q.position);
            }
        }
        for e in &c.ends {
            let (Some(p), Some(q)) = (c.end_start(e), c.end_stop(d, e)) else {
                continue;
            };
            segment(&mut out, p, &q);
            let kind = if valid { classify_end(d, e).ok() } else { None };
            let (x, y) = (frame.x(&q), frame.y(&q));
            match kind {
                Some(EndKind::CrossCap) => {
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{x:.2}" cy="{y:.2}" r="6" fill="#ffffff" stroke="{CURVE}" stroke-width="1.5"/>"##
                    );
                    cross(&mut out, x, y, 4.2, CURVE);
                }
                Some(EndKind::Collar) => {
                    let _ = writeln!(
                        out,
                        r##"<circle cx="{x:.2}" cy="{y:.2}" r="5" fill="#ffffff" stroke="{CURVE}" stroke-width="1.5"/>"##
                    );
                }
                Some(EndKind::DiscCap) => cross(&mut out, x, y, 4.0, CURVE),
                None => {}
            }
        }
        for v in &c.vertices {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{CURVE}"/>"##,
                frame.x(&v.position),
                frame.y(&v.position)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse;

    #[test]
    fn bare_diagram_has_no_curve_elements() {
        let doc = parse("diagram xabc a=1 b=1 c=4/3 s=4\n").unwrap();
        let svg = render(&doc);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn end_marks_follow_end_kinds() {
        let doc = parse(
            "diagram rectangle width=4 height=2\ncurve c\n\
             end a (2,1) dir=(1,0) land=(4,1)\nend b (2,1) dir=(-1,0) land=(0,1)\n",
        )
        .unwrap();
        let svg = render(&doc);
        // two collars: plain circles, no crosses
        assert_eq!(svg.matches("r=\"5\"").count(), 2);
        assert_eq!(svg.matches("<path").count(), 1);
    }
}
