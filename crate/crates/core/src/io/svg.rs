//! SVG 1.1 drawing of a scene and, when simple, its union boundary.

use std::fmt::Write as _;

use crate::geom::Point;
use crate::union::{union_boundary, Scene, UnionResult};

#[derive(Clone, Debug)]
pub struct SvgOptions {
    /// Width of the drawing in pixels; height follows the aspect ratio.
    pub width: f64,
    pub label_vertices: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { width: 800.0, label_vertices: false }
    }
}

const PALETTE: [&str; 8] = ["#b5651d", "#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#17becf", "#7f7f7f", "#e377c2"];

pub fn render_svg(s: &Scene, opts: &SvgOptions) -> String {
    let pts: Vec<(f64, f64)> = s.triangles().iter().flat_map(|t| t.vertices().iter().map(Point::to_f64)).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let margin = 0.05 * span;
    let scale = opts.width / (x1 - x0 + 2.0 * margin).max(f64::MIN_POSITIVE);
    let height = (y1 - y0 + 2.0 * margin) * scale;
    let map = |p: &Point| {
        let (x, y) = p.to_f64();
        ((x - x0 + margin) * scale, (y1 + margin - y) * scale)
    };
    let stroke = 0.002 * opts.width;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.2}" height="{:.2}" viewBox="0 0 {:.2} {:.2}">"#,
        opts.width, height, opts.width, height
    )
    .unwrap();
    for (i, t) in s.triangles().iter().enumerate() {
        let [a, b, c] = t.vertices().clone().map(|p| map(&p));
        writeln!(
            out,
            r#"<path class="triangle" d="M {:.3} {:.3} L {:.3} {:.3} L {:.3} {:.3} Z" fill="{}" fill-opacity="0.3" stroke="{}" stroke-width="{:.3}"/>"#,
            a.0, a.1, b.0, b.1, c.0, c.1, PALETTE[i % PALETTE.len()], PALETTE[i % PALETTE.len()], stroke * 0.5
        )
        .unwrap();
    }
    match union_boundary(s) {
        UnionResult::SimplePolygon(p) => {
            let pts: Vec<String> = p.vertices.iter().map(|v| {
                let (x, y) = map(v);
                format!("{x:.3},{y:.3}")
            }).collect();
            writeln!(
                out,
                r#"<polygon class="boundary" points="{}" fill="none" stroke="black" stroke-width="{:.3}"/>"#,
                pts.join(" "),
                stroke
            )
            .unwrap();
            if opts.label_vertices {
                for (i, v) in p.vertices.iter().enumerate() {
                    let (x, y) = map(v);
                    writeln!(
                        out,
                        r#"<text class="label" x="{:.3}" y="{:.3}" font-size="{:.2}">{}</text>"#,
                        x, y, 0.015 * opts.width, i + 1
                    )
                    .unwrap();
                }
            }
        }
        UnionResult::Rejected(r) => {
            let (x, y) = map(&r.witness);
            writeln!(
                out,
                r#"<circle class="witness" cx="{:.3}" cy="{:.3}" r="{:.3}" fill="red"><title>{}</title></circle>"#,
                x, y, 4.0 * stroke, r.reason.name()
            )
            .unwrap();
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Point, Triangle};

    #[test]
    fn disjoint_pair_marks_witness() {
        let t = |x: i64| Triangle::new(Point::from_ints(x, 0), Point::from_ints(x + 1, 0), Point::from_ints(x, 1)).unwrap();
        let s = Scene::new(vec![t(0), t(5)]).unwrap();
        let svg = render_svg(&s, &SvgOptions::default());
        assert_eq!(svg.matches(r#"class="triangle""#).count(), 2);
        assert_eq!(svg.matches(r#"class="witness""#).count(), 1);
        assert!(!svg.contains("boundary"));
    }

    fn loop_len(svg: &str) -> usize {
        let start = svg.find(r#"class="boundary" points=""#).unwrap() + 25;
        svg[start..].split('"').next().unwrap().split(' ').count()
    }

    #[test]
    fn hexagram_draws_twelve_vertex_loop() {
        let svg = render_svg(&crate::construct::hexagram(), &SvgOptions::default());
        assert_eq!(svg.matches(r#"class="triangle""#).count(), 2);
        assert_eq!(loop_len(&svg), 12);
    }

    #[test]
    fn nine_n_minus_six_at_four() {
        let s = crate::construct::family_9n6(4).unwrap();
        let opts = SvgOptions { label_vertices: true, ..Default::default() };
        let svg = render_svg(&s, &opts);
        assert_eq!(svg.matches(r#"class="triangle""#).count(), 4);
        assert_eq!(loop_len(&svg), 30);
        assert_eq!(svg.matches(r#"class="label""#).count(), 30);
        assert_eq!(svg, render_svg(&s, &opts));
    }
}
