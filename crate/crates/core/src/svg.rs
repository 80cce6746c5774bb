//! SVG 1.1 figures of planar trajectories.

use std::fmt::Write as _;

use crate::geom::Simplex;
use crate::iteration::{IterationError, Trajectory};
use crate::scalar::Real;

/// What to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotMode {
    /// Each triangle with its incircle and contact points.
    Root,
    /// Each triangle's circumcircle together with the next triangle.
    Containment,
    /// The circumcenter trail, even and odd indices in different colors.
    Centers,
}

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 0.05;

enum Shape {
    Polygon { points: Vec<[f64; 2]>, class: &'static str },
    Circle { center: [f64; 2], radius: f64, class: &'static str },
    Dot { at: [f64; 2], class: &'static str },
    Path { points: Vec<[f64; 2]>, class: &'static str },
}

impl Shape {
    fn extent(&self) -> [f64; 4] {
        match self {
            Shape::Polygon { points, .. } | Shape::Path { points, .. } => points.iter().fold(
                [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY],
                |b, p| [b[0].min(p[0]), b[1].min(p[1]), b[2].max(p[0]), b[3].max(p[1])],
            ),
            Shape::Circle { center: c, radius: r, .. } => [c[0] - r, c[1] - r, c[0] + r, c[1] + r],
            Shape::Dot { at, .. } => [at[0], at[1], at[0], at[1]],
        }
    }
}

fn xy(p: &[f64]) -> [f64; 2] {
    [p[0], p[1]]
}

fn triangle(s: &Simplex) -> Vec<[f64; 2]> {
    s.vertices().iter().map(|v| xy(v.coords())).collect()
}

/// Render the trajectory; only dimension 2 is supported.
pub fn render<T: Real>(traj: &Trajectory<T>, mode: PlotMode) -> Result<String, IterationError> {
    let dim = traj.dimension();
    if dim != 2 {
        return Err(IterationError::UnsupportedDimension(dim));
    }
    let simplices: Vec<Simplex> = traj.records.iter().map(|r| r.absolute_simplex().cast::<f64>()).collect();
    let mut shapes = Vec::new();
    match mode {
        PlotMode::Root => {
            for (k, s) in simplices.iter().enumerate() {
                let class = if k == 0 { "source" } else { "root" };
                shapes.push(Shape::Polygon { points: triangle(s), class });
                let (ins, _, contacts) = s.incircle_data()?;
                shapes.push(Shape::Circle { center: xy(ins.center.coords()), radius: ins.radius, class: "incircle" });
                shapes.push(Shape::Polygon { points: contacts.iter().map(|b| xy(b.coords())).collect(), class: "contact" });
                for b in &contacts {
                    shapes.push(Shape::Dot { at: xy(b.coords()), class: "contact-point" });
                }
            }
        }
        PlotMode::Containment => {
            for (k, s) in simplices.iter().enumerate() {
                shapes.push(Shape::Polygon { points: triangle(s), class: if k == 0 { "source" } else { "root" } });
                if k + 1 < simplices.len() || simplices.len() == 1 {
                    let c = s.circumsphere()?;
                    shapes.push(Shape::Circle { center: xy(c.center.coords()), radius: c.radius, class: "circumcircle" });
                }
            }
        }
        PlotMode::Centers => {
            for s in &simplices {
                shapes.push(Shape::Polygon { points: triangle(s), class: "faint" });
            }
            let centers: Vec<[f64; 2]> = traj.records.iter().map(|r| xy(&r.circumcenter.to_f64())).collect();
            shapes.push(Shape::Path { points: centers.iter().step_by(2).copied().collect(), class: "odd-trail" });
            shapes.push(Shape::Path { points: centers.iter().skip(1).step_by(2).copied().collect(), class: "even-trail" });
            for (i, c) in centers.iter().enumerate() {
                shapes.push(Shape::Dot { at: *c, class: if i % 2 == 0 { "odd" } else { "even" } });
            }
        }
    }
    Ok(to_svg(&shapes))
}

fn to_svg(shapes: &[Shape]) -> String {
    let mut b = shapes.iter().map(Shape::extent).fold(
        [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY],
        |a, e| [a[0].min(e[0]), a[1].min(e[1]), a[2].max(e[2]), a[3].max(e[3])],
    );
    let span = (b[2] - b[0]).max(b[3] - b[1]).max(f64::MIN_POSITIVE);
    let pad = MARGIN * span;
    b = [b[0] - pad, b[1] - pad, b[2] + pad, b[3] + pad];
    let (w, h) = (b[2] - b[0], b[3] - b[1]);
    let scale = WIDTH / w.max(h);
    let (pw, ph) = (w * scale, h * scale);
    let map = |p: [f64; 2]| [(p[0] - b[0]) * scale, (b[3] - p[1]) * scale];
    let stroke = 1.5;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{pw:.2}" height="{ph:.2}" viewBox="0 0 {pw:.2} {ph:.2}">"#
    );
    let _ = writeln!(
        out,
        "<style>\
         .source{{fill:none;stroke:#1f3b73;stroke-width:{stroke}}}\
         .root{{fill:none;stroke:#b03a2e;stroke-width:{stroke}}}\
         .contact{{fill:none;stroke:#7d8c99;stroke-width:1;stroke-dasharray:4 3}}\
         .incircle{{fill:none;stroke:#2e8b57;stroke-width:1}}\
         .circumcircle{{fill:#f4d03f;fill-opacity:0.25;stroke:#b7950b;stroke-width:1}}\
         .faint{{fill:none;stroke:#c0c6cc;stroke-width:0.75}}\
         .odd-trail{{fill:none;stroke:#1f77b4;stroke-width:1}}\
         .even-trail{{fill:none;stroke:#d62728;stroke-width:1}}\
         .contact-point{{fill:#2e8b57}}.odd{{fill:#1f77b4}}.even{{fill:#d62728}}\
         </style>"
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let pts = |ps: &[[f64; 2]]| ps.iter().map(|&p| map(p)).map(|q| format!("{:.3},{:.3}", q[0], q[1])).collect::<Vec<_>>().join(" ");
    for s in shapes {
        match s {
            Shape::Polygon { points, class } => {
                let _ = writeln!(out, r#"<polygon class="{class}" points="{}"/>"#, pts(points));
            }
            Shape::Path { points, class } => {
                let _ = writeln!(out, r#"<polyline class="{class}" points="{}"/>"#, pts(points));
            }
            Shape::Circle { center, radius, class } => {
                let c = map(*center);
                let _ = writeln!(out, r#"<circle class="{class}" cx="{:.3}" cy="{:.3}" r="{:.3}"/>"#, c[0], c[1], radius * scale);
            }
            Shape::Dot { at, class } => {
                let c = map(*at);
                let _ = writeln!(out, r#"<circle class="{class}" cx="{:.3}" cy="{:.3}" r="3"/>"#, c[0], c[1]);
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
