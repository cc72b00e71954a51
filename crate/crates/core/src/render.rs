//! Deterministic SVG rendering of environments, trees and paths.
//!
//! Workspace units map to 8 px; the workspace y axis points up, the SVG y axis
//! points down. Obstacles are `<circle>`/`<polygon>` elements, paths are
//! `<polyline>`s, tree edges form one `<path>`, and the start/target markers
//! are `<path>` glyphs, so element counts in the output track the scene.

use std::fmt::Write as _;

use crate::environment::{Environment, Obstacle, Query};
use crate::geometry::{Path, Point2, Segment};

pub const PX_PER_UNIT: f64 = 8.0;

pub const RRT_COLOR: &str = "#d62728";
pub const PSO_COLOR: &str = "#1f77b4";

pub struct SvgScene<'a> {
    env: &'a Environment,
    query: Option<Query>,
    tree: Vec<Segment>,
    paths: Vec<(Path, String)>,
}

impl<'a> SvgScene<'a> {
    pub fn new(env: &'a Environment) -> Self {
        Self {
            env,
            query: None,
            tree: Vec::new(),
            paths: Vec::new(),
        }
    }

    pub fn with_query(mut self, query: Query) -> Self {
        self.query = Some(query);
        self
    }

    pub fn with_tree(mut self, edges: impl IntoIterator<Item = Segment>) -> Self {
        self.tree.extend(edges);
        self
    }

    pub fn with_path(mut self, path: Path, color: &str) -> Self {
        self.paths.push((path, color.to_string()));
        self
    }

    fn to_px(&self, p: Point2) -> (f64, f64) {
        let b = self.env.bounds();
        ((p.x - b.x_min) * PX_PER_UNIT, (b.y_max - p.y) * PX_PER_UNIT)
    }

    fn points_attr(&self, pts: &[Point2]) -> String {
        let mut s = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.to_px(p);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.2},{y:.2}");
        }
        s
    }

    pub fn render(&self) -> String {
        let b = self.env.bounds();
        let (w, h) = (b.width() * PX_PER_UNIT, b.height() * PX_PER_UNIT);
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        let _ = writeln!(
            out,
            r##"  <rect class="bounds" x="0" y="0" width="{w:.2}" height="{h:.2}" fill="#f5f8fa" stroke="#37474f" stroke-width="2"/>"##
        );
        for o in self.env.obstacles() {
            match o {
                Obstacle::Circle(c) => {
                    let (cx, cy) = self.to_px(c.center);
                    let _ = writeln!(
                        out,
                        r##"  <circle class="obstacle" cx="{cx:.2}" cy="{cy:.2}" r="{:.2}" fill="#90a4ae"/>"##,
                        c.radius * PX_PER_UNIT
                    );
                }
                Obstacle::Polygon(poly) => {
                    let _ = writeln!(
                        out,
                        r##"  <polygon class="obstacle" points="{}" fill="#90a4ae"/>"##,
                        self.points_attr(&poly.vertices)
                    );
                }
            }
        }
        if !self.tree.is_empty() {
            let mut d = String::new();
            for e in &self.tree {
                let (x0, y0) = self.to_px(e.a);
                let (x1, y1) = self.to_px(e.b);
                let _ = write!(d, "M{x0:.2},{y0:.2}L{x1:.2},{y1:.2}");
            }
            let _ = writeln!(
                out,
                r##"  <path class="tree" d="{d}" fill="none" stroke="#b0bec5" stroke-width="1"/>"##
            );
        }
        for (path, color) in &self.paths {
            let _ = writeln!(
                out,
                r#"  <polyline class="path" points="{}" fill="none" stroke="{color}" stroke-width="3" stroke-linejoin="round"/>"#,
                self.points_attr(path.waypoints())
            );
        }
        if let Some(q) = self.query {
            for (p, color, class) in [
                (q.start, "#2e7d32", "start"),
                (q.target, "#ef6c00", "target"),
            ] {
                let (x, y) = self.to_px(p);
                let r = 7.0;
                let _ = writeln!(
                    out,
                    r##"  <path class="{class}" d="M{:.2},{y:.2}L{x:.2},{:.2}L{:.2},{y:.2}L{x:.2},{:.2}Z" fill="{color}" stroke="#212121"/>"##,
                    x - r,
                    y - r,
                    x + r,
                    y + r
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::environment::{irregular_preset, DEFAULT_BOUNDS};
    use crate::geometry::Circle;

    #[test]
    fn empty_env_is_just_the_bounds() {
        let env = Environment::empty(DEFAULT_BOUNDS).unwrap();
        let svg = SvgScene::new(&env).render();
        assert_eq!(svg.matches("<rect").count(), 1);
        assert_eq!(svg.matches('<').count(), 3); // svg, rect, </svg>
        assert!(svg.contains(r#"width="640""#) && svg.contains(r#"height="480""#));
    }

    #[test]
    fn one_circle_one_element() {
        let env = Environment::new(
            DEFAULT_BOUNDS,
            vec![Obstacle::Circle(
                Circle::new(Point2::new(0.0, 0.0), 2.0).unwrap(),
            )],
        )
        .unwrap();
        let svg = SvgScene::new(&env).render();
        assert_eq!(svg.matches("<circle").count(), 1);
        // (0, 0) -> (40 * 8, 20 * 8)
        assert!(svg.contains(r#"cx="320.00" cy="160.00" r="16.00""#));
    }

    #[test]
    fn rendering_is_deterministic() {
        let (env, q) = irregular_preset("irregular-a").unwrap();
        let path = Path::new(vec![q.start, Point2::new(16.0, -17.0), q.target]).unwrap();
        let a = SvgScene::new(&env)
            .with_query(q)
            .with_path(path.clone(), RRT_COLOR)
            .render();
        let b = SvgScene::new(&env)
            .with_query(q)
            .with_path(path, RRT_COLOR)
            .render();
        assert_eq!(a, b);
        assert_eq!(a.matches("<polyline").count(), 1);
        assert_eq!(a.matches("<polygon").count(), 4);
    }
}
