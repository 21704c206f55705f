//! Staircase pictures as SVG 1.1.
//!
//! The exponent lattice is drawn at a fixed 24 px per unit with a one-unit
//! margin. The region under the staircase is shaded, minimal generators
//! are small circles, and the Newton polygon is drawn with its vertices as
//! larger dots. Output depends only on the ideal.

use std::fmt::Write;

use icmod_core::{Monomial, MonomialIdeal, NewtonPolygon};

pub const UNIT: u32 = 24;

struct Frame {
    /// Largest lattice coordinates shown.
    ax: u32,
    by: u32,
}

impl Frame {
    fn x(&self, u: u32) -> u32 {
        (1 + u) * UNIT
    }

    fn y(&self, v: u32) -> u32 {
        (1 + self.by - v) * UNIT
    }

    fn width(&self) -> u32 {
        (self.ax + 2) * UNIT
    }

    fn height(&self) -> u32 {
        (self.by + 2) * UNIT
    }
}

fn staircase_path(f: &Frame, ideal: &MonomialIdeal) -> String {
    let gens = ideal.gens();
    let mut pts = vec![(0, 0)];
    for w in gens.windows(2) {
        pts.push((w[0].a, w[0].b));
        pts.push((w[0].a, w[1].b));
    }
    if let Some(last) = gens.last() {
        pts.push((last.a, last.b));
    }
    let mut d = String::new();
    for (i, (u, v)) in pts.iter().enumerate() {
        let cmd = if i == 0 { 'M' } else { 'L' };
        let _ = write!(d, "{cmd}{},{} ", f.x(*u), f.y(*v));
    }
    d.push('Z');
    d
}

fn newton_path(f: &Frame, vertices: &[Monomial]) -> String {
    let mut d = String::new();
    let first = vertices[0];
    let last = vertices[vertices.len() - 1];
    let _ = write!(d, "M{},{} ", f.x(f.ax), f.y(first.b));
    for m in vertices {
        let _ = write!(d, "L{},{} ", f.x(m.a), f.y(m.b));
    }
    let _ = write!(d, "L{},{}", f.x(last.a), f.y(f.by));
    d
}

/// SVG document for a proper m-primary ideal.
pub fn render_svg(ideal: &MonomialIdeal) -> String {
    let f = Frame {
        ax: ideal.a0() + 1,
        by: ideal.br() + 1,
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = f.width(),
        h = f.height()
    );
    let _ = writeln!(s, "<title>{ideal}</title>");
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        f.width(),
        f.height()
    );

    let _ = writeln!(
        s,
        r##"<path class="staircase" d="{}" fill="#d8e4f0" stroke="#4a6f94" stroke-width="1.5"/>"##,
        staircase_path(&f, ideal)
    );

    let _ = writeln!(s, r##"<g class="axes" stroke="#000000" stroke-width="1">"##);
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        f.x(0),
        f.y(0),
        f.x(f.ax),
        f.y(0)
    );
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        f.x(0),
        f.y(0),
        f.x(0),
        f.y(f.by)
    );
    for u in 0..=f.ax {
        let _ = writeln!(
            s,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            f.y(0),
            f.y(0) + 4,
            x = f.x(u)
        );
    }
    for v in 0..=f.by {
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            f.x(0) - 4,
            f.x(0),
            y = f.y(v)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(
        s,
        r##"<g class="ticks" font-family="monospace" font-size="9" fill="#000000">"##
    );
    for u in 0..=f.ax {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{u}</text>"#,
            f.x(u),
            f.y(0) + 14
        );
    }
    for v in 1..=f.by {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{v}</text>"#,
            f.x(0) - 6,
            f.y(v) + 3
        );
    }
    let _ = writeln!(s, "</g>");

    let vertices = NewtonPolygon::of(ideal);
    let _ = writeln!(
        s,
        r##"<path class="newton" d="{}" fill="none" stroke="#b03030" stroke-width="2"/>"##,
        newton_path(&f, vertices.vertices())
    );

    let _ = writeln!(
        s,
        r##"<g class="generators" fill="#ffffff" stroke="#000000">"##
    );
    for m in ideal.gens() {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3"/>"#, f.x(m.a), f.y(m.b));
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r##"<g class="vertices" fill="#b03030">"##);
    for m in vertices.vertices() {
        let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="5"/>"#, f.x(m.a), f.y(m.b));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vertex_dots(svg: &str) -> Vec<&str> {
        let start = svg.find(r#"<g class="vertices""#).unwrap();
        svg[start..]
            .lines()
            .skip(1)
            .take_while(|l| l.starts_with("<circle"))
            .collect()
    }

    #[test]
    fn hull_vertices_are_marked() {
        let i =
            MonomialIdeal::from_pairs(&[(5, 0), (4, 2), (3, 3), (2, 4), (1, 6), (0, 7)]).unwrap();
        let svg = render_svg(&i);
        // by = 8, so lattice height v maps to (9 - v) * 24
        assert_eq!(
            vertex_dots(&svg),
            vec![
                r#"<circle cx="144" cy="216" r="5"/>"#,
                r#"<circle cx="72" cy="120" r="5"/>"#,
                r#"<circle cx="24" cy="48" r="5"/>"#,
            ]
        );
        assert_eq!(svg, render_svg(&i));

        let j =
            MonomialIdeal::from_pairs(&[(7, 0), (5, 1), (3, 2), (2, 3), (1, 5), (0, 9)]).unwrap();
        assert_eq!(vertex_dots(&render_svg(&j)).len(), 5);
    }

    #[test]
    fn maximal_ideal_is_a_unit_square() {
        let svg = render_svg(&MonomialIdeal::maximal_power(1));
        assert!(
            svg.contains(r#"d="M24,72 L48,72 L48,48 L24,48 Z""#),
            "{svg}"
        );
        assert!(svg.contains(r#"width="96" height="96""#));
    }
}
