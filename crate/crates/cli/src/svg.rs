//! Static SVG figures of orbits. Coordinates are decimal approximations of
//! the exact values, printed with 12 significant digits, so a given input
//! always produces the same bytes.

use std::fmt::Write;

use pentagram_core::rational::to_f64;
use pentagram_core::ProjPoint;

type Pt = (f64, f64);

/// What one iterate contributes to the figure.
#[derive(Debug, Clone)]
pub struct Frame {
    /// Closed polygon, broken at vertices that are not finite.
    outline: Vec<Option<Pt>>,
    diagonals: Vec<(Pt, Pt)>,
    dots: Vec<Pt>,
    hollow: Vec<Pt>,
    /// Points of P^1 drawn on the row of their step.
    on_row: bool,
}

fn plane(p: &ProjPoint) -> Option<Pt> {
    let a = p.to_affine()?;
    Some((to_f64(&a[0]), a.get(1).map_or(0.0, to_f64)))
}

impl Frame {
    pub fn polygon(vertices: &[ProjPoint]) -> Self {
        let outline: Vec<Option<Pt>> = vertices.iter().map(plane).collect();
        let k = outline.len();
        let diagonals = (0..k)
            .filter_map(|i| Some((outline[i]?, outline[(i + 2) % k]?)))
            .collect();
        Frame {
            dots: outline.iter().flatten().copied().collect(),
            outline,
            diagonals,
            hollow: Vec::new(),
            on_row: false,
        }
    }

    pub fn line_points(points: &[ProjPoint]) -> Self {
        Frame {
            outline: Vec::new(),
            diagonals: Vec::new(),
            dots: points.iter().filter_map(|p| p.value().map(|v| (to_f64(&v), 0.0))).collect(),
            hollow: Vec::new(),
            on_row: true,
        }
    }

    pub fn mirror(points: &[ProjPoint], reflected: &[ProjPoint]) -> Self {
        Frame {
            outline: Vec::new(),
            diagonals: Vec::new(),
            dots: points.iter().filter_map(plane).collect(),
            hollow: reflected.iter().filter_map(plane).collect(),
            on_row: false,
        }
    }

    fn placed(&self, index: usize) -> Frame {
        if !self.on_row {
            return self.clone();
        }
        let mut f = self.clone();
        for p in &mut f.dots {
            p.1 = -(index as f64);
        }
        f
    }

    fn all_points(&self) -> impl Iterator<Item = &Pt> {
        self.dots
            .iter()
            .chain(&self.hollow)
            .chain(self.outline.iter().flatten())
    }
}

/// Formats `x` with 12 significant digits, without trailing zeros.
pub fn num(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 20) as usize;
    let s = format!("{x:.decimals$}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.').to_string() } else { s };
    if s == "-0" {
        "0".to_string()
    } else {
        s
    }
}

const COLORS: [&str; 6] = ["#1f4e99", "#c0392b", "#27864a", "#8e44ad", "#d68910", "#2c3e50"];

pub struct Figure {
    frames: Vec<Frame>,
}

impl Figure {
    pub fn new(frames: Vec<Frame>) -> Self {
        let frames = frames.iter().enumerate().map(|(i, f)| f.placed(i)).collect();
        Figure { frames }
    }

    pub fn render(&self) -> String {
        let pts: Vec<Pt> = self.frames.iter().flat_map(|f| f.all_points().copied()).collect();
        let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for (x, y) in &pts {
            x0 = x0.min(*x);
            x1 = x1.max(*x);
            y0 = y0.min(*y);
            y1 = y1.max(*y);
        }
        if pts.is_empty() {
            (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        let pad = span * 0.08;
        let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
        let stroke = span / 250.0;
        // Flip y so that the figure reads like the usual coordinate plane.
        let map = |p: &Pt| (num(p.0 - x0 + pad), num(y1 - p.1 + pad));
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"{}\" viewBox=\"0 0 {} {}\">",
            num((600.0 * h / w).round()),
            num(w),
            num(h)
        );
        let _ = writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>", num(w), num(h));
        for (i, f) in self.frames.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let _ = writeln!(out, "<g id=\"step-{i}\" stroke=\"{color}\" fill=\"{color}\">");
            if i == 0 {
                for (a, b) in &f.diagonals {
                    let (a, b) = (map(a), map(b));
                    let _ = writeln!(
                        out,
                        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke-width=\"{}\" stroke-dasharray=\"{} {}\" opacity=\"0.5\"/>",
                        a.0,
                        a.1,
                        b.0,
                        b.1,
                        num(stroke * 0.6),
                        num(stroke * 4.0),
                        num(stroke * 3.0)
                    );
                }
            }
            for piece in outline_pieces(&f.outline) {
                let coords: Vec<String> = piece.iter().map(|p| {
                    let (x, y) = map(p);
                    format!("{x},{y}")
                }).collect();
                let _ = writeln!(
                    out,
                    "<polyline points=\"{}\" fill=\"none\" stroke-width=\"{}\"/>",
                    coords.join(" "),
                    num(stroke)
                );
            }
            for p in &f.dots {
                let (x, y) = map(p);
                let _ = writeln!(out, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\" stroke=\"none\"/>", num(stroke * 2.5));
            }
            for p in &f.hollow {
                let (x, y) = map(p);
                let _ = writeln!(
                    out,
                    "<circle cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"none\" stroke-width=\"{}\"/>",
                    num(stroke * 2.5),
                    num(stroke * 0.6)
                );
            }
            out.push_str("</g>\n");
        }
        if let Some(c) = self.collapse_point() {
            let (x, y) = map(&c);
            let _ = writeln!(
                out,
                "<circle id=\"collapse\" cx=\"{x}\" cy=\"{y}\" r=\"{}\" fill=\"none\" stroke=\"black\" stroke-width=\"{}\"/>",
                num(stroke * 6.0),
                num(stroke)
            );
        }
        out.push_str("</svg>\n");
        out
    }

    /// The single point of the last frame, if it has collapsed.
    fn collapse_point(&self) -> Option<Pt> {
        let last = self.frames.last()?;
        let first = *last.dots.first()?;
        last.dots.iter().all(|p| *p == first).then_some(first)
    }
}

/// Splits a closed outline into polylines at missing vertices.
fn outline_pieces(outline: &[Option<Pt>]) -> Vec<Vec<Pt>> {
    if outline.is_empty() {
        return Vec::new();
    }
    if outline.iter().all(Option::is_some) {
        let mut closed: Vec<Pt> = outline.iter().flatten().copied().collect();
        closed.push(closed[0]);
        return vec![closed];
    }
    let mut pieces = Vec::new();
    let mut current = Vec::new();
    for p in outline {
        match p {
            Some(p) => current.push(*p),
            None if !current.is_empty() => pieces.push(std::mem::take(&mut current)),
            None => {}
        }
    }
    if !current.is_empty() {
        pieces.push(current);
    }
    pieces.into_iter().filter(|p| p.len() > 1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pentagram_core::proj::p2q;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(1.0 / 3.0), "0.333333333333");
        assert_eq!(num(5.0 / 3.0), "1.66666666667");
        assert_eq!(num(-4.0), "-4");
        assert_eq!(num(0.0), "0");
        assert_eq!(num(12345.678), "12345.678");
    }

    #[test]
    fn render_is_deterministic_and_marks_collapse() {
        let square = [p2q(0, 1, 0, 1), p2q(1, 1, 0, 1), p2q(1, 1, 1, 1), p2q(0, 1, 1, 1)];
        let centre = vec![p2q(1, 2, 1, 2); 4];
        let make = || Figure::new(vec![Frame::polygon(&square), Frame::polygon(&centre)]).render();
        let a = make();
        assert_eq!(a, make());
        assert!(a.contains("id=\"collapse\""));
        assert!(a.contains("stroke-dasharray"));
        assert!(a.starts_with("<?xml"));
    }

    #[test]
    fn infinite_vertices_break_the_outline() {
        let pieces = outline_pieces(&[Some((0.0, 0.0)), Some((1.0, 0.0)), None, Some((2.0, 2.0)), Some((3.0, 3.0))]);
        assert_eq!(pieces.len(), 2);
    }
}
