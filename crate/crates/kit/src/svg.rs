//! Static SVG 1.1 pictures of plane tropical curves, query cells and
//! sampled amoebas.
//!
//! Each rendered one-dimensional cell of each curve is one `<path
//! class="cell">`; the cloud is a single `<path class="amoeba">` of dots.

use std::fmt::Write;

use archtrop_core::amoeba::{Segment, Window};
use archtrop_core::HPolyhedron;

const WIDTH: f64 = 640.0;
const PALETTE: &[&str] = &["#1f4e9c", "#b3261e", "#2e7d32", "#6a1b9a", "#ef6c00"];

/// Everything drawn in one picture, in window coordinates.
#[derive(Clone, Debug, Default)]
pub struct Scene {
    /// Clipped segments of each curve.
    pub curves: Vec<Vec<Segment>>,
    pub cloud: Vec<[f64; 2]>,
    /// Polygon of a query cell clipped to the window, counterclockwise.
    pub cell: Option<Vec<[f64; 2]>>,
    pub point: Option<[f64; 2]>,
}

/// Vertices of `{α·w ≤ β}` intersected with the window, by successive
/// half-plane clipping in floating point. Empty if the cell misses the window.
pub fn clip_polygon(cell: &HPolyhedron, window: &Window) -> Vec<[f64; 2]> {
    let mut poly = vec![[window.x0, window.y0], [window.x1, window.y0], [window.x1, window.y1], [window.x0, window.y1]];
    for h in cell.constraints() {
        let a = [to_f64(&h.normal[0]), to_f64(&h.normal[1])];
        let b = h.rhs.to_f64();
        let val = |p: &[f64; 2]| a[0] * p[0] + a[1] * p[1] - b;
        let mut next = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
            let (vp, vq) = (val(&p), val(&q));
            if vp <= 0.0 {
                next.push(p);
            }
            if (vp < 0.0 && vq > 0.0) || (vp > 0.0 && vq < 0.0) {
                let s = vp / (vp - vq);
                next.push([p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
            }
        }
        poly = next;
        if poly.is_empty() {
            break;
        }
    }
    poly
}

fn to_f64(r: &archtrop_core::Rational) -> f64 {
    archtrop_core::LogLinearForm::from_rational(r.clone()).to_f64()
}

struct Frame {
    window: Window,
    scale: f64,
}

impl Frame {
    fn x(&self, p: [f64; 2]) -> f64 {
        (p[0] - self.window.x0) * self.scale
    }

    fn y(&self, p: [f64; 2]) -> f64 {
        (self.window.y1 - p[1]) * self.scale
    }

    fn coords(&self, p: [f64; 2]) -> String {
        format!("{:.3},{:.3}", self.x(p), self.y(p))
    }
}

pub fn render(scene: &Scene, window: &Window) -> String {
    let scale = WIDTH / (window.x1 - window.x0);
    let height = (window.y1 - window.y0) * scale;
    let fr = Frame { window: *window, scale };
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    s.push_str(
        "<!DOCTYPE svg PUBLIC \"-//W3C//DTD SVG 1.1//EN\" \"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd\">\n",
    );
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH:.0}\" height=\"{height:.0}\" \
         viewBox=\"0 0 {WIDTH:.3} {height:.3}\">"
    );
    let _ = writeln!(s, "<title>ArchTrop in [{}, {}] x [{}, {}]</title>", window.x0, window.x1, window.y0, window.y1);
    let _ = writeln!(
        s,
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH:.3}\" height=\"{height:.3}\" fill=\"white\" stroke=\"#999999\"/>"
    );
    if let Some(poly) = scene.cell.as_ref().filter(|p| p.len() >= 3) {
        let mut d = String::new();
        for (i, p) in poly.iter().enumerate() {
            let _ = write!(d, "{}{} ", if i == 0 { 'M' } else { 'L' }, fr.coords(*p));
        }
        d.push('Z');
        let _ = writeln!(
            s,
            "<path class=\"query-cell\" d=\"{d}\" fill=\"#ffe9a8\" stroke=\"#c79100\" stroke-width=\"1\"/>"
        );
    }
    if !scene.cloud.is_empty() {
        let mut d = String::new();
        for p in &scene.cloud {
            let _ = write!(d, "M{}h0", fr.coords(*p));
        }
        let _ = writeln!(
            s,
            "<path class=\"amoeba\" d=\"{d}\" fill=\"none\" stroke=\"#7f7f7f\" stroke-width=\"1.6\" stroke-linecap=\"round\"/>"
        );
    }
    for (k, segs) in scene.curves.iter().enumerate() {
        let colour = PALETTE[k % PALETTE.len()];
        for seg in segs {
            let _ = writeln!(
                s,
                "<path class=\"cell\" id=\"f{}-cell{}\" d=\"M{} L{}\" fill=\"none\" stroke=\"{colour}\" stroke-width=\"2\"/>",
                k + 1,
                seg.cell + 1,
                fr.coords(seg.start),
                fr.coords(seg.end)
            );
        }
    }
    if let Some(p) = scene.point {
        let _ = writeln!(
            s,
            "<circle class=\"query\" cx=\"{:.3}\" cy=\"{:.3}\" r=\"3.5\" fill=\"black\"/>",
            fr.x(p),
            fr.y(p)
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use archtrop_core::amoeba::archtrop_segments;
    use archtrop_core::tropical::{cell_at, ArchTropComplex};
    use archtrop_core::LaurentPolynomial;

    #[test]
    fn f1_picture() {
        let f = LaurentPolynomial::parse(crate::input::F1, 2).unwrap();
        let w = Window::square(7.0);
        let segs = archtrop_segments(&ArchTropComplex::new(&f).unwrap(), &w);
        let cell = cell_at(&f, &crate::input::parse_point("0,0").unwrap()).unwrap();
        let poly = clip_polygon(&cell.closure, &w);
        // the bounded triangle around the origin
        assert_eq!(poly.len(), 3);
        let scene = Scene { curves: vec![segs], cell: Some(poly), point: Some([0.0, 0.0]), ..Scene::default() };
        let text = render(&scene, &w);
        assert_eq!(text.matches("class=\"cell\"").count(), 6);
        assert!(text.contains("class=\"query-cell\""));
    }

    #[test]
    fn clipping_misses_window() {
        let h = archtrop_core::HalfSpace::new(
            vec![archtrop_core::Rational::from_integer(1.into()), archtrop_core::Rational::from_integer(0.into())],
            archtrop_core::LogLinearForm::from_integer(-10),
        )
        .unwrap();
        let p = HPolyhedron::new(2, vec![h]).unwrap();
        assert!(clip_polygon(&p, &Window::square(7.0)).is_empty());
    }
}
