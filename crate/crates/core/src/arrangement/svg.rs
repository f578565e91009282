//! Static SVG pictures of codomain and locus stratifications.
//!
//! Colours come from a fixed palette indexed by the rank of the stratum label
//! in sorted order, so the same poset always gets the same colours.

use std::fmt::Write;

use crate::poset::Poset;
use crate::rational::{to_f64, Coords};

use super::codomain::{CodomainStratification, ImageGeometry};
use super::locus::LocusStratification;
use super::planar::{PlanarArrangement, PlanarCell};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

fn palette(poset: &Poset) -> Vec<String> {
    let mut order: Vec<usize> = (0..poset.len()).collect();
    order.sort_by(|a, b| poset.label(*a).cmp(poset.label(*b)));
    let mut colours = vec![String::new(); poset.len()];
    for (rank, p) in order.into_iter().enumerate() {
        colours[p] = format!("hsl({},55%,{}%)", (rank * 137) % 360, 45 + (rank % 3) * 12);
    }
    colours
}

struct Frame {
    min: (f64, f64),
    scale: f64,
}

impl Frame {
    fn fit(points: &[Coords]) -> Self {
        if points.is_empty() {
            return Frame { min: (-1.0, -1.0), scale: (SIZE - 2.0 * MARGIN) / 2.0 };
        }
        let xs: Vec<f64> = points.iter().map(|p| to_f64(&p[0])).collect();
        let ys: Vec<f64> = points.iter().map(|p| to_f64(&p[1])).collect();
        let (x0, x1) = (xs.iter().cloned().fold(f64::INFINITY, f64::min), xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        let (y0, y1) = (ys.iter().cloned().fold(f64::INFINITY, f64::min), ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        let span = (x1 - x0).max(y1 - y0).max(1e-9);
        Frame { min: (x0, y0), scale: (SIZE - 2.0 * MARGIN) / span }
    }

    fn map(&self, p: &Coords) -> (f64, f64) {
        let x = MARGIN + (to_f64(&p[0]) - self.min.0) * self.scale;
        let y = SIZE - MARGIN - (to_f64(&p[1]) - self.min.1) * self.scale;
        (x, y)
    }
}

fn header(out: &mut String, background: &str, label: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{s}" height="{s}" fill="{}" data-stratum="{}"/>"#,
        background,
        label,
        s = SIZE
    );
}

fn planar_svg(arr: &PlanarArrangement, poset: &Poset, stratum: impl Fn(PlanarCell) -> usize) -> String {
    let colours = palette(poset);
    let frame = Frame::fit(&arr.vertices);
    let mut out = String::new();
    let outer = stratum(PlanarCell::Face(0));
    header(&mut out, &colours[outer], poset.label(outer));
    for (fi, face) in arr.faces.iter().enumerate().skip(1) {
        let mut d = String::new();
        for ring in face.outer.iter().chain(face.holes.iter()) {
            for (i, v) in ring.iter().enumerate() {
                let (x, y) = frame.map(&arr.vertices[*v]);
                let _ = write!(d, "{}{:.3},{:.3} ", if i == 0 { "M" } else { "L" }, x, y);
            }
            d.push_str("Z ");
        }
        let s = stratum(PlanarCell::Face(fi));
        let _ = writeln!(
            out,
            r#"<path d="{}" fill="{}" fill-rule="evenodd" data-stratum="{}"/>"#,
            d.trim_end(),
            colours[s],
            poset.label(s)
        );
    }
    for (e, (a, b)) in arr.edges.iter().enumerate() {
        let (x1, y1) = frame.map(&arr.vertices[*a]);
        let (x2, y2) = frame.map(&arr.vertices[*b]);
        let s = stratum(PlanarCell::Edge(e));
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}" stroke-width="3" data-stratum="{}"/>"#,
            x1,
            y1,
            x2,
            y2,
            colours[s],
            poset.label(s)
        );
    }
    for (v, p) in arr.vertices.iter().enumerate() {
        let s = stratum(PlanarCell::Vertex(v));
        if poset.label(s).starts_with('v') {
            let (x, y) = frame.map(p);
            let _ = writeln!(
                out,
                r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="{}" stroke="black" data-stratum="{}"/>"#,
                x,
                y,
                colours[s],
                poset.label(s)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

pub fn codomain_svg(s: &CodomainStratification) -> String {
    match &s.image.geometry {
        ImageGeometry::Plane(arr) => planar_svg(arr, s.poset(), |c| match c {
            PlanarCell::Vertex(i) => i,
            PlanarCell::Edge(i) => arr.vertex_count() + i,
            PlanarCell::Face(i) => arr.vertex_count() + arr.edge_count() + i,
        }),
        ImageGeometry::Line(values) => {
            let colours = palette(s.poset());
            let m = values.len();
            let mut out = String::new();
            header(&mut out, "white", "");
            let xs: Vec<f64> = if m <= 1 {
                vec![SIZE / 2.0; m]
            } else {
                let lo = to_f64(&values[0]);
                let hi = to_f64(&values[m - 1]);
                let span = (hi - lo).max(1e-9);
                values.iter().map(|v| 2.0 * MARGIN + (to_f64(v) - lo) / span * (SIZE - 4.0 * MARGIN)).collect()
            };
            let y = SIZE / 2.0;
            for i in 0..=m {
                let x1 = if i == 0 { 0.0 } else { xs[i - 1] };
                let x2 = if i == m { SIZE } else { xs[i] };
                let st = m + i;
                let _ = writeln!(
                    out,
                    r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{}" stroke-width="6" data-stratum="{}"/>"#,
                    x1,
                    y,
                    x2,
                    y,
                    colours[st],
                    s.label(st)
                );
            }
            for (i, x) in xs.iter().enumerate() {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.3}" cy="{:.3}" r="5" fill="{}" stroke="black" data-stratum="{}"/>"#,
                    x,
                    y,
                    colours[i],
                    s.label(i)
                );
            }
            out.push_str("</svg>\n");
            out
        }
    }
}

pub fn locus_svg(s: &LocusStratification) -> String {
    planar_svg(&s.arrangement, s.poset(), |c| s.stratum_of(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{build_codomain_stratification, refine_image, stratify_singular_locus};
    use crate::golden;
    use crate::jacobi::{jacobi_set, Notion};

    #[test]
    fn pictures_are_deterministic() {
        let f = golden::tetrahedron_projection();
        let j = jacobi_set(&f, Notion::H).unwrap();
        let s = build_codomain_stratification(&refine_image(&f, &j).unwrap()).unwrap();
        let a = codomain_svg(&s);
        assert_eq!(a, codomain_svg(&s));
        assert_eq!(a.matches("<circle").count(), 4);
        assert_eq!(a.matches("<line").count(), 4);
        let l = stratify_singular_locus(&golden::fold_locus()).unwrap();
        let b = locus_svg(&l);
        assert_eq!(b.matches("<circle").count(), 7);
        assert!(b.ends_with("</svg>\n"));
    }
}
