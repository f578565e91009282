//! Built-in inputs reproducing the worked examples: an octahedron with a
//! height function, an upright torus, a generic projection of a solid
//! tetrahedron, a suspension of a square, a saddle patch whose link alternates
//! up/down, and planar singular loci.
//!
//! The same data ships as JSON under `golden/`; a test keeps the two in sync.

use std::collections::BTreeMap;

use crate::arrangement::SingularLocus;
use crate::complex::{SimplicialComplex, Vertex};
use crate::jacobi::PLMap;
use crate::rational::{approx, int, rat, Coords};

/// Vertex labels of the octahedron.
pub mod oct {
    use crate::complex::Vertex;
    pub const M: Vertex = 0;
    pub const A: Vertex = 1;
    pub const B: Vertex = 2;
    pub const C: Vertex = 3;
    pub const D: Vertex = 4;
    pub const W: Vertex = 5;
}

/// Octahedron: apex `m`, bottom `w`, equator square `a b c d`.
pub fn octahedron() -> SimplicialComplex {
    use oct::*;
    SimplicialComplex::from_vertex_lists(&[
        &[M, A, B],
        &[M, B, C],
        &[M, C, D],
        &[M, D, A],
        &[W, A, B],
        &[W, B, C],
        &[W, C, D],
        &[W, D, A],
    ])
}

fn scalar_map(domain: SimplicialComplex, heights: &[(Vertex, crate::rational::Rational)]) -> PLMap {
    let values = heights.iter().map(|(v, h)| (*v, vec![h.clone()])).collect();
    PLMap::new(domain, 1, values).expect("golden map is well formed")
}

/// Height with `w < a < b < c < d < m`.
pub fn octahedron_height() -> PLMap {
    use oct::*;
    scalar_map(
        octahedron(),
        &[(W, int(0)), (A, int(1)), (B, int(2)), (C, int(3)), (D, int(4)), (M, int(5))],
    )
}

pub const TORUS_ROWS: u32 = 8;
pub const TORUS_COLS: u32 = 8;

/// `rows × cols` grid on the torus; vertex `(i, j)` has id `i * cols + j` and
/// each square is cut along its `(i, j)–(i+1, j+1)` diagonal.
pub fn torus_grid(rows: u32, cols: u32) -> SimplicialComplex {
    let id = |i: u32, j: u32| (i % rows) * cols + (j % cols);
    let mut facets = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let (a, b, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            facets.push(crate::complex::simplex(&[a, b, c]));
            facets.push(crate::complex::simplex(&[a, c, d]));
        }
    }
    SimplicialComplex::from_facets(facets)
}

/// Height of a torus standing on its rim: `(2 + cos φ) cos θ` sampled on the
/// grid (`θ` along rows, `φ` along columns), rounded to thousandths, plus
/// `id / 10⁶` so all heights are distinct. Critical vertices are the maximum
/// `(0, 0)`, the saddles `(0, 4)` and `(4, 4)`, and the minimum `(4, 0)`.
pub fn torus_height() -> PLMap {
    let (n, m) = (TORUS_ROWS, TORUS_COLS);
    let mut heights = Vec::new();
    for i in 0..n {
        for j in 0..m {
            let theta = std::f64::consts::TAU * f64::from(i) / f64::from(n);
            let phi = std::f64::consts::TAU * f64::from(j) / f64::from(m);
            let h = (2.0 + phi.cos()) * theta.cos();
            let id = i * m + j;
            heights.push((id, approx(h, 1000) + rat(i64::from(id), 1_000_000)));
        }
    }
    scalar_map(torus_grid(n, m), &heights)
}

/// Critical vertices of [`torus_height`]: max, upper saddle, lower saddle, min.
pub const TORUS_CRITICAL: [Vertex; 4] = [0, 4, 36, 32];

/// Solid tetrahedron projected onto a convex quadrilateral
/// `(0,0), (4,1), (3,5), (−1,3)`; edges `02` and `13` are the diagonals.
pub fn tetrahedron_projection() -> PLMap {
    let domain = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2, 3]]);
    let pts = [(0, 0), (4, 1), (3, 5), (-1, 3)];
    let values = pts
        .iter()
        .enumerate()
        .map(|(v, (x, y))| (v as Vertex, vec![int(*x), int(*y)]))
        .collect();
    PLMap::new(domain, 2, values).expect("golden map is well formed")
}

pub const SUSPENSION_CONE_POINTS: [Vertex; 2] = [0, 5];

/// Suspension of a square: cone points near height 0, equator alternating
/// above and below them, all values distinct.
pub fn suspension() -> PLMap {
    let mut facets: Vec<&[Vertex]> = Vec::new();
    let tris: Vec<[Vertex; 3]> = (0..4u32)
        .flat_map(|i| {
            let (a, b) = (1 + i, 1 + (i + 1) % 4);
            [[0, a, b], [5, a, b]]
        })
        .collect();
    for t in &tris {
        facets.push(t);
    }
    let domain = SimplicialComplex::from_vertex_lists(&facets);
    scalar_map(
        domain,
        &[(0, int(0)), (5, rat(1, 10)), (1, int(1)), (2, int(-1)), (3, int(2)), (4, int(-2))],
    )
}

pub const TORUS_PATCH_SADDLE: Vertex = 0;

/// A disk around a saddle `p = 0` whose link is a square alternating
/// above/below, surrounded by a ring of eight vertices.
pub fn torus_patch() -> PLMap {
    // inner ring 1..=4 at angles 0, 90, 180, 270; outer ring 5..=12 every 45 degrees
    let inner = |i: u32| 1 + i % 4;
    let outer = |j: u32| 5 + j % 8;
    let mut tris: Vec<[Vertex; 3]> = Vec::new();
    for i in 0..4 {
        tris.push([0, inner(i), inner(i + 1)]);
        tris.push([inner(i), outer(2 * i), outer(2 * i + 1)]);
        tris.push([inner(i), outer(2 * i + 1), inner(i + 1)]);
        tris.push([inner(i + 1), outer(2 * i + 1), outer(2 * i + 2)]);
    }
    let facets: Vec<&[Vertex]> = tris.iter().map(|t| &t[..]).collect();
    let domain = SimplicialComplex::from_vertex_lists(&facets);
    let heights = [
        (0, int(0)),
        (1, int(1)),
        (2, int(-1)),
        (3, int(2)),
        (4, int(-2)),
        (5, rat(41, 10)),
        (6, rat(3, 10)),
        (7, rat(-39, 10)),
        (8, rat(7, 10)),
        (9, rat(43, 10)),
        (10, rat(-1, 10)),
        (11, rat(-37, 10)),
        (12, rat(1, 10)),
    ];
    scalar_map(domain, &heights)
}

/// All golden PL maps with their file stems.
pub fn maps() -> Vec<(&'static str, PLMap)> {
    vec![
        ("octahedron", octahedron_height()),
        ("torus", torus_height()),
        ("tetrahedron", tetrahedron_projection()),
        ("suspension", suspension()),
        ("torus_patch", torus_patch()),
    ]
}

/// Closed convex quadrilateral loop; its two x-extreme corners are the only
/// vertical tangencies.
pub fn convex_loop() -> SingularLocus {
    let pts = [(0, 1), (2, 0), (4, 1), (2, 2), (0, 1)];
    SingularLocus {
        strands: vec![pts.iter().map(|(x, y)| vec![int(*x), int(*y)]).collect()],
        cusps: Vec::new(),
        breaks: Vec::new(),
    }
}

/// Fold locus of a map from a cylinder times a sphere to `[0, 1] × ℝ`: the
/// bottom fold `B`, a short fold `S` born and dying at cusps at `t = 0` and
/// `t = 1`, and two folds `M` and `T` leaving those cusps and crossing once
/// at `t = 1/2`.
pub fn fold_locus() -> SingularLocus {
    let p = |x: i64, y: i64| -> Coords { vec![int(x), int(y)] };
    SingularLocus {
        strands: vec![
            vec![p(0, 0), p(1, 0)],
            vec![p(0, 5), vec![rat(1, 2), int(4)], p(1, 5)],
            vec![p(0, 5), p(1, 9)],
            vec![p(0, 9), p(1, 5)],
        ],
        cusps: vec![(1, 0), (1, 2)],
        breaks: Vec::new(),
    }
}

/// All golden loci with their file stems.
pub fn loci() -> Vec<(&'static str, SingularLocus)> {
    vec![("convex_loop", convex_loop()), ("fold_locus", fold_locus())]
}

pub fn values_of(f: &PLMap) -> BTreeMap<Vertex, Coords> {
    f.values().clone()
}
