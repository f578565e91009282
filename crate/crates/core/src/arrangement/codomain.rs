//! Refinement of `f(J_f)` and the connected-ambient stratification of `ℝᵏ`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;

use crate::complex::Vertex;
use crate::geom::{collinear_overlap, on_segment, segment_intersection};
use crate::jacobi::{JacobiSet, PLMap};
use crate::poset::{Cell, Poset, StratifiedSpace};
use crate::rational::{self, Coords, Rational};

use super::planar::{PlanarArrangement, PlanarCell};
use super::{ArrangementError, StratificationJson};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImageGeometry {
    /// Sorted distinct critical values.
    Line(Vec<Rational>),
    Plane(PlanarArrangement),
}

/// Image of a Jacobi set split into points (and, for `k = 2`, open segments).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedImage {
    pub geometry: ImageGeometry,
    /// Number of preimage points in the Jacobi set of each refined point, in
    /// point order.
    pub point_multiplicity: Vec<usize>,
    /// Number of Jacobi edges covering each refined segment (`k = 2`).
    pub edge_multiplicity: Vec<usize>,
}

impl RefinedImage {
    pub fn k(&self) -> usize {
        match self.geometry {
            ImageGeometry::Line(_) => 1,
            ImageGeometry::Plane(_) => 2,
        }
    }

    pub fn point_count(&self) -> usize {
        match &self.geometry {
            ImageGeometry::Line(v) => v.len(),
            ImageGeometry::Plane(a) => a.vertex_count(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match &self.geometry {
            ImageGeometry::Line(_) => 0,
            ImageGeometry::Plane(a) => a.edge_count(),
        }
    }

    /// Refined points created by two segments crossing.
    pub fn crossings(&self) -> Vec<usize> {
        match &self.geometry {
            ImageGeometry::Line(_) => Vec::new(),
            ImageGeometry::Plane(a) => a.crossings.clone(),
        }
    }
}

pub fn refine_image(f: &PLMap, j: &JacobiSet) -> Result<RefinedImage, ArrangementError> {
    match f.k() {
        1 => {
            let mut seen: BTreeMap<Rational, Vertex> = BTreeMap::new();
            for v in j.vertices() {
                let y = f.value(v)[0].clone();
                if let Some(w) = seen.insert(y.clone(), v) {
                    return Err(ArrangementError::NotGeneric(format!(
                        "critical vertices {} and {} share the value {}",
                        w,
                        v,
                        rational::Short(&y)
                    )));
                }
            }
            let n = seen.len();
            Ok(RefinedImage {
                geometry: ImageGeometry::Line(seen.into_keys().collect()),
                point_multiplicity: vec![1; n],
                edge_multiplicity: Vec::new(),
            })
        }
        2 => {
            let mut seen: BTreeMap<Coords, Vertex> = BTreeMap::new();
            for v in j.vertices() {
                if let Some(w) = seen.insert(f.value(v).clone(), v) {
                    return Err(ArrangementError::NotGeneric(format!(
                        "Jacobi vertices {} and {} have the same image",
                        w, v
                    )));
                }
            }
            let edges: Vec<_> = j.complex.of_dim(1).collect();
            let covered: BTreeSet<Vertex> = edges.iter().flat_map(|e| e.vertices().to_vec()).collect();
            let segments: Vec<(Coords, Coords)> = edges
                .iter()
                .map(|e| (f.value(e.vertices()[0]).clone(), f.value(e.vertices()[1]).clone()))
                .collect();
            let isolated: Vec<Coords> =
                j.vertices().into_iter().filter(|v| !covered.contains(v)).map(|v| f.value(v).clone()).collect();
            refine_pieces(&segments, &isolated).map_err(|e| match e {
                ArrangementError::Overlap(..)
                | ArrangementError::TJunction { .. }
                | ArrangementError::TriplePoint(_)
                | ArrangementError::DegenerateSegment(_) => ArrangementError::NotGeneric(e.to_string()),
                other => other,
            })
        }
        k => Err(ArrangementError::UnsupportedDimension(k)),
    }
}

/// Refinement of an arbitrary family of closed segments, each treated as a
/// separate piece of the preimage.
pub fn refine_segments(segments: &[(Coords, Coords)]) -> Result<RefinedImage, ArrangementError> {
    refine_pieces(segments, &[])
}

/// Multiplicity of a refined point is the number of segment endpoints and
/// isolated points sitting on it (counted once per distinct location, since
/// endpoints shared by two segments come from a shared preimage vertex) plus
/// the number of segments passing through it.
fn refine_pieces(segments: &[(Coords, Coords)], points: &[Coords]) -> Result<RefinedImage, ArrangementError> {
    let arr = PlanarArrangement::build(segments, points)?;
    let endpoints: BTreeSet<&Coords> = segments.iter().flat_map(|(a, b)| [a, b]).chain(points).collect();
    let point_multiplicity = arr
        .vertices
        .iter()
        .map(|p| {
            let through = segments.iter().filter(|(a, b)| p != a && p != b && on_segment(a, b, p)).count();
            through + usize::from(endpoints.contains(p))
        })
        .collect();
    let edge_multiplicity = (0..arr.edge_count())
        .map(|e| {
            let (a, b) = arr.edges[e];
            let (pa, pb) = (&arr.vertices[a], &arr.vertices[b]);
            segments.iter().filter(|(s, t)| on_segment(s, t, pa) && on_segment(s, t, pb)).count()
        })
        .collect();
    Ok(RefinedImage { geometry: ImageGeometry::Plane(arr), point_multiplicity, edge_multiplicity })
}

/// Pairs of refined cells violating the frontier form of containment
/// comparability: open cells must be pairwise disjoint, and an open cell
/// meeting the closure of another must lie inside that closure. Decided from
/// coordinates alone.
pub fn containment_violations(r: &RefinedImage) -> Vec<(String, String)> {
    let ImageGeometry::Plane(arr) = &r.geometry else {
        let ImageGeometry::Line(v) = &r.geometry else { unreachable!() };
        return v
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] >= w[1])
            .map(|(i, _)| (format!("v{}", i), format!("v{}", i + 1)))
            .collect();
    };
    let mut out = Vec::new();
    let pts = &arr.vertices;
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            if pts[i] == pts[j] {
                out.push((format!("v{}", i), format!("v{}", j)));
            }
        }
    }
    let seg = |e: usize| (&pts[arr.edges[e].0], &pts[arr.edges[e].1]);
    for (i, p) in pts.iter().enumerate() {
        for e in 0..arr.edge_count() {
            let (a, b) = seg(e);
            if p != a && p != b && on_segment(a, b, p) {
                out.push((format!("v{}", i), format!("e{}", e)));
            }
        }
    }
    for e in 0..arr.edge_count() {
        for g in (e + 1)..arr.edge_count() {
            let (a, b) = seg(e);
            let (c, d) = seg(g);
            let shared_end = [a, b].iter().any(|x| *x == c || *x == d);
            let meets_inside = collinear_overlap(a, b, c, d)
                || segment_intersection(a, b, c, d).is_some_and(|x| !(shared_end && (&x == a || &x == b)));
            if meets_inside {
                out.push((format!("e{}", e), format!("e{}", g)));
            }
        }
    }
    out
}

/// Stratification of `ℝᵏ` over `𝒫_f^∧`, carried by one cell per stratum.
///
/// Stratum order for `k = 1`: points `v0 < v1 < …` (by value), then open
/// intervals `i0, …, im` from left to right. For `k = 2`: refined points
/// `v*`, refined segments `e*`, then faces `f*` with `f0` unbounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodomainStratification {
    pub image: RefinedImage,
    pub space: StratifiedSpace,
    /// Representative point of each stratum.
    pub samples: Vec<Coords>,
}

pub fn build_codomain_stratification(r: &RefinedImage) -> Result<CodomainStratification, ArrangementError> {
    match &r.geometry {
        ImageGeometry::Line(values) => line_stratification(r, values),
        ImageGeometry::Plane(arr) => plane_stratification(r, arr),
    }
}

fn line_stratification(r: &RefinedImage, values: &[Rational]) -> Result<CodomainStratification, ArrangementError> {
    let m = values.len();
    let points: Vec<String> = (0..m).map(|i| format!("v{}", i)).collect();
    let intervals: Vec<String> = (0..=m).map(|i| format!("i{}", i)).collect();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| [(i, i), (i, i + 1)]).collect();
    let poset = Poset::antichain(points.clone())?.wedge_extend(&intervals, &pairs)?;
    let mut cells: Vec<Cell> = points.iter().map(|l| Cell::new(l.clone(), 0)).collect();
    cells.extend(intervals.iter().map(|l| Cell::new(l.clone(), 1)));
    let closure = pairs.iter().map(|(p, i)| (*p, m + i)).collect();
    let one = rational::int(1);
    let mut samples: Vec<Coords> = values.iter().map(|v| vec![v.clone()]).collect();
    for i in 0..=m {
        let s = match (i.checked_sub(1).map(|j| &values[j]), values.get(i)) {
            (None, None) => Rational::zero(),
            (None, Some(hi)) => hi - &one,
            (Some(lo), None) => lo + &one,
            (Some(lo), Some(hi)) => (lo + hi) / rational::int(2),
        };
        samples.push(vec![s]);
    }
    let space = StratifiedSpace::new(cells, closure, poset, (0..2 * m + 1).collect())?;
    Ok(CodomainStratification { image: r.clone(), space, samples })
}

fn plane_stratification(r: &RefinedImage, arr: &PlanarArrangement) -> Result<CodomainStratification, ArrangementError> {
    let (nv, ne, nf) = (arr.vertex_count(), arr.edge_count(), arr.face_count());
    let index = |c: PlanarCell| match c {
        PlanarCell::Vertex(i) => i,
        PlanarCell::Edge(i) => nv + i,
        PlanarCell::Face(i) => nv + ne + i,
    };
    let mut labels: Vec<String> = (0..nv).map(|i| format!("v{}", i)).collect();
    labels.extend((0..ne).map(|i| format!("e{}", i)));
    let incidences = arr.incidences();
    let mut image_pairs = Vec::new();
    let mut face_pairs = Vec::new();
    for &(lo, hi) in &incidences {
        if !arr.geometrically_in_closure(lo, hi) {
            return Err(ArrangementError::Internal(format!("{:?} is not in the closure of {:?}", lo, hi)));
        }
        match hi {
            PlanarCell::Face(f) => face_pairs.push((index(lo), f)),
            _ => image_pairs.push((index(lo), index(hi))),
        }
    }
    let faces: Vec<String> = (0..nf).map(|i| format!("f{}", i)).collect();
    let poset = Poset::from_relations(labels.clone(), image_pairs)?.wedge_extend(&faces, &face_pairs)?;
    let mut cells: Vec<Cell> = (0..nv).map(|i| Cell::new(format!("v{}", i), 0)).collect();
    cells.extend((0..ne).map(|i| Cell::new(format!("e{}", i), 1)));
    cells.extend((0..nf).map(|i| Cell::new(format!("f{}", i), 2)));
    let closure = incidences.iter().map(|(a, b)| (index(*a), index(*b))).collect();
    let mut samples: Vec<Coords> = arr.vertices.clone();
    samples.extend((0..ne).map(|e| arr.midpoint(e)));
    samples.extend(arr.faces.iter().map(|f| f.sample.clone()));
    let space = StratifiedSpace::new(cells, closure, poset, (0..nv + ne + nf).collect())?;
    Ok(CodomainStratification { image: r.clone(), space, samples })
}

impl CodomainStratification {
    pub fn k(&self) -> usize {
        self.image.k()
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn poset(&self) -> &Poset {
        self.space.poset()
    }

    pub fn label(&self, s: usize) -> &str {
        self.space.poset().label(s)
    }

    /// Dimension of stratum `s`.
    pub fn dim(&self, s: usize) -> usize {
        self.space.cells()[s].dim
    }

    /// Whether `s` is a complement component (an open stratum of full dimension).
    pub fn is_open(&self, s: usize) -> bool {
        self.dim(s) == self.k()
    }

    /// Jacobi-set preimage count of a stratum; zero on complement components.
    pub fn multiplicity(&self, s: usize) -> usize {
        let np = self.image.point_count();
        if s < np {
            self.image.point_multiplicity[s]
        } else if self.k() == 2 && s < np + self.image.edge_count() {
            self.image.edge_multiplicity[s - np]
        } else {
            0
        }
    }

    fn to_planar(&self, s: usize) -> PlanarCell {
        let nv = self.image.point_count();
        let ne = self.image.edge_count();
        if s < nv {
            PlanarCell::Vertex(s)
        } else if s < nv + ne {
            PlanarCell::Edge(s - nv)
        } else {
            PlanarCell::Face(s - nv - ne)
        }
    }

    fn planar_index(&self, c: PlanarCell) -> usize {
        let nv = self.image.point_count();
        let ne = self.image.edge_count();
        match c {
            PlanarCell::Vertex(i) => i,
            PlanarCell::Edge(i) => nv + i,
            PlanarCell::Face(i) => nv + ne + i,
        }
    }

    /// The stratum containing `x`; boundary points resolve to the lowest
    /// dimensional cell.
    pub fn locate(&self, x: &Coords) -> usize {
        match &self.image.geometry {
            ImageGeometry::Line(values) => match values.binary_search(&x[0]) {
                Ok(i) => i,
                Err(i) => values.len() + i,
            },
            ImageGeometry::Plane(arr) => self.planar_index(arr.locate(x)),
        }
    }

    /// Point of stratum `upper` close to `lower`, such that the segment from
    /// it to the representative of `lower` stays in `upper` except at its end.
    /// Requires `lower < upper`.
    pub fn near_sample(&self, lower: usize, upper: usize) -> Option<Coords> {
        if !self.poset().lt(lower, upper) {
            return None;
        }
        match &self.image.geometry {
            ImageGeometry::Line(_) => Some(self.samples[upper].clone()),
            ImageGeometry::Plane(arr) => match (self.to_planar(lower), self.to_planar(upper)) {
                (PlanarCell::Vertex(v), target) => arr.near_vertex(v, target),
                (PlanarCell::Edge(e), PlanarCell::Face(f)) => arr.near_edge(e, f),
                _ => None,
            },
        }
    }

    /// Whether the closed segment `[p, q]` lies inside stratum `s`.
    pub fn segment_inside(&self, p: &Coords, q: &Coords, s: usize) -> bool {
        if self.locate(p) != s || self.locate(q) != s {
            return false;
        }
        match &self.image.geometry {
            ImageGeometry::Line(_) => true,
            ImageGeometry::Plane(arr) => match self.to_planar(s) {
                PlanarCell::Vertex(_) => p == q,
                PlanarCell::Edge(e) => {
                    let (a, b) = arr.edges[e];
                    on_segment(&arr.vertices[a], &arr.vertices[b], p) && on_segment(&arr.vertices[a], &arr.vertices[b], q)
                }
                PlanarCell::Face(_) => p == q || arr.segment_clear(p, q, None),
            },
        }
    }

    /// Geometry per carrier cell for JSON export.
    pub fn cell_geometry(&self, s: usize) -> Vec<Coords> {
        match &self.image.geometry {
            ImageGeometry::Line(values) => {
                let m = values.len();
                if s < m {
                    vec![vec![values[s].clone()]]
                } else {
                    let i = s - m;
                    let mut out = Vec::new();
                    if i > 0 {
                        out.push(vec![values[i - 1].clone()]);
                    }
                    if i < m {
                        out.push(vec![values[i].clone()]);
                    }
                    out
                }
            }
            ImageGeometry::Plane(arr) => match self.to_planar(s) {
                PlanarCell::Vertex(v) => vec![arr.vertices[v].clone()],
                PlanarCell::Edge(e) => vec![arr.vertices[arr.edges[e].0].clone(), arr.vertices[arr.edges[e].1].clone()],
                PlanarCell::Face(f) => arr.faces[f]
                    .outer
                    .as_ref()
                    .map(|o| o.iter().map(|v| arr.vertices[*v].clone()).collect())
                    .unwrap_or_default(),
            },
        }
    }

    pub fn to_json(&self) -> StratificationJson {
        StratificationJson::from_space(&self.space, |c| self.cell_geometry(c))
    }
}
