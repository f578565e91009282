//! Planar subdivision induced by a set of segments, with exact predicates.
//!
//! Segments are split at every crossing; the resulting graph is traced into
//! faces with a half-edge walk (face on the left, bounded faces counter-
//! clockwise). Components nested inside a bounded face are attached to the
//! smallest bounded face whose boundary polygon contains them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::geom::{self, orient, on_segment, segment_intersection};
use crate::rational::{self, Coords, Rational};
use crate::union_find::UnionFind;

use super::ArrangementError;

/// A cell of the subdivision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlanarCell {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

impl PlanarCell {
    pub fn dim(&self) -> usize {
        match self {
            PlanarCell::Vertex(_) => 0,
            PlanarCell::Edge(_) => 1,
            PlanarCell::Face(_) => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    /// Counter-clockwise outer boundary as vertex indices; `None` for the
    /// unbounded face.
    pub outer: Option<Vec<usize>>,
    /// Boundary walks of components lying inside the face.
    pub holes: Vec<Vec<usize>>,
    /// Interior point, verified by point location.
    pub sample: Coords,
}

/// Planar subdivision. Face 0 is the unbounded face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarArrangement {
    pub vertices: Vec<Coords>,
    /// Fine edges `(a, b)` with `a < b`.
    pub edges: Vec<(usize, usize)>,
    pub faces: Vec<Face>,
    /// Input segments containing each vertex.
    pub vertex_segments: Vec<Vec<usize>>,
    /// Input segment carrying each fine edge.
    pub edge_segment: Vec<usize>,
    /// Vertices interior to two input segments.
    pub crossings: Vec<usize>,
    /// Faces to the left and right of each edge directed `a → b`.
    pub edge_faces: Vec<(usize, usize)>,
    /// Faces whose closure contains each vertex.
    pub vertex_faces: Vec<Vec<usize>>,
    components: usize,
    outer_area: Vec<Rational>,
}

fn cmp_points(a: &Coords, b: &Coords) -> Ordering {
    a[0].cmp(&b[0]).then_with(|| a[1].cmp(&b[1]))
}

/// Angular order of direction vectors, counter-clockwise from the positive x axis.
fn cmp_angle(a: &Coords, b: &Coords) -> Ordering {
    let half = |v: &Coords| {
        if v[1].is_positive() || (v[1].is_zero() && v[0].is_positive()) {
            0
        } else {
            1
        }
    };
    half(a).cmp(&half(b)).then_with(|| {
        let cross = &a[0] * &b[1] - &a[1] * &b[0];
        Rational::zero().cmp(&cross)
    })
}

/// Crossing-number point in polygon test; `p` must not lie on the boundary.
fn strictly_inside(poly: &[&Coords], p: &Coords) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            // x coordinate of the crossing compared with p.x, exactly
            let t = (&p[1] - &a[1]) / (&b[1] - &a[1]);
            let x = &a[0] + t * (&b[0] - &a[0]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

impl PlanarArrangement {
    /// Builds the subdivision of the given closed segments. Segments may share
    /// endpoints; any other contact must be a transverse crossing of exactly
    /// two segment interiors.
    pub fn from_segments(segments: &[(Coords, Coords)]) -> Result<Self, ArrangementError> {
        Self::build(segments, &[])
    }

    /// Same as [`from_segments`](Self::from_segments) with extra isolated points.
    pub fn build(segments: &[(Coords, Coords)], points: &[Coords]) -> Result<Self, ArrangementError> {
        for (i, (a, b)) in segments.iter().enumerate() {
            if a == b {
                return Err(ArrangementError::DegenerateSegment(i));
            }
        }
        // candidate points per segment: endpoints plus crossings
        let mut on_seg: Vec<Vec<Coords>> = segments.iter().map(|(a, b)| vec![a.clone(), b.clone()]).collect();
        let mut interior_hits: BTreeMap<Vec<Rational>, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..segments.len() {
            for j in (i + 1)..segments.len() {
                let (a, b) = (&segments[i].0, &segments[i].1);
                let (c, d) = (&segments[j].0, &segments[j].1);
                if geom::collinear_overlap(a, b, c, d) {
                    return Err(ArrangementError::Overlap(i, j));
                }
                let Some(p) = segment_intersection(a, b, c, d).or_else(|| touching_point(a, b, c, d)) else {
                    continue;
                };
                let end_i = &p == a || &p == b;
                let end_j = &p == c || &p == d;
                match (end_i, end_j) {
                    (true, true) => {}
                    (false, false) => {
                        interior_hits.entry(p.clone()).or_default().extend([i, j]);
                        on_seg[i].push(p.clone());
                        on_seg[j].push(p);
                    }
                    _ => {
                        return Err(ArrangementError::TJunction {
                            point: p.iter().map(rational::format_rational).collect(),
                            segments: (i, j),
                        })
                    }
                }
            }
        }
        for (p, segs) in &interior_hits {
            if segs.len() > 2 {
                return Err(ArrangementError::TriplePoint(p.iter().map(rational::format_rational).collect()));
            }
        }
        // vertex table
        let mut pts: Vec<Coords> = on_seg.iter().flatten().cloned().chain(points.iter().cloned()).collect();
        pts.sort_by(cmp_points);
        pts.dedup();
        let index = |p: &Coords| pts.binary_search_by(|q| cmp_points(q, p)).expect("known point");
        let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut vertex_segments: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); pts.len()];
        for (s, list) in on_seg.iter_mut().enumerate() {
            let a = segments[s].0.clone();
            let dir = geom::sub(&segments[s].1, &a);
            list.sort_by_key(|p| geom::dot(&geom::sub(p, &a), &dir));
            list.dedup();
            for p in list.iter() {
                vertex_segments[index(p)].insert(s);
            }
            for w in list.windows(2) {
                let (u, v) = (index(&w[0]), index(&w[1]));
                edges.insert((u.min(v), u.max(v)), s);
            }
        }
        let crossings = interior_hits.keys().map(index).collect();
        let (edge_list, edge_segment): (Vec<_>, Vec<_>) = edges.into_iter().unzip();
        let mut arr = PlanarArrangement {
            vertices: pts,
            edges: edge_list,
            faces: Vec::new(),
            vertex_segments: vertex_segments.into_iter().map(|s| s.into_iter().collect()).collect(),
            edge_segment,
            crossings,
            edge_faces: Vec::new(),
            vertex_faces: Vec::new(),
            components: 0,
            outer_area: Vec::new(),
        };
        arr.trace_faces()?;
        Ok(arr)
    }

    fn trace_faces(&mut self) -> Result<(), ArrangementError> {
        let nv = self.vertices.len();
        let ne = self.edges.len();
        // half-edge h: 2e is a → b, 2e+1 is b → a
        let tail = |h: usize, edges: &[(usize, usize)]| if h % 2 == 0 { edges[h / 2].0 } else { edges[h / 2].1 };
        let head = |h: usize, edges: &[(usize, usize)]| if h % 2 == 0 { edges[h / 2].1 } else { edges[h / 2].0 };
        let mut outgoing: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for h in 0..2 * ne {
            outgoing[tail(h, &self.edges)].push(h);
        }
        for (v, list) in outgoing.iter_mut().enumerate() {
            let dir = |h: &usize| geom::sub(&self.vertices[head(*h, &self.edges)], &self.vertices[v]);
            list.sort_by(|a, b| cmp_angle(&dir(a), &dir(b)));
        }
        let mut position = vec![0; 2 * ne];
        for list in &outgoing {
            for (i, h) in list.iter().enumerate() {
                position[*h] = i;
            }
        }
        let next = |h: usize| {
            let twin = h ^ 1;
            let v = head(h, &self.edges);
            let list = &outgoing[v];
            list[(position[twin] + list.len() - 1) % list.len()]
        };
        // trace cycles
        let mut cycle_of = vec![usize::MAX; 2 * ne];
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for start in 0..2 * ne {
            if cycle_of[start] != usize::MAX {
                continue;
            }
            let id = cycles.len();
            let mut walk = Vec::new();
            let mut h = start;
            loop {
                cycle_of[h] = id;
                walk.push(h);
                h = next(h);
                if h == start {
                    break;
                }
            }
            cycles.push(walk);
        }
        // components
        let mut uf = UnionFind::new(nv);
        for (a, b) in &self.edges {
            uf.union(*a, *b);
        }
        let (comp, n_comp) = uf.labels();
        self.components = n_comp;
        let cycle_vertices: Vec<Vec<usize>> =
            cycles.iter().map(|w| w.iter().map(|h| tail(*h, &self.edges)).collect()).collect();
        let area: Vec<Rational> = cycle_vertices
            .iter()
            .map(|vs| geom::signed_area2(&vs.iter().map(|v| &self.vertices[*v]).collect::<Vec<_>>()))
            .collect();
        let bounded: Vec<usize> = (0..cycles.len()).filter(|c| area[*c].is_positive()).collect();
        // faces: unbounded first, then bounded cycles in canonical order
        let canon = |vs: &Vec<usize>| {
            let k = (0..vs.len()).min_by_key(|i| vs[*i]).unwrap_or(0);
            let mut r = vs[k..].to_vec();
            r.extend_from_slice(&vs[..k]);
            r
        };
        let mut order: Vec<usize> = bounded.clone();
        order.sort_by_key(|c| canon(&cycle_vertices[*c]));
        let mut face_of_cycle = vec![usize::MAX; cycles.len()];
        let mut faces = vec![Face { outer: None, holes: Vec::new(), sample: Vec::new() }];
        let mut outer_area = vec![Rational::zero()];
        for c in &order {
            face_of_cycle[*c] = faces.len();
            faces.push(Face { outer: Some(canon(&cycle_vertices[*c])), holes: Vec::new(), sample: Vec::new() });
            outer_area.push(area[*c].clone());
        }
        // component boundary walks (and isolated vertices) go into the
        // smallest bounded face of another component containing them
        let mut holes: Vec<(usize, Vec<usize>)> = (0..cycles.len())
            .filter(|c| !area[*c].is_positive())
            .map(|c| (c, cycle_vertices[c].clone()))
            .collect();
        let has_edge: BTreeSet<usize> = self.edges.iter().flat_map(|(a, b)| [*a, *b]).collect();
        let isolated: Vec<usize> = (0..nv).filter(|v| !has_edge.contains(v)).collect();
        for v in &isolated {
            holes.push((usize::MAX, vec![*v]));
        }
        for (c, walk) in holes {
            let probe = &self.vertices[walk[0]];
            let host = order
                .iter()
                .filter(|b| comp[cycle_vertices[**b][0]] != comp[walk[0]])
                .filter(|b| {
                    let poly: Vec<&Coords> = cycle_vertices[**b].iter().map(|v| &self.vertices[*v]).collect();
                    strictly_inside(&poly, probe)
                })
                .min_by(|x, y| area[**x].cmp(&area[**y]))
                .map(|b| face_of_cycle[*b])
                .unwrap_or(0);
            if c != usize::MAX {
                face_of_cycle[c] = host;
            }
            faces[host].holes.push(walk);
        }
        for f in faces.iter_mut() {
            f.holes.sort();
        }
        self.edge_faces = (0..ne).map(|e| (face_of_cycle[cycle_of[2 * e]], face_of_cycle[cycle_of[2 * e + 1]])).collect();
        let mut vf: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nv];
        for h in 0..2 * ne {
            vf[tail(h, &self.edges)].insert(face_of_cycle[cycle_of[h]]);
        }
        for (fi, f) in faces.iter().enumerate() {
            for w in &f.holes {
                if w.len() == 1 && isolated.contains(&w[0]) {
                    vf[w[0]].insert(fi);
                }
            }
        }
        self.vertex_faces = vf.into_iter().map(|s| s.into_iter().collect()).collect();
        self.faces = faces;
        self.outer_area = outer_area;
        self.place_face_samples()?;
        Ok(())
    }

    fn place_face_samples(&mut self) -> Result<(), ArrangementError> {
        let unbounded = self.unbounded_sample();
        self.faces[0].sample = unbounded;
        for fi in 1..self.faces.len() {
            let outer = self.faces[fi].outer.clone().expect("bounded face");
            let (a, b) = (&self.vertices[outer[0]], &self.vertices[outer[1]]);
            let mid = geom::centroid(&[a, b]);
            let d = geom::sub(b, a);
            let normal = vec![-d[1].clone(), d[0].clone()];
            let sample = self
                .approach(&mid, &normal, PlanarCell::Face(fi), None)
                .ok_or(ArrangementError::SampleFailure(format!("f{}", fi)))?;
            self.faces[fi].sample = sample;
        }
        Ok(())
    }

    fn unbounded_sample(&self) -> Coords {
        if self.vertices.is_empty() {
            return vec![Rational::zero(), Rational::zero()];
        }
        let min_x = self.vertices.iter().map(|p| &p[0]).min().expect("nonempty");
        let min_y = self.vertices.iter().map(|p| &p[1]).min().expect("nonempty");
        let one = rational::int(1);
        vec![min_x - &one, min_y - &one]
    }

    /// First point `from + dir / 2^m` (m = 0, 1, …) located in `target` such
    /// that the segment back to `from` meets no vertex or edge other than
    /// `from` itself and, when given, the cell `along`.
    pub fn approach(&self, from: &Coords, dir: &Coords, target: PlanarCell, along: Option<PlanarCell>) -> Option<Coords> {
        let mut step = dir.clone();
        let half = rational::rat(1, 2);
        for _ in 0..64 {
            let p = geom::add(from, &step);
            if self.locate(&p) == target && self.segment_clear(from, &p, along) {
                return Some(p);
            }
            step = geom::scale(&step, &half);
        }
        None
    }

    /// Whether the half-open segment `(from, to]` avoids all vertices and all
    /// edges except possibly `along`.
    pub fn segment_clear(&self, from: &Coords, to: &Coords, along: Option<PlanarCell>) -> bool {
        for (vi, v) in self.vertices.iter().enumerate() {
            if v != from && on_segment(from, to, v) && along != Some(PlanarCell::Vertex(vi)) {
                return false;
            }
        }
        for (ei, (a, b)) in self.edges.iter().enumerate() {
            if along == Some(PlanarCell::Edge(ei)) {
                continue;
            }
            let (pa, pb) = (&self.vertices[*a], &self.vertices[*b]);
            if geom::collinear_overlap(pa, pb, from, to) {
                return false;
            }
            if let Some(x) = segment_intersection(pa, pb, from, to).or_else(|| touching_point(pa, pb, from, to)) {
                if &x != from {
                    return false;
                }
            }
        }
        true
    }

    /// The cell containing `p`, preferring the lowest dimension on boundaries.
    pub fn locate(&self, p: &Coords) -> PlanarCell {
        if let Ok(i) = self.vertices.binary_search_by(|q| cmp_points(q, p)) {
            return PlanarCell::Vertex(i);
        }
        for (i, (a, b)) in self.edges.iter().enumerate() {
            if on_segment(&self.vertices[*a], &self.vertices[*b], p) {
                return PlanarCell::Edge(i);
            }
        }
        let mut best: Option<(usize, &Rational)> = None;
        for (fi, f) in self.faces.iter().enumerate().skip(1) {
            let outer = f.outer.as_ref().expect("bounded face");
            let poly: Vec<&Coords> = outer.iter().map(|v| &self.vertices[*v]).collect();
            if strictly_inside(&poly, p) && best.is_none_or(|(_, a)| &self.outer_area[fi] < a) {
                best = Some((fi, &self.outer_area[fi]));
            }
        }
        PlanarCell::Face(best.map_or(0, |(f, _)| f))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Connected components of the vertex-edge graph.
    pub fn components(&self) -> usize {
        self.components
    }

    /// `V − E + F`, which equals `1 + components` for a planar subdivision.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn midpoint(&self, e: usize) -> Coords {
        let (a, b) = self.edges[e];
        geom::centroid(&[&self.vertices[a], &self.vertices[b]])
    }

    pub fn sample(&self, cell: PlanarCell) -> Coords {
        match cell {
            PlanarCell::Vertex(v) => self.vertices[v].clone(),
            PlanarCell::Edge(e) => self.midpoint(e),
            PlanarCell::Face(f) => self.faces[f].sample.clone(),
        }
    }

    /// Point near vertex `v` inside the face sector `face` (or along edge
    /// `edge` when given), with a clear segment back to `v`.
    pub fn near_vertex(&self, v: usize, target: PlanarCell) -> Option<Coords> {
        let p = &self.vertices[v];
        match target {
            PlanarCell::Edge(e) => {
                let (a, b) = self.edges[e];
                let other = if a == v { b } else { a };
                let dir = geom::sub(&self.vertices[other], p);
                self.approach(p, &geom::scale(&dir, &rational::rat(1, 2)), target, Some(target))
            }
            PlanarCell::Face(_) => {
                let mut dirs: Vec<Coords> = self
                    .edges
                    .iter()
                    .filter(|(a, b)| *a == v || *b == v)
                    .map(|(a, b)| geom::sub(&self.vertices[if *a == v { *b } else { *a }], p))
                    .collect();
                if dirs.is_empty() {
                    // isolated vertex: any direction will do
                    return self.approach(p, &vec![rational::int(1), rational::rat(1, 3)], target, None);
                }
                dirs.sort_by(cmp_angle);
                for i in 0..dirs.len() {
                    let d1 = &dirs[i];
                    let d2 = &dirs[(i + 1) % dirs.len()];
                    let cross = &d1[0] * &d2[1] - &d1[1] * &d2[0];
                    let inside = if dirs.len() > 1 && cross.is_positive() {
                        geom::add(d1, d2)
                    } else {
                        vec![-d1[1].clone(), d1[0].clone()]
                    };
                    if let Some(q) = self.approach(p, &inside, target, None) {
                        return Some(q);
                    }
                }
                None
            }
            PlanarCell::Vertex(_) => None,
        }
    }

    /// Point near the midpoint of edge `e` on the side of `face`.
    pub fn near_edge(&self, e: usize, face: usize) -> Option<Coords> {
        let (a, b) = self.edges[e];
        let d = geom::sub(&self.vertices[b], &self.vertices[a]);
        let left = vec![-d[1].clone(), d[0].clone()];
        let mid = self.midpoint(e);
        let (lf, rf) = self.edge_faces[e];
        let mut tries = Vec::new();
        if lf == face {
            tries.push(left.clone());
        }
        if rf == face {
            tries.push(geom::neg(&left));
        }
        tries.into_iter().find_map(|n| self.approach(&mid, &n, PlanarCell::Face(face), Some(PlanarCell::Edge(e))))
    }

    /// Closure pairs `(lower, upper)` between cells.
    pub fn incidences(&self) -> Vec<(PlanarCell, PlanarCell)> {
        let mut out = BTreeSet::new();
        for (e, (a, b)) in self.edges.iter().enumerate() {
            out.insert((PlanarCell::Vertex(*a), PlanarCell::Edge(e)));
            out.insert((PlanarCell::Vertex(*b), PlanarCell::Edge(e)));
            let (l, r) = self.edge_faces[e];
            out.insert((PlanarCell::Edge(e), PlanarCell::Face(l)));
            out.insert((PlanarCell::Edge(e), PlanarCell::Face(r)));
        }
        for (v, fs) in self.vertex_faces.iter().enumerate() {
            for f in fs {
                out.insert((PlanarCell::Vertex(v), PlanarCell::Face(*f)));
            }
        }
        out.into_iter().collect()
    }

    /// Whether `lower` lies in the topological closure of `upper`, decided
    /// from geometry alone (used to audit [`incidences`](Self::incidences)).
    pub fn geometrically_in_closure(&self, lower: PlanarCell, upper: PlanarCell) -> bool {
        match (lower, upper) {
            (PlanarCell::Vertex(v), PlanarCell::Edge(e)) => {
                let (a, b) = self.edges[e];
                v == a || v == b
            }
            (PlanarCell::Vertex(v), PlanarCell::Face(f)) => self.near_vertex(v, PlanarCell::Face(f)).is_some(),
            (PlanarCell::Edge(e), PlanarCell::Face(f)) => self.near_edge(e, f).is_some(),
            _ => false,
        }
    }
}

/// Contact point of two non-parallel segments touching at an endpoint that
/// `segment_intersection` may already report; also catches collinear
/// segments meeting at a single endpoint.
fn touching_point(a: &Coords, b: &Coords, c: &Coords, d: &Coords) -> Option<Coords> {
    for p in [a, b] {
        if on_segment(c, d, p) {
            return Some(p.clone());
        }
    }
    for p in [c, d] {
        if on_segment(a, b, p) {
            return Some(p.clone());
        }
    }
    if orient(a, b, c) == Ordering::Equal && orient(a, b, d) == Ordering::Equal {
        return None;
    }
    None
}
