//! Connected components of fibers and of preimages of segments.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::Simplex;
use crate::geom::{collinear_overlap, in_triangle, on_segment, orient, segment_intersection};
use crate::jacobi::PLMap;
use crate::rational::{Coords, Rational};
use crate::union_find::UnionFind;

use super::ReebError;

/// A connected piece of `f⁻¹(y)`, described by the top simplices it meets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberComponent {
    #[serde(with = "crate::rational::serde_coords")]
    pub level: Coords,
    pub support: Vec<Simplex>,
}

/// Preimage query: a point or a closed segment of the codomain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Probe {
    Point(Coords),
    Segment(Coords, Coords),
}

/// Precomputed facet adjacency of the top simplices of a domain.
#[derive(Debug, Clone)]
pub struct FiberOracle<'a> {
    f: &'a PLMap,
    top: Vec<Simplex>,
    /// Codimension-one faces shared by at least two top simplices.
    shared: Vec<(Simplex, Vec<usize>)>,
}

impl<'a> FiberOracle<'a> {
    pub fn new(f: &'a PLMap) -> Result<Self, ReebError> {
        if f.k() > 2 {
            return Err(ReebError::UnsupportedDimension(f.k()));
        }
        let Some(n) = f.domain().dim() else {
            return Ok(Self { f, top: Vec::new(), shared: Vec::new() });
        };
        let top: Vec<Simplex> = f.domain().of_dim(n).cloned().collect();
        let mut by_facet: BTreeMap<Simplex, Vec<usize>> = BTreeMap::new();
        if n > 0 {
            for (i, s) in top.iter().enumerate() {
                for fc in s.boundary() {
                    by_facet.entry(fc).or_default().push(i);
                }
            }
        }
        let shared = by_facet.into_iter().filter(|(_, ts)| ts.len() > 1).collect();
        Ok(Self { f, top, shared })
    }

    pub fn map(&self) -> &PLMap {
        self.f
    }

    pub fn top(&self) -> &[Simplex] {
        &self.top
    }

    /// Whether `f(s)` meets the probe.
    pub fn meets(&self, s: &Simplex, probe: &Probe) -> bool {
        let imgs: Vec<&Coords> = s.vertices().iter().map(|v| self.f.value(*v)).collect();
        match (self.f.k(), probe) {
            (1, Probe::Point(y)) => {
                let (lo, hi) = bounds(&imgs);
                lo <= &y[0] && &y[0] <= hi
            }
            (1, Probe::Segment(a, b)) => {
                let (lo, hi) = bounds(&imgs);
                let (pa, pb) = if a[0] <= b[0] { (&a[0], &b[0]) } else { (&b[0], &a[0]) };
                lo <= pb && pa <= hi
            }
            (_, Probe::Point(y)) => hull_contains(&imgs, y),
            (_, Probe::Segment(a, b)) => {
                if a == b {
                    return hull_contains(&imgs, a);
                }
                if hull_contains(&imgs, a) || hull_contains(&imgs, b) {
                    return true;
                }
                pairs(&imgs).any(|(p, q)| segments_meet(p, q, a, b))
            }
        }
    }

    /// Components of the preimage of the probe, as sorted lists of top
    /// simplex indices, ordered by their smallest index.
    pub fn components(&self, probe: &Probe) -> Vec<Vec<usize>> {
        let hit: Vec<bool> = self.top.iter().map(|s| self.meets(s, probe)).collect();
        let mut uf = UnionFind::new(self.top.len());
        for (fc, ts) in &self.shared {
            let live: Vec<usize> = ts.iter().copied().filter(|t| hit[*t]).collect();
            if live.len() > 1 && self.meets(fc, probe) {
                for w in live.windows(2) {
                    uf.union(w[0], w[1]);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for t in (0..self.top.len()).filter(|t| hit[*t]) {
            groups.entry(uf.find(t)).or_default().push(t);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn point_components(&self, y: &Coords) -> Vec<Vec<usize>> {
        self.components(&Probe::Point(y.clone()))
    }

    pub fn to_fiber(&self, level: &Coords, comp: &[usize]) -> FiberComponent {
        FiberComponent { level: level.clone(), support: comp.iter().map(|t| self.top[*t].clone()).collect() }
    }

    /// Pairs components over `p` with components over `q` that lie in the
    /// same component over the segment `[p, q]`. Entry `i` lists the
    /// `q`-components linked to `p`-component `i`.
    pub fn links(&self, p: &Coords, q: &Coords, over_p: &[Vec<usize>], over_q: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let seg = self.components(&Probe::Segment(p.clone(), q.clone()));
        let mut seg_of = vec![usize::MAX; self.top.len()];
        for (i, c) in seg.iter().enumerate() {
            for t in c {
                seg_of[*t] = i;
            }
        }
        over_p
            .iter()
            .map(|c| {
                let s = seg_of[c[0]];
                (0..over_q.len()).filter(|j| seg_of[over_q[*j][0]] == s).collect()
            })
            .collect()
    }

    /// Bijection between components over `p` and over `q` when the segment
    /// preimage pairs them one to one; `None` otherwise.
    pub fn transport(&self, p: &Coords, q: &Coords, over_p: &[Vec<usize>], over_q: &[Vec<usize>]) -> Option<Vec<usize>> {
        if over_p.len() != over_q.len() {
            return None;
        }
        if p == q {
            return Some((0..over_p.len()).collect());
        }
        let links = self.links(p, q, over_p, over_q);
        let mut used = vec![false; over_q.len()];
        let mut out = Vec::with_capacity(links.len());
        for l in links {
            if l.len() != 1 || used[l[0]] {
                return None;
            }
            used[l[0]] = true;
            out.push(l[0]);
        }
        Some(out)
    }
}

pub fn fiber_components(f: &PLMap, y: &Coords) -> Result<Vec<FiberComponent>, ReebError> {
    let oracle = FiberOracle::new(f)?;
    Ok(oracle.point_components(y).iter().map(|c| oracle.to_fiber(y, c)).collect())
}

fn bounds<'b>(imgs: &[&'b Coords]) -> (&'b Rational, &'b Rational) {
    let lo = imgs.iter().map(|c| &c[0]).min().expect("nonempty simplex");
    let hi = imgs.iter().map(|c| &c[0]).max().expect("nonempty simplex");
    (lo, hi)
}

fn pairs<'b>(imgs: &'b [&'b Coords]) -> impl Iterator<Item = (&'b Coords, &'b Coords)> + 'b {
    (0..imgs.len()).flat_map(move |i| ((i + 1)..imgs.len()).map(move |j| (imgs[i], imgs[j])))
}

/// Point in the convex hull of planar points.
fn hull_contains(imgs: &[&Coords], y: &Coords) -> bool {
    if imgs.contains(&y) {
        return true;
    }
    if pairs(imgs).any(|(a, b)| on_segment(a, b, y)) {
        return true;
    }
    for i in 0..imgs.len() {
        for j in (i + 1)..imgs.len() {
            for l in (j + 1)..imgs.len() {
                let (a, b, c) = (imgs[i], imgs[j], imgs[l]);
                if orient(a, b, c) != Ordering::Equal && in_triangle(a, b, c, y) {
                    return true;
                }
            }
        }
    }
    false
}

/// Closed segments `ab` and `cd` share a point.
fn segments_meet(a: &Coords, b: &Coords, c: &Coords, d: &Coords) -> bool {
    if a == b {
        return on_segment(c, d, a);
    }
    segment_intersection(a, b, c, d).is_some()
        || collinear_overlap(a, b, c, d)
        || on_segment(a, b, c)
        || on_segment(a, b, d)
        || on_segment(c, d, a)
        || on_segment(c, d, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::rational::{int, rat};

    #[test]
    fn octahedron_levels() {
        let f = golden::octahedron_height();
        assert_eq!(fiber_components(&f, &vec![rat(5, 2)]).unwrap().len(), 1);
        assert_eq!(fiber_components(&f, &vec![int(9)]).unwrap().len(), 0);
        assert_eq!(fiber_components(&f, &vec![int(0)]).unwrap().len(), 1);
    }

    #[test]
    fn torus_between_saddles_has_two_circles() {
        let f = golden::torus_height();
        let lo = &f.value(golden::TORUS_CRITICAL[2])[0];
        let hi = &f.value(golden::TORUS_CRITICAL[1])[0];
        let mid = (lo + hi) / int(2);
        let comps = fiber_components(&f, &vec![mid]).unwrap();
        assert_eq!(comps.len(), 2);
        // supports partition the simplices that meet the level
        let total: usize = comps.iter().map(|c| c.support.len()).sum();
        let oracle = FiberOracle::new(&f).unwrap();
        let hit = oracle.top().iter().filter(|s| oracle.meets(s, &Probe::Point(comps[0].level.clone()))).count();
        assert_eq!(total, hit);
    }

    #[test]
    fn tetrahedron_fibers() {
        let f = golden::tetrahedron_projection();
        let c = fiber_components(&f, &vec![rat(3, 2), rat(9, 4)]).unwrap();
        assert_eq!(c.len(), 1);
        assert!(fiber_components(&f, &vec![int(40), int(40)]).unwrap().is_empty());
    }

    #[test]
    fn segment_transport() {
        let f = golden::torus_height();
        let o = FiberOracle::new(&f).unwrap();
        let lo = f.value(golden::TORUS_CRITICAL[2]).clone();
        let hi = f.value(golden::TORUS_CRITICAL[1]).clone();
        let a = vec![(&lo[0] * int(3) + &hi[0]) / int(4)];
        let b = vec![(&lo[0] + &hi[0] * int(3)) / int(4)];
        let ca = o.point_components(&a);
        let cb = o.point_components(&b);
        let t = o.transport(&a, &b, &ca, &cb).unwrap();
        assert_eq!(t.len(), 2);
        assert_ne!(t[0], t[1]);
        // across the upper saddle the two circles merge
        let top = o.point_components(&hi);
        assert_eq!(top.len(), 1);
        assert!(o.transport(&b, &hi, &cb, &top).is_none());
        assert_eq!(o.links(&b, &hi, &cb, &top), vec![vec![0], vec![0]]);
    }
}
