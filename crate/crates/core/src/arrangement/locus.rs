//! Stratification of a planar singular locus given as polylines.
//!
//! Essential points are crossings, cusp marks, vertical tangencies (strict
//! sign changes of the x-increment along a strand) and endpoints of open
//! strands. Between essential points the fine polyline edges merge into
//! 1-cells, and the complement faces are added on top.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poset::{Cell, Poset, StratifiedSpace};
use crate::rational::Coords;

use super::planar::{PlanarArrangement, PlanarCell};
use super::{ArrangementError, PointJson, StratificationJson};

/// Locus file: `{"strands": [[["0","0"], ["1","2"]]], "cusps": [[0, 1]]}`.
/// The optional `breaks` entry inserts extra 0-cells at strand vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusFile {
    pub strands: Vec<Vec<PointJson>>,
    #[serde(default)]
    pub cusps: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub breaks: Vec<(usize, usize)>,
}

/// Polyline strands with marked points, addressed as `(strand, vertex)`.
/// A strand whose last point equals its first is closed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SingularLocus {
    pub strands: Vec<Vec<Coords>>,
    pub cusps: Vec<(usize, usize)>,
    pub breaks: Vec<(usize, usize)>,
}

impl SingularLocus {
    pub fn new(
        strands: Vec<Vec<Coords>>,
        cusps: Vec<(usize, usize)>,
        breaks: Vec<(usize, usize)>,
    ) -> Result<Self, ArrangementError> {
        for (i, s) in strands.iter().enumerate() {
            if s.len() < 2 {
                return Err(ArrangementError::InvalidLocus(format!("strand {} has fewer than two points", i)));
            }
            if s.iter().any(|p| p.len() != 2) {
                return Err(ArrangementError::InvalidLocus(format!("strand {} has a point not in the plane", i)));
            }
        }
        for &(s, v) in cusps.iter().chain(&breaks) {
            if strands.get(s).is_none_or(|st| v >= st.len()) {
                return Err(ArrangementError::InvalidLocus(format!("mark ({}, {}) is not a strand vertex", s, v)));
            }
        }
        Ok(Self { strands, cusps, breaks })
    }

    pub fn from_file(file: LocusFile) -> Result<Self, ArrangementError> {
        let strands = file.strands.into_iter().map(|s| s.into_iter().map(|p| p.0).collect()).collect();
        Self::new(strands, file.cusps, file.breaks)
    }

    pub fn to_file(&self) -> LocusFile {
        LocusFile {
            strands: self.strands.iter().map(|s| s.iter().cloned().map(PointJson).collect()).collect(),
            cusps: self.cusps.clone(),
            breaks: self.breaks.clone(),
        }
    }

    fn is_closed(&self, s: usize) -> bool {
        let st = &self.strands[s];
        st.len() > 2 && st.first() == st.last()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ZeroCellKind {
    Crossing,
    Cusp,
    Tangency,
    Endpoint,
    /// Marked without geometric reason.
    Break,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroCell {
    /// Index into the fine arrangement's vertices.
    pub vertex: usize,
    pub kinds: BTreeSet<ZeroCellKind>,
    /// Number of fine edges at the point.
    pub degree: usize,
}

/// Locus stratification. Strata are `v*` (0-cells), `e*` (1-cells) and `f*`
/// (complement faces, `f0` unbounded); the carrier is the fine arrangement of
/// all polyline pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusStratification {
    pub arrangement: PlanarArrangement,
    pub zero_cells: Vec<ZeroCell>,
    /// Fine edges making up each 1-cell, in walking order.
    pub one_cells: Vec<Vec<usize>>,
    pub space: StratifiedSpace,
}

impl LocusStratification {
    pub fn poset(&self) -> &Poset {
        self.space.poset()
    }

    pub fn face_count(&self) -> usize {
        self.arrangement.face_count()
    }

    /// Stratum index of a fine cell.
    pub fn stratum_of(&self, c: PlanarCell) -> usize {
        self.space.stratum_of(fine_index(&self.arrangement, c))
    }

    pub fn to_json(&self) -> StratificationJson {
        let arr = &self.arrangement;
        StratificationJson::from_space(&self.space, |c| {
            let (nv, ne) = (arr.vertex_count(), arr.edge_count());
            if c < nv {
                vec![arr.vertices[c].clone()]
            } else if c < nv + ne {
                let (a, b) = arr.edges[c - nv];
                vec![arr.vertices[a].clone(), arr.vertices[b].clone()]
            } else {
                arr.faces[c - nv - ne]
                    .outer
                    .as_ref()
                    .map(|o| o.iter().map(|v| arr.vertices[*v].clone()).collect())
                    .unwrap_or_default()
            }
        })
    }
}

fn fine_index(arr: &PlanarArrangement, c: PlanarCell) -> usize {
    match c {
        PlanarCell::Vertex(i) => i,
        PlanarCell::Edge(i) => arr.vertex_count() + i,
        PlanarCell::Face(i) => arr.vertex_count() + arr.edge_count() + i,
    }
}

pub fn stratify_singular_locus(l: &SingularLocus) -> Result<LocusStratification, ArrangementError> {
    let mut segments = Vec::new();
    for st in &l.strands {
        for w in st.windows(2) {
            segments.push((w[0].clone(), w[1].clone()));
        }
    }
    let arr = PlanarArrangement::from_segments(&segments).map_err(|e| match e {
        ArrangementError::Overlap(..) | ArrangementError::TJunction { .. } | ArrangementError::TriplePoint(_) => {
            ArrangementError::NonTransverse(e.to_string())
        }
        ArrangementError::DegenerateSegment(i) => {
            ArrangementError::InvalidLocus(format!("piece {} repeats a point", i))
        }
        other => other,
    })?;
    let at = |p: &Coords| arr.vertices.binary_search(p).expect("strand vertex is an arrangement vertex");
    let mut kinds: BTreeMap<usize, BTreeSet<ZeroCellKind>> = BTreeMap::new();
    for &c in &arr.crossings {
        kinds.entry(c).or_default().insert(ZeroCellKind::Crossing);
    }
    for &(s, v) in &l.cusps {
        kinds.entry(at(&l.strands[s][v])).or_default().insert(ZeroCellKind::Cusp);
    }
    for &(s, v) in &l.breaks {
        kinds.entry(at(&l.strands[s][v])).or_default().insert(ZeroCellKind::Break);
    }
    for (si, st) in l.strands.iter().enumerate() {
        let dx: Vec<_> = st.windows(2).map(|w| &w[1][0] - &w[0][0]).collect();
        if let Some(i) = dx.iter().position(|d| d.is_zero()) {
            return Err(ArrangementError::InvalidLocus(format!(
                "strand {} has a vertical piece at vertex {} (plateau of the x-increment)",
                si, i
            )));
        }
        for i in 1..dx.len() {
            if dx[i - 1].is_positive() != dx[i].is_positive() {
                kinds.entry(at(&st[i])).or_default().insert(ZeroCellKind::Tangency);
            }
        }
        if l.is_closed(si) {
            if dx[dx.len() - 1].is_positive() != dx[0].is_positive() {
                kinds.entry(at(&st[0])).or_default().insert(ZeroCellKind::Tangency);
            }
        } else {
            kinds.entry(at(&st[0])).or_default().insert(ZeroCellKind::Endpoint);
            kinds.entry(at(&st[st.len() - 1])).or_default().insert(ZeroCellKind::Endpoint);
        }
    }
    let nv = arr.vertex_count();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for (e, (a, b)) in arr.edges.iter().enumerate() {
        incident[*a].push(e);
        incident[*b].push(e);
    }
    let essential: Vec<bool> = (0..nv).map(|v| kinds.contains_key(&v) || incident[v].len() != 2).collect();
    // walk 1-cells between essential points
    let mut edge_cell = vec![usize::MAX; arr.edge_count()];
    let mut one_cells: Vec<Vec<usize>> = Vec::new();
    let mut ends: Vec<(usize, usize)> = Vec::new();
    for start in (0..nv).filter(|v| essential[*v]) {
        for &e0 in &incident[start] {
            if edge_cell[e0] != usize::MAX {
                continue;
            }
            let id = one_cells.len();
            let mut chain = Vec::new();
            let (mut v, mut e) = (start, e0);
            loop {
                edge_cell[e] = id;
                chain.push(e);
                let (a, b) = arr.edges[e];
                v = if a == v { b } else { a };
                if essential[v] {
                    break;
                }
                e = *incident[v].iter().find(|x| **x != e).expect("degree two");
                if edge_cell[e] != usize::MAX {
                    break;
                }
            }
            ends.push((start, v));
            one_cells.push(chain);
        }
    }
    if edge_cell.contains(&usize::MAX) {
        return Err(ArrangementError::Internal("closed strand without an essential point".into()));
    }
    let zero_index: BTreeMap<usize, usize> =
        (0..nv).filter(|v| essential[*v]).enumerate().map(|(i, v)| (v, i)).collect();
    let zero_cells: Vec<ZeroCell> = zero_index
        .keys()
        .map(|&v| ZeroCell { vertex: v, kinds: kinds.get(&v).cloned().unwrap_or_default(), degree: incident[v].len() })
        .collect();
    let n0 = zero_cells.len();
    let n1 = one_cells.len();
    let mut labels: Vec<String> = (0..n0).map(|i| format!("v{}", i)).collect();
    labels.extend((0..n1).map(|i| format!("e{}", i)));
    let nat_pairs: Vec<(usize, usize)> =
        ends.iter().enumerate().flat_map(|(c, (a, b))| [(zero_index[a], n0 + c), (zero_index[b], n0 + c)]).collect();
    // stratum of each fine cell
    let vertex_stratum: Vec<usize> = (0..nv)
        .map(|v| match zero_index.get(&v) {
            Some(z) => *z,
            None => n0 + edge_cell[incident[v][0]],
        })
        .collect();
    let stratum = |c: PlanarCell| match c {
        PlanarCell::Vertex(v) => vertex_stratum[v],
        PlanarCell::Edge(e) => n0 + edge_cell[e],
        PlanarCell::Face(f) => n0 + n1 + f,
    };
    let incidences = arr.incidences();
    let mut face_pairs = BTreeSet::new();
    for &(lo, hi) in &incidences {
        if let PlanarCell::Face(f) = hi {
            if !arr.geometrically_in_closure(lo, hi) {
                return Err(ArrangementError::Internal(format!("{:?} is not in the closure of {:?}", lo, hi)));
            }
            face_pairs.insert((stratum(lo), f));
        }
    }
    let faces: Vec<String> = (0..arr.face_count()).map(|i| format!("f{}", i)).collect();
    let poset = Poset::from_relations(labels, nat_pairs)?
        .wedge_extend(&faces, &face_pairs.into_iter().collect::<Vec<_>>())?;
    let mut cells: Vec<Cell> = (0..nv).map(|i| Cell::new(format!("pt{}", i), 0)).collect();
    cells.extend((0..arr.edge_count()).map(|i| Cell::new(format!("seg{}", i), 1)));
    cells.extend((0..arr.face_count()).map(|i| Cell::new(format!("face{}", i), 2)));
    let mut assignment: Vec<usize> = (0..nv).map(|v| stratum(PlanarCell::Vertex(v))).collect();
    assignment.extend((0..arr.edge_count()).map(|e| stratum(PlanarCell::Edge(e))));
    assignment.extend((0..arr.face_count()).map(|f| stratum(PlanarCell::Face(f))));
    let closure = incidences.iter().map(|(a, b)| (fine_index(&arr, *a), fine_index(&arr, *b))).collect();
    let space = StratifiedSpace::new(cells, closure, poset, assignment)?;
    Ok(LocusStratification { arrangement: arr, zero_cells, one_cells, space })
}

/// True iff no 0-cell could be erased by merging the 1-cells through it:
/// each one is a crossing, cusp, tangency or endpoint, or is not a plain
/// degree-two point.
pub fn coarseness_check(s: &LocusStratification) -> bool {
    s.zero_cells.iter().all(|z| z.kinds.iter().any(|k| *k != ZeroCellKind::Break) || z.degree != 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;
    use crate::rational::int;

    fn p(x: i64, y: i64) -> Coords {
        vec![int(x), int(y)]
    }

    #[test]
    fn convex_loop() {
        let l = golden::convex_loop();
        let s = stratify_singular_locus(&l).unwrap();
        assert_eq!(s.zero_cells.len(), 2);
        assert!(s.zero_cells.iter().all(|z| z.kinds.contains(&ZeroCellKind::Tangency)));
        assert_eq!(s.one_cells.len(), 2);
        assert_eq!(s.face_count(), 2);
        assert_eq!(s.poset().len(), 6);
        assert!(coarseness_check(&s));
    }

    #[test]
    fn spurious_point_is_removable() {
        let mut l = golden::convex_loop();
        l.breaks.push((0, 1));
        let s = stratify_singular_locus(&l).unwrap();
        assert_eq!(s.zero_cells.len(), 3);
        assert!(!coarseness_check(&s));
    }

    #[test]
    fn fold_and_cusp_locus() {
        let s = stratify_singular_locus(&golden::fold_locus()).unwrap();
        let count = |k: ZeroCellKind| s.zero_cells.iter().filter(|z| z.kinds.contains(&k)).count();
        assert_eq!(s.zero_cells.len(), 7);
        assert_eq!(count(ZeroCellKind::Cusp), 2);
        assert_eq!(count(ZeroCellKind::Crossing), 1);
        assert_eq!(count(ZeroCellKind::Tangency), 0);
        assert_eq!(s.one_cells.len(), 6);
        assert_eq!(s.face_count(), 2);
        assert_eq!(s.poset().len(), 15);
        assert!(coarseness_check(&s));
        let a = &s.arrangement;
        assert_eq!(a.euler_characteristic(), 1 + a.components() as i64);
    }

    #[test]
    fn empty_locus() {
        let s = stratify_singular_locus(&SingularLocus::default()).unwrap();
        assert_eq!(s.poset().len(), 1);
        assert!(coarseness_check(&s));
    }

    #[test]
    fn bad_loci() {
        let vertical = SingularLocus::new(vec![vec![p(0, 0), p(0, 1)]], vec![], vec![]).unwrap();
        assert!(matches!(stratify_singular_locus(&vertical), Err(ArrangementError::InvalidLocus(_))));
        let touching =
            SingularLocus::new(vec![vec![p(0, 0), p(2, 0)], vec![p(1, 0), p(2, 3)]], vec![], vec![]).unwrap();
        assert!(matches!(stratify_singular_locus(&touching), Err(ArrangementError::NonTransverse(_))));
        assert!(SingularLocus::new(vec![vec![p(0, 0), p(1, 1)]], vec![(0, 5)], vec![]).is_err());
    }

    #[test]
    fn file_round_trip() {
        let l = golden::fold_locus();
        let text = serde_json::to_string(&l.to_file()).unwrap();
        let back = SingularLocus::from_file(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, l);
    }
}
