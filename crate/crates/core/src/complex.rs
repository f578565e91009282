//! Abstract simplicial complexes.
//!
//! A [`SimplicialComplex`] is a face-closed set of [`Simplex`] values, each a
//! strictly increasing tuple of vertex labels. Complexes carry no geometry;
//! coordinates live in [`crate::jacobi::PLMap`].
//!
//! Besides the usual star/link/join primitives this module provides the
//! native stratification `Nat(K)` (simplices ordered by the face relation),
//! its skeletal filtration, and a combinatorial manifold check that decides
//! sphere/ball links up to dimension two.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{Cell, MonotoneMap, Poset, StratifiedSpace};
use crate::union_find::UnionFind;

/// Vertex label.
pub type Vertex = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("simplex {0} is not a member of the complex")]
    NotAMember(Simplex),
    #[error("vertex tuple {0:?} is not strictly increasing")]
    Unsorted(Vec<Vertex>),
    #[error("empty vertex tuple")]
    EmptySimplex,
    #[error("join factors share vertex labels {0:?}")]
    NotDisjoint(Vec<Vertex>),
    #[error("operation requires a nonempty complex")]
    Empty,
    #[error("complex is not pure: maximal simplices have dimensions {0:?}")]
    NonPure(Vec<usize>),
    #[error("facet uses vertex {0} missing from the vertex list")]
    UnknownVertex(Vertex),
    #[error("{0} is not an edge of the complex")]
    NotAnEdge(Simplex),
    #[error("vertex {0} already present")]
    VertexExists(Vertex),
}

/// A simplex: strictly increasing, nonempty vertex tuple.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vertex>", into = "Vec<Vertex>")]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Checked constructor; the tuple must already be sorted without repeats.
    pub fn new(vertices: Vec<Vertex>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptySimplex);
        }
        if vertices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ComplexError::Unsorted(vertices));
        }
        Ok(Self(vertices))
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(vertices: impl IntoIterator<Item = Vertex>) -> Result<Self, ComplexError> {
        let set: BTreeSet<Vertex> = vertices.into_iter().collect();
        Self::new(set.into_iter().collect())
    }

    pub fn vertex(v: Vertex) -> Self {
        Self(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self ⊆ other` as vertex sets.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        self.0.iter().all(|v| it.any(|w| w == v))
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| !other.contains_vertex(*v))
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::from_unsorted(self.0.iter().chain(other.0.iter()).copied())
            .expect("union of nonempty simplices is nonempty")
    }

    /// All nonempty faces, including `self`.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1u64 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|i| mask & (1 << i) != 0)
                        .map(|i| self.0[i])
                        .collect(),
                )
            })
            .collect()
    }

    /// Codimension-one faces.
    pub fn boundary(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, v)| *v)
                        .collect(),
                )
            })
            .collect()
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl TryFrom<Vec<Vertex>> for Simplex {
    type Error = ComplexError;
    fn try_from(v: Vec<Vertex>) -> Result<Self, Self::Error> {
        Simplex::new(v)
    }
}

impl From<Simplex> for Vec<Vertex> {
    fn from(s: Simplex) -> Self {
        s.0
    }
}

/// Shorthand for building a simplex in tests and golden data.
pub fn simplex(vertices: &[Vertex]) -> Simplex {
    Simplex::from_unsorted(vertices.iter().copied()).expect("nonempty simplex")
}

/// Finite abstract simplicial complex, closed under taking faces.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.facets()).finish()
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Face closure of the given simplices.
    pub fn from_facets<I>(facets: I) -> Self
    where
        I: IntoIterator<Item = Simplex>,
    {
        let mut simplices = BTreeSet::new();
        for s in facets {
            if simplices.contains(&s) {
                continue;
            }
            simplices.extend(s.faces());
        }
        Self { simplices }
    }

    /// Convenience over raw vertex slices; tuples are sorted first.
    pub fn from_vertex_lists(facets: &[&[Vertex]]) -> Self {
        Self::from_facets(facets.iter().map(|f| simplex(f)))
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    /// Simplices in (dimension, lexicographic) order.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.dim() == d)
    }

    pub fn count_of_dim(&self, d: usize) -> usize {
        self.of_dim(d).count()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        self.of_dim(0).map(|s| s.0[0]).collect()
    }

    /// `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    /// Maximal simplices.
    pub fn facets(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for s in self.simplices.iter().rev() {
            if !out.iter().any(|t: &Simplex| s.is_face_of(t)) {
                out.push(s.clone());
            }
        }
        out.sort();
        out
    }

    pub fn is_pure(&self) -> bool {
        let dims: BTreeSet<usize> = self.facets().iter().map(Simplex::dim).collect();
        dims.len() <= 1
    }

    fn require(&self, s: &Simplex) -> Result<(), ComplexError> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(ComplexError::NotAMember(s.clone()))
        }
    }

    /// All simplices having `sigma` as a face, `sigma` included.
    pub fn star(&self, sigma: &Simplex) -> Result<BTreeSet<Simplex>, ComplexError> {
        self.require(sigma)?;
        Ok(self
            .simplices
            .iter()
            .filter(|t| sigma.is_face_of(t))
            .cloned()
            .collect())
    }

    /// Simplices disjoint from `sigma` whose union with it is in the complex.
    pub fn link(&self, sigma: &Simplex) -> Result<SimplicialComplex, ComplexError> {
        let star = self.star(sigma)?;
        let simplices = star
            .iter()
            .filter(|t| t.0.len() > sigma.0.len())
            .map(|t| Simplex(t.0.iter().copied().filter(|v| !sigma.contains_vertex(*v)).collect()))
            .collect();
        Ok(Self { simplices })
    }

    /// Full subcomplex spanned by the given vertices.
    pub fn induced(&self, vertices: &BTreeSet<Vertex>) -> SimplicialComplex {
        Self {
            simplices: self
                .simplices
                .iter()
                .filter(|s| s.0.iter().all(|v| vertices.contains(v)))
                .cloned()
                .collect(),
        }
    }

    /// Simplices of dimension at most `d`.
    pub fn skeleton(&self, d: usize) -> SimplicialComplex {
        Self {
            simplices: self.simplices.iter().filter(|s| s.dim() <= d).cloned().collect(),
        }
    }

    /// Set union of two complexes.
    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self {
            simplices: self.simplices.union(&other.simplices).cloned().collect(),
        }
    }

    pub fn relabel(&self, map: impl Fn(Vertex) -> Vertex) -> SimplicialComplex {
        Self::from_facets(
            self.facets()
                .iter()
                .map(|s| Simplex::from_unsorted(s.0.iter().map(|v| map(*v))).expect("nonempty")),
        )
    }

    /// Alternating simplex count.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Connected components, as vertex sets.
    pub fn components(&self) -> Vec<BTreeSet<Vertex>> {
        let verts = self.vertices();
        let index: BTreeMap<Vertex, usize> = verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let mut uf = UnionFind::new(verts.len());
        for e in self.of_dim(1) {
            uf.union(index[&e.0[0]], index[&e.0[1]]);
        }
        let (labels, count) = uf.labels();
        let mut out = vec![BTreeSet::new(); count];
        for (i, v) in verts.iter().enumerate() {
            out[labels[i]].insert(*v);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Simplices of dimension `d - 1` paired with the `d`-simplices containing them.
    pub fn cofacet_counts(&self, d: usize) -> BTreeMap<Simplex, usize> {
        let mut counts: BTreeMap<Simplex, usize> = self.of_dim(d - 1).map(|s| (s.clone(), 0)).collect();
        for s in self.of_dim(d) {
            for f in s.boundary() {
                *counts.entry(f).or_default() += 1;
            }
        }
        counts
    }

    /// Stellar subdivision of a single edge by a fresh vertex.
    pub fn subdivide_edge(&self, edge: &Simplex, apex: Vertex) -> Result<SimplicialComplex, ComplexError> {
        if edge.dim() != 1 || !self.contains(edge) {
            return Err(ComplexError::NotAnEdge(edge.clone()));
        }
        if self.contains(&Simplex::vertex(apex)) {
            return Err(ComplexError::VertexExists(apex));
        }
        let (a, b) = (edge.0[0], edge.0[1]);
        let mut facets = Vec::new();
        for s in self.facets() {
            if edge.is_face_of(&s) {
                for end in [a, b] {
                    let rest = s.0.iter().copied().filter(|v| *v != end).chain([apex]);
                    facets.push(Simplex::from_unsorted(rest)?);
                }
            } else {
                facets.push(s);
            }
        }
        Ok(Self::from_facets(facets))
    }

    pub fn boundary_of_simplex(s: &Simplex) -> SimplicialComplex {
        Self::from_facets(s.boundary())
    }
}

/// Simplicial join of complexes on disjoint vertex sets.
pub fn join(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<SimplicialComplex, ComplexError> {
    let kv: BTreeSet<Vertex> = k.vertices().into_iter().collect();
    let shared: Vec<Vertex> = l.vertices().into_iter().filter(|v| kv.contains(v)).collect();
    if !shared.is_empty() {
        return Err(ComplexError::NotDisjoint(shared));
    }
    let mut simplices: BTreeSet<Simplex> = k.simplices.union(&l.simplices).cloned().collect();
    for s in &k.simplices {
        for t in &l.simplices {
            simplices.insert(s.union(t));
        }
    }
    Ok(SimplicialComplex { simplices })
}

/// Native stratification: every simplex is its own stratum, ordered by faces.
pub fn native_stratification(k: &SimplicialComplex) -> Result<StratifiedSpace, ComplexError> {
    if k.is_empty() {
        return Err(ComplexError::Empty);
    }
    let simplices: Vec<&Simplex> = k.simplices().collect();
    let index: BTreeMap<&Simplex, usize> = simplices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut covers = Vec::new();
    for (i, s) in simplices.iter().enumerate() {
        for f in s.boundary() {
            covers.push((index[&f], i));
        }
    }
    let labels = simplices.iter().map(|s| s.to_string()).collect();
    let poset = Poset::from_relations(labels, covers.clone()).expect("face relation is a partial order");
    let cells = simplices
        .iter()
        .map(|s| Cell::new(s.to_string(), s.dim()))
        .collect();
    let assignment = (0..simplices.len()).collect();
    Ok(StratifiedSpace::new(cells, covers, poset, assignment).expect("identity assignment is continuous"))
}

/// `dim : Nat(K) → [dim K]`, as a monotone map into the chain `0 < 1 < … < dim K`.
pub fn skeletal_filtration(k: &SimplicialComplex) -> Result<MonotoneMap, ComplexError> {
    let nat = native_stratification(k)?;
    let top = k.dim().ok_or(ComplexError::Empty)?;
    let dims = nat.cells().iter().map(|c| c.dim).collect();
    Ok(MonotoneMap::new(nat.poset().clone(), Poset::chain(top), dims).expect("dimension is monotone on faces"))
}

/// Outcome of a link recognition attempt.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinkVerdict {
    Sphere,
    Ball,
    NotSphere,
    Undecided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkCheck {
    pub simplex: Simplex,
    pub verdict: LinkVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldReport {
    pub dimension: usize,
    /// Closed condition: every codimension-one simplex lies in exactly two top simplices
    /// and links of lower simplices are connected.
    pub is_weak_pseudomanifold: bool,
    /// Same, but codimension-one simplices may lie in one top simplex (boundary).
    pub is_weak_pseudomanifold_with_boundary: bool,
    pub boundary_facets: usize,
    pub link_checks: Vec<LinkCheck>,
}

impl ManifoldReport {
    /// `Some(true)` when every link was recognised as a sphere or ball,
    /// `Some(false)` on any definite failure, `None` when some link was undecided.
    pub fn is_combinatorial_manifold(&self) -> Option<bool> {
        if !self.is_weak_pseudomanifold_with_boundary
            || self.link_checks.iter().any(|c| c.verdict == LinkVerdict::NotSphere)
        {
            return Some(false);
        }
        if self.link_checks.iter().any(|c| c.verdict == LinkVerdict::Undecided) {
            None
        } else {
            Some(true)
        }
    }

    pub fn is_closed_surface(&self) -> bool {
        self.dimension == 2 && self.is_weak_pseudomanifold && self.is_combinatorial_manifold() == Some(true)
    }
}

/// Pure-complex manifold check. Sphere and ball verdicts are issued only for
/// links of dimension at most two.
pub fn manifold_check(k: &SimplicialComplex) -> Result<ManifoldReport, ComplexError> {
    let n = k.dim().ok_or(ComplexError::Empty)?;
    if !k.is_pure() {
        let dims: BTreeSet<usize> = k.facets().iter().map(Simplex::dim).collect();
        return Err(ComplexError::NonPure(dims.into_iter().collect()));
    }
    let (closed, with_boundary, boundary_facets) = if n == 0 {
        (true, true, 0)
    } else {
        let counts = k.cofacet_counts(n);
        let closed = counts.values().all(|c| *c == 2);
        let bounded = counts.values().all(|c| *c == 1 || *c == 2);
        (closed, bounded, counts.values().filter(|c| **c == 1).count())
    };
    let mut links_connected = true;
    let mut link_checks = Vec::with_capacity(k.len());
    for s in k.simplices() {
        let link = k.link(s)?;
        let link_dim = n as isize - s.dim() as isize - 1;
        if link_dim >= 1 && !link.is_connected() {
            links_connected = false;
        }
        link_checks.push(LinkCheck {
            simplex: s.clone(),
            verdict: recognize_link(&link, link_dim),
        });
    }
    Ok(ManifoldReport {
        dimension: n,
        is_weak_pseudomanifold: closed && links_connected,
        is_weak_pseudomanifold_with_boundary: with_boundary && links_connected,
        boundary_facets,
        link_checks,
    })
}

/// Recognises `S^d` or `B^d` for `d <= 2`.
pub fn recognize_link(link: &SimplicialComplex, d: isize) -> LinkVerdict {
    if d < 0 {
        return if link.is_empty() {
            LinkVerdict::Sphere
        } else {
            LinkVerdict::NotSphere
        };
    }
    let d = d as usize;
    if link.dim() != Some(d) || !link.is_pure() {
        return LinkVerdict::NotSphere;
    }
    match d {
        0 => match link.len() {
            1 => LinkVerdict::Ball,
            2 => LinkVerdict::Sphere,
            _ => LinkVerdict::NotSphere,
        },
        1 => {
            if !link.is_connected() {
                return LinkVerdict::NotSphere;
            }
            let degrees = link.cofacet_counts(1);
            let ones = degrees.values().filter(|c| **c == 1).count();
            if degrees.values().all(|c| *c == 2) {
                LinkVerdict::Sphere
            } else if ones == 2 && degrees.values().all(|c| *c == 1 || *c == 2) {
                LinkVerdict::Ball
            } else {
                LinkVerdict::NotSphere
            }
        }
        2 => recognize_surface(link),
        _ => LinkVerdict::Undecided,
    }
}

fn recognize_surface(link: &SimplicialComplex) -> LinkVerdict {
    if !link.is_connected() {
        return LinkVerdict::NotSphere;
    }
    let edge_counts = link.cofacet_counts(2);
    if !edge_counts.values().all(|c| *c == 1 || *c == 2) {
        return LinkVerdict::NotSphere;
    }
    let has_boundary = edge_counts.values().any(|c| *c == 1);
    for v in link.of_dim(0) {
        let vl = link.link(v).expect("member");
        let expected = if has_boundary { None } else { Some(LinkVerdict::Sphere) };
        let got = recognize_link(&vl, 1);
        match (expected, got) {
            (Some(e), g) if e != g => return LinkVerdict::NotSphere,
            (None, LinkVerdict::NotSphere | LinkVerdict::Undecided) => return LinkVerdict::NotSphere,
            _ => {}
        }
    }
    let chi = link.euler_characteristic();
    if has_boundary {
        // a disk: one boundary circle and Euler characteristic one
        let boundary = SimplicialComplex::from_facets(
            edge_counts.iter().filter(|(_, c)| **c == 1).map(|(e, _)| e.clone()),
        );
        if chi == 1 && recognize_link(&boundary, 1) == LinkVerdict::Sphere {
            LinkVerdict::Ball
        } else {
            LinkVerdict::NotSphere
        }
    } else if chi == 2 {
        LinkVerdict::Sphere
    } else {
        LinkVerdict::NotSphere
    }
}

/// On-disk complex description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub vertices: Vec<Vertex>,
    pub facets: Vec<Vec<Vertex>>,
}

impl ComplexFile {
    pub fn into_complex(self) -> Result<SimplicialComplex, ComplexError> {
        let known: BTreeSet<Vertex> = self.vertices.iter().copied().collect();
        if known.len() != self.vertices.len() {
            let mut seen = BTreeSet::new();
            let dup = self.vertices.iter().find(|v| !seen.insert(**v)).copied().unwrap_or_default();
            return Err(ComplexError::Unsorted(vec![dup, dup]));
        }
        let mut facets = Vec::with_capacity(self.facets.len() + known.len());
        for f in self.facets {
            if let Some(v) = f.iter().find(|v| !known.contains(v)) {
                return Err(ComplexError::UnknownVertex(*v));
            }
            facets.push(Simplex::new(f)?);
        }
        facets.extend(known.iter().map(|v| Simplex::vertex(*v)));
        Ok(SimplicialComplex::from_facets(facets))
    }

    pub fn from_complex(k: &SimplicialComplex) -> Self {
        Self {
            vertices: k.vertices(),
            facets: k.facets().into_iter().map(Into::into).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::{octahedron, oct};

    fn s(v: &[Vertex]) -> Simplex {
        simplex(v)
    }

    #[test]
    fn simplex_rejects_bad_tuples() {
        assert!(matches!(Simplex::new(vec![2, 1]), Err(ComplexError::Unsorted(_))));
        assert!(matches!(Simplex::new(vec![1, 1]), Err(ComplexError::Unsorted(_))));
        assert!(matches!(Simplex::new(vec![]), Err(ComplexError::EmptySimplex)));
        assert_eq!(Simplex::new(vec![0, 3, 7]).unwrap().dim(), 2);
    }

    #[test]
    fn octahedron_star_of_apex() {
        let o = octahedron();
        let star = o.star(&s(&[oct::M])).unwrap();
        assert_eq!(star.len(), 9);
        let expected: BTreeSet<Simplex> = [
            &[oct::M][..],
            &[oct::M, oct::A],
            &[oct::M, oct::B],
            &[oct::M, oct::C],
            &[oct::M, oct::D],
            &[oct::M, oct::A, oct::B],
            &[oct::M, oct::B, oct::C],
            &[oct::M, oct::C, oct::D],
            &[oct::M, oct::D, oct::A],
        ]
        .iter()
        .map(|v| s(v))
        .collect();
        assert_eq!(star, expected);
    }

    #[test]
    fn octahedron_star_and_link_of_edge() {
        let o = octahedron();
        let am = s(&[oct::A, oct::M]);
        let star = o.star(&am).unwrap();
        let expected: BTreeSet<Simplex> =
            [s(&[oct::A, oct::M]), s(&[oct::M, oct::A, oct::B]), s(&[oct::M, oct::D, oct::A])].into();
        assert_eq!(star, expected);
        let link = o.link(&am).unwrap();
        assert_eq!(link, SimplicialComplex::from_facets([s(&[oct::B]), s(&[oct::D])]));
    }

    #[test]
    fn octahedron_link_of_apex_is_square() {
        let o = octahedron();
        let link = o.link(&s(&[oct::M])).unwrap();
        let square = SimplicialComplex::from_vertex_lists(&[
            &[oct::A, oct::B],
            &[oct::B, oct::C],
            &[oct::C, oct::D],
            &[oct::D, oct::A],
        ]);
        assert_eq!(link, square);
        // Link(m) = {a,c} * {b,d}
        let ac = SimplicialComplex::from_vertex_lists(&[&[oct::A], &[oct::C]]);
        let bd = SimplicialComplex::from_vertex_lists(&[&[oct::B], &[oct::D]]);
        assert_eq!(join(&ac, &bd).unwrap(), square);
    }

    #[test]
    fn facet_star_and_link() {
        let o = octahedron();
        let f = s(&[oct::M, oct::A, oct::B]);
        assert_eq!(o.star(&f).unwrap(), BTreeSet::from([f.clone()]));
        assert!(o.link(&f).unwrap().is_empty());
    }

    #[test]
    fn non_member_errors() {
        let o = octahedron();
        let bad = s(&[oct::M, oct::W]);
        assert_eq!(o.star(&bad), Err(ComplexError::NotAMember(bad.clone())));
        assert!(matches!(o.link(&bad), Err(ComplexError::NotAMember(_))));
    }

    #[test]
    fn join_examples() {
        let s0a = SimplicialComplex::from_vertex_lists(&[&[0], &[1]]);
        let s0b = SimplicialComplex::from_vertex_lists(&[&[2], &[3]]);
        let j = join(&s0a, &s0b).unwrap();
        assert_eq!(j.count_of_dim(1), 4);
        assert_eq!(recognize_link(&j, 1), LinkVerdict::Sphere);

        let tri = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2]]);
        let cone = join(&SimplicialComplex::from_vertex_lists(&[&[9]]), &tri).unwrap();
        assert_eq!(cone.dim(), Some(3));

        assert_eq!(join(&SimplicialComplex::empty(), &tri).unwrap(), tri);
        assert!(matches!(join(&tri, &tri), Err(ComplexError::NotDisjoint(_))));
    }

    #[test]
    fn native_stratification_examples() {
        let edge = SimplicialComplex::from_vertex_lists(&[&[0, 1]]);
        let nat = native_stratification(&edge).unwrap();
        let p = nat.poset();
        assert_eq!(p.len(), 3);
        let b0 = p.index_of("[0]").unwrap();
        let b1 = p.index_of("[1]").unwrap();
        let a = p.index_of("[0,1]").unwrap();
        assert!(p.leq(b0, a) && p.leq(b1, a));
        assert!(!p.leq(b0, b1) && !p.leq(b1, b0));

        let pt = SimplicialComplex::from_vertex_lists(&[&[4]]);
        assert_eq!(native_stratification(&pt).unwrap().poset().len(), 1);

        assert_eq!(native_stratification(&octahedron()).unwrap().poset().len(), 26);
        assert_eq!(native_stratification(&SimplicialComplex::empty()).unwrap_err(), ComplexError::Empty);
    }

    #[test]
    fn skeletal_filtration_counts() {
        let edge = SimplicialComplex::from_vertex_lists(&[&[0, 1]]);
        let dims = skeletal_filtration(&edge).unwrap();
        assert_eq!(dims.assignment(), &[0, 0, 1]);

        let o = skeletal_filtration(&octahedron()).unwrap();
        let mut sizes = [0usize; 3];
        for d in o.assignment() {
            sizes[*d] += 1;
        }
        assert_eq!(sizes, [6, 12, 8]);
    }

    #[test]
    fn manifold_check_examples() {
        let report = manifold_check(&octahedron()).unwrap();
        assert!(report.is_weak_pseudomanifold);
        assert!(report.is_closed_surface());
        for c in &report.link_checks {
            assert_eq!(c.verdict, LinkVerdict::Sphere, "{}", c.simplex);
        }

        let dangling = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2], &[1, 2, 3], &[3, 4]]);
        assert!(matches!(manifold_check(&dangling), Err(ComplexError::NonPure(_))));
        let two = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2], &[1, 2, 3]]);
        let r = manifold_check(&two).unwrap();
        assert!(!r.is_weak_pseudomanifold);
        assert!(r.is_weak_pseudomanifold_with_boundary);

        let tet_boundary = SimplicialComplex::boundary_of_simplex(&s(&[0, 1, 2, 3]));
        assert_eq!(recognize_link(&tet_boundary, 2), LinkVerdict::Sphere);
        assert_eq!(tet_boundary.euler_characteristic(), 2);
    }

    #[test]
    fn higher_links_are_undecided() {
        let b5 = SimplicialComplex::boundary_of_simplex(&s(&[0, 1, 2, 3, 4, 5]));
        let r = manifold_check(&b5).unwrap();
        assert!(r.is_weak_pseudomanifold);
        let v = r.link_checks.iter().find(|c| c.simplex == s(&[0])).unwrap();
        assert_eq!(v.verdict, LinkVerdict::Undecided);
        assert_eq!(r.is_combinatorial_manifold(), None);
    }

    #[test]
    fn solid_tetrahedron_has_ball_links() {
        let tet = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2, 3]]);
        let r = manifold_check(&tet).unwrap();
        assert!(!r.is_weak_pseudomanifold);
        assert!(r.is_weak_pseudomanifold_with_boundary);
        assert_eq!(r.is_combinatorial_manifold(), Some(true));
        assert!(r.link_checks.iter().any(|c| c.verdict == LinkVerdict::Ball));
    }

    #[test]
    fn edge_subdivision_link_is_join() {
        let o = octahedron();
        let am = s(&[oct::A, oct::M]);
        let apex = 100;
        let sub = o.subdivide_edge(&am, apex).unwrap();
        // drop the edge and its two triangles, add the apex, four edges, four triangles
        assert_eq!(sub.len(), o.len() - 3 + 9);
        let link = sub.link(&s(&[apex])).unwrap();
        let ends = SimplicialComplex::from_vertex_lists(&[&[oct::A], &[oct::M]]);
        assert_eq!(link, join(&ends, &o.link(&am).unwrap()).unwrap());
        assert!(manifold_check(&sub).unwrap().is_closed_surface());
    }

    #[test]
    fn complex_file_rejects_unsorted() {
        let bad = ComplexFile { vertices: vec![0, 1, 2], facets: vec![vec![1, 0, 2]] };
        assert!(matches!(bad.into_complex(), Err(ComplexError::Unsorted(_))));
        let unknown = ComplexFile { vertices: vec![0, 1], facets: vec![vec![0, 5]] };
        assert_eq!(unknown.into_complex(), Err(ComplexError::UnknownVertex(5)));
        let o = octahedron();
        let back = ComplexFile::from_complex(&o).into_complex().unwrap();
        assert_eq!(back, o);
    }
}
