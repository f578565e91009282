//! PL maps, genericity, criticality of simplices, and Jacobi sets.
//!
//! A [`PLMap`] assigns each vertex of a complex a point of `ℝᵏ` and extends
//! affinely over simplices. Criticality of a `(k−1)`-simplex is decided in
//! three ways:
//!
//! * **H**: the upper link (vertices of the link strictly above the affine
//!   hull of `f(σ)` in a normal direction) has nonzero reduced Z/2 homology;
//! * **D**: the PL differential at the barycenter is not surjective, i.e. the
//!   image directions of the star do not positively span `ℝᵏ`;
//! * **L**: (closed surfaces, `k = 1` only) the link does not split into one
//!   upper and one lower arc.
//!
//! The Jacobi set is the face closure of the critical `(k−1)`-simplices.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{self, ComplexError, Simplex, SimplicialComplex, Vertex};
use crate::geom;
use crate::homology::{reduced_betti, BettiVector};
use crate::poset::{Cell, PosetError, StratifiedSpace};
use crate::rational::{self, Coords, Rational};
use crate::union_find::UnionFind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobiError {
    #[error("vertex {0} has no value")]
    MissingValue(Vertex),
    #[error("value given for vertex {0}, which is not in the domain")]
    UnknownVertex(Vertex),
    #[error("vertex {vertex} has {got} coordinates, expected {expected}")]
    WrongArity { vertex: Vertex, expected: usize, got: usize },
    #[error("target dimension must be positive")]
    ZeroTarget,
    #[error("{simplex} has dimension {got}, expected {expected}")]
    WrongDimension { simplex: Simplex, expected: usize, got: usize },
    #[error("image of {0} is degenerate")]
    DegenerateImage(Simplex),
    #[error("link vertex {vertex} of {simplex} lies on the affine hull of its image")]
    Tie { simplex: Simplex, vertex: Vertex },
    #[error("map is not generic: {0}")]
    NotGeneric(String),
    #[error("the L notion is only decided for maps from closed surfaces to the line")]
    NotSurfaceCase,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Criticality notion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Notion {
    H,
    D,
    L,
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Notion::H => "H",
            Notion::D => "D",
            Notion::L => "L",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Notion {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "H" | "h" => Ok(Notion::H),
            "D" | "d" => Ok(Notion::D),
            "L" | "l" => Ok(Notion::L),
            _ => Err(format!("unknown notion {:?} (expected H, D or L)", s)),
        }
    }
}

/// Piecewise-linear map `|K| → ℝᵏ` given by vertex values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLMap {
    domain: SimplicialComplex,
    k: usize,
    values: BTreeMap<Vertex, Coords>,
    perturb: bool,
}

/// Function-value file: `{"k": 1, "values": {"0": ["1/2"], ...}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuesFile {
    pub k: usize,
    pub values: BTreeMap<Vertex, ValueEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValueEntry(#[serde(with = "rational::serde_coords")] pub Coords);

impl PLMap {
    pub fn new(domain: SimplicialComplex, k: usize, values: BTreeMap<Vertex, Coords>) -> Result<Self, JacobiError> {
        if k == 0 {
            return Err(JacobiError::ZeroTarget);
        }
        let verts = domain.vertices();
        for v in &verts {
            match values.get(v) {
                None => return Err(JacobiError::MissingValue(*v)),
                Some(c) if c.len() != k => {
                    return Err(JacobiError::WrongArity { vertex: *v, expected: k, got: c.len() })
                }
                Some(_) => {}
            }
        }
        if let Some(v) = values.keys().find(|v| verts.binary_search(v).is_err()) {
            return Err(JacobiError::UnknownVertex(*v));
        }
        Ok(Self { domain, k, values, perturb: false })
    }

    pub fn from_file(domain: SimplicialComplex, file: ValuesFile) -> Result<Self, JacobiError> {
        let values = file.values.into_iter().map(|(v, e)| (v, e.0)).collect();
        Self::new(domain, file.k, values)
    }

    pub fn to_file(&self) -> ValuesFile {
        ValuesFile {
            k: self.k,
            values: self.values.iter().map(|(v, c)| (*v, ValueEntry(c.clone()))).collect(),
        }
    }

    /// Breaks ties between a link vertex and the hull of a simplex by vertex
    /// index instead of reporting them.
    pub fn with_perturbation(mut self, on: bool) -> Self {
        self.perturb = on;
        self
    }

    pub fn perturbed(&self) -> bool {
        self.perturb
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn values(&self) -> &BTreeMap<Vertex, Coords> {
        &self.values
    }

    pub fn value(&self, v: Vertex) -> &Coords {
        &self.values[&v]
    }

    fn images(&self, s: &Simplex) -> Vec<&Coords> {
        s.vertices().iter().map(|v| self.value(*v)).collect()
    }

    pub fn barycenter(&self, s: &Simplex) -> Coords {
        geom::centroid(&self.images(s))
    }

    /// Image of the point of `s` with the given barycentric weights.
    pub fn eval(&self, s: &Simplex, weights: &[Rational]) -> Coords {
        let mut out = vec![Rational::zero(); self.k];
        for (v, w) in s.vertices().iter().zip(weights) {
            for (o, x) in out.iter_mut().zip(self.value(*v)) {
                *o += w * x;
            }
        }
        out
    }

    /// Same map with vertex labels changed by an injective `relabel`.
    pub fn relabel(&self, relabel: impl Fn(Vertex) -> Vertex) -> PLMap {
        PLMap {
            domain: self.domain.relabel(&relabel),
            k: self.k,
            values: self.values.iter().map(|(v, c)| (relabel(*v), c.clone())).collect(),
            perturb: self.perturb,
        }
    }

    /// Unit-free normal to the affine hull of `f(σ)` for a `(k−1)`-simplex.
    pub fn normal(&self, sigma: &Simplex) -> Result<Coords, JacobiError> {
        self.require_critical_dim(sigma)?;
        let imgs = self.images(sigma);
        if !geom::affinely_independent(&imgs) {
            return Err(JacobiError::DegenerateImage(sigma.clone()));
        }
        Ok(match self.k {
            1 => vec![rational::int(1)],
            2 => {
                let d = geom::sub(imgs[1], imgs[0]);
                vec![-d[1].clone(), d[0].clone()]
            }
            _ => {
                let rows: Vec<Coords> = imgs[1..].iter().map(|p| geom::sub(p, imgs[0])).collect();
                let mut null = geom::nullspace(&rows, self.k);
                if null.len() != 1 {
                    return Err(JacobiError::DegenerateImage(sigma.clone()));
                }
                null.remove(0)
            }
        })
    }

    fn require_member(&self, s: &Simplex) -> Result<(), JacobiError> {
        if self.domain.contains(s) {
            Ok(())
        } else {
            Err(ComplexError::NotAMember(s.clone()).into())
        }
    }

    fn require_critical_dim(&self, s: &Simplex) -> Result<(), JacobiError> {
        self.require_member(s)?;
        if s.dim() + 1 != self.k {
            return Err(JacobiError::WrongDimension { simplex: s.clone(), expected: self.k - 1, got: s.dim() });
        }
        Ok(())
    }

    /// Side of link vertex `v` relative to the hyperplane through `f(σ)` with
    /// normal `u`.
    fn side(&self, sigma: &Simplex, u: &Coords, level: &Rational, v: Vertex) -> Result<Ordering, JacobiError> {
        let h = geom::dot(self.value(v), u);
        match h.cmp(level) {
            Ordering::Equal if self.perturb => {
                let top = *sigma.vertices().last().expect("nonempty");
                Ok(v.cmp(&top))
            }
            Ordering::Equal => Err(JacobiError::Tie { simplex: sigma.clone(), vertex: v }),
            o => Ok(o),
        }
    }
}

/// Upper and lower link of `σ` for the height `⟨f(·), u⟩`.
pub fn directional_links(
    f: &PLMap,
    sigma: &Simplex,
    u: &Coords,
) -> Result<(SimplicialComplex, SimplicialComplex), JacobiError> {
    f.require_member(sigma)?;
    if u.len() != f.k || u.iter().all(Zero::is_zero) {
        return Err(JacobiError::DegenerateImage(sigma.clone()));
    }
    let link = f.domain.link(sigma)?;
    let level = geom::dot(&f.barycenter(sigma), u);
    let mut up = BTreeSet::new();
    let mut down = BTreeSet::new();
    for v in link.vertices() {
        match f.side(sigma, u, &level, v)? {
            Ordering::Greater => up.insert(v),
            _ => down.insert(v),
        };
    }
    Ok((link.induced(&up), link.induced(&down)))
}

/// Simplices on the boundary of a pure complex: faces of codimension-one
/// simplices that lie in exactly one top simplex.
pub fn boundary_subcomplex(k: &SimplicialComplex) -> SimplicialComplex {
    match k.dim() {
        Some(n) if n > 0 => SimplicialComplex::from_facets(
            k.cofacet_counts(n).into_iter().filter(|(_, c)| *c == 1).map(|(s, _)| s),
        ),
        _ => SimplicialComplex::empty(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HVerdict {
    pub upper: BettiVector,
    pub lower: BettiVector,
    pub critical: bool,
}

/// H-criticality with both normal directions. On interior simplices the two
/// sides must agree; on boundary simplices (links are balls, not spheres) a
/// simplex is critical when either side has homology.
pub fn h_verdict(f: &PLMap, sigma: &Simplex) -> Result<HVerdict, JacobiError> {
    let boundary = boundary_subcomplex(&f.domain);
    h_verdict_with(f, sigma, &boundary)
}

fn h_verdict_with(f: &PLMap, sigma: &Simplex, boundary: &SimplicialComplex) -> Result<HVerdict, JacobiError> {
    let u = f.normal(sigma)?;
    let (upper, lower) = directional_links(f, sigma, &u)?;
    let (bu, bl) = (reduced_betti(&upper), reduced_betti(&lower));
    let (nu, nl) = (bu.is_nontrivial(), bl.is_nontrivial());
    if nu != nl && !boundary.contains(sigma) {
        return Err(JacobiError::Internal(format!(
            "upper and lower links of interior simplex {} disagree",
            sigma
        )));
    }
    Ok(HVerdict { upper: bu, lower: bl, critical: nu || nl })
}

pub fn is_h_critical(f: &PLMap, sigma: &Simplex) -> Result<bool, JacobiError> {
    Ok(h_verdict(f, sigma)?.critical)
}

/// D-criticality at the barycenter of `σ`.
pub fn is_d_critical(f: &PLMap, sigma: &Simplex) -> Result<bool, JacobiError> {
    let n = sigma.vertices().len();
    let w = vec![Rational::new(1.into(), (n as i64).into()); n];
    d_critical_at(f, sigma, &w)
}

/// D-criticality at the interior point of `σ` with barycentric `weights`.
pub fn d_critical_at(f: &PLMap, sigma: &Simplex, weights: &[Rational]) -> Result<bool, JacobiError> {
    f.require_member(sigma)?;
    if sigma.dim() + 1 > f.k {
        return Err(JacobiError::WrongDimension { simplex: sigma.clone(), expected: f.k - 1, got: sigma.dim() });
    }
    let b = f.eval(sigma, weights);
    let link = f.domain.link(sigma)?;
    let mut gens: Vec<Coords> = link.vertices().iter().map(|v| geom::sub(f.value(*v), &b)).collect();
    for w in sigma.vertices() {
        let d = geom::sub(f.value(*w), &b);
        if d.iter().any(|x| !x.is_zero()) {
            gens.push(geom::neg(&d));
            gens.push(d);
        }
    }
    Ok(!geom::positive_hull_is_everything(&gens, f.k))
}

/// L-criticality for a vertex of a closed surface under a real-valued map.
/// `None` outside that case.
pub fn is_l_critical_surface(f: &PLMap, v: &Simplex) -> Result<Option<bool>, JacobiError> {
    f.require_member(v)?;
    if f.k != 1 || v.dim() != 0 {
        return Ok(None);
    }
    let link = f.domain.link(v)?;
    let Some(cycle) = cyclic_order(&link) else {
        return Ok(None);
    };
    let u = vec![rational::int(1)];
    let level = geom::dot(f.value(v.vertices()[0]), &u);
    let signs = cycle
        .iter()
        .map(|w| f.side(v, &u, &level, *w))
        .collect::<Result<Vec<_>, _>>()?;
    let changes = (0..signs.len()).filter(|i| signs[*i] != signs[(i + 1) % signs.len()]).count();
    Ok(Some(changes != 2))
}

/// Vertices of a complex that is a single cycle, in cyclic order.
fn cyclic_order(link: &SimplicialComplex) -> Option<Vec<Vertex>> {
    if link.dim() != Some(1) || link.count_of_dim(2) != 0 {
        return None;
    }
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for e in link.of_dim(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) || adj.len() != link.count_of_dim(0) {
        return None;
    }
    let start = *adj.keys().next()?;
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = adj[&start][0];
    while cur != start {
        order.push(cur);
        let next = if adj[&cur][0] == prev { adj[&cur][1] } else { adj[&cur][0] };
        prev = cur;
        cur = next;
    }
    (order.len() == adj.len()).then_some(order)
}

/// Per-simplex criticality under all three notions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityVerdict {
    pub simplex: Simplex,
    pub h_critical: bool,
    pub d_critical: bool,
    /// `None` when undecided.
    pub l_critical: Option<bool>,
}

impl CriticalityVerdict {
    pub fn is_critical(&self, notion: Notion) -> Option<bool> {
        match notion {
            Notion::H => Some(self.h_critical),
            Notion::D => Some(self.d_critical),
            Notion::L => self.l_critical,
        }
    }

    /// D-critical implies H-critical and not L-regular.
    pub fn respects_implications(&self) -> bool {
        !self.d_critical || (self.h_critical && self.l_critical != Some(false))
    }
}

pub fn verdict(f: &PLMap, sigma: &Simplex) -> Result<CriticalityVerdict, JacobiError> {
    let boundary = boundary_subcomplex(&f.domain);
    verdict_with(f, sigma, &boundary, is_closed_surface(&f.domain))
}

fn verdict_with(
    f: &PLMap,
    sigma: &Simplex,
    boundary: &SimplicialComplex,
    surface: bool,
) -> Result<CriticalityVerdict, JacobiError> {
    let h = h_verdict_with(f, sigma, boundary)?;
    let d = is_d_critical(f, sigma)?;
    let l = if surface { is_l_critical_surface(f, sigma)? } else { None };
    Ok(CriticalityVerdict { simplex: sigma.clone(), h_critical: h.critical, d_critical: d, l_critical: l })
}

fn is_closed_surface(k: &SimplicialComplex) -> bool {
    complex::manifold_check(k).map(|r| r.is_closed_surface()).unwrap_or(false)
}

/// Verdicts for every `(k−1)`-simplex, in simplex order. Evaluated in
/// parallel; the result does not depend on scheduling.
pub fn criticality_table(f: &PLMap) -> Result<Vec<CriticalityVerdict>, JacobiError> {
    let boundary = boundary_subcomplex(&f.domain);
    let surface = f.k == 1 && is_closed_surface(&f.domain);
    let sigmas: Vec<&Simplex> = f.domain.of_dim(f.k - 1).collect();
    sigmas
        .par_iter()
        .map(|s| verdict_with(f, s, &boundary, surface))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityViolation {
    pub rule: String,
    pub vertices: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenericityReport {
    pub passed: bool,
    pub violations: Vec<GenericityViolation>,
}

/// Local genericity:
/// * G1: simplices of dimension at most `k` have affinely independent images;
/// * G2: for `k = 1`, vertex values are pairwise distinct;
/// * G3: no link vertex of a `(k−1)`-simplex maps onto the affine hull of its image.
///
/// With symbolic perturbation switched on, ties that the perturbation breaks
/// (G2, G3, and G1 for `k = 1`) are not reported.
pub fn check_generic(f: &PLMap) -> GenericityReport {
    let mut violations = Vec::new();
    let breaks_ties = f.perturb;
    for s in f.domain.simplices().filter(|s| s.dim() <= f.k && s.dim() > 0) {
        if breaks_ties && f.k == 1 {
            break;
        }
        if !geom::affinely_independent(&f.images(s)) {
            violations.push(GenericityViolation { rule: "G1".into(), vertices: s.vertices().to_vec() });
        }
    }
    if f.k == 1 && !breaks_ties {
        let mut by_value: BTreeMap<&Rational, Vec<Vertex>> = BTreeMap::new();
        for (v, c) in &f.values {
            by_value.entry(&c[0]).or_default().push(*v);
        }
        for vs in by_value.into_values().filter(|vs| vs.len() > 1) {
            violations.push(GenericityViolation { rule: "G2".into(), vertices: vs });
        }
    }
    if !breaks_ties {
        for s in f.domain.of_dim(f.k - 1) {
            let imgs = f.images(s);
            if !geom::affinely_independent(&imgs) {
                continue;
            }
            let Ok(link) = f.domain.link(s) else { continue };
            for v in link.vertices() {
                if geom::on_affine_hull(&imgs, f.value(v)) {
                    let mut vs = s.vertices().to_vec();
                    vs.push(v);
                    violations.push(GenericityViolation { rule: "G3".into(), vertices: vs });
                }
            }
        }
    }
    GenericityReport { passed: violations.is_empty(), violations }
}

/// Face closure of the critical `(k−1)`-simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JacobiSet {
    pub complex: SimplicialComplex,
    pub notion: Notion,
    pub critical: Vec<Simplex>,
}

impl JacobiSet {
    pub fn vertices(&self) -> Vec<Vertex> {
        self.complex.vertices()
    }
}

pub fn jacobi_set(f: &PLMap, notion: Notion) -> Result<JacobiSet, JacobiError> {
    let table = checked_table(f, notion)?;
    jacobi_from_table(&table, notion)
}

/// Generic-checked verdict table, also validating the notion's preconditions.
pub fn checked_table(f: &PLMap, notion: Notion) -> Result<Vec<CriticalityVerdict>, JacobiError> {
    let report = check_generic(f);
    if !report.passed {
        let first = &report.violations[0];
        return Err(JacobiError::NotGeneric(format!(
            "{} violation(s), first {} on {:?}",
            report.violations.len(),
            first.rule,
            first.vertices
        )));
    }
    if notion == Notion::L && (f.k != 1 || !is_closed_surface(&f.domain)) {
        return Err(JacobiError::NotSurfaceCase);
    }
    criticality_table(f)
}

pub fn jacobi_from_table(table: &[CriticalityVerdict], notion: Notion) -> Result<JacobiSet, JacobiError> {
    let mut critical = Vec::new();
    for v in table {
        match v.is_critical(notion) {
            Some(true) => critical.push(v.simplex.clone()),
            Some(false) => {}
            None => return Err(JacobiError::NotSurfaceCase),
        }
    }
    Ok(JacobiSet { complex: SimplicialComplex::from_facets(critical.iter().cloned()), notion, critical })
}

/// Domain stratification over `Nat(J)^∧`: simplices of `J` are their own
/// strata; the remaining open simplices are grouped into the connected
/// components of `|X| \ |J|`, each a maximal element above the `J`-simplices
/// in its closure.
pub fn domain_stratification(f: &PLMap, j: &JacobiSet) -> Result<StratifiedSpace, JacobiError> {
    let x = &f.domain;
    if x.is_empty() {
        return Err(ComplexError::Empty.into());
    }
    let cells: Vec<&Simplex> = x.simplices().collect();
    let index: BTreeMap<&Simplex, usize> = cells.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut uf = UnionFind::new(cells.len());
    let mut closure = Vec::new();
    for (i, s) in cells.iter().enumerate() {
        for fct in s.boundary() {
            let fi = index[&fct];
            closure.push((fi, i));
            if !j.complex.contains(&fct) && !j.complex.contains(s) {
                uf.union(fi, i);
            }
        }
    }
    // components numbered in order of their first simplex
    let mut comp_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comp = vec![usize::MAX; cells.len()];
    for (i, s) in cells.iter().enumerate() {
        if j.complex.contains(s) {
            continue;
        }
        let r = uf.find(i);
        let next = comp_of_root.len();
        comp[i] = *comp_of_root.entry(r).or_insert(next);
    }
    let n_comp = comp_of_root.len();
    let nat = if j.complex.is_empty() {
        crate::poset::Poset::empty()
    } else {
        complex::native_stratification(&j.complex)?.poset().clone()
    };
    let j_index: BTreeMap<String, usize> =
        nat.labels().iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
    let mut pairs = BTreeSet::new();
    for &(a, b) in &closure {
        if j.complex.contains(cells[a]) && !j.complex.contains(cells[b]) {
            pairs.insert((j_index[&cells[a].to_string()], comp[b]));
        }
    }
    let labels: Vec<String> = (0..n_comp).map(|c| format!("c{}", c)).collect();
    let poset = nat.wedge_extend(&labels, &pairs.into_iter().collect::<Vec<_>>())?;
    let assignment = cells
        .iter()
        .enumerate()
        .map(|(i, s)| {
            if j.complex.contains(s) {
                j_index[&s.to_string()]
            } else {
                nat.len() + comp[i]
            }
        })
        .collect();
    let cell_list = cells.iter().map(|s| Cell::new(s.to_string(), s.dim())).collect();
    Ok(StratifiedSpace::new(cell_list, closure, poset, assignment)?)
}

/// Counts of surface vertices by upper-link shape, for `k = 1`:
/// `(minima, saddles weighted by multiplicity, maxima)`.
pub fn morse_counts(f: &PLMap) -> Result<(i64, i64, i64), JacobiError> {
    let mut mins = 0;
    let mut saddles = 0;
    let mut maxs = 0;
    for v in f.domain.of_dim(0) {
        let (up, down) = directional_links(f, v, &vec![rational::int(1)])?;
        if down.is_empty() {
            mins += 1;
        } else if up.is_empty() {
            maxs += 1;
        } else {
            // β̃₀ of the upper link counts the extra upper arcs
            saddles += reduced_betti(&up).get(0) as i64;
        }
    }
    Ok((mins, saddles, maxs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simplex;
    use crate::golden::{self, oct};
    use crate::homology::is_h_nontrivial;
    use crate::rational::int;

    #[test]
    fn octahedron_links() {
        let f = golden::octahedron_height();
        let up = vec![int(1)];
        let (u, l) = directional_links(&f, &simplex(&[oct::M]), &up).unwrap();
        assert!(u.is_empty());
        assert_eq!(l.count_of_dim(1), 4);
        let (u, l) = directional_links(&f, &simplex(&[oct::A]), &up).unwrap();
        assert!(u.is_connected() && !u.is_empty() && !is_h_nontrivial(&u));
        assert!(l.is_connected() && !l.is_empty() && !is_h_nontrivial(&l));
    }

    #[test]
    fn octahedron_verdicts() {
        let f = golden::octahedron_height();
        assert!(check_generic(&f).passed);
        for v in [oct::M, oct::W] {
            let s = simplex(&[v]);
            assert!(is_h_critical(&f, &s).unwrap());
            assert!(is_d_critical(&f, &s).unwrap());
            assert_eq!(is_l_critical_surface(&f, &s).unwrap(), Some(true));
        }
        for v in [oct::A, oct::B, oct::C, oct::D] {
            let s = simplex(&[v]);
            assert!(!is_h_critical(&f, &s).unwrap());
            assert!(!is_d_critical(&f, &s).unwrap());
            assert_eq!(is_l_critical_surface(&f, &s).unwrap(), Some(false));
        }
        for notion in [Notion::H, Notion::D, Notion::L] {
            let j = jacobi_set(&f, notion).unwrap();
            assert_eq!(j.vertices(), vec![oct::M, oct::W]);
        }
    }

    #[test]
    fn suspension_cone_points() {
        let f = golden::suspension();
        for v in golden::SUSPENSION_CONE_POINTS {
            let s = simplex(&[v]);
            let (u, _) = directional_links(&f, &s, &vec![int(1)]).unwrap();
            assert_eq!(u.len(), 2);
            assert_eq!(u.count_of_dim(1), 0);
            assert!(is_h_critical(&f, &s).unwrap());
            assert!(!is_d_critical(&f, &s).unwrap());
        }
        assert!(check_generic(&f).passed);
    }

    #[test]
    fn torus_patch_saddle() {
        let f = golden::torus_patch();
        let p = simplex(&[golden::TORUS_PATCH_SADDLE]);
        assert!(!is_d_critical(&f, &p).unwrap());
        assert_eq!(is_l_critical_surface(&f, &p).unwrap(), Some(true));
        assert!(is_h_critical(&f, &p).unwrap());
    }

    #[test]
    fn tetrahedron_projection() {
        let f = golden::tetrahedron_projection();
        assert!(check_generic(&f).passed);
        let j = jacobi_set(&f, Notion::H).unwrap();
        assert_eq!(j.complex.count_of_dim(0), 4);
        assert_eq!(j.complex.count_of_dim(1), 4);
        assert_eq!(reduced_betti(&j.complex).entries(), &[0, 0, 1]);
        assert_eq!(jacobi_set(&f, Notion::D).unwrap().complex, j.complex);
        assert_eq!(jacobi_set(&f, Notion::L), Err(JacobiError::NotSurfaceCase));
    }

    #[test]
    fn equal_heights_violate_g2() {
        let o = golden::octahedron();
        let mut values: BTreeMap<Vertex, Coords> = o.vertices().into_iter().map(|v| (v, vec![int(v as i64)])).collect();
        values.insert(oct::A, vec![int(oct::B as i64)]);
        let f = PLMap::new(o, 1, values).unwrap();
        let r = check_generic(&f);
        assert!(!r.passed);
        assert!(r.violations.iter().any(|v| v.rule == "G2" && v.vertices == vec![oct::A, oct::B]));
        assert!(matches!(jacobi_set(&f, Notion::H), Err(JacobiError::NotGeneric(_))));
        let p = f.with_perturbation(true);
        assert!(check_generic(&p).passed);
        assert!(jacobi_set(&p, Notion::H).is_ok());
    }

    #[test]
    fn missing_values_are_rejected() {
        let o = golden::octahedron();
        let values: BTreeMap<Vertex, Coords> = [(oct::M, vec![int(0)])].into();
        assert_eq!(PLMap::new(o, 1, values), Err(JacobiError::MissingValue(oct::A)));
    }

    #[test]
    fn octahedron_domain_strata() {
        let f = golden::octahedron_height();
        let j = jacobi_set(&f, Notion::H).unwrap();
        let s = domain_stratification(&f, &j).unwrap();
        assert_eq!(s.poset().len(), 3);
        let c0 = s.poset().index_of("c0").unwrap();
        assert!(s.poset().leq(s.poset().index_of("[0]").unwrap(), c0));
    }

    #[test]
    fn empty_jacobi_set_gives_one_stratum() {
        let tri = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2]]);
        let values = [(0, vec![int(0), int(0)]), (1, vec![int(1), int(0)]), (2, vec![int(0), int(1)])].into();
        let f = PLMap::new(tri, 2, values).unwrap();
        let j = JacobiSet { complex: SimplicialComplex::empty(), notion: Notion::H, critical: vec![] };
        let s = domain_stratification(&f, &j).unwrap();
        assert_eq!(s.poset().len(), 1);
    }

    #[test]
    fn d_criticality_is_constant_on_simplices() {
        let f = golden::tetrahedron_projection();
        for e in f.domain().of_dim(1) {
            let a = d_critical_at(&f, e, &[rational::rat(1, 3), rational::rat(2, 3)]).unwrap();
            let b = d_critical_at(&f, e, &[rational::rat(3, 4), rational::rat(1, 4)]).unwrap();
            assert_eq!(a, b, "{}", e);
        }
    }

    #[test]
    fn torus_has_four_critical_vertices() {
        let f = golden::torus_height();
        assert!(check_generic(&f).passed);
        let mut expected = golden::TORUS_CRITICAL.to_vec();
        expected.sort();
        for notion in [Notion::H, Notion::L] {
            assert_eq!(jacobi_set(&f, notion).unwrap().vertices(), expected);
        }
        // the saddles are D-regular
        let d = jacobi_set(&f, Notion::D).unwrap();
        assert_eq!(d.vertices(), vec![golden::TORUS_CRITICAL[0], golden::TORUS_CRITICAL[3]]);
        let j = jacobi_set(&f, Notion::H).unwrap();
        assert_eq!(domain_stratification(&f, &j).unwrap().poset().len(), 5);
        let (mi, sa, ma) = morse_counts(&f).unwrap();
        assert_eq!(mi - sa + ma, 0);
    }

    #[test]
    fn morse_counts_match_euler() {
        let f = golden::octahedron_height();
        let (mi, sa, ma) = morse_counts(&f).unwrap();
        assert_eq!(mi - sa + ma, 2);
    }
}
