//! Finite posets, their upward-closed topology, and stratified spaces over them.
//!
//! A [`Poset`] stores its order both as the covering relation (Hasse diagram)
//! and as a bit-packed reflexive transitive closure. A [`StratifiedSpace`] is a
//! finite cell collection with an explicit "lies in the closure of" relation and
//! a continuous assignment of cells to poset elements.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("element index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("relation is not antisymmetric: {0:?} and {1:?} are mutually related")]
    NotAntisymmetric(String, String),
    #[error("map is not monotone: {0:?} <= {1:?} but images are not related")]
    NotMonotone(String, String),
    #[error("assignment is not continuous: cell {cell:?} lies in the closure of {of:?}")]
    NotContinuous { cell: String, of: String },
    #[error("expected {expected} entries, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("carriers differ")]
    CarrierMismatch,
    #[error("elements {0:?} do not form a chain")]
    NotAChain(Vec<String>),
}

/// A finite partially ordered set with labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `leq[i]` has bit `j` set iff `i <= j`.
    leq: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
}

fn check_labels(labels: &[String]) -> Result<(), PosetError> {
    let mut seen = BTreeSet::new();
    for l in labels {
        if !seen.insert(l.as_str()) {
            return Err(PosetError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Reflexive transitive closure of `pairs` on `n` elements.
fn closure(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<FixedBitSet>, PosetError> {
    let mut leq = vec![FixedBitSet::with_capacity(n); n];
    for (i, row) in leq.iter_mut().enumerate() {
        row.insert(i);
    }
    for &(a, b) in pairs {
        if a >= n {
            return Err(PosetError::IndexOutOfRange(a));
        }
        if b >= n {
            return Err(PosetError::IndexOutOfRange(b));
        }
        leq[a].insert(b);
    }
    for k in 0..n {
        let row_k = leq[k].clone();
        for row in leq.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
    Ok(leq)
}

fn antisymmetry_witness(leq: &[FixedBitSet]) -> Option<(usize, usize)> {
    for (i, row) in leq.iter().enumerate() {
        for j in row.ones() {
            if j != i && leq[j].contains(i) {
                return Some((i, j));
            }
        }
    }
    None
}

impl Poset {
    /// Builds the order generated by `pairs` (`(a, b)` meaning `a <= b`).
    pub fn from_relations(labels: Vec<String>, pairs: Vec<(usize, usize)>) -> Result<Self, PosetError> {
        check_labels(&labels)?;
        let leq = closure(labels.len(), &pairs)?;
        if let Some((i, j)) = antisymmetry_witness(&leq) {
            return Err(PosetError::NotAntisymmetric(labels[i].clone(), labels[j].clone()));
        }
        Ok(Self::from_closure(labels, leq))
    }

    fn from_closure(labels: Vec<String>, leq: Vec<FixedBitSet>) -> Self {
        let n = labels.len();
        let mut geq = vec![FixedBitSet::with_capacity(n); n];
        for (i, row) in leq.iter().enumerate() {
            for j in row.ones() {
                geq[j].insert(i);
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in leq[i].ones() {
                if i != j && leq[i].intersection(&geq[j]).count() == 2 {
                    covers.push((i, j));
                }
            }
        }
        Self { labels, leq, covers }
    }

    /// Elements labelled `"0" < "1" < … < "n"`.
    pub fn chain(n: usize) -> Self {
        let labels = (0..=n).map(|i| i.to_string()).collect();
        let pairs = (0..n).map(|i| (i, i + 1)).collect();
        Self::from_relations(labels, pairs).expect("chain is a poset")
    }

    pub fn antichain(labels: Vec<String>) -> Result<Self, PosetError> {
        Self::from_relations(labels, Vec::new())
    }

    /// One-element poset `*`.
    pub fn point() -> Self {
        Self::chain(0).relabelled(|_| "*".to_string())
    }

    pub fn empty() -> Self {
        Self { labels: Vec::new(), leq: Vec::new(), covers: Vec::new() }
    }

    pub fn from_json(json: &PosetJson) -> Result<Self, PosetError> {
        let index = label_index(&json.elements)?;
        let pairs = json
            .covers
            .iter()
            .map(|(a, b)| Ok((lookup(&index, a)?, lookup(&index, b)?)))
            .collect::<Result<Vec<_>, PosetError>>()?;
        Self::from_relations(json.elements.clone(), pairs)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self
                .covers
                .iter()
                .map(|(a, b)| (self.labels[*a].clone(), self.labels[*b].clone()))
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    fn check(&self, p: usize) -> Result<(), PosetError> {
        if p < self.len() {
            Ok(())
        } else {
            Err(PosetError::IndexOutOfRange(p))
        }
    }

    /// Checks reflexivity, transitivity and antisymmetry of the stored order.
    pub fn is_valid(&self) -> bool {
        let n = self.len();
        for i in 0..n {
            if !self.leq(i, i) {
                return false;
            }
            for j in self.leq[i].ones() {
                if j != i && self.leq(j, i) {
                    return false;
                }
                if !self.leq[j].is_subset(&self.leq[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Smallest open set containing `p`.
    pub fn up_set(&self, p: usize) -> Result<BTreeSet<usize>, PosetError> {
        self.check(p)?;
        Ok(self.leq[p].ones().collect())
    }

    pub fn down_set(&self, p: usize) -> Result<BTreeSet<usize>, PosetError> {
        self.check(p)?;
        Ok((0..self.len()).filter(|q| self.leq(*q, p)).collect())
    }

    /// Upward closed subsets are the open sets.
    pub fn is_open(&self, set: &BTreeSet<usize>) -> bool {
        set.iter().all(|p| *p < self.len() && self.leq[*p].ones().all(|q| set.contains(&q)))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|i| !(0..self.len()).any(|j| self.lt(j, *i)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|i| !(0..self.len()).any(|j| self.lt(*i, j)))
            .collect()
    }

    /// Product order; element `(i, j)` sits at index `i * q.len() + j`.
    pub fn product(&self, q: &Poset) -> Poset {
        let m = q.len();
        let labels = self
            .labels
            .iter()
            .flat_map(|a| q.labels.iter().map(move |b| format!("({},{})", a, b)))
            .collect();
        let mut pairs = Vec::new();
        for (a, b) in &self.covers {
            for j in 0..m {
                pairs.push((a * m + j, b * m + j));
            }
        }
        for (a, b) in &q.covers {
            for i in 0..self.len() {
                pairs.push((i * m + a, i * m + b));
            }
        }
        Poset::from_relations(labels, pairs).expect("product of posets is a poset")
    }

    fn fresh_label(&self, base: &str) -> String {
        let mut l = base.to_string();
        while self.labels.contains(&l) {
            l.push('\'');
        }
        l
    }

    /// Adjoins a new minimum, appended as the last element.
    pub fn left_cone(&self) -> Poset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(self.fresh_label("⊥"));
        let mut pairs: Vec<_> = self.covers.clone();
        pairs.extend((0..n).map(|i| (n, i)));
        Poset::from_relations(labels, pairs).expect("cone of a poset is a poset")
    }

    /// Adjoins a new maximum, appended as the last element.
    pub fn right_cone(&self) -> Poset {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push(self.fresh_label("⊤"));
        let mut pairs: Vec<_> = self.covers.clone();
        pairs.extend((0..n).map(|i| (i, n)));
        Poset::from_relations(labels, pairs).expect("cone of a poset is a poset")
    }

    /// Connected-ambient extension: appends one element per component label and
    /// relates `l <= a` for each `(l, a)` in `closure_pairs` (`a` indexes
    /// `components`).
    pub fn wedge_extend(&self, components: &[String], closure_pairs: &[(usize, usize)]) -> Result<Poset, PosetError> {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.extend(components.iter().cloned());
        let mut pairs: Vec<_> = self.covers.clone();
        for &(l, a) in closure_pairs {
            self.check(l)?;
            if a >= components.len() {
                return Err(PosetError::IndexOutOfRange(n + a));
            }
            pairs.push((l, n + a));
        }
        Poset::from_relations(labels, pairs)
    }

    /// Quotient by the map `class[i]`, labelling class `c` by `class_labels[c]`.
    pub fn collapse(&self, class: &[usize], class_labels: Vec<String>) -> Result<Poset, PosetError> {
        if class.len() != self.len() {
            return Err(PosetError::SizeMismatch { expected: self.len(), got: class.len() });
        }
        let pairs = (0..self.len())
            .flat_map(|i| self.leq[i].ones().map(move |j| (i, j)))
            .filter(|(i, j)| class[*i] != class[*j])
            .map(|(i, j)| (class[i], class[j]))
            .collect();
        Poset::from_relations(class_labels, pairs)
    }

    /// Same labels and the same order between equally labelled elements.
    pub fn same_order(&self, other: &Poset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let map: Option<Vec<usize>> = self.labels.iter().map(|l| other.index_of(l)).collect();
        match map {
            Some(m) => (0..self.len()).all(|i| (0..self.len()).all(|j| self.leq(i, j) == other.leq(m[i], m[j]))),
            None => false,
        }
    }

    /// Order isomorphism test by backtracking over degree-compatible candidates.
    pub fn is_isomorphic(&self, other: &Poset) -> bool {
        let n = self.len();
        if n != other.len() || self.covers.len() != other.covers.len() {
            return false;
        }
        let sig = |p: &Poset, i: usize| (p.leq[i].count_ones(..), (0..p.len()).filter(|j| p.leq(*j, i)).count());
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            i: usize,
            a: &Poset,
            b: &Poset,
            sig: &dyn Fn(&Poset, usize) -> (usize, usize),
            image: &mut Vec<usize>,
            used: &mut Vec<bool>,
        ) -> bool {
            if i == a.len() {
                return true;
            }
            for c in 0..b.len() {
                if used[c] || sig(a, i) != sig(b, c) {
                    continue;
                }
                let consistent = (0..i).all(|j| a.leq(j, i) == b.leq(image[j], c) && a.leq(i, j) == b.leq(c, image[j]));
                if !consistent {
                    continue;
                }
                image[i] = c;
                used[c] = true;
                if go(i + 1, a, b, sig, image, used) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
        go(0, self, other, &sig, &mut image, &mut used)
    }

    pub fn relabelled(&self, f: impl Fn(&str) -> String) -> Poset {
        let mut p = self.clone();
        p.labels = self.labels.iter().map(|l| f(l)).collect();
        p
    }

    /// Maximal chains with at most `max_length` elements, found by depth-first
    /// search along covers from the minimal elements. Successors are visited in
    /// label order so the output is reproducible.
    pub fn linear_subposets(&self, max_length: usize) -> Vec<Vec<usize>> {
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (a, b) in &self.covers {
            up[*a].push(*b);
        }
        for succ in up.iter_mut() {
            succ.sort_by(|x, y| self.labels[*x].cmp(&self.labels[*y]));
        }
        let mut starts = self.minimal_elements();
        starts.sort_by(|x, y| self.labels[*x].cmp(&self.labels[*y]));
        let mut out = Vec::new();
        let mut path = Vec::new();
        fn dfs(p: usize, up: &[Vec<usize>], max: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            path.push(p);
            if path.len() <= max {
                if up[p].is_empty() {
                    out.push(path.clone());
                } else {
                    for q in &up[p] {
                        dfs(*q, up, max, path, out);
                    }
                }
            }
            path.pop();
        }
        for s in starts {
            dfs(s, &up, max_length, &mut path, &mut out);
        }
        out
    }

    pub fn is_chain(&self, elements: &[usize]) -> bool {
        elements.iter().all(|a| *a < self.len())
            && elements.windows(2).all(|w| self.lt(w[0], w[1]))
    }

    /// Graphviz rendering: one node per element, one edge per cover. With a
    /// grading, elements of equal grade share a rank.
    pub fn to_dot(&self, name: &str, grading: Option<&[usize]>) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", name);
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", i, l.replace('"', "\\\""));
        }
        for (a, b) in &self.covers {
            let _ = writeln!(s, "  n{} -> n{};", a, b);
        }
        if let Some(g) = grading {
            let mut ranks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for (i, r) in g.iter().enumerate().take(self.len()) {
                ranks.entry(*r).or_default().push(i);
            }
            for members in ranks.values() {
                let names: Vec<String> = members.iter().map(|i| format!("n{}", i)).collect();
                let _ = writeln!(s, "  {{ rank=same; {}; }}", names.join("; "));
            }
        }
        s.push_str("}\n");
        s
    }
}

fn label_index(labels: &[String]) -> Result<BTreeMap<&str, usize>, PosetError> {
    check_labels(labels)?;
    Ok(labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect())
}

fn lookup(index: &BTreeMap<&str, usize>, label: &str) -> Result<usize, PosetError> {
    index.get(label).copied().ok_or_else(|| PosetError::UnknownElement(label.to_string()))
}

/// Poset exchange format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

/// True iff the reflexive transitive closure of the given relation is
/// antisymmetric (and the relation only mentions known, distinct labels).
pub fn validate_poset(json: &PosetJson) -> bool {
    Poset::from_json(json).is_ok()
}

/// Raw relation check on indices, without building a [`Poset`].
pub fn validate_relation(n: usize, pairs: &[(usize, usize)]) -> bool {
    match closure(n, pairs) {
        Ok(leq) => antisymmetry_witness(&leq).is_none(),
        Err(_) => false,
    }
}

/// Order-preserving map between posets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneMap {
    source: Poset,
    target: Poset,
    assignment: Vec<usize>,
}

impl MonotoneMap {
    pub fn new(source: Poset, target: Poset, assignment: Vec<usize>) -> Result<Self, PosetError> {
        if assignment.len() != source.len() {
            return Err(PosetError::SizeMismatch { expected: source.len(), got: assignment.len() });
        }
        for &t in &assignment {
            target.check(t)?;
        }
        for (a, b) in source.covers() {
            if !target.leq(assignment[*a], assignment[*b]) {
                return Err(PosetError::NotMonotone(source.labels[*a].clone(), source.labels[*b].clone()));
            }
        }
        Ok(Self { source, target, assignment })
    }

    pub fn identity(p: &Poset) -> Self {
        Self { source: p.clone(), target: p.clone(), assignment: (0..p.len()).collect() }
    }

    pub fn source(&self) -> &Poset {
        &self.source
    }

    pub fn target(&self) -> &Poset {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, p: usize) -> usize {
        self.assignment[p]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &MonotoneMap) -> Result<MonotoneMap, PosetError> {
        if self.target != other.source {
            return Err(PosetError::CarrierMismatch);
        }
        MonotoneMap::new(
            self.source.clone(),
            other.target.clone(),
            self.assignment.iter().map(|p| other.assignment[*p]).collect(),
        )
    }

    pub fn preimage(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        (0..self.source.len()).filter(|p| set.contains(&self.assignment[*p])).collect()
    }

    pub fn is_surjective(&self) -> bool {
        let hit: BTreeSet<usize> = self.assignment.iter().copied().collect();
        hit.len() == self.target.len()
    }
}

/// A carrier cell: an opaque identifier plus its dimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub id: String,
    pub dim: usize,
}

impl Cell {
    pub fn new(id: impl Into<String>, dim: usize) -> Self {
        Self { id: id.into(), dim }
    }
}

/// Cells, their closure relation, and a continuous map to a poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratifiedSpace {
    cells: Vec<Cell>,
    /// `(a, b)`: cell `a` lies in the closure of cell `b`.
    closure: Vec<(usize, usize)>,
    poset: Poset,
    assignment: Vec<usize>,
}

impl StratifiedSpace {
    pub fn new(
        cells: Vec<Cell>,
        closure: Vec<(usize, usize)>,
        poset: Poset,
        assignment: Vec<usize>,
    ) -> Result<Self, PosetError> {
        if assignment.len() != cells.len() {
            return Err(PosetError::SizeMismatch { expected: cells.len(), got: assignment.len() });
        }
        for &p in &assignment {
            poset.check(p)?;
        }
        for &(a, b) in &closure {
            if a >= cells.len() {
                return Err(PosetError::IndexOutOfRange(a));
            }
            if b >= cells.len() {
                return Err(PosetError::IndexOutOfRange(b));
            }
            if !poset.leq(assignment[a], assignment[b]) {
                return Err(PosetError::NotContinuous { cell: cells[a].id.clone(), of: cells[b].id.clone() });
            }
        }
        Ok(Self { cells, closure, poset, assignment })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn closure(&self) -> &[(usize, usize)] {
        &self.closure
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn stratum_of(&self, cell: usize) -> usize {
        self.assignment[cell]
    }

    pub fn cell_index(&self, id: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.id == id)
    }

    /// Cells assigned to poset element `p`.
    pub fn stratum(&self, p: usize) -> Vec<usize> {
        (0..self.cells.len()).filter(|c| self.assignment[*c] == p).collect()
    }

    /// Same carrier stratified over the one-point poset.
    pub fn trivial(&self) -> StratifiedSpace {
        StratifiedSpace {
            cells: self.cells.clone(),
            closure: self.closure.clone(),
            poset: Poset::point(),
            assignment: vec![0; self.cells.len()],
        }
    }

    /// Same carrier with a different poset and assignment.
    pub fn restratify(&self, poset: Poset, assignment: Vec<usize>) -> Result<StratifiedSpace, PosetError> {
        StratifiedSpace::new(self.cells.clone(), self.closure.clone(), poset, assignment)
    }

    /// Sublevel filtration along a chain of strata: each cell whose stratum is
    /// below some chain element gets the first such position. Lines are
    /// `cell_id dim index`, ordered by index, then dimension, then id.
    pub fn filtration(&self, chain: &[usize]) -> Result<String, PosetError> {
        if chain.is_empty() || !self.poset.is_chain(chain) {
            return Err(PosetError::NotAChain(
                chain.iter().map(|p| self.poset.labels.get(*p).cloned().unwrap_or_default()).collect(),
            ));
        }
        let mut rows: Vec<(usize, usize, &str)> = Vec::new();
        for (c, cell) in self.cells.iter().enumerate() {
            if let Some(i) = chain.iter().position(|q| self.poset.leq(self.assignment[c], *q)) {
                rows.push((i, cell.dim, &cell.id));
            }
        }
        rows.sort();
        let mut s = String::new();
        for (i, d, id) in rows {
            let _ = writeln!(s, "{} {} {}", id, d, i);
        }
        Ok(s)
    }
}

/// Outcome of [`check_stratified_map`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCheck {
    pub ok: bool,
    pub map: Option<MonotoneMap>,
    pub witness: Option<String>,
}

impl MapCheck {
    fn fail(witness: String) -> Self {
        Self { ok: false, map: None, witness: Some(witness) }
    }
}

/// Decides whether a cellular map induces a well-defined monotone map of
/// stratifying posets. `f_cells[c]` is the target cell of source cell `c`.
pub fn check_stratified_map(
    f_cells: &[usize],
    s: &StratifiedSpace,
    t: &StratifiedSpace,
) -> Result<MapCheck, PosetError> {
    if f_cells.len() != s.cells.len() {
        return Err(PosetError::SizeMismatch { expected: s.cells.len(), got: f_cells.len() });
    }
    if let Some(bad) = f_cells.iter().find(|c| **c >= t.cells.len()) {
        return Err(PosetError::IndexOutOfRange(*bad));
    }
    let mut induced: Vec<Option<usize>> = vec![None; s.poset.len()];
    for (c, &fc) in f_cells.iter().enumerate() {
        let p = s.assignment[c];
        let q = t.assignment[fc];
        match induced[p] {
            None => induced[p] = Some(q),
            Some(prev) if prev != q => {
                return Ok(MapCheck::fail(format!(
                    "stratum {} maps into both {} and {}",
                    s.poset.label(p),
                    t.poset.label(prev),
                    t.poset.label(q)
                )))
            }
            Some(_) => {}
        }
    }
    let mut assignment = Vec::with_capacity(induced.len());
    for (p, q) in induced.iter().enumerate() {
        match q {
            Some(q) => assignment.push(*q),
            None => return Ok(MapCheck::fail(format!("stratum {} has no cells", s.poset.label(p)))),
        }
    }
    match MonotoneMap::new(s.poset.clone(), t.poset.clone(), assignment) {
        Ok(m) => Ok(MapCheck { ok: true, map: Some(m), witness: None }),
        Err(PosetError::NotMonotone(a, b)) => Ok(MapCheck::fail(format!("order {} <= {} is not preserved", a, b))),
        Err(e) => Err(e),
    }
}

/// True iff the identity of the common carrier induces a monotone surjection
/// from the fine poset onto the coarse one.
pub fn is_refinement(fine: &StratifiedSpace, coarse: &StratifiedSpace) -> Result<bool, PosetError> {
    if fine.cells != coarse.cells {
        return Err(PosetError::CarrierMismatch);
    }
    let identity: Vec<usize> = (0..fine.cells.len()).collect();
    let check = check_stratified_map(&identity, fine, coarse)?;
    Ok(check.ok && check.map.is_some_and(|m| m.is_surjective()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    fn edge_nat() -> Poset {
        Poset::from_relations(labels(&["b0", "b1", "a"]), vec![(0, 2), (1, 2)]).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(Poset::chain(2).is_valid());
        let cyc = PosetJson {
            elements: labels(&["a", "b"]),
            covers: vec![("a".into(), "b".into()), ("b".into(), "a".into())],
        };
        assert!(!validate_poset(&cyc));
        assert!(!validate_relation(2, &[(0, 1), (1, 0)]));
        assert!(validate_relation(3, &[(0, 1), (1, 2)]));
    }

    #[test]
    fn up_sets() {
        // − > 0 < +
        let r = Poset::from_relations(labels(&["-", "0", "+"]), vec![(1, 0), (1, 2)]).unwrap();
        assert_eq!(r.up_set(1).unwrap(), BTreeSet::from([0, 1, 2]));
        assert_eq!(r.up_set(0).unwrap(), BTreeSet::from([0]));
        let e = edge_nat();
        assert_eq!(e.up_set(0).unwrap(), BTreeSet::from([0, 2]));
        assert!(e.up_set(7).is_err());
    }

    #[test]
    fn open_sets() {
        let e = edge_nat();
        assert!(e.is_open(&BTreeSet::from([0, 1, 2])));
        assert!(!e.is_open(&BTreeSet::from([0])));
        assert!(e.is_open(&BTreeSet::from([2])));
        assert!(e.is_open(&BTreeSet::new()));
    }

    #[test]
    fn products() {
        let d = Poset::chain(1).product(&Poset::chain(1));
        assert_eq!(d.len(), 4);
        assert_eq!(d.covers().len(), 4);
        let bot = d.index_of("(0,0)").unwrap();
        let top = d.index_of("(1,1)").unwrap();
        assert!(d.leq(bot, top));
        assert!(!d.comparable(d.index_of("(0,1)").unwrap(), d.index_of("(1,0)").unwrap()));
        assert!(edge_nat().product(&Poset::point()).is_isomorphic(&edge_nat()));
        assert_eq!(Poset::chain(2).product(&Poset::chain(3)).len(), 12);
    }

    #[test]
    fn cones() {
        let e = Poset::empty().left_cone();
        assert_eq!(e.len(), 1);
        for n in 0..5 {
            assert!(Poset::chain(n).left_cone().is_isomorphic(&Poset::chain(n + 1)));
            assert!(Poset::chain(n).right_cone().is_isomorphic(&Poset::chain(n + 1)));
        }
        let a = Poset::antichain(labels(&["x", "y", "z"])).unwrap().right_cone();
        assert_eq!(a.len(), 4);
        assert_eq!(a.covers().len(), 3);
    }

    #[test]
    fn wedge_of_interval_in_line() {
        let e = edge_nat();
        let w = e.wedge_extend(&labels(&["a-", "a+"]), &[(0, 0), (1, 1)]).unwrap();
        let (b0, b1, a, am, ap) = (0, 1, 2, 3, 4);
        assert!(w.leq(b0, am) && w.leq(b0, a) && w.leq(b1, a) && w.leq(b1, ap));
        assert!(!w.leq(b0, ap) && !w.leq(b1, am));
        assert_eq!(w.maximal_elements(), vec![a, am, ap]);
        assert_eq!(e.wedge_extend(&[], &[]).unwrap(), e);
        assert!(e.wedge_extend(&labels(&["a"]), &[]).is_err());
        assert!(e.wedge_extend(&labels(&["c"]), &[(0, 3)]).is_err());

        // the open interval is not in the closure of either ray, so the
        // collapse is only refined by the cone order
        let classes = [0, 1, 2, 3, 3];
        let collapsed = w.collapse(&classes, labels(&["b0", "b1", "a", "⊤"])).unwrap();
        let cone = e.right_cone();
        assert!(!collapsed.same_order(&cone));
        assert!(MonotoneMap::new(collapsed, cone.clone(), vec![0, 1, 2, 3]).is_ok());

        let w2 = e.wedge_extend(&labels(&["a-", "a+"]), &[(0, 0), (1, 1), (2, 0)]).unwrap();
        let collapsed = w2.collapse(&classes, labels(&["b0", "b1", "a", "⊤"])).unwrap();
        assert!(collapsed.same_order(&cone));
    }

    #[test]
    fn stratified_map_checks() {
        let e = edge_nat();
        let cells = vec![Cell::new("b0", 0), Cell::new("b1", 0), Cell::new("a", 1)];
        let s = StratifiedSpace::new(cells.clone(), vec![(0, 2), (1, 2)], e.clone(), vec![0, 1, 2]).unwrap();
        let id = check_stratified_map(&[0, 1, 2], &s, &s).unwrap();
        assert!(id.ok);
        assert_eq!(id.map.unwrap(), MonotoneMap::identity(&e));

        // two incomparable targets x, y and a source order p <= q with p -> y, q -> x
        let src = Poset::from_relations(labels(&["p", "q"]), vec![(0, 1)]).unwrap();
        let tgt = Poset::antichain(labels(&["x", "y"])).unwrap();
        let sc = vec![Cell::new("cp", 0), Cell::new("cq", 1)];
        let tc = vec![Cell::new("cx", 0), Cell::new("cy", 0)];
        let ss = StratifiedSpace::new(sc, vec![(0, 1)], src, vec![0, 1]).unwrap();
        let ts = StratifiedSpace::new(tc, vec![], tgt, vec![0, 1]).unwrap();
        assert!(!check_stratified_map(&[1, 0], &ss, &ts).unwrap().ok);
        assert!(check_stratified_map(&[5, 0], &ss, &ts).is_err());
    }

    #[test]
    fn refinements() {
        let e = edge_nat();
        let cells = vec![Cell::new("b0", 0), Cell::new("b1", 0), Cell::new("a", 1)];
        let s = StratifiedSpace::new(cells, vec![(0, 2), (1, 2)], e, vec![0, 1, 2]).unwrap();
        assert!(is_refinement(&s, &s.trivial()).unwrap());
        assert!(!is_refinement(&s.trivial(), &s).unwrap());
        let other = StratifiedSpace::new(vec![Cell::new("z", 0)], vec![], Poset::point(), vec![0]).unwrap();
        assert_eq!(is_refinement(&s, &other), Err(PosetError::CarrierMismatch));
    }

    #[test]
    fn continuity_is_enforced() {
        let e = edge_nat();
        let cells = vec![Cell::new("b0", 0), Cell::new("b1", 0), Cell::new("a", 1)];
        let bad = StratifiedSpace::new(cells, vec![(2, 0)], e, vec![0, 1, 2]);
        assert!(matches!(bad, Err(PosetError::NotContinuous { .. })));
    }

    #[test]
    fn chains() {
        let e = edge_nat();
        assert_eq!(e.linear_subposets(10), vec![vec![0, 2], vec![1, 2]]);
        let a = Poset::antichain(labels(&["y", "x"])).unwrap();
        assert_eq!(a.linear_subposets(10), vec![vec![1], vec![0]]);
        let d = Poset::chain(1).product(&Poset::chain(1));
        let cs = d.linear_subposets(10);
        assert_eq!(cs.len(), 2);
        assert!(cs.iter().all(|c| c.len() == 3 && d.is_chain(c)));
        assert!(d.linear_subposets(2).is_empty());
    }

    #[test]
    fn filtration_lines() {
        let e = edge_nat();
        let cells = vec![Cell::new("b0", 0), Cell::new("b1", 0), Cell::new("a", 1)];
        let s = StratifiedSpace::new(cells, vec![(0, 2), (1, 2)], e, vec![0, 1, 2]).unwrap();
        assert_eq!(s.filtration(&[0, 2]).unwrap(), "b0 0 0\nb1 0 1\na 1 1\n");
        assert!(s.filtration(&[0, 1]).is_err());
    }

    #[test]
    fn json_and_dot() {
        let e = edge_nat();
        let back = Poset::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        let dot = e.to_dot("nat", Some(&[0, 0, 1]));
        assert!(dot.contains("n0 -> n2;"));
        assert!(dot.contains("rank=same; n0; n1;"));
    }
}
