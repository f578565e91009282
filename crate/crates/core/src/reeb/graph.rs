//! Reeb graphs of maps to the line.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, Vertex};
use crate::jacobi::{jacobi_set, Notion, PLMap};
use crate::rational::{self, int, Coords, Rational};
use crate::union_find::UnionFind;

use super::fiber::FiberOracle;
use super::ReebError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebNode {
    pub id: usize,
    #[serde(with = "rational::serde_q")]
    pub level: Rational,
    /// Critical vertex whose level component this node is.
    pub vertex: Vertex,
    pub support: Vec<Simplex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebEdge {
    pub id: usize,
    /// Lower endpoint.
    pub source: usize,
    /// Upper endpoint.
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReebGraph {
    pub nodes: Vec<ReebNode>,
    pub edges: Vec<ReebEdge>,
}

impl ReebGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, n: usize) -> usize {
        self.edges.iter().map(|e| usize::from(e.source == n) + usize::from(e.target == n)).sum()
    }

    pub fn components(&self) -> usize {
        let mut uf = UnionFind::new(self.nodes.len());
        for e in &self.edges {
            uf.union(e.source, e.target);
        }
        uf.labels().1
    }

    /// First Betti number `E − N + C`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components() - self.nodes.len()
    }

    /// Levels and edges with nodes replaced by their levels, for comparing
    /// graphs of relabelled inputs.
    pub fn shape(&self) -> Vec<(Rational, Rational)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| (self.nodes[e.source].level.clone(), self.nodes[e.target].level.clone()))
            .collect();
        out.sort();
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph reeb {\n  rankdir=BT;\n");
        for n in &self.nodes {
            let _ = writeln!(
                s,
                "  n{} [label=\"v{} @ {}\", level=\"{}\"];",
                n.id,
                n.vertex,
                rational::Short(&n.level),
                rational::format_rational(&n.level)
            );
        }
        for n in &self.nodes {
            let _ = writeln!(s, "  {{ rank=same; n{}; }}", n.id);
        }
        for e in &self.edges {
            let _ = writeln!(s, "  n{} -- n{} [id=\"a{}\"];", e.source, e.target, e.id);
        }
        s.push_str("}\n");
        s
    }
}

/// Reeb graph of a map to the line. Nodes are the level-set components
/// through critical vertices of the chosen notion; arcs are the families of
/// components between them, traced through regular levels by segment
/// preimages.
pub fn reeb_graph(f: &PLMap, notion: Notion) -> Result<ReebGraph, ReebError> {
    if f.k() != 1 {
        return Err(ReebError::WrongDimension { expected: 1, got: f.k() });
    }
    let j = jacobi_set(f, notion)?;
    let mut crit: Vec<(Rational, Vertex)> = j.vertices().into_iter().map(|v| (f.value(v)[0].clone(), v)).collect();
    crit.sort();
    if crit.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(ReebError::Degeneracy("two critical vertices share a level".into()));
    }
    let oracle = FiberOracle::new(f)?;
    let levels: Vec<Coords> = crit.iter().map(|(c, _)| vec![c.clone()]).collect();
    let mids: Vec<Coords> = levels.windows(2).map(|w| vec![(&w[0][0] + &w[1][0]) / int(2)]).collect();
    let level_comps: Vec<Vec<Vec<usize>>> = levels.iter().map(|y| oracle.point_components(y)).collect();
    let mid_comps: Vec<Vec<Vec<usize>>> = mids.iter().map(|y| oracle.point_components(y)).collect();
    // item ids: level components first, then interval components
    let mut level_base = Vec::new();
    let mut count = 0;
    for c in &level_comps {
        level_base.push(count);
        count += c.len();
    }
    let mut mid_base = Vec::new();
    for c in &mid_comps {
        mid_base.push(count);
        count += c.len();
    }
    let mut node_of_item: BTreeMap<usize, usize> = BTreeMap::new();
    let mut nodes = Vec::new();
    for (i, (level, v)) in crit.iter().enumerate() {
        let holders: Vec<usize> = (0..level_comps[i].len())
            .filter(|c| level_comps[i][*c].iter().any(|t| oracle.top()[*t].contains_vertex(*v)))
            .collect();
        if holders.len() != 1 {
            return Err(ReebError::Degeneracy(format!(
                "star of critical vertex {} meets {} level components",
                v,
                holders.len()
            )));
        }
        node_of_item.insert(level_base[i] + holders[0], nodes.len());
        let support = level_comps[i][holders[0]].iter().map(|t| oracle.top()[*t].clone()).collect();
        nodes.push(ReebNode { id: nodes.len(), level: level.clone(), vertex: *v, support });
    }
    let mut links: Vec<(usize, usize)> = Vec::new();
    for i in 0..mids.len() {
        let down = oracle.links(&mids[i], &levels[i], &mid_comps[i], &level_comps[i]);
        let up = oracle.links(&mids[i], &levels[i + 1], &mid_comps[i], &level_comps[i + 1]);
        for (a, targets) in down.iter().enumerate() {
            for b in targets {
                links.push((mid_base[i] + a, level_base[i] + b));
            }
        }
        for (a, targets) in up.iter().enumerate() {
            for b in targets {
                links.push((mid_base[i] + a, level_base[i + 1] + b));
            }
        }
    }
    let mut uf = UnionFind::new(count);
    for &(a, b) in &links {
        if !node_of_item.contains_key(&a) && !node_of_item.contains_key(&b) {
            uf.union(a, b);
        }
    }
    let mut arcs: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &links {
        match (node_of_item.get(&a), node_of_item.get(&b)) {
            (None, Some(n)) => arcs.entry(uf.find(a)).or_default().push(*n),
            (Some(n), None) => arcs.entry(uf.find(b)).or_default().push(*n),
            _ => {}
        }
    }
    for item in (0..count).filter(|i| !node_of_item.contains_key(i)) {
        arcs.entry(uf.find(item)).or_default();
    }
    let mut edge_ends = Vec::new();
    for (root, mut ends) in arcs {
        if ends.len() != 2 {
            return Err(ReebError::Degeneracy(format!(
                "level-set family through item {} touches {} critical components",
                root,
                ends.len()
            )));
        }
        ends.sort();
        edge_ends.push((ends[0], ends[1], root));
    }
    edge_ends.sort();
    let edges = edge_ends
        .into_iter()
        .enumerate()
        .map(|(id, (source, target, _))| ReebEdge { id, source, target })
        .collect();
    Ok(ReebGraph { nodes, edges })
}
