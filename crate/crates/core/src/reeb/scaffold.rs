//! Per-stratum fiber components over a codomain stratification, glued along
//! closure pairs, and the check that the induced map to the codomain is a
//! stratified map.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{CodomainStratification, PointJson};
use crate::jacobi::PLMap;
use crate::poset::{check_stratified_map, Cell, Poset, StratifiedSpace};
use crate::rational::Coords;

use super::fiber::{FiberComponent, FiberOracle};
use super::ReebError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaffoldStratum {
    pub label: String,
    pub sample: Coords,
    pub components: Vec<FiberComponent>,
}

/// Gluing data for `lower < upper`: `map[i]` is the component over `lower`
/// that component `i` over `upper` limits to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub lower: usize,
    pub upper: usize,
    pub map: Vec<usize>,
}

/// One element per (stratum, fiber component), ordered by stratum then
/// component; `forget` sends an element to its stratum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebScaffold {
    pub strata: Vec<ScaffoldStratum>,
    pub attachments: Vec<Attachment>,
    pub poset: Poset,
    pub forget: Vec<usize>,
    offsets: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldJson {
    pub strata: Vec<ScaffoldStratumJson>,
    pub attachments: Vec<(String, String)>,
    pub poset: crate::poset::PosetJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaffoldStratumJson {
    pub stratum: String,
    pub sample: PointJson,
    pub components: usize,
}

impl ReebScaffold {
    /// Rebuilds the poset from (possibly edited) attachments.
    pub fn with_attachments(&self, attachments: Vec<Attachment>) -> Result<ReebScaffold, ReebError> {
        assemble(self.strata.clone(), attachments)
    }

    pub fn element(&self, stratum: usize, component: usize) -> usize {
        self.offsets[stratum] + component
    }

    pub fn len(&self) -> usize {
        self.forget.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forget.is_empty()
    }

    /// Pairs `(lower element, upper element)` given by the attachments.
    pub fn element_pairs(&self) -> Vec<(usize, usize)> {
        self.attachments
            .iter()
            .flat_map(|a| a.map.iter().enumerate().map(move |(i, j)| (self.element(a.lower, *j), self.element(a.upper, i))))
            .collect()
    }

    pub fn to_json(&self) -> ScaffoldJson {
        ScaffoldJson {
            strata: self
                .strata
                .iter()
                .map(|s| ScaffoldStratumJson {
                    stratum: s.label.clone(),
                    sample: PointJson(s.sample.clone()),
                    components: s.components.len(),
                })
                .collect(),
            attachments: self
                .element_pairs()
                .into_iter()
                .map(|(a, b)| (self.poset.label(a).to_string(), self.poset.label(b).to_string()))
                .collect(),
            poset: self.poset.to_json(),
        }
    }
}

fn assemble(strata: Vec<ScaffoldStratum>, attachments: Vec<Attachment>) -> Result<ReebScaffold, ReebError> {
    let mut offsets = Vec::with_capacity(strata.len());
    let mut labels = Vec::new();
    let mut forget = Vec::new();
    for (s, st) in strata.iter().enumerate() {
        offsets.push(labels.len());
        for i in 0..st.components.len() {
            labels.push(format!("{}#{}", st.label, i));
            forget.push(s);
        }
    }
    let mut pairs = Vec::new();
    for a in &attachments {
        for (i, j) in a.map.iter().enumerate() {
            if *j >= strata[a.lower].components.len() || i >= strata[a.upper].components.len() {
                return Err(ReebError::Degeneracy(format!(
                    "attachment {} -> {} names a missing component",
                    strata[a.upper].label, strata[a.lower].label
                )));
            }
            pairs.push((offsets[a.lower] + j, offsets[a.upper] + i));
        }
    }
    let poset = Poset::from_relations(labels, pairs)?;
    Ok(ReebScaffold { strata, attachments, poset, forget, offsets })
}

/// Points of stratum `s` used as stepping stones when moving fibers inside it.
fn waypoints(s: &CodomainStratification, stratum: usize) -> Vec<Coords> {
    let mut out = vec![s.samples[stratum].clone()];
    for lower in 0..s.len() {
        if s.poset().lt(lower, stratum) {
            if let Some(p) = s.near_sample(lower, stratum) {
                out.push(p);
            }
        }
    }
    out
}

/// Moves the fiber components over `from` to those over the representative
/// of `stratum` along a chain of segments inside the stratum. Returns the
/// component of the representative for each component over `from`.
fn transport_to_rep(
    o: &FiberOracle,
    s: &CodomainStratification,
    stratum: usize,
    from: &Coords,
    from_comps: &[Vec<usize>],
) -> Result<Vec<usize>, ReebError> {
    let rep = &s.samples[stratum];
    if from == rep {
        return Ok((0..from_comps.len()).collect());
    }
    let mut points = vec![from.clone()];
    points.extend(waypoints(s, stratum));
    let target = 1;
    // breadth-first search over segments inside the stratum
    let mut prev = vec![usize::MAX; points.len()];
    prev[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        if a == target {
            break;
        }
        for b in 0..points.len() {
            if prev[b] == usize::MAX && s.segment_inside(&points[a], &points[b], stratum) {
                prev[b] = a;
                queue.push_back(b);
            }
        }
    }
    if prev[target] == usize::MAX {
        return Err(ReebError::Degeneracy(format!("no path inside stratum {} to its representative", s.label(stratum))));
    }
    let mut path = vec![target];
    while *path.last().expect("nonempty") != 0 {
        path.push(prev[*path.last().expect("nonempty")]);
    }
    path.reverse();
    let mut current: Vec<usize> = (0..from_comps.len()).collect();
    let mut comps = from_comps.to_vec();
    for w in path.windows(2) {
        let next = o.point_components(&points[w[1]]);
        let step = o.transport(&points[w[0]], &points[w[1]], &comps, &next).ok_or_else(|| {
            ReebError::Degeneracy(format!("fiber changes inside stratum {}", s.label(stratum)))
        })?;
        current = current.iter().map(|c| step[*c]).collect();
        comps = next;
    }
    Ok(current)
}

/// Fiber components over every stratum and the attachments between them.
pub fn reeb_scaffold(f: &PLMap, s: &CodomainStratification) -> Result<ReebScaffold, ReebError> {
    if f.k() != s.k() {
        return Err(ReebError::WrongDimension { expected: s.k(), got: f.k() });
    }
    let o = FiberOracle::new(f)?;
    let comps: Vec<Vec<Vec<usize>>> = s.samples.par_iter().map(|y| o.point_components(y)).collect();
    let mut pairs = Vec::new();
    for upper in 0..s.len() {
        for lower in 0..s.len() {
            if s.poset().lt(lower, upper) {
                pairs.push((lower, upper));
            }
        }
    }
    let attachments: Vec<Attachment> = pairs
        .par_iter()
        .map(|&(lower, upper)| attach(&o, s, &comps, lower, upper))
        .collect::<Result<_, _>>()?;
    let strata = comps
        .iter()
        .enumerate()
        .map(|(i, c)| ScaffoldStratum {
            label: s.label(i).to_string(),
            sample: s.samples[i].clone(),
            components: c.iter().map(|x| o.to_fiber(&s.samples[i], x)).collect(),
        })
        .collect();
    assemble(strata, attachments)
}

fn attach(
    o: &FiberOracle,
    s: &CodomainStratification,
    comps: &[Vec<Vec<usize>>],
    lower: usize,
    upper: usize,
) -> Result<Attachment, ReebError> {
    if comps[upper].is_empty() {
        return Ok(Attachment { lower, upper, map: Vec::new() });
    }
    let near = s.near_sample(lower, upper).ok_or_else(|| {
        ReebError::Degeneracy(format!("no approach sample in {} near {}", s.label(upper), s.label(lower)))
    })?;
    let near_comps = o.point_components(&near);
    // representative components -> near components
    let back = transport_to_rep(o, s, upper, &near, &near_comps)?;
    let mut rep_to_near = vec![usize::MAX; back.len()];
    for (n, r) in back.iter().enumerate() {
        rep_to_near[*r] = n;
    }
    let target = &s.samples[lower];
    let links = o.links(&near, target, &near_comps, &comps[lower]);
    let mut map = Vec::with_capacity(rep_to_near.len());
    for n in rep_to_near {
        match links[n].as_slice() {
            [l] => map.push(*l),
            other => {
                return Err(ReebError::Degeneracy(format!(
                    "component {} over {} limits to {} components over {}",
                    n,
                    s.label(upper),
                    other.len(),
                    s.label(lower)
                )))
            }
        }
    }
    Ok(Attachment { lower, upper, map })
}

/// Outcome of [`check_stein_square`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SteinVerdict {
    pub ok: bool,
    /// Forgetting the component index is a monotone map of posets.
    pub forget_monotone: bool,
    /// Every stratum with a nonempty fiber is hit.
    pub onto_nonempty: bool,
    pub samples_checked: usize,
    pub witness: Option<String>,
}

/// Checks that the scaffold's projection to the codomain is a stratified map
/// and that for the barycenter `x` of every top simplex the component of
/// `f⁻¹(f(x))` through `x` lands on a scaffold element over the stratum of
/// `f(x)`.
pub fn check_stein_square(
    f: &PLMap,
    scaffold: &ReebScaffold,
    s: &CodomainStratification,
) -> Result<SteinVerdict, ReebError> {
    let cells: Vec<Cell> = (0..scaffold.len()).map(|e| Cell::new(scaffold.poset.label(e), 0)).collect();
    let w = StratifiedSpace::new(cells, scaffold.element_pairs(), scaffold.poset.clone(), (0..scaffold.len()).collect())?;
    let check = check_stratified_map(&scaffold.forget, &w, &s.space)?;
    let onto_nonempty = (0..s.len()).all(|st| scaffold.strata[st].components.is_empty() || scaffold.forget.contains(&st));
    let mut verdict = SteinVerdict {
        ok: check.ok && onto_nonempty,
        forget_monotone: check.ok,
        onto_nonempty,
        samples_checked: 0,
        witness: check.witness,
    };
    if !verdict.ok {
        return Ok(verdict);
    }
    let o = FiberOracle::new(f)?;
    let results: Vec<Result<(), String>> = o
        .top()
        .par_iter()
        .enumerate()
        .map(|(t, sigma)| {
            let y = f.barycenter(sigma);
            let st = s.locate(&y);
            let here = o.point_components(&y);
            let Some(c) = here.iter().position(|comp| comp.contains(&t)) else {
                return Err(format!("{} is not in its own fiber", sigma));
            };
            let to_rep = transport_to_rep(&o, s, st, &y, &here).map_err(|e| format!("{}: {}", sigma, e))?;
            let element = scaffold.element(st, to_rep[c]);
            if scaffold.forget[element] != st {
                return Err(format!("{} maps to {} over the wrong stratum", sigma, scaffold.poset.label(element)));
            }
            Ok(())
        })
        .collect();
    let mut by_order: BTreeMap<usize, String> = BTreeMap::new();
    for (i, r) in results.into_iter().enumerate() {
        verdict.samples_checked += 1;
        if let Err(w) = r {
            by_order.insert(i, w);
        }
    }
    if let Some((_, w)) = by_order.into_iter().next() {
        verdict.ok = false;
        verdict.witness = Some(w);
    }
    Ok(verdict)
}
