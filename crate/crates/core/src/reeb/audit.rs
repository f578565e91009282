//! Fiber-constancy audit: inside each open stratum of the codomain the number
//! of fiber components must not change.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arrangement::{CodomainStratification, ImageGeometry, PointJson};
use crate::geom;
use crate::jacobi::PLMap;
use crate::rational::{int, Coords, Rational};

use super::fiber::FiberOracle;
use super::ReebError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditEntry {
    pub stratum: String,
    pub samples: Vec<PointJson>,
    pub counts: Vec<usize>,
    pub constant: bool,
    /// Fewer samples than requested could be placed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shortfall: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub samples_per_stratum: usize,
    pub entries: Vec<AuditEntry>,
    pub violations: usize,
    pub passed: bool,
}

/// Up to `n` points of the open stratum `st`, deterministic.
fn open_samples(s: &CodomainStratification, st: usize, n: usize) -> Vec<Coords> {
    match &s.image.geometry {
        ImageGeometry::Line(values) => {
            let m = values.len();
            let i = st - m;
            let step = |j: usize| int(j as i64 + 1);
            (0..n)
                .map(|j| {
                    let y: Rational = match (i.checked_sub(1).map(|x| &values[x]), values.get(i)) {
                        (None, None) => step(j) - int(1),
                        (None, Some(hi)) => hi - step(j),
                        (Some(lo), None) => lo + step(j),
                        (Some(lo), Some(hi)) => lo + (hi - lo) * step(j) / int(n as i64 + 1),
                    };
                    vec![y]
                })
                .collect()
        }
        ImageGeometry::Plane(_) => {
            let rep = s.samples[st].clone();
            let mut candidates = vec![rep.clone()];
            let mut near = Vec::new();
            for lower in 0..s.len() {
                if s.poset().lt(lower, st) {
                    if let Some(p) = s.near_sample(lower, st) {
                        near.push(p);
                    }
                }
            }
            for p in &near {
                let mid = geom::centroid(&[&rep, p]);
                candidates.push(mid);
            }
            candidates.extend(near);
            let mut out: Vec<Coords> = Vec::new();
            for c in candidates {
                if out.len() == n {
                    break;
                }
                if s.locate(&c) == st && !out.contains(&c) {
                    out.push(c);
                }
            }
            out
        }
    }
}

pub fn fiber_constancy_audit(f: &PLMap, s: &CodomainStratification, n: usize) -> Result<AuditReport, ReebError> {
    let o = FiberOracle::new(f)?;
    let open: Vec<usize> = (0..s.len()).filter(|st| s.is_open(*st)).collect();
    let entries: Vec<AuditEntry> = open
        .par_iter()
        .map(|&st| {
            let pts = open_samples(s, st, n);
            let counts: Vec<usize> = pts.iter().map(|y| o.point_components(y).len()).collect();
            let constant = counts.windows(2).all(|w| w[0] == w[1]);
            AuditEntry {
                stratum: s.label(st).to_string(),
                shortfall: (pts.len() < n).then(|| n - pts.len()),
                samples: pts.into_iter().map(PointJson).collect(),
                counts,
                constant,
            }
        })
        .collect();
    let violations = entries.iter().filter(|e| !e.constant).count();
    Ok(AuditReport { samples_per_stratum: n, passed: violations == 0, violations, entries })
}
