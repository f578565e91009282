//! Codomain stratifications for maps to ℝ and ℝ², and stratified singular loci.
//!
//! [`refine_image`] splits the image of a Jacobi set into points and segments,
//! [`build_codomain_stratification`] adds the complement components on top,
//! and [`stratify_singular_locus`] handles user-supplied fold-curve polylines.

mod codomain;
mod locus;
mod planar;
pub mod svg;

pub use codomain::{
    build_codomain_stratification, containment_violations, refine_image, refine_segments, CodomainStratification,
    ImageGeometry, RefinedImage,
};
pub use locus::{
    coarseness_check, stratify_singular_locus, LocusFile, LocusStratification, SingularLocus, ZeroCell, ZeroCellKind,
};
pub use planar::{Face, PlanarArrangement, PlanarCell};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::jacobi::JacobiError;
use crate::poset::{PosetError, PosetJson, StratifiedSpace};
use crate::rational::Coords;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("segment {0} has equal endpoints")]
    DegenerateSegment(usize),
    #[error("segments {0} and {1} overlap along a positive length")]
    Overlap(usize, usize),
    #[error("point {point:?} is an endpoint of one of segments {segments:?} and interior to the other")]
    TJunction { point: Vec<String>, segments: (usize, usize) },
    #[error("three or more segments cross at {0:?}")]
    TriplePoint(Vec<String>),
    #[error("could not place a sample point in {0}")]
    SampleFailure(String),
    #[error("image is not generic: {0}")]
    NotGeneric(String),
    #[error("target dimension {0} is not supported (only 1 and 2)")]
    UnsupportedDimension(usize),
    #[error("invalid singular locus: {0}")]
    InvalidLocus(String),
    #[error("non-transverse contact in singular locus: {0}")]
    NonTransverse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
}

/// JSON form of a stratified space: the poset, each cell with its stratum
/// label and optional geometry, and the closure relation by cell id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratificationJson {
    pub poset: PosetJson,
    pub cells: Vec<CellJson>,
    pub closure: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub id: String,
    pub dim: usize,
    pub stratum: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub points: Vec<PointJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointJson(#[serde(with = "crate::rational::serde_coords")] pub Coords);

impl StratificationJson {
    /// `geometry(c)` gives the points describing cell `c` (may be empty).
    pub fn from_space(space: &StratifiedSpace, geometry: impl Fn(usize) -> Vec<Coords>) -> Self {
        let cells = space
            .cells()
            .iter()
            .enumerate()
            .map(|(i, c)| CellJson {
                id: c.id.clone(),
                dim: c.dim,
                stratum: space.poset().label(space.stratum_of(i)).to_string(),
                points: geometry(i).into_iter().map(PointJson).collect(),
            })
            .collect();
        let closure = space
            .closure()
            .iter()
            .map(|(a, b)| (space.cells()[*a].id.clone(), space.cells()[*b].id.clone()))
            .collect();
        Self { poset: space.poset().to_json(), cells, closure }
    }
}
