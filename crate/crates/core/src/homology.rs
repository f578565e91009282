//! Reduced simplicial homology with Z/2 coefficients.
//!
//! Uses the augmented chain complex: the empty simplex sits in degree −1, so
//! the empty complex has `β̃₋₁ = 1` and every nonempty complex has `β̃₋₁ = 0`.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};

/// Boundary map `C_d → C_{d-1}` over Z/2, stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryMatrix {
    rows: usize,
    columns: Vec<FixedBitSet>,
}

impl BoundaryMatrix {
    /// `∂_d` of `k`. Degree 0 maps every vertex to the empty simplex.
    pub fn of(k: &SimplicialComplex, d: usize) -> Self {
        if d == 0 {
            let mut col = FixedBitSet::with_capacity(1);
            col.insert(0);
            return Self { rows: 1, columns: vec![col; k.count_of_dim(0)] };
        }
        let row_index: BTreeMap<&Simplex, usize> = k.of_dim(d - 1).enumerate().map(|(i, s)| (s, i)).collect();
        let rows = row_index.len();
        let columns = k
            .of_dim(d)
            .map(|s| {
                let mut col = FixedBitSet::with_capacity(rows);
                for f in s.boundary() {
                    col.insert(row_index[&f]);
                }
                col
            })
            .collect();
        Self { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.columns[c].contains(r)
    }

    /// Product `self · other` over Z/2.
    pub fn compose(&self, other: &BoundaryMatrix) -> BoundaryMatrix {
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = FixedBitSet::with_capacity(self.rows);
                for j in col.ones() {
                    acc.symmetric_difference_with(&self.columns[j]);
                }
                acc
            })
            .collect();
        BoundaryMatrix { rows: self.rows, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_clear())
    }

    /// Rank by column reduction on lowest set bits.
    pub fn rank(&self) -> usize {
        let mut pivots: BTreeMap<usize, FixedBitSet> = BTreeMap::new();
        let mut rank = 0;
        for col in &self.columns {
            let mut c = col.clone();
            while let Some(low) = c.maximum() {
                match pivots.get(&low) {
                    Some(p) => c.symmetric_difference_with(p),
                    None => {
                        pivots.insert(low, c);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }
}

/// Reduced Betti numbers `β̃₋₁, β̃₀, …, β̃_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BettiVector(Vec<usize>);

impl BettiVector {
    pub fn from_raw(entries: Vec<usize>) -> Self {
        Self(entries)
    }

    /// Entry for degree `d >= -1`; zero past the top dimension.
    pub fn get(&self, d: isize) -> usize {
        usize::try_from(d + 1).ok().and_then(|i| self.0.get(i)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn is_nontrivial(&self) -> bool {
        self.0.iter().any(|b| *b != 0)
    }

    /// `Σ (−1)^d β̃_d` over degrees `d >= 0`.
    pub fn alternating_sum(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, b)| if (i - 1) % 2 == 0 { *b as i64 } else { -(*b as i64) })
            .sum()
    }
}

pub fn reduced_betti(k: &SimplicialComplex) -> BettiVector {
    let Some(top) = k.dim() else {
        return BettiVector(vec![1]);
    };
    // ranks[d] = rank ∂_d for d = 0..=top, plus a zero for ∂_{top+1}
    let mut ranks: Vec<usize> = (0..=top).map(|d| BoundaryMatrix::of(k, d).rank()).collect();
    ranks.push(0);
    let mut out = Vec::with_capacity(top + 2);
    out.push(1 - ranks[0]);
    for d in 0..=top {
        out.push(k.count_of_dim(d) - ranks[d] - ranks[d + 1]);
    }
    BettiVector(out)
}

pub fn is_h_nontrivial(k: &SimplicialComplex) -> bool {
    reduced_betti(k).is_nontrivial()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{join, simplex};

    fn cx(f: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_vertex_lists(f)
    }

    #[test]
    fn examples() {
        assert_eq!(reduced_betti(&SimplicialComplex::empty()).entries(), &[1]);
        assert_eq!(reduced_betti(&cx(&[&[0], &[1]])).entries(), &[0, 1]);
        let square = cx(&[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
        assert_eq!(reduced_betti(&square).entries(), &[0, 0, 1]);
    }

    #[test]
    fn h_nontrivial_examples() {
        assert!(!is_h_nontrivial(&cx(&[&[0, 1], &[1, 2]])));
        assert!(is_h_nontrivial(&cx(&[&[0, 1], &[2, 3]])));
        assert!(is_h_nontrivial(&SimplicialComplex::empty()));
    }

    #[test]
    fn sphere_boundaries() {
        for n in 0..=3u32 {
            let s = SimplicialComplex::boundary_of_simplex(&simplex(&(0..n + 2).collect::<Vec<_>>()));
            let b = reduced_betti(&s);
            for d in -1..=(n as isize) {
                assert_eq!(b.get(d), usize::from(d == n as isize), "n={} d={}", n, d);
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2, 3, 4]]);
        for d in 1..=4 {
            let prod = BoundaryMatrix::of(&s, d - 1).compose(&BoundaryMatrix::of(&s, d));
            assert!(prod.is_zero());
        }
    }

    #[test]
    fn cones_are_acyclic() {
        let base = cx(&[&[0, 1], &[2, 3], &[4]]);
        let cone = join(&cx(&[&[9]]), &base).unwrap();
        assert!(!is_h_nontrivial(&cone));
    }

    #[test]
    fn euler_consistency() {
        let torus_like = cx(&[&[0, 1], &[1, 2], &[0, 2], &[3, 4], &[4, 5], &[3, 5], &[2, 3]]);
        let b = reduced_betti(&torus_like);
        assert_eq!(torus_like.euler_characteristic(), b.alternating_sum() + 1);
    }
}
