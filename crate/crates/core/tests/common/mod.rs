//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use plstrat::arrangement::{refine_segments, RefinedImage};
use plstrat::complex::{simplex, Simplex, SimplicialComplex, Vertex};
use plstrat::geom::{on_segment, segment_intersection};
use plstrat::golden;
use plstrat::jacobi::{check_generic, PLMap};
use plstrat::poset::Poset;
use plstrat::rational::{int, rat, Coords};
use plstrat::union_find::UnionFind;

/// Seeded from `PLSTRAT_SEED` when set, so failures can be replayed.
pub fn rng(stream: u64) -> ChaCha8Rng {
    let seed = std::env::var("PLSTRAT_SEED").ok().and_then(|s| s.parse::<u64>().ok()).unwrap_or(0x5eed);
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// A closed surface with at most 40 vertices: a grid torus, or an octahedron
/// or tetrahedron boundary with some edges subdivided.
pub fn random_surface(rng: &mut impl Rng) -> SimplicialComplex {
    match rng.gen_range(0..3) {
        0 => golden::torus_grid(rng.gen_range(3..=6), rng.gen_range(3..=6)),
        1 => subdivide(golden::octahedron(), rng.gen_range(0..=20), rng),
        _ => subdivide(SimplicialComplex::boundary_of_simplex(&simplex(&[0, 1, 2, 3])), rng.gen_range(0..=20), rng),
    }
}

fn subdivide(mut k: SimplicialComplex, times: usize, rng: &mut impl Rng) -> SimplicialComplex {
    for _ in 0..times {
        let edges: Vec<Simplex> = k.of_dim(1).cloned().collect();
        let e = edges.choose(rng).expect("surface has edges").clone();
        let apex = k.vertices().last().map_or(0, |v| v + 1);
        k = k.subdivide_edge(&e, apex).expect("edge of the complex");
    }
    k
}

/// Generic map of a random surface to the line (`k = 1`) or the plane.
pub fn random_generic_map(rng: &mut impl Rng, k: usize) -> PLMap {
    loop {
        let domain = random_surface(rng);
        let vs = domain.vertices();
        let values: BTreeMap<Vertex, Coords> = if k == 1 {
            let mut heights: Vec<i64> = (0..vs.len() as i64).collect();
            heights.shuffle(rng);
            vs.iter().zip(heights).map(|(v, h)| (*v, vec![rat(h * 7 + rng.gen_range(0..7), 7)])).collect()
        } else {
            vs.iter().map(|v| (*v, (0..k).map(|_| int(rng.gen_range(-1000..=1000))).collect())).collect()
        };
        let f = PLMap::new(domain, k, values).expect("values cover the domain");
        if check_generic(&f).passed {
            return f;
        }
    }
}

/// Random poset on `n` elements: a random DAG oriented by index order.
pub fn random_poset(rng: &mut impl Rng, n: usize) -> Poset {
    let density = rng.gen_range(0.05..0.5);
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                pairs.push((i, j));
            }
        }
    }
    Poset::from_relations(labels, pairs).expect("index-ordered relation is acyclic")
}

/// Random complex with at most `max` simplices (the closure counts).
pub fn random_complex(rng: &mut impl Rng, max: usize) -> SimplicialComplex {
    let n = rng.gen_range(1..=7u32);
    let mut facets: Vec<Simplex> = Vec::new();
    let mut k = SimplicialComplex::empty();
    for _ in 0..rng.gen_range(1..=8) {
        let size = rng.gen_range(1..=4usize.min(n as usize));
        let mut vs: Vec<Vertex> = (0..n).collect();
        vs.shuffle(rng);
        let s = Simplex::from_unsorted(vs[..size].iter().copied()).expect("distinct vertices");
        let mut next = facets.clone();
        next.push(s);
        let candidate = SimplicialComplex::from_facets(next.clone());
        if candidate.len() > max {
            continue;
        }
        facets = next;
        k = candidate;
    }
    k
}

/// Random segment set whose arrangement is connected and generic.
pub fn random_connected_segments(rng: &mut impl Rng, max: usize) -> (Vec<(Coords, Coords)>, RefinedImage) {
    loop {
        let n = rng.gen_range(2..=max);
        let mut pt = || vec![int(rng.gen_range(-50..=50)), int(rng.gen_range(-50..=50))];
        let segs: Vec<(Coords, Coords)> = (0..n).map(|_| (pt(), pt())).collect();
        if !segments_connected(&segs) {
            continue;
        }
        let Ok(r) = refine_segments(&segs) else { continue };
        let plstrat::arrangement::ImageGeometry::Plane(arr) = &r.geometry else { unreachable!() };
        if arr.components() == 1 {
            return (segs, r);
        }
    }
}

fn segments_connected(segs: &[(Coords, Coords)]) -> bool {
    let mut uf = UnionFind::new(segs.len());
    for i in 0..segs.len() {
        for j in (i + 1)..segs.len() {
            let ((a, b), (c, d)) = (&segs[i], &segs[j]);
            let meet = segment_intersection(a, b, c, d).is_some()
                || [(a, b, c), (a, b, d), (c, d, a), (c, d, b)].iter().any(|(x, y, p)| on_segment(x, y, p));
            if meet {
                uf.union(i, j);
            }
        }
    }
    uf.labels().1 == 1
}

/// Reduced mod-2 Betti numbers `β̃₋₁, …, β̃_dim` by dense Gaussian
/// elimination of the augmented chain complex.
pub fn naive_reduced_betti(k: &SimplicialComplex) -> Vec<usize> {
    let Some(top) = k.dim() else { return vec![1] };
    let by_dim: Vec<Vec<Simplex>> = (0..=top).map(|d| k.of_dim(d).cloned().collect()).collect();
    // chain groups indexed by degree + 1; degree −1 is the empty simplex
    let sizes: Vec<usize> = std::iter::once(1).chain(by_dim.iter().map(Vec::len)).collect();
    // rank of ∂ : C_d → C_{d−1}, for d = 0..=top
    let mut ranks = vec![0usize; top + 2];
    for d in 0..=top {
        let rows_index: BTreeMap<Vec<Vertex>, usize> = if d == 0 {
            BTreeMap::from([(Vec::new(), 0)])
        } else {
            by_dim[d - 1].iter().enumerate().map(|(i, s)| (s.vertices().to_vec(), i)).collect()
        };
        let mut m: Vec<Vec<u8>> = vec![vec![0; by_dim[d].len()]; rows_index.len()];
        for (c, s) in by_dim[d].iter().enumerate() {
            for skip in 0..s.vertices().len() {
                let face: Vec<Vertex> =
                    s.vertices().iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| *v).collect();
                m[rows_index[&face]][c] ^= 1;
            }
        }
        ranks[d] = gf2_rank(m);
    }
    // β̃_{d} = dim C_d − rank ∂_d − rank ∂_{d+1}, with nothing leaving C_{−1}
    (0..=top + 1).map(|i| if i == 0 { sizes[0] - ranks[0] } else { sizes[i] - ranks[i - 1] - ranks[i] }).collect()
}

fn gf2_rank(mut m: Vec<Vec<u8>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|r| m[*r][c] == 1) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Cone over `k` with a fresh apex.
pub fn cone(k: &SimplicialComplex) -> SimplicialComplex {
    let apex = k.vertices().last().map_or(0, |v| v + 1);
    let facets: Vec<Simplex> = if k.is_empty() {
        vec![Simplex::vertex(apex)]
    } else {
        k.facets().iter().map(|s| s.union(&Simplex::vertex(apex))).collect()
    };
    SimplicialComplex::from_facets(facets)
}

/// Up-closure of a set of elements.
pub fn up_closure(p: &Poset, seeds: &BTreeSet<usize>) -> BTreeSet<usize> {
    seeds.iter().flat_map(|s| p.up_set(*s).expect("element of the poset")).collect()
}
