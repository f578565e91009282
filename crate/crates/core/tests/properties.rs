//! Randomized invariants. Each case draws a seed and builds its input with
//! the shared generators.

mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plstrat::arrangement::{containment_violations, refine_segments, ImageGeometry};
use plstrat::complex::SimplicialComplex;
use plstrat::homology::reduced_betti;
use plstrat::jacobi::{criticality_table, jacobi_set, Notion};
use plstrat::poset::MonotoneMap;
use plstrat::rational::{int, Coords};
use plstrat::reeb::reeb_graph;

fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn betti_matches_elimination(seed in any::<u64>()) {
        let k = common::random_complex(&mut seeded(seed), 30);
        prop_assert_eq!(reduced_betti(&k).entries().to_vec(), common::naive_reduced_betti(&k));
    }

    #[test]
    fn betti_alternating_sum_is_reduced_euler(seed in any::<u64>()) {
        let k = common::random_complex(&mut seeded(seed), 30);
        prop_assume!(!k.is_empty());
        prop_assert_eq!(reduced_betti(&k).alternating_sum(), k.euler_characteristic() - 1);
    }

    #[test]
    fn cones_are_acyclic(seed in any::<u64>()) {
        let k = common::random_complex(&mut seeded(seed), 30);
        prop_assert!(!reduced_betti(&common::cone(&k)).is_nontrivial());
    }

    #[test]
    fn random_posets_are_partial_orders(seed in any::<u64>(), n in 1usize..12) {
        let p = common::random_poset(&mut seeded(seed), n);
        prop_assert!(p.is_valid());
        for a in 0..n {
            prop_assert!(p.is_open(&p.up_set(a).unwrap()));
        }
        prop_assert!(MonotoneMap::new(p.clone(), p.clone(), (0..n).collect()).is_ok());
        let cone = p.right_cone();
        prop_assert_eq!(cone.maximal_elements(), vec![n]);
    }

    #[test]
    fn criticality_implications_hold(seed in any::<u64>(), k in 1usize..=2) {
        let f = common::random_generic_map(&mut seeded(seed), k);
        for r in criticality_table(&f).unwrap() {
            prop_assert!(r.respects_implications(), "{:?}", r);
        }
    }

    #[test]
    fn jacobi_set_follows_relabelling(seed in any::<u64>()) {
        let f = common::random_generic_map(&mut seeded(seed), 1);
        let g = f.relabel(|v| 3 * v + 7);
        let a: Vec<u32> = jacobi_set(&f, Notion::H).unwrap().vertices().iter().map(|v| 3 * v + 7).collect();
        prop_assert_eq!(a, jacobi_set(&g, Notion::H).unwrap().vertices());
    }

    #[test]
    fn morse_count_matches_euler_characteristic(seed in any::<u64>()) {
        let f = common::random_generic_map(&mut seeded(seed), 1);
        let (min, saddle, max) = plstrat::jacobi::morse_counts(&f).unwrap();
        prop_assert_eq!(min - saddle + max, f.domain().euler_characteristic());
    }

    #[test]
    fn reeb_cycle_rank_is_genus(seed in any::<u64>()) {
        let f = common::random_generic_map(&mut seeded(seed), 1);
        let g = reeb_graph(&f, Notion::H).unwrap();
        let genus = (2 - f.domain().euler_characteristic()) / 2;
        prop_assert_eq!(g.components(), 1);
        prop_assert_eq!(g.cycle_rank() as i64, genus);
        prop_assert_eq!(g.node_count(), jacobi_set(&f, Notion::H).unwrap().vertices().len());
    }

    #[test]
    fn arrangement_euler_counts_components(
        coords in prop::collection::vec((-30i64..30, -30i64..30, -30i64..30, -30i64..30), 1..7)
    ) {
        let segs: Vec<(Coords, Coords)> =
            coords.iter().map(|(a, b, c, d)| (vec![int(*a), int(*b)], vec![int(*c), int(*d)])).collect();
        // degenerate inputs are rejected, not mis-built
        if let Ok(r) = refine_segments(&segs) {
            let ImageGeometry::Plane(arr) = &r.geometry else { unreachable!() };
            prop_assert_eq!(arr.euler_characteristic(), 1 + arr.components() as i64);
            prop_assert!(containment_violations(&r).is_empty());
            for &c in &arr.crossings {
                prop_assert_eq!(r.point_multiplicity[c], 2);
            }
        }
    }
}

#[test]
fn spheres_have_one_top_class() {
    for n in 1..=5u32 {
        let s = plstrat::complex::Simplex::from_unsorted(0..n + 1).unwrap();
        let b = reduced_betti(&SimplicialComplex::boundary_of_simplex(&s));
        assert_eq!(b.get(n as isize - 1), 1);
        assert_eq!(b.entries().iter().sum::<usize>(), 1);
    }
}
