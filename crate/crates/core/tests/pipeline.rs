use serde::de::DeserializeOwned;
use serde::Serialize;

use plstrat::arrangement::{build_codomain_stratification, refine_image, StratificationJson};
use plstrat::complex::SimplicialComplex;
use plstrat::golden;
use plstrat::jacobi::{jacobi_set, Notion, PLMap};
use plstrat::pipeline::{
    export_filtration, run_pipeline, to_json_bytes, validate_input, Bundle, ChainSelector, ChecksJson, Exports, Input,
    JacobiJson,
};
use plstrat::reeb::{ReebGraph, ScaffoldJson};

fn reparse<T: Serialize + DeserializeOwned + PartialEq + std::fmt::Debug>(bundle: &Bundle, name: &str) {
    let Some(bytes) = bundle.get(name) else { return };
    let value: T = serde_json::from_slice(bytes).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert_eq!(&to_json_bytes(&value), bytes, "{name} does not round-trip");
}

fn all_bundles() -> Vec<(String, Bundle)> {
    let mut inputs: Vec<(String, Input)> =
        golden::maps().into_iter().map(|(n, f)| (n.to_string(), Input::Map(f))).collect();
    inputs.extend(golden::loci().into_iter().map(|(n, l)| (n.to_string(), Input::Locus(l))));
    inputs
        .into_iter()
        .map(|(n, i)| {
            let b = run_pipeline(&i, Notion::H, 5, Exports::default()).unwrap_or_else(|e| panic!("{n}: {e}"));
            (n, b)
        })
        .collect()
}

#[test]
fn every_json_output_round_trips() {
    for (_, b) in all_bundles() {
        reparse::<JacobiJson>(&b, "jacobi.json");
        reparse::<StratificationJson>(&b, "domain_strat.json");
        reparse::<StratificationJson>(&b, "codomain_strat.json");
        reparse::<ReebGraph>(&b, "reeb.json");
        reparse::<ScaffoldJson>(&b, "scaffold.json");
        reparse::<ChecksJson>(&b, "audit.json");
    }
}

#[test]
fn golden_checks_pass() {
    for (name, b) in all_bundles() {
        let Some(bytes) = b.get("audit.json") else { continue };
        let checks: ChecksJson = serde_json::from_slice(bytes).unwrap();
        assert!(checks.fiber_constancy.passed, "{name}");
        assert!(checks.stein_square.ok, "{name}: {:?}", checks.stein_square.witness);
    }
}

#[test]
fn validation_of_golden_maps() {
    for (name, f) in golden::maps() {
        let r = validate_input(&Input::Map(f));
        assert!(r.passed, "{name}: {:?}", r.problems);
        assert_eq!(r.exit_code(), 0);
    }
}

#[test]
fn non_manifold_domain_fails_validation() {
    // two triangles sharing only a vertex
    let k = SimplicialComplex::from_vertex_lists(&[&[0, 1, 2], &[0, 3, 4]]);
    let values = (0..5).map(|v| (v, vec![plstrat::rational::int(v as i64)])).collect();
    let r = validate_input(&Input::Map(PLMap::new(k, 1, values).unwrap()));
    assert!(!r.passed);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn filtration_chains() {
    let f = golden::torus_height();
    let j = jacobi_set(&f, Notion::H).unwrap();
    let s = build_codomain_stratification(&refine_image(&f, &j).unwrap()).unwrap();
    let chains = s.space.poset().linear_subposets(s.len());
    assert!(!chains.is_empty());
    for (i, c) in chains.iter().enumerate() {
        assert_eq!(c.len(), 2);
        let text = export_filtration(&s.space, &ChainSelector::Index(i)).unwrap();
        assert!(text.lines().all(|l| l.ends_with(" 0") || l.ends_with(" 1")));
    }
    // an empty map has a one-stratum codomain
    let e = PLMap::new(SimplicialComplex::empty(), 1, Default::default()).unwrap();
    let je = jacobi_set(&e, Notion::H).unwrap();
    let single = build_codomain_stratification(&refine_image(&e, &je).unwrap()).unwrap();
    let text = export_filtration(&single.space, &ChainSelector::Index(0)).unwrap();
    assert_eq!(text.lines().count(), 1);
}
