//! The JSON files under `golden/` must match the in-code golden inputs.
//! Run with `PLSTRAT_BLESS=1` to rewrite them.

use std::fs;
use std::path::PathBuf;

use plstrat::arrangement::{LocusFile, SingularLocus};
use plstrat::complex::ComplexFile;
use plstrat::golden;
use plstrat::jacobi::{PLMap, ValuesFile};
use plstrat::pipeline::to_json_bytes;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

fn check(name: &str, bytes: Vec<u8>) {
    let path = dir().join(name);
    if std::env::var_os("PLSTRAT_BLESS").is_some() {
        fs::create_dir_all(dir()).unwrap();
        fs::write(&path, &bytes).unwrap();
    }
    let on_disk = fs::read(&path).unwrap_or_else(|e| panic!("{}: {}", path.display(), e));
    assert!(on_disk == bytes, "{} is out of date", path.display());
}

#[test]
fn map_files_match() {
    for (name, f) in golden::maps() {
        check(&format!("{name}.complex.json"), to_json_bytes(&ComplexFile::from_complex(f.domain())));
        check(&format!("{name}.values.json"), to_json_bytes(&f.to_file()));
        let complex: ComplexFile = serde_json::from_slice(&fs::read(dir().join(format!("{name}.complex.json"))).unwrap()).unwrap();
        let values: ValuesFile = serde_json::from_slice(&fs::read(dir().join(format!("{name}.values.json"))).unwrap()).unwrap();
        let back = PLMap::from_file(complex.into_complex().unwrap(), values).unwrap();
        assert_eq!(back, f, "{name}");
    }
}

#[test]
fn locus_files_match() {
    for (name, l) in golden::loci() {
        check(&format!("{name}.locus.json"), to_json_bytes(&l.to_file()));
        let file: LocusFile = serde_json::from_slice(&fs::read(dir().join(format!("{name}.locus.json"))).unwrap()).unwrap();
        assert_eq!(SingularLocus::from_file(file).unwrap(), l, "{name}");
    }
}
