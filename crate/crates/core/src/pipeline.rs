//! End-to-end runs: load inputs, compute every stage, and render the output
//! files in memory. Writing them to disk is left to the caller.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arrangement::{
    build_codomain_stratification, coarseness_check, refine_image, stratify_singular_locus, svg, ArrangementError,
    CodomainStratification, LocusFile, SingularLocus, StratificationJson,
};
use crate::complex::{manifold_check, ComplexError, ComplexFile, ManifoldReport, Simplex};
use crate::jacobi::{
    check_generic, checked_table, domain_stratification, h_verdict, jacobi_from_table, CriticalityVerdict,
    GenericityReport, JacobiError, JacobiSet, Notion, PLMap, ValuesFile,
};
use crate::homology::BettiVector;
use crate::poset::{PosetError, StratifiedSpace};
use crate::reeb::{
    check_stein_square, fiber_constancy_audit, reeb_graph, reeb_scaffold, AuditReport, ReebError, SteinVerdict,
};

/// Output files by name.
pub type Bundle = BTreeMap<String, Vec<u8>>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Jacobi(#[from] JacobiError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error(transparent)]
    Reeb(#[from] ReebError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    /// 1 for input and validation problems, 2 for genericity or degeneracy,
    /// 3 for broken internal invariants.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Parse { .. } | Error::Config(_) | Error::Validation(_) | Error::Complex(_) => 1,
            Error::Stage { source, .. } => source.exit_code(),
            Error::Jacobi(e) => jacobi_code(e),
            Error::Arrangement(e) => arrangement_code(e),
            Error::Reeb(e) => match e {
                ReebError::Degeneracy(_) => 2,
                ReebError::UnsupportedDimension(_) | ReebError::WrongDimension { .. } => 1,
                ReebError::Jacobi(j) => jacobi_code(j),
                ReebError::Arrangement(a) => arrangement_code(a),
                ReebError::Poset(_) => 3,
            },
            Error::Poset(PosetError::NotAChain(_)) | Error::Poset(PosetError::UnknownElement(_)) => 1,
            Error::Poset(_) | Error::CheckFailed(_) => 3,
        }
    }

    fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |e| Error::Stage { stage, source: Box::new(e) }
    }
}

fn jacobi_code(e: &JacobiError) -> i32 {
    match e {
        JacobiError::NotGeneric(_) | JacobiError::Tie { .. } | JacobiError::DegenerateImage(_) => 2,
        JacobiError::Internal(_) | JacobiError::Poset(_) => 3,
        _ => 1,
    }
}

fn arrangement_code(e: &ArrangementError) -> i32 {
    match e {
        ArrangementError::NotGeneric(_)
        | ArrangementError::NonTransverse(_)
        | ArrangementError::Overlap(..)
        | ArrangementError::TJunction { .. }
        | ArrangementError::TriplePoint(_) => 2,
        ArrangementError::Internal(_) | ArrangementError::SampleFailure(_) | ArrangementError::Poset(_) => 3,
        ArrangementError::Jacobi(j) => jacobi_code(j),
        _ => 1,
    }
}

/// Where the input comes from: a complex with vertex values, or a locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputSpec {
    Map { complex: PathBuf, values: PathBuf },
    Locus(PathBuf),
}

/// Which optional renderings to include besides the JSON files.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exports {
    pub dot: bool,
    pub svg: bool,
}

impl Default for Exports {
    fn default() -> Self {
        Self { dot: true, svg: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineConfig {
    pub input: InputSpec,
    pub notion: Notion,
    pub samples_per_stratum: usize,
    pub perturb: bool,
    pub exports: Exports,
}

impl PipelineConfig {
    /// Exactly one of `complex` + `values` or `locus` must be given.
    pub fn new(complex: Option<PathBuf>, values: Option<PathBuf>, locus: Option<PathBuf>) -> Result<Self, Error> {
        let input = match (complex, values, locus) {
            (Some(complex), Some(values), None) => InputSpec::Map { complex, values },
            (None, None, Some(l)) => InputSpec::Locus(l),
            (Some(_), None, None) | (None, Some(_), None) => {
                return Err(Error::Config("--complex and --values must be given together".into()))
            }
            (None, None, None) => return Err(Error::Config("no input given".into())),
            _ => return Err(Error::Config("give either --complex/--values or --locus, not both".into())),
        };
        Ok(Self { input, notion: Notion::H, samples_per_stratum: 5, perturb: false, exports: Exports::default() })
    }
}

/// Parsed input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Map(PLMap),
    Locus(SingularLocus),
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io { path: path.to_path_buf(), message: e.to_string() })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Error> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Parse { path: path.to_path_buf(), message: e.to_string() })
}

pub fn load(config: &PipelineConfig) -> Result<Input, Error> {
    match &config.input {
        InputSpec::Map { complex, values } => {
            let cf: ComplexFile = parse(complex)?;
            let k = cf.into_complex().map_err(|e| Error::Parse { path: complex.clone(), message: e.to_string() })?;
            let vf: ValuesFile = parse(values)?;
            let f = PLMap::from_file(k, vf).map_err(|e| Error::Parse { path: values.clone(), message: e.to_string() })?;
            Ok(Input::Map(f.with_perturbation(config.perturb)))
        }
        InputSpec::Locus(path) => {
            let lf: LocusFile = parse(path)?;
            let l = SingularLocus::from_file(lf).map_err(|e| Error::Parse { path: path.clone(), message: e.to_string() })?;
            Ok(Input::Locus(l))
        }
    }
}

/// Machine-readable validation outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifold: Option<ManifoldSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genericity: Option<GenericityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locus: Option<LocusSummary>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldSummary {
    pub dimension: usize,
    pub closed: bool,
    pub with_boundary: bool,
    /// `null` when some link could not be decided.
    pub combinatorial_manifold: Option<bool>,
    pub undecided_links: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusSummary {
    pub zero_cells: usize,
    pub one_cells: usize,
    pub faces: usize,
    pub coarsest: bool,
}

impl ValidationReport {
    /// 0 when everything passed, 2 when only genericity failed, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else if self.manifold.as_ref().is_some_and(|m| m.combinatorial_manifold != Some(false))
            && self.genericity.as_ref().is_some_and(|g| !g.passed)
        {
            2
        } else {
            1
        }
    }
}

fn summarize(r: &ManifoldReport) -> ManifoldSummary {
    ManifoldSummary {
        dimension: r.dimension,
        closed: r.is_weak_pseudomanifold,
        with_boundary: r.is_weak_pseudomanifold_with_boundary,
        combinatorial_manifold: r.is_combinatorial_manifold(),
        undecided_links: r.link_checks.iter().filter(|c| c.verdict == crate::complex::LinkVerdict::Undecided).count(),
    }
}

pub fn validate_input(input: &Input) -> ValidationReport {
    match input {
        Input::Map(f) => {
            let mut problems = Vec::new();
            let manifold = match manifold_check(f.domain()) {
                Ok(r) => {
                    let s = summarize(&r);
                    if s.combinatorial_manifold == Some(false) {
                        problems.push("domain is not a combinatorial manifold".to_string());
                    }
                    Some(s)
                }
                Err(e) => {
                    problems.push(e.to_string());
                    None
                }
            };
            let genericity = check_generic(f);
            if !genericity.passed {
                problems.push(format!("{} genericity violation(s)", genericity.violations.len()));
            }
            ValidationReport {
                passed: problems.is_empty(),
                manifold,
                genericity: Some(genericity),
                locus: None,
                problems,
            }
        }
        Input::Locus(l) => match stratify_singular_locus(l) {
            Ok(s) => ValidationReport {
                passed: true,
                manifold: None,
                genericity: None,
                locus: Some(LocusSummary {
                    zero_cells: s.zero_cells.len(),
                    one_cells: s.one_cells.len(),
                    faces: s.face_count(),
                    coarsest: coarseness_check(&s),
                }),
                problems: Vec::new(),
            },
            Err(e) => ValidationReport {
                passed: false,
                manifold: None,
                genericity: None,
                locus: None,
                problems: vec![e.to_string()],
            },
        },
    }
}

pub fn cmd_validate(config: &PipelineConfig) -> Result<ValidationReport, Error> {
    Ok(validate_input(&load(config)?))
}

/// Contents of `jacobi.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiJson {
    pub notion: Notion,
    pub k: usize,
    pub critical: Vec<Simplex>,
    pub jacobi_set: ComplexFile,
    pub verdicts: Vec<CriticalityVerdict>,
    /// Reduced Betti vectors of the directional links of critical simplices.
    pub link_betti: Vec<LinkBetti>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkBetti {
    pub simplex: Simplex,
    pub upper: BettiVector,
    pub lower: BettiVector,
}

/// Contents of `audit.json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecksJson {
    pub fiber_constancy: AuditReport,
    pub stein_square: SteinVerdict,
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(value).expect("plain data serializes");
    out.push(b'\n');
    out
}

pub fn jacobi_stage(f: &PLMap, notion: Notion) -> Result<(JacobiJson, JacobiSet), Error> {
    let table = checked_table(f, notion)?;
    let j = jacobi_from_table(&table, notion)?;
    let link_betti = j
        .critical
        .iter()
        .map(|s| h_verdict(f, s).map(|h| LinkBetti { simplex: s.clone(), upper: h.upper, lower: h.lower }))
        .collect::<Result<Vec<_>, _>>()?;
    let json = JacobiJson {
        notion,
        k: f.k(),
        critical: j.critical.clone(),
        jacobi_set: ComplexFile::from_complex(&j.complex),
        verdicts: table,
        link_betti,
    };
    Ok((json, j))
}

pub fn codomain_of(f: &PLMap, notion: Notion) -> Result<CodomainStratification, Error> {
    let table = checked_table(f, notion)?;
    let j = jacobi_from_table(&table, notion)?;
    Ok(build_codomain_stratification(&refine_image(f, &j)?)?)
}

/// Runs every stage on an input. Map inputs must pass validation first.
pub fn run_pipeline(input: &Input, notion: Notion, samples: usize, exports: Exports) -> Result<Bundle, Error> {
    let mut bundle = Bundle::new();
    let f = match input {
        Input::Locus(l) => {
            let s = stratify_singular_locus(l).map_err(|e| Error::at("locus")(e.into()))?;
            bundle.insert("codomain_strat.json".into(), to_json_bytes(&s.to_json()));
            if exports.svg {
                bundle.insert("codomain_strat.svg".into(), svg::locus_svg(&s).into_bytes());
            }
            return Ok(bundle);
        }
        Input::Map(f) => f,
    };
    let report = validate_input(input);
    if !report.passed {
        let e = if report.exit_code() == 2 {
            let g = report.genericity.as_ref().expect("map input");
            JacobiError::NotGeneric(format!(
                "{} violation(s), first {} on {:?}",
                g.violations.len(),
                g.violations[0].rule,
                g.violations[0].vertices
            ))
            .into()
        } else {
            Error::Validation(report.problems.join("; "))
        };
        return Err(Error::at("validate")(e));
    }
    let (json, j) = jacobi_stage(f, notion).map_err(Error::at("jacobi"))?;
    bundle.insert("jacobi.json".into(), to_json_bytes(&json));
    let dom = domain_stratification(f, &j).map_err(|e| Error::at("jacobi")(e.into()))?;
    bundle.insert("domain_strat.json".into(), to_json_bytes(&StratificationJson::from_space(&dom, |_| Vec::new())));
    let s = refine_image(f, &j)
        .and_then(|r| build_codomain_stratification(&r))
        .map_err(|e| Error::at("codomain")(e.into()))?;
    bundle.insert("codomain_strat.json".into(), to_json_bytes(&s.to_json()));
    if exports.svg {
        bundle.insert("codomain_strat.svg".into(), svg::codomain_svg(&s).into_bytes());
    }
    if f.k() == 1 {
        let g = reeb_graph(f, notion).map_err(|e| Error::at("reeb")(e.into()))?;
        bundle.insert("reeb.json".into(), to_json_bytes(&g));
        if exports.dot {
            bundle.insert("reeb.dot".into(), g.to_dot().into_bytes());
        }
    }
    let scaffold = reeb_scaffold(f, &s).map_err(|e| Error::at("reeb")(e.into()))?;
    if f.k() == 2 {
        bundle.insert("scaffold.json".into(), to_json_bytes(&scaffold.to_json()));
    }
    let stein = check_stein_square(f, &scaffold, &s).map_err(|e| Error::at("checks")(e.into()))?;
    let audit = fiber_constancy_audit(f, &s, samples).map_err(|e| Error::at("checks")(e.into()))?;
    bundle.insert("audit.json".into(), to_json_bytes(&ChecksJson { fiber_constancy: audit, stein_square: stein }));
    Ok(bundle)
}

pub fn cmd_pipeline(config: &PipelineConfig) -> Result<Bundle, Error> {
    let input = load(config)?;
    run_pipeline(&input, config.notion, config.samples_per_stratum, config.exports)
}

/// Whether the checks recorded in a bundle's `audit.json` passed.
pub fn bundle_checks_pass(bundle: &Bundle) -> bool {
    match bundle.get("audit.json") {
        None => true,
        Some(bytes) => serde_json::from_slice::<ChecksJson>(bytes)
            .is_ok_and(|c| c.fiber_constancy.passed && c.stein_square.ok),
    }
}

/// How to pick a chain of strata for filtration export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChainSelector {
    /// Position in the list of maximal chains (label-order depth-first).
    Index(usize),
    /// Explicit labels, bottom to top.
    Labels(Vec<String>),
}

impl std::str::FromStr for ChainSelector {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(i) = s.trim().parse::<usize>() {
            return Ok(ChainSelector::Index(i));
        }
        let labels: Vec<String> = s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
        if labels.is_empty() {
            return Err("empty chain".into());
        }
        Ok(ChainSelector::Labels(labels))
    }
}

/// Filtration text for a chain in the codomain (or locus) stratification.
pub fn export_filtration(space: &StratifiedSpace, chain: &ChainSelector) -> Result<String, Error> {
    let poset = space.poset();
    let elements = match chain {
        ChainSelector::Index(i) => {
            let chains = poset.linear_subposets(poset.len().max(1));
            chains.get(*i).cloned().ok_or_else(|| {
                Error::Poset(PosetError::NotAChain(vec![format!("chain #{} of {}", i, chains.len())]))
            })?
        }
        ChainSelector::Labels(ls) => ls
            .iter()
            .map(|l| poset.index_of(l).ok_or_else(|| Error::Poset(PosetError::UnknownElement(l.clone()))))
            .collect::<Result<Vec<_>, _>>()?,
    };
    Ok(space.filtration(&elements)?)
}

pub fn cmd_export_filtration(config: &PipelineConfig, chain: &ChainSelector) -> Result<String, Error> {
    match load(config)? {
        Input::Map(f) => {
            let s = codomain_of(&f, config.notion)?;
            export_filtration(&s.space, chain)
        }
        Input::Locus(l) => export_filtration(&stratify_singular_locus(&l)?.space, chain),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    fn map_input(f: PLMap) -> Input {
        Input::Map(f)
    }

    #[test]
    fn tetrahedron_bundle() {
        let b = run_pipeline(&map_input(golden::tetrahedron_projection()), Notion::H, 5, Exports::default()).unwrap();
        let names: Vec<&str> = b.keys().map(String::as_str).collect();
        assert_eq!(
            names,
            vec!["audit.json", "codomain_strat.json", "codomain_strat.svg", "domain_strat.json", "jacobi.json", "scaffold.json"]
        );
        let s: StratificationJson = serde_json::from_slice(&b["codomain_strat.json"]).unwrap();
        assert_eq!(s.poset.elements.len(), 10);
        assert!(bundle_checks_pass(&b));
    }

    #[test]
    fn torus_bundle() {
        let b = run_pipeline(&map_input(golden::torus_height()), Notion::H, 5, Exports::default()).unwrap();
        let dot = String::from_utf8(b["reeb.dot"].clone()).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 4);
        assert_eq!(dot.matches("[label=").count(), 4);
        assert!(!b.contains_key("scaffold.json"));
        assert!(bundle_checks_pass(&b));
    }

    #[test]
    fn locus_bundle() {
        let b = run_pipeline(&Input::Locus(golden::fold_locus()), Notion::H, 5, Exports::default()).unwrap();
        assert_eq!(b.keys().collect::<Vec<_>>(), vec!["codomain_strat.json", "codomain_strat.svg"]);
    }

    #[test]
    fn non_generic_input_is_rejected() {
        let f = golden::torus_height();
        let mut values = f.values().clone();
        values.insert(1, f.value(2).clone());
        let tied = PLMap::new(f.domain().clone(), 1, values).unwrap();
        let report = validate_input(&map_input(tied.clone()));
        assert_eq!(report.exit_code(), 2);
        assert!(report.genericity.unwrap().violations.iter().any(|v| v.rule == "G2" && v.vertices == vec![1, 2]));
        let e = run_pipeline(&map_input(tied), Notion::H, 5, Exports::default()).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().starts_with("stage validate"));
    }

    #[test]
    fn filtrations() {
        let f = golden::tetrahedron_projection();
        let s = codomain_of(&f, Notion::H).unwrap();
        let chains = s.space.poset().linear_subposets(10);
        assert_eq!(chains[0].len(), 3);
        let labels: Vec<String> = chains[0].iter().map(|e| s.label(*e).to_string()).collect();
        let by_label = export_filtration(&s.space, &ChainSelector::Labels(labels)).unwrap();
        let t = export_filtration(&s.space, &ChainSelector::Index(0)).unwrap();
        let indices: Vec<usize> = t.lines().map(|l| l.rsplit(' ').next().unwrap().parse().unwrap()).collect();
        assert!(indices.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(*indices.last().unwrap(), 2);
        assert_eq!(t, by_label);
        let torus = codomain_of(&golden::torus_height(), Notion::H).unwrap();
        assert!(torus.space.poset().linear_subposets(10).iter().all(|c| c.len() == 2));
        assert!(matches!(
            export_filtration(&torus.space, &ChainSelector::Index(999)),
            Err(Error::Poset(PosetError::NotAChain(_)))
        ));
    }
}
