//! The bundled example corpus and its manifest of expected results.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;

#[derive(Clone, Debug, Deserialize)]
pub struct Manifest {
    #[serde(rename = "entry")]
    pub entries: Vec<CorpusEntry>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    #[default]
    Valid,
    ParseError,
    ValidationError,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub theory: String,
    #[serde(default)]
    pub expect: Expectation,
    pub laws: Option<usize>,
    #[serde(default)]
    pub stories: Vec<String>,
    #[serde(default)]
    pub prob: Vec<ProbCheck>,
    #[serde(default)]
    pub cause: Vec<CauseCheck>,
    #[serde(default)]
    pub classify: Vec<ClassifyCheck>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ProbCheck {
    pub query: String,
    pub context: Vec<String>,
    /// Exact rational, e.g. `49/50`.
    pub expected: String,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct CauseCheck {
    pub story: String,
    pub cause: String,
    pub effect: String,
    pub expected: bool,
    /// Labels of `T'`, in theory order.
    pub relevant: Option<Vec<String>>,
    /// Labels of `T''`, in theory order.
    pub counterfactual: Option<Vec<String>>,
    #[serde(default)]
    pub note: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct ClassifyCheck {
    pub outcome: Vec<String>,
    pub effect: String,
    pub branches: usize,
    /// Candidate literal to `Certain`, `PossibleOnly` or `NotPossible`.
    pub expected: BTreeMap<String, String>,
    #[serde(default)]
    pub note: String,
}

/// Directory holding the bundled corpus.
pub fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

pub fn load_manifest(dir: &Path) -> Result<Manifest, String> {
    let path = dir.join("manifest.toml");
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}
