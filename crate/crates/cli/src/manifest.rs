//! JSON manifest describing a cube.
//!
//! ```json
//! { "model": "duplicube", "n": 10, "seed": 7 }
//! ```
//!
//! `permutations` holds explicit tables ordered by permutation index and then
//! by copy suffix; `base` is an optional base graph given as
//! `{ "vertex_count": h, "edges": [[u, v], ...] }`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use twistcube_core::{Model, SimpleGraph, TwistSpec};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelName {
    Duplicube,
    Independent,
    Explicit,
}

impl From<Model> for ModelName {
    fn from(m: Model) -> Self {
        match m {
            Model::Duplicube => ModelName::Duplicube,
            Model::Independent => ModelName::Independent,
            Model::Explicit => ModelName::Explicit,
        }
    }
}

impl From<ModelName> for Model {
    fn from(m: ModelName) -> Self {
        match m {
            ModelName::Duplicube => Model::Duplicube,
            ModelName::Independent => Model::Independent,
            ModelName::Explicit => Model::Explicit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseManifest {
    pub vertex_count: usize,
    pub edges: Vec<[u32; 2]>,
}

impl BaseManifest {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        use twistcube_core::Graph;
        BaseManifest {
            vertex_count: g.vertex_count(),
            edges: g.sorted_edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<SimpleGraph> {
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(SimpleGraph::from_edges(self.vertex_count, &edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub model: ModelName,
    pub n: u32,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseManifest>,
}

impl Manifest {
    pub fn from_spec(spec: &TwistSpec) -> Self {
        Manifest {
            model: spec.model.into(),
            n: spec.n,
            seed: spec.seed,
            permutations: spec.permutations.clone(),
            base: spec.base.as_ref().map(BaseManifest::from_graph),
        }
    }

    pub fn to_spec(&self) -> Result<TwistSpec> {
        let base = self.base.as_ref().map(BaseManifest::to_graph).transpose()?;
        Ok(TwistSpec {
            model: self.model.into(),
            n: self.n,
            seed: self.seed,
            permutations: self.permutations.clone(),
            base,
        })
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Canonical text form: pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|source| CliError::Parse { what: "manifest", path: path.into(), source })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }
}
