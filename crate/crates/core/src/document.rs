//! JSON exchange format for decompositions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multipartite::MultipartiteSpec;
use crate::pipeline::Decomposition;

/// `{ "parts": [...], "t": k, "paths": [["p0v0", ...], ...] }`.
///
/// Paths are written in canonical order: each starts at its lower vertex id
/// and the list is sorted by vertex ids, so equal decompositions serialise to
/// identical bytes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionDocument {
    pub parts: Vec<usize>,
    pub t: usize,
    pub paths: Vec<Vec<String>>,
}

impl DecompositionDocument {
    pub fn new(spec: &MultipartiteSpec, d: &Decomposition) -> Self {
        let paths = d
            .canonical()
            .paths()
            .iter()
            .map(|p| p.iter().map(|&v| spec.vertex_label(v)).collect())
            .collect();
        DecompositionDocument {
            parts: spec.parts().to_vec(),
            t: d.len(),
            paths,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serialises")
    }

    pub fn spec(&self) -> Result<MultipartiteSpec> {
        MultipartiteSpec::new(self.parts.clone())
    }

    /// Resolves labels to vertex ids; sequences are kept as written.
    pub fn decomposition(&self, spec: &MultipartiteSpec) -> Result<Decomposition> {
        let paths = self
            .paths
            .iter()
            .map(|p| {
                p.iter()
                    .map(|label| {
                        spec.parse_vertex_label(label)
                            .ok_or_else(|| Error::Parse(format!("unknown vertex label {label:?}")))
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition::from_paths(paths))
    }
}
