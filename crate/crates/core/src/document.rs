//! JSON interchange format for a single simplex.
//!
//! ```json
//! {"dimension": 2, "vertices": [[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]], "name": "right-3-4-5"}
//! ```
//!
//! Numbers are written with the shortest decimal that reads back to the same
//! `f64`, so a write/read cycle is bit-exact.

use serde::{Deserialize, Serialize};

use crate::geom::{GeomError, Simplex};

#[derive(Debug, thiserror::Error)]
pub enum DocumentError {
    #[error("invalid simplex document: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplexDocument {
    pub dimension: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl SimplexDocument {
    pub fn from_simplex(s: &Simplex, name: Option<String>) -> Self {
        SimplexDocument { dimension: s.dim(), vertices: s.to_rows(), name }
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Shape-checked simplex; degeneracy is left to the caller.
    pub fn to_simplex(&self) -> Result<Simplex, DocumentError> {
        if self.vertices.len() != self.dimension + 1 {
            return Err(GeomError::VertexCount { dimension: self.dimension, count: self.vertices.len() }.into());
        }
        if let Some(bad) = self.vertices.iter().find(|v| v.len() != self.dimension) {
            return Err(GeomError::DimensionMismatch { expected: self.dimension, found: bad.len() }.into());
        }
        Ok(Simplex::from_rows(&self.vertices)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
