//! Self-describing JSON code files.
//!
//! ```json
//! {"field": {"p": 2, "w": 4, "m": 1, "base_modulus": [1,0,0,1,1], "ext_modulus": [0,1]},
//!  "n": 5, "k": 3, "columns": [[1,0,0], ...], "systematic_positions": [0,1,2],
//!  "construction": {"kind": "pyramid", ...}}
//! ```
//! Symbols are canonical field indices and each column has `k` entries.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::constructions::{GabidulinLrc, LocalGroup, PyramidCode};
use crate::galois::{Field, FieldSpec, GaloisError, Symbol};
use crate::profile::{AllSymbolLocalityProfile, InfoLocalityProfile};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot access {path}: {source}")]
    File {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed code file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("file declares n = {declared} but lists {columns} columns")]
    LengthMismatch { declared: usize, columns: usize },
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// How a stored code was built, so it can be audited without rebuilding it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstructionDescriptor {
    Pyramid {
        profile: InfoLocalityProfile,
        d: usize,
        q: u64,
        groups: Vec<LocalGroup>,
        tail_parities: Vec<usize>,
    },
    Gabidulin {
        nprofile: AllSymbolLocalityProfile,
        k: usize,
        q: u64,
        m: usize,
        n_precode: usize,
        groups: Vec<LocalGroup>,
        evaluation_points: Vec<Symbol>,
        effective_points: Vec<Symbol>,
    },
}

impl ConstructionDescriptor {
    pub fn groups(&self) -> &[LocalGroup] {
        match self {
            ConstructionDescriptor::Pyramid { groups, .. } | ConstructionDescriptor::Gabidulin { groups, .. } => groups,
        }
    }
}

impl From<&PyramidCode> for ConstructionDescriptor {
    fn from(p: &PyramidCode) -> Self {
        ConstructionDescriptor::Pyramid {
            profile: p.intended_profile.clone(),
            d: p.d_design,
            q: p.code.field().order(),
            groups: p.groups.clone(),
            tail_parities: p.tail_parities.clone(),
        }
    }
}

impl From<&GabidulinLrc> for ConstructionDescriptor {
    fn from(g: &GabidulinLrc) -> Self {
        ConstructionDescriptor::Gabidulin {
            nprofile: g.intended_profile.clone(),
            k: g.code.k(),
            q: g.q,
            m: g.m,
            n_precode: g.n_precode,
            groups: g.groups.clone(),
            evaluation_points: g.evaluation_points.clone(),
            effective_points: g.effective_points.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub field: FieldSpec,
    pub n: usize,
    pub k: usize,
    pub columns: Vec<Vec<Symbol>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub systematic_positions: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<ConstructionDescriptor>,
}

impl CodeFile {
    pub fn new(code: &LinearCode, construction: Option<ConstructionDescriptor>) -> Self {
        CodeFile {
            field: code.field().spec().clone(),
            n: code.n(),
            k: code.k(),
            columns: code.columns().to_vec(),
            systematic_positions: code.systematic_positions().map(<[usize]>::to_vec),
            construction,
        }
    }

    /// Rebuilds and validates the code, including the field moduli.
    pub fn to_code(&self) -> Result<LinearCode, IoError> {
        if self.columns.len() != self.n {
            return Err(IoError::LengthMismatch {
                declared: self.n,
                columns: self.columns.len(),
            });
        }
        let field = Field::from_spec(&self.field)?;
        Ok(LinearCode::new(
            &field,
            self.k,
            self.columns.clone(),
            self.systematic_positions.clone(),
        )?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("code files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self, IoError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| IoError::File {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<(), IoError> {
        let path = path.as_ref();
        fs::write(path, self.to_json() + "\n").map_err(|source| IoError::File {
            path: path.display().to_string(),
            source,
        })
    }
}

impl From<&PyramidCode> for CodeFile {
    fn from(p: &PyramidCode) -> Self {
        CodeFile::new(&p.code, Some(p.into()))
    }
}

impl From<&GabidulinLrc> for CodeFile {
    fn from(g: &GabidulinLrc) -> Self {
        CodeFile::new(&g.code, Some(g.into()))
    }
}
