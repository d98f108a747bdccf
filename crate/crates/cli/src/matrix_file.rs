//! JSON matrix documents: `{"name": "...", "matrix": [[[re, im], ...], ...]}`.

use std::fmt;

use nonlocal_core::linalg::Matrix;
use nonlocal_core::tolerance::INGEST_UNITARITY;
use nonlocal_core::{Mat4, C64};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug)]
pub enum MatrixFileError {
    Json(serde_json::Error),
    Shape(String),
    Core(nonlocal_core::Error),
}

impl fmt::Display for MatrixFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixFileError::Json(e) => write!(f, "invalid matrix document: {e}"),
            MatrixFileError::Shape(s) => write!(f, "invalid matrix document: {s}"),
            MatrixFileError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl MatrixFile {
    pub fn from_matrix(name: Option<String>, m: &Mat4) -> Self {
        MatrixFile {
            name,
            matrix: m
                .rows()
                .iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, MatrixFileError> {
        serde_json::from_str(text).map_err(MatrixFileError::Json)
    }

    /// The 4×4 unitary this document describes.
    pub fn to_unitary(&self) -> Result<Mat4, MatrixFileError> {
        if self.matrix.len() != 4 || self.matrix.iter().any(|r| r.len() != 4) {
            let shape: Vec<usize> = self.matrix.iter().map(Vec::len).collect();
            return Err(MatrixFileError::Shape(format!(
                "expected 4 rows of 4 [re, im] entries, got row lengths {shape:?}"
            )));
        }
        let m: Mat4 = Matrix::from_fn(|r, c| {
            let [re, im] = self.matrix[r][c];
            C64::new(re, im)
        });
        if !m.is_finite() {
            return Err(MatrixFileError::Shape("entries must be finite".into()));
        }
        m.check_unitary(INGEST_UNITARITY).map_err(MatrixFileError::Core)?;
        Ok(m)
    }
}
