//! JSON interchange format for graded representations.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "n_ops": 1,
//!   "pieces": [
//!     { "degree": 0, "dim": 2, "operators": [[["0", "1"], ["1", "0"]]] }
//!   ]
//! }
//! ```
//!
//! Entries are exact rationals written as strings (`"3"`, `"-2/5"`); JSON
//! numbers are rejected.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graded_rep::{GradedRep, RepError};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDocument {
    pub schema_version: String,
    pub n_ops: usize,
    pub pieces: Vec<PieceDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceDocument {
    pub degree: usize,
    pub dim: usize,
    /// One row-major matrix per operator.
    pub operators: Vec<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("unsupported schema_version {0:?} (expected {SCHEMA_VERSION:?})")]
    SchemaVersion(String),
    #[error("degree {0} appears more than once")]
    DuplicateDegree(usize),
    #[error("degree {degree}, operator {op}: expected {dim} rows of {dim} entries")]
    MatrixShape {
        degree: usize,
        op: usize,
        dim: usize,
    },
    #[error("degree {degree}, operator {op}, entry ({row}, {col}): {message}")]
    Entry {
        degree: usize,
        op: usize,
        row: usize,
        col: usize,
        message: String,
    },
    #[error(transparent)]
    Rep(#[from] RepError),
}

impl RepDocument {
    pub fn from_json(text: &str) -> Result<Self, DocumentError> {
        serde_json::from_str(text).map_err(|e| DocumentError::Json(e.to_string()))
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    pub fn to_rep<F: Scalar>(&self) -> Result<GradedRep<F>, DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::SchemaVersion(self.schema_version.clone()));
        }
        let mut seen = BTreeSet::new();
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for piece in &self.pieces {
            if !seen.insert(piece.degree) {
                return Err(DocumentError::DuplicateDegree(piece.degree));
            }
            let mut ops = Vec::with_capacity(piece.operators.len());
            for (op, rows) in piece.operators.iter().enumerate() {
                ops.push(parse_matrix(piece.degree, op, piece.dim, rows)?);
            }
            pieces.push((piece.degree, piece.dim, ops));
        }
        Ok(GradedRep::new(self.n_ops, pieces)?)
    }

    pub fn from_rep<F: Scalar>(rep: &GradedRep<F>) -> Self {
        let pieces = rep
            .pieces()
            .iter()
            .map(|(&degree, piece)| PieceDocument {
                degree,
                dim: piece.dim(),
                operators: piece
                    .operators()
                    .iter()
                    .map(|m| {
                        (0..m.rows())
                            .map(|i| m.row(i).iter().map(ToString::to_string).collect())
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            n_ops: rep.n_ops(),
            pieces,
        }
    }
}

fn parse_matrix<F: Scalar>(
    degree: usize,
    op: usize,
    dim: usize,
    rows: &[Vec<String>],
) -> Result<Matrix<F>, DocumentError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(DocumentError::MatrixShape { degree, op, dim });
    }
    let mut data = Vec::with_capacity(dim * dim);
    for (row, entries) in rows.iter().enumerate() {
        for (col, text) in entries.iter().enumerate() {
            let v = F::parse_exact(text).map_err(|message| DocumentError::Entry {
                degree,
                op,
                row,
                col,
                message,
            })?;
            data.push(v);
        }
    }
    Ok(Matrix::from_vec(dim, dim, data))
}

/// Parses a JSON document straight into a representation.
pub fn parse<F: Scalar>(text: &str) -> Result<GradedRep<F>, DocumentError> {
    RepDocument::from_json(text)?.to_rep()
}

/// Renders a representation as a JSON document.
pub fn render<F: Scalar>(rep: &GradedRep<F>) -> String {
    RepDocument::from_rep(rep).to_json()
}
