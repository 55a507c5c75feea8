use thiserror::Error;

use crate::lattice::{Cell, Grade};

#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible grades: {left} and {right}")]
    GradeMismatch { left: Grade, right: Grade },

    #[error("cell {cell} does not belong to a grade-{grade} form")]
    CellGrade { cell: Cell, grade: Grade },

    #[error("matrix is not Hermitian: |M[{row},{col}] - conj(M[{col},{row}])| = {deviation:e}")]
    NotHermitian { row: usize, col: usize, deviation: f64 },

    #[error("requested {count} eigenvalues of a {dim}x{dim} matrix")]
    EigenCount { count: usize, dim: usize },

    #[error("invalid serialized cochain: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
