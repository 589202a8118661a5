//! Exact linear algebra over the integers and over prime fields.
//!
//! Everything here is a pure function of its inputs. Empty matrices (zero
//! rows or zero columns) are accepted by every operation.

mod hermite;
mod matrix;
mod modp;
mod smith;

pub use hermite::{express_in_basis, hermite_row_basis, lattice_contains, rank_rational};
pub use matrix::{IntMatrix, MatrixDoc};
pub use modp::rank_mod_p;
pub use smith::{elementary_divisors, smith_normal_form, SmithForm};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
    #[error("a {rows}x{cols} matrix needs {} entries, got {len}", rows.saturating_mul(*cols))]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("row {row} has {len} entries, expected {cols}")]
    RaggedRow { row: usize, len: usize, cols: usize },
    #[error("matrix declares {declared} rows but lists {found}")]
    RowCount { declared: usize, found: usize },
    #[error("incompatible shapes {left:?} and {right:?}")]
    Mismatch { left: (usize, usize), right: (usize, usize) },
    #[error("determinant of a non-square {rows}x{cols} matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("malformed matrix JSON: {0}")]
    Json(String),
}
