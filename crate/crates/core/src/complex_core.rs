//! Chains of the two-dimensional complex, the boundary operator and the
//! chain–cochain pairing.
//!
//! The coboundary in [`crate::calculus`] is defined as the dual of
//! [`boundary`] under [`pair`]; the duality check `⟨∂a, α⟩ = ⟨a, dα⟩` is the
//! brute-force oracle for it.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forms::Cochain;
use crate::lattice::{Cell, Direction, Grade};
use crate::sparse::SparseForm;

/// A real, finitely supported chain.
pub type Chain = SparseForm<f64>;

/// Boundary of a single basis cell as `(cell, ±1)` terms.
fn cell_boundary(cell: Cell) -> Vec<(Cell, f64)> {
    match cell {
        Cell::Vertex(_) => Vec::new(),
        Cell::Edge(dir, i) => vec![(Cell::Vertex(i.step(dir)), 1.0), (Cell::Vertex(i), -1.0)],
        Cell::Face(i) => vec![
            (Cell::Edge(Direction::K, i), 1.0),
            (Cell::Edge(Direction::S, i.tau_k()), 1.0),
            (Cell::Edge(Direction::K, i.tau_s()), -1.0),
            (Cell::Edge(Direction::S, i), -1.0),
        ],
    }
}

/// The boundary `∂a`, extended linearly from the basis cells.
///
/// A 0-chain has zero boundary; the result is then the zero 0-chain.
pub fn boundary(a: &Chain) -> Chain {
    let grade = a.grade().down().unwrap_or(Grade::Zero);
    Chain::collect(
        grade,
        a.iter().flat_map(|(cell, c)| cell_boundary(cell).into_iter().map(move |(b, sign)| (b, sign * c))),
    )
}

/// The bilinear pairing `⟨a, α⟩ = Σ a_ε α_ε` over matching basis cells.
pub fn pair(a: &Chain, alpha: &Cochain) -> Result<Complex64> {
    if a.grade() != alpha.grade() {
        return Err(Error::GradeMismatch { left: a.grade(), right: alpha.grade() });
    }
    Ok(a.iter().map(|(cell, c)| alpha.get(cell) * c).sum())
}
