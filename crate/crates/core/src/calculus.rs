//! The non-magnetic discrete calculus: coboundary, cup product, Hodge star,
//! codifferential and Laplacian on the lattice complex.
//!
//! All operators act on finitely supported forms and return finitely
//! supported forms; the lattice spacing is one.

use num_complex::Complex64;

use crate::forms::Cochain;
use crate::lattice::{Cell, Direction, Grade, LatticeIndex};
use crate::sparse::Scalar;

/// `Δ_k φ_{k,s} = φ_{τk,s} − φ_{k,s}` (or `Δ_s` for [`Direction::S`]) of a 0-form.
pub fn forward_difference(phi: &Cochain, dir: Direction, at: LatticeIndex) -> Complex64 {
    phi.get(Cell::Vertex(at.step(dir))) - phi.get(Cell::Vertex(at))
}

/// Cells whose coboundary picks up `cell`, with sign: `dε^c = Σ ± ε^b`.
fn cell_coboundary(cell: Cell) -> Vec<(Cell, f64)> {
    match cell {
        // <e¹_{k,s}, dφ> = φ_{τk,s} − φ_{k,s}: x^{k,s} appears in e₁^{k,s} (−) and e₁^{σk,s} (+).
        Cell::Vertex(i) => vec![
            (Cell::Edge(Direction::K, i), -1.0),
            (Cell::Edge(Direction::K, i.sigma_k()), 1.0),
            (Cell::Edge(Direction::S, i), -1.0),
            (Cell::Edge(Direction::S, i.sigma_s()), 1.0),
        ],
        // <Ω_{k,s}, dω> = v_{τk,s} − v_{k,s} − u_{k,τs} + u_{k,s}.
        Cell::Edge(Direction::K, i) => vec![(Cell::Face(i), 1.0), (Cell::Face(i.sigma_s()), -1.0)],
        Cell::Edge(Direction::S, i) => vec![(Cell::Face(i.sigma_k()), 1.0), (Cell::Face(i), -1.0)],
        Cell::Face(_) => Vec::new(),
    }
}

/// The coboundary `d^c: K^p → K^{p+1}`.
///
/// On 2-forms there is no higher grade; the zero 2-form is returned.
pub fn d(alpha: &Cochain) -> Cochain {
    let grade = alpha.grade().up().unwrap_or(Grade::Two);
    Cochain::collect(
        grade,
        alpha.iter().flat_map(|(cell, v)| cell_coboundary(cell).into_iter().map(move |(b, sign)| (b, v * sign))),
    )
}

/// Cup product of two basis cochains, `None` where the product vanishes.
pub fn cup_basis(left: Cell, right: Cell) -> Option<(Cell, f64)> {
    use Cell::*;
    match (left, right) {
        (Vertex(i), Vertex(j)) if i == j => Some((Vertex(i), 1.0)),
        (Vertex(i), Edge(d, j)) if i == j => Some((Edge(d, i), 1.0)),
        (Edge(d, i), Vertex(j)) if j == i.step(d) => Some((Edge(d, i), 1.0)),
        (Vertex(i), Face(j)) if i == j => Some((Face(i), 1.0)),
        (Face(i), Vertex(j)) if j == i.tau_k().tau_s() => Some((Face(i), 1.0)),
        (Edge(Direction::K, i), Edge(Direction::S, j)) if j == i.tau_k() => Some((Face(i), 1.0)),
        (Edge(Direction::S, i), Edge(Direction::K, j)) if j == i.tau_s() => Some((Face(i), -1.0)),
        _ => None,
    }
}

/// The cup product `α ∪ β`, bilinear in both arguments.
///
/// Returns the zero form of grade 2 when `p + q > 2`.
pub fn cup(alpha: &Cochain, beta: &Cochain) -> Cochain {
    let Some(grade) = alpha.grade().sum(beta.grade()) else {
        return Cochain::zero(Grade::Two);
    };
    let right_grade = beta.grade();
    let terms = alpha.iter().flat_map(|(left, a)| {
        let i = left.index();
        // Every non-vanishing right factor is anchored at i, τk i, τs i or τkτs i.
        [i, i.tau_k(), i.tau_s(), i.tau_k().tau_s()]
            .into_iter()
            .flat_map(move |anchor| Cell::at(right_grade, anchor))
            .filter_map(move |right| {
                let b = beta.get(right);
                if b.is_zero() {
                    return None;
                }
                cup_basis(left, right).map(|(cell, sign)| (cell, a * b * sign))
            })
    });
    Cochain::collect(grade, terms)
}

fn star_cell(cell: Cell) -> (Cell, f64) {
    match cell {
        Cell::Vertex(i) => (Cell::Face(i), 1.0),
        Cell::Edge(Direction::K, i) => (Cell::Edge(Direction::S, i.tau_k()), 1.0),
        Cell::Edge(Direction::S, i) => (Cell::Edge(Direction::K, i.tau_s()), -1.0),
        Cell::Face(i) => (Cell::Vertex(i.tau_k().tau_s()), 1.0),
    }
}

fn star_inv_cell(cell: Cell) -> (Cell, f64) {
    match cell {
        Cell::Face(i) => (Cell::Vertex(i), 1.0),
        Cell::Vertex(i) => (Cell::Face(i.sigma_k().sigma_s()), 1.0),
        Cell::Edge(Direction::S, i) => (Cell::Edge(Direction::K, i.sigma_k()), 1.0),
        Cell::Edge(Direction::K, i) => (Cell::Edge(Direction::S, i.sigma_s()), -1.0),
    }
}

fn map_cells(alpha: &Cochain, f: fn(Cell) -> (Cell, f64)) -> Cochain {
    Cochain::collect(
        alpha.grade().dual(),
        alpha.iter().map(|(cell, v)| {
            let (image, sign) = f(cell);
            (image, v * sign)
        }),
    )
}

/// The Hodge star `∗: K^p → K^{2−p}`, characterised by `ε ∪ ∗ε = Ω^{k,s}`.
pub fn star(alpha: &Cochain) -> Cochain {
    map_cells(alpha, star_cell)
}

/// Inverse of [`star`].
pub fn star_inv(alpha: &Cochain) -> Cochain {
    map_cells(alpha, star_inv_cell)
}

/// The codifferential `δ^c: K^{p+1} → K^p`, computed as `(−1)^{p+1} ∗⁻¹ d^c ∗`.
///
/// `δ^c` vanishes on 0-forms; the zero 0-form is returned.
pub fn codifferential(beta: &Cochain) -> Cochain {
    match beta.grade() {
        Grade::Zero => Cochain::zero(Grade::Zero),
        Grade::One => -star_inv(&d(&star(beta))),
        Grade::Two => star_inv(&d(&star(beta))),
    }
}

/// Closed-form codifferential of a 1-form,
/// `(δ^c ω)_{k,s} = −Δ_k u_{σk,s} − Δ_s v_{k,σs}`.
///
/// Evaluated pointwise on every vertex the formula can reach; used as an
/// independent check on [`codifferential`].
///
/// # Panics
///
/// If `omega` is not a 1-form.
pub fn codifferential_explicit(omega: &Cochain) -> Cochain {
    assert_eq!(omega.grade(), Grade::One, "explicit codifferential is defined on 1-forms");
    let u = |i: LatticeIndex| omega.get(Cell::Edge(Direction::K, i));
    let v = |i: LatticeIndex| omega.get(Cell::Edge(Direction::S, i));
    let mut anchors: Vec<LatticeIndex> = omega
        .cells()
        .flat_map(|cell| {
            let i = cell.index();
            let dir = cell.direction().expect("1-form cells are edges");
            [i, i.step(dir)]
        })
        .collect();
    anchors.sort_unstable();
    anchors.dedup();
    Cochain::collect(
        Grade::Zero,
        anchors.into_iter().map(|i| {
            let du = u(i) - u(i.sigma_k());
            let dv = v(i) - v(i.sigma_s());
            (Cell::Vertex(i), -du - dv)
        }),
    )
}

/// The nonnegative Laplacian `−Δ^c = δ^c d^c + d^c δ^c`.
///
/// On 0-forms this is `δ^c d^c`, the five-point stencil
/// `4φ_{k,s} − φ_{k±1,s} − φ_{k,s±1}`.
pub fn laplacian(alpha: &Cochain) -> Cochain {
    let dd = match alpha.grade() {
        Grade::Two => Cochain::zero(Grade::Two),
        _ => codifferential(&d(alpha)),
    };
    let dd_adj = match alpha.grade() {
        Grade::Zero => Cochain::zero(Grade::Zero),
        _ => d(&codifferential(alpha)),
    };
    &dd + &dd_adj
}
