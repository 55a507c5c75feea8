//! The magnetic deformation of the calculus and the discrete Schrödinger operator
//! `H = −Δ_A + V`.
//!
//! The potential enters additively: `d_A φ = dφ + i φ ∪ A`. This is not a
//! Peierls phase `e^{iA}`; the two models agree only to first order in `A`.

mod identities;
mod potential;

pub use identities::{
    leibniz_residuals, leibniz_right_corrected_residual, lemma_identity_residual, phi_closed_form, phi_expansion,
    phi_printed, PhiExpansion,
};
pub use potential::{ElectricPotential, ElectricPreset, GaugePreset, MagneticPotential};

use num_complex::Complex64;

use crate::calculus::{codifferential, cup, d, laplacian};
use crate::forms::Cochain;
use crate::lattice::{Cell, Direction, Grade, LatticeIndex};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn anchors(form: &Cochain) -> Vec<LatticeIndex> {
    let mut sites: Vec<_> = form.cells().map(Cell::index).collect();
    sites.dedup();
    sites
}

/// `Aφ = φ ∪ A`: components `(φ_{k,s} A¹_{k,s}, φ_{k,s} A²_{k,s})`.
pub fn mult_a(phi: &Cochain, a: &MagneticPotential) -> Cochain {
    assert_eq!(phi.grade(), Grade::Zero);
    cup(phi, &a.materialize(anchors(phi)))
}

/// The formal adjoint `A*ω = Σ (A¹_{k,s} u_{k,s} + A²_{k,s} v_{k,s}) x^{k,s}`.
pub fn adjoint_a(omega: &Cochain, a: &MagneticPotential) -> Cochain {
    assert_eq!(omega.grade(), Grade::One);
    Cochain::collect(
        Grade::Zero,
        omega.iter().map(|(cell, w)| {
            let dir = cell.direction().expect("1-form cells are edges");
            (Cell::Vertex(cell.index()), w * a.component(dir, cell.index()))
        }),
    )
}

/// The deformed differential `d_A φ = dφ + i φ ∪ A`.
pub fn deformed_d(phi: &Cochain, a: &MagneticPotential) -> Cochain {
    &d(phi) + &mult_a(phi, a).scale(I)
}

/// `δ_A ω = δω − i A*ω`, the formal adjoint of [`deformed_d`].
pub fn deformed_codiff(omega: &Cochain, a: &MagneticPotential) -> Cochain {
    &codifferential(omega) - &adjoint_a(omega, a).scale(I)
}

/// The nonnegative magnetic Laplacian `−Δ_A φ = δ_A d_A φ`.
pub fn magnetic_laplacian(phi: &Cochain, a: &MagneticPotential) -> Cochain {
    deformed_codiff(&deformed_d(phi, a), a)
}

/// The four terms `−Δφ`, `−i A* dφ`, `i δ(Aφ)`, `A*Aφ` whose sum is `−Δ_A φ`.
pub fn magnetic_laplacian_terms(phi: &Cochain, a: &MagneticPotential) -> [Cochain; 4] {
    let a_phi = mult_a(phi, a);
    [laplacian(phi), adjoint_a(&d(phi), a).scale(-I), codifferential(&a_phi).scale(I), adjoint_a(&a_phi, a)]
}

/// `−Δ_A φ` assembled from [`magnetic_laplacian_terms`].
pub fn magnetic_laplacian_expanded(phi: &Cochain, a: &MagneticPotential) -> Cochain {
    magnetic_laplacian_terms(phi, a).iter().fold(Cochain::zero(Grade::Zero), |acc, t| &acc + t)
}

/// `V ∪ φ`, pointwise multiplication by the electric potential.
pub fn mult_v(phi: &Cochain, v: &ElectricPotential) -> Cochain {
    cup(&v.materialize(anchors(phi)), phi)
}

/// `H_{A,V} φ = −Δ_A φ + V ∪ φ`.
pub fn schrodinger_apply(phi: &Cochain, a: &MagneticPotential, v: &ElectricPotential) -> Cochain {
    &magnetic_laplacian(phi, a) + &mult_v(phi, v)
}

/// The `(k,s)` component of `d_A φ` along `dir`: `Δφ_{k,s} + i φ_{k,s} A^{dir}_{k,s}`.
pub fn deformed_difference(phi: &Cochain, a: &MagneticPotential, dir: Direction, at: LatticeIndex) -> Complex64 {
    let here = phi.get(Cell::Vertex(at));
    phi.get(Cell::Vertex(at.step(dir))) - here + I * here * a.component(dir, at)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{cutoff, inner_product, norm, Window};
    use crate::sample::SampleRng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_potential_reduces_to_plain_calculus() {
        let mut rng = SampleRng::new(5);
        let phi = rng.cochain(Grade::Zero, 4, 12);
        let a = MagneticPotential::zero();
        assert_eq!(deformed_d(&phi, &a), d(&phi));
        let omega = rng.cochain(Grade::One, 4, 12);
        assert_eq!(deformed_codiff(&omega, &a), codifferential(&omega));
        assert_eq!(magnetic_laplacian(&phi, &a), laplacian(&phi));
        assert_eq!(schrodinger_apply(&phi, &a, &ElectricPotential::zero()), laplacian(&phi));
    }

    #[test]
    fn deformed_d_of_delta() {
        let a = MagneticPotential::from_sites([(LatticeIndex::ORIGIN, [0.75, 0.0])]);
        let out = deformed_d(&Cochain::basis(Cell::vertex(0, 0)), &a);
        assert_eq!(out.get(Cell::edge(Direction::K, 0, 0)), c(-1.0, 0.75));
        assert_eq!(out.get(Cell::edge(Direction::K, -1, 0)), c(1.0, 0.0));
        assert_eq!(out.get(Cell::edge(Direction::S, 0, 0)), c(-1.0, 0.0));
    }

    #[test]
    fn deformed_d_of_constant_is_i_a_in_interior() {
        let a = MagneticPotential::random(2, 1.0);
        let out = deformed_d(&cutoff(3), &a);
        for k in -2..=2 {
            for s in -2..=2 {
                let i = LatticeIndex::new(k, s);
                let [a1, a2] = a.at(i);
                assert_eq!(out.get(Cell::Edge(Direction::K, i)), c(0.0, a1));
                assert_eq!(out.get(Cell::Edge(Direction::S, i)), c(0.0, a2));
            }
        }
    }

    #[test]
    fn mult_a_on_delta_and_on_unit_box() {
        let a = MagneticPotential::constant(0.5, -2.0);
        let out = mult_a(&Cochain::basis(Cell::vertex(0, 0)), &a);
        let expected = Cochain::from_terms(
            Grade::One,
            [(Cell::edge(Direction::K, 0, 0), c(0.5, 0.0)), (Cell::edge(Direction::S, 0, 0), c(-2.0, 0.0))],
        )
        .unwrap();
        assert_eq!(out, expected);

        let boxed = mult_a(&cutoff(2), &a);
        assert_eq!(boxed, a.materialize(cutoff(2).cells().map(Cell::index)));
    }

    #[test]
    fn adjoint_a_examples() {
        let a = MagneticPotential::from_sites([(LatticeIndex::ORIGIN, [1.0, 0.0])]);
        let e1 = Cochain::basis(Cell::edge(Direction::K, 0, 0));
        assert_eq!(adjoint_a(&e1, &a), Cochain::basis(Cell::vertex(0, 0)));
        let e2 = Cochain::basis(Cell::edge(Direction::S, 0, 0));
        assert!(adjoint_a(&e2, &a).is_zero());
    }

    #[test]
    fn deformed_codiff_of_delta_edge() {
        let a = MagneticPotential::from_sites([(LatticeIndex::ORIGIN, [0.5, 0.0])]);
        let out = deformed_codiff(&Cochain::basis(Cell::edge(Direction::K, 0, 0)), &a);
        let expected =
            Cochain::from_terms(Grade::Zero, [(Cell::vertex(1, 0), c(1.0, 0.0)), (Cell::vertex(0, 0), c(-1.0, -0.5))])
                .unwrap();
        assert_eq!(out, expected);
    }

    #[test]
    fn constant_potential_shifts_diagonal() {
        let v = ElectricPotential::constant(2.5);
        let phi = Cochain::basis(Cell::vertex(0, 0));
        let out = schrodinger_apply(&phi, &MagneticPotential::zero(), &v);
        assert_eq!(out.get(Cell::vertex(0, 0)), c(6.5, 0.0));
        assert_eq!(out.get(Cell::vertex(1, 0)), c(-1.0, 0.0));
        assert_eq!(out.len(), 5);
    }

    #[test]
    fn quadratic_form_is_norm_of_deformed_d() {
        let mut rng = SampleRng::new(17);
        let a = MagneticPotential::random(3, 1.5);
        let phi = rng.cochain(Grade::Zero, 5, 30);
        let q = inner_product(&magnetic_laplacian(&phi, &a), &phi, Window::Unbounded).unwrap();
        let n = norm(&deformed_d(&phi, &a)).powi(2);
        assert!((q.re - n).abs() <= 1e-12 * n);
        assert!(q.im.abs() <= 1e-12 * n);
    }

    #[test]
    fn deformed_difference_matches_deformed_d() {
        let mut rng = SampleRng::new(23);
        let a = MagneticPotential::random(8, 1.0);
        let phi = rng.cochain(Grade::Zero, 3, 10);
        let out = deformed_d(&phi, &a);
        for (cell, value) in out.iter() {
            let dir = cell.direction().unwrap();
            assert_eq!(deformed_difference(&phi, &a, dir, cell.index()), value);
        }
    }
}
