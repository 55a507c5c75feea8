//! Product rules for the deformed codifferential, the remainder form `Φ` of
//! `−Δ_A(φ ∪ ψ)`, and the cutoff identity behind kernel triviality.
//!
//! Each closed-form expression here is evaluated pointwise from component
//! formulas and compared against the operator compositions in the parent
//! module, never derived from them.

use std::collections::BTreeSet;

use num_complex::Complex64;

use super::{deformed_codiff, magnetic_laplacian, schrodinger_apply, ElectricPotential, MagneticPotential, I};
use crate::calculus::{codifferential, cup, forward_difference, laplacian};
use crate::forms::{cutoff, inner_product, norm, Cochain, Window};
use crate::lattice::{Cell, Direction, Grade, LatticeIndex};
use crate::residual::Residual;

fn vertex_form(sites: impl IntoIterator<Item = LatticeIndex>, f: impl Fn(LatticeIndex) -> Complex64) -> Cochain {
    Cochain::collect(Grade::Zero, sites.into_iter().map(|i| (Cell::Vertex(i), f(i))))
}

/// Anchors of `form` together with their forward neighbours.
fn forward_closure(form: &Cochain) -> BTreeSet<LatticeIndex> {
    form.cells().flat_map(|c| [c.index(), c.index().tau_k(), c.index().tau_s()]).collect()
}

/// Anchors of the given forms together with their eight neighbours.
fn neighbourhood<'a>(forms: impl IntoIterator<Item = &'a Cochain>) -> BTreeSet<LatticeIndex> {
    forms
        .into_iter()
        .flat_map(|f| f.cells().map(Cell::index))
        .flat_map(|i| (-1..=1).flat_map(move |a| (-1..=1).map(move |b| LatticeIndex::new(i.k + a, i.s + b))))
        .collect()
}

fn edge(omega: &Cochain, dir: Direction, at: LatticeIndex) -> Complex64 {
    omega.get(Cell::Edge(dir, at))
}

fn vertex(phi: &Cochain, at: LatticeIndex) -> Complex64 {
    phi.get(Cell::Vertex(at))
}

/// Which displacement of `u`, `v` the difference sum of the right-hand product rule uses.
#[derive(Clone, Copy)]
enum RightRuleIndexing {
    /// `u_{σk,s} Δ_k φ_{k,s} + v_{k,σs} Δ_s φ_{k,s}`, as usually printed.
    Printed,
    /// `u_{k,s} Δ_k φ_{k,s} + v_{k,s} Δ_s φ_{k,s}`, which the cup rules actually give.
    Corrected,
}

fn right_rule_residual(omega: &Cochain, phi: &Cochain, a: &MagneticPotential, indexing: RightRuleIndexing) -> Residual {
    assert_eq!(omega.grade(), Grade::One);
    assert_eq!(phi.grade(), Grade::Zero);
    let lhs = deformed_codiff(&cup(omega, phi), a);
    let sites = forward_closure(omega);

    let leading = cup(&codifferential(omega), phi);
    let differences = vertex_form(sites.iter().copied(), |i| {
        let (iu, iv) = match indexing {
            RightRuleIndexing::Printed => (i.sigma_k(), i.sigma_s()),
            RightRuleIndexing::Corrected => (i, i),
        };
        edge(omega, Direction::K, iu) * forward_difference(phi, Direction::K, i)
            + edge(omega, Direction::S, iv) * forward_difference(phi, Direction::S, i)
    });
    let magnetic = vertex_form(sites.iter().copied(), |i| {
        let [a1, a2] = a.at(i);
        I * (edge(omega, Direction::K, i) * a1 * vertex(phi, i.tau_k())
            + edge(omega, Direction::S, i) * a2 * vertex(phi, i.tau_s()))
    });
    let rhs = &(&leading - &differences) - &magnetic;
    Residual::new(norm(&(&lhs - &rhs)), norm(&lhs) + norm(&leading) + norm(&differences) + norm(&magnetic))
}

fn left_rule_residual(omega: &Cochain, phi: &Cochain, a: &MagneticPotential) -> Residual {
    assert_eq!(omega.grade(), Grade::One);
    assert_eq!(phi.grade(), Grade::Zero);
    let lhs = deformed_codiff(&cup(phi, omega), a);
    let leading = cup(phi, &deformed_codiff(omega, a));
    let differences = vertex_form(forward_closure(omega), |i| {
        forward_difference(phi, Direction::K, i.sigma_k()) * edge(omega, Direction::K, i.sigma_k())
            + forward_difference(phi, Direction::S, i.sigma_s()) * edge(omega, Direction::S, i.sigma_s())
    });
    let rhs = &leading - &differences;
    Residual::new(norm(&(&lhs - &rhs)), norm(&lhs) + norm(&leading) + norm(&differences))
}

/// Residuals of the two product rules for `δ_A`, with their right-hand sides
/// written out componentwise:
///
/// * `δ_A(ω ∪ φ) = δω ∪ φ − Σ(u_{σk,s} Δ_kφ_{k,s} + v_{k,σs} Δ_sφ_{k,s}) x^{k,s}
///   − i Σ(A¹_{k,s} u_{k,s} φ_{τk,s} + A²_{k,s} v_{k,s} φ_{k,τs}) x^{k,s}`
/// * `δ_A(φ ∪ ω) = φ ∪ δ_Aω − Σ(Δ_kφ_{σk,s} u_{σk,s} + Δ_sφ_{k,σs} v_{k,σs}) x^{k,s}`
///
/// The second rule holds exactly. The first, in this printed form, does
/// not: the cup rule `e₁^{k,s} ∪ x^{τk,s} = e₁^{k,s}` puts `u_{k,s}` (not
/// `u_{σk,s}`) in front of `Δ_kφ_{k,s}`. See [`leibniz_right_corrected_residual`].
pub fn leibniz_residuals(omega: &Cochain, phi: &Cochain, a: &MagneticPotential) -> (Residual, Residual) {
    (right_rule_residual(omega, phi, a, RightRuleIndexing::Printed), left_rule_residual(omega, phi, a))
}

/// Residual of `δ_A(ω ∪ φ)` against the right-hand side with the difference
/// sum `Σ(u_{k,s} Δ_kφ_{k,s} + v_{k,s} Δ_sφ_{k,s})`.
pub fn leibniz_right_corrected_residual(omega: &Cochain, phi: &Cochain, a: &MagneticPotential) -> Residual {
    right_rule_residual(omega, phi, a, RightRuleIndexing::Corrected)
}

/// The remainder `Φ` in `−Δ_A(φ ∪ ψ) = φ ∪ (−Δ_A ψ) + (−Δφ) ∪ ψ + Φ`.
#[derive(Clone, Debug)]
pub struct PhiExpansion {
    /// `Φ` computed as the residual of the expansion; exact by construction.
    pub exact: Cochain,
    /// `Φ` from the printed closed form, see [`phi_printed`].
    pub printed: Cochain,
    /// `‖exact − printed‖`.
    pub printed_deviation: Residual,
}

/// Computes `Φ` by residual and compares it with the printed closed form.
pub fn phi_expansion(phi: &Cochain, psi: &Cochain, a: &MagneticPotential) -> PhiExpansion {
    assert_eq!(phi.grade(), Grade::Zero);
    assert_eq!(psi.grade(), Grade::Zero);
    let product = magnetic_laplacian(&cup(phi, psi), a);
    let kept = cup(phi, &magnetic_laplacian(psi, a));
    let plain = cup(&laplacian(phi), psi);
    let exact = &(&product - &kept) - &plain;
    let printed = phi_printed(phi, psi, a);
    let printed_deviation = Residual::between(&exact, &printed).with_terms([norm(&product), norm(&kept), norm(&plain)]);
    PhiExpansion { exact, printed, printed_deviation }
}

/// The closed form of `Φ` as printed:
///
/// ```text
/// Φ_{k,s} = (Δ_kφ_{σk,s})(ψ_{τk,s} − ψ_{σk,s} + iψ_{σk,s}A¹_{σk,s}) + i(Δ_kφ_{k,s})ψ_{σk,s}A¹_{k,s}
///         + (Δ_sφ_{k,σs})(ψ_{k,τs} − ψ_{k,σs} + iψ_{k,σs}A²_{k,σs}) + i(Δ_kφ_{k,s})ψ_{k,σs}A²_{k,s}
/// ```
///
/// It does not agree with the exact remainder, even for `A = 0`.
pub fn phi_printed(phi: &Cochain, psi: &Cochain, a: &MagneticPotential) -> Cochain {
    let dk = |i| forward_difference(phi, Direction::K, i);
    let ds = |i| forward_difference(phi, Direction::S, i);
    let p = |i| vertex(psi, i);
    vertex_form(neighbourhood([phi, psi]), |i| {
        let (ik, is) = (i.sigma_k(), i.sigma_s());
        let [a1, _] = a.at(i);
        let [a1_back, _] = a.at(ik);
        let [_, a2_back] = a.at(is);
        let [_, a2] = a.at(i);
        dk(ik) * (p(i.tau_k()) - p(ik) + I * p(ik) * a1_back)
            + I * dk(i) * p(ik) * a1
            + ds(is) * (p(i.tau_s()) - p(is) + I * p(is) * a2_back)
            + I * dk(i) * p(is) * a2
    })
}

/// A closed form of `Φ` obtained by applying the two product rules (with the
/// corrected indexing of the first) to `ω = dφ` and `ω = d_Aψ`:
///
/// ```text
/// Φ_{k,s} = −Δ_kφ_{k,s} (Δ_kψ_{k,s} + iA¹_{k,s} ψ_{τk,s}) − Δ_kφ_{σk,s} (Δ_kψ_{σk,s} + iψ_{σk,s}A¹_{σk,s})
///           −Δ_sφ_{k,s} (Δ_sψ_{k,s} + iA²_{k,s} ψ_{k,τs}) − Δ_sφ_{k,σs} (Δ_sψ_{k,σs} + iψ_{k,σs}A²_{k,σs})
/// ```
///
/// Every term carries a difference of `φ`, so `Φ` vanishes wherever `φ` is
/// locally constant.
pub fn phi_closed_form(phi: &Cochain, psi: &Cochain, a: &MagneticPotential) -> Cochain {
    vertex_form(neighbourhood([phi, psi]), |i| {
        Direction::BOTH
            .into_iter()
            .map(|dir| {
                let back = i.step_back(dir);
                let here_term = forward_difference(phi, dir, i)
                    * (forward_difference(psi, dir, i) + I * a.component(dir, i) * vertex(psi, i.step(dir)));
                let back_term = forward_difference(phi, dir, back)
                    * (forward_difference(psi, dir, back) + I * vertex(psi, back) * a.component(dir, back));
                -here_term - back_term
            })
            .sum()
    })
}

/// `|(H(χ ∪ ψ), χ ∪ ψ)_N − (χ ∪ Hψ, χ ∪ ψ)_N|` with `χ = χ^{N+1}` and both
/// products summed over `Ω_N`.
///
/// The identity holds because `χ^{N+1}` is constant on `Ω_N` and one step
/// beyond, so every correction term of `H(χ ∪ ψ) − χ ∪ Hψ` vanishes on `Ω_N`.
pub fn lemma_identity_residual(psi: &Cochain, a: &MagneticPotential, v: &ElectricPotential, n: u64) -> Residual {
    let window = Window::Box(n);
    let chi = cutoff(n + 1);
    let cut = cup(&chi, psi);
    let h_cut = schrodinger_apply(&cut, a, v);
    let cut_h = cup(&chi, &schrodinger_apply(psi, a, v));
    let lhs = inner_product(&h_cut, &cut, window).expect("0-forms");
    let rhs = inner_product(&cut_h, &cut, window).expect("0-forms");
    let in_window = |f: &Cochain| norm(&f.restrict(|i| window.contains(i)));
    let cut_norm = in_window(&cut);
    Residual::new((lhs - rhs).norm(), (in_window(&h_cut) + in_window(&cut_h)) * cut_norm)
}
