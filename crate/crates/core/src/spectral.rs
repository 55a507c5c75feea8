//! Dirichlet truncations of `H_{A,V}` to the box `Ω_N` and their low spectrum.
//!
//! The truncation keeps the basis 0-forms `x^{k,s}` with `|k|, |s| ≤ N` and
//! treats every value outside the box as zero. Since `H` maps finitely
//! supported forms to finitely supported forms, this is a principal
//! submatrix of the infinite matrix of `H`: Hermitian, and its smallest
//! eigenvalue can only decrease as `N` grows.
//!
//! Sites are ordered row-major, `index(k, s) = (k + N)(2N + 1) + (s + N)`.

use std::fmt::Write as _;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::Cochain;
use crate::lattice::{Cell, Direction, Grade, LatticeIndex};
use crate::magnetic::{ElectricPotential, MagneticPotential};

/// Largest per-entry deviation from Hermitian symmetry accepted by the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A dense Hermitian matrix acting on 0-forms supported in `Ω_N`.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    n: u64,
    matrix: DMatrix<Complex64>,
}

impl HermitianOperator {
    /// Wraps an arbitrary square matrix of side `(2N+1)²`. Hermiticity is
    /// checked when eigenvalues are requested, not here.
    ///
    /// # Panics
    ///
    /// If the matrix has the wrong shape.
    pub fn from_matrix(n: u64, matrix: DMatrix<Complex64>) -> Self {
        let dim = Self::dim_for(n);
        assert_eq!(matrix.shape(), (dim, dim), "matrix shape does not match window N = {n}");
        Self { n, matrix }
    }

    fn dim_for(n: u64) -> usize {
        let side = 2 * n as usize + 1;
        side * side
    }

    /// The window half-width `N`.
    pub fn window(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Row-major position of `index`, or `None` outside the window.
    pub fn position(&self, index: LatticeIndex) -> Option<usize> {
        position(self.n, index)
    }

    pub fn site(&self, position: usize) -> LatticeIndex {
        site(self.n, position)
    }

    pub fn apply(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * x
    }

    /// Largest `|M_ij − conj(M_ji)|`, with its location.
    pub fn hermitian_defect(&self) -> (f64, usize, usize) {
        let dim = self.dim();
        let mut worst = (0.0, 0, 0);
        for i in 0..dim {
            for j in i..dim {
                let dev = (self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm();
                if dev > worst.0 {
                    worst = (dev, i, j);
                }
            }
        }
        worst
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let (deviation, row, col) = self.hermitian_defect();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { row, col, deviation });
        }
        Ok(())
    }

    /// `self + c·Id`.
    pub fn shifted(&self, c: f64) -> Self {
        let mut matrix = self.matrix.clone();
        for i in 0..self.dim() {
            matrix[(i, i)] += c;
        }
        Self { n: self.n, matrix }
    }

    /// Coordinate dump: a `% hermitian dim=<d> N=<N>` header, then one
    /// `row col re im` line per non-zero entry in row-major order.
    pub fn to_dump(&self) -> String {
        let dim = self.dim();
        let mut out = format!("% hermitian dim={dim} N={}\n", self.n);
        for i in 0..dim {
            for j in 0..dim {
                let z = self.matrix[(i, j)];
                if z != Complex64::new(0.0, 0.0) {
                    // `+ 0.0` folds −0.0 into 0.0
                    writeln!(out, "{i} {j} {:?} {:?}", z.re + 0.0, z.im + 0.0).expect("writing to a String");
                }
            }
        }
        out
    }
}

fn position(n: u64, index: LatticeIndex) -> Option<usize> {
    if index.radius() > n {
        return None;
    }
    let n = n as i64;
    let side = 2 * n + 1;
    Some(((index.k + n) * side + (index.s + n)) as usize)
}

fn site(n: u64, position: usize) -> LatticeIndex {
    let n = n as i64;
    let side = 2 * n + 1;
    let p = position as i64;
    LatticeIndex::new(p / side - n, p % side - n)
}

/// Coordinates of `phi` on `Ω_N`, dropping everything outside.
pub fn restrict(phi: &Cochain, n: u64) -> DVector<Complex64> {
    assert_eq!(phi.grade(), Grade::Zero);
    let mut out = DVector::zeros(HermitianOperator::dim_for(n));
    for (cell, value) in phi.iter() {
        if let Some(p) = position(n, cell.index()) {
            out[p] = value;
        }
    }
    out
}

/// The 0-form with coordinates `x` on `Ω_N` and zero elsewhere.
pub fn extend(x: &DVector<Complex64>, n: u64) -> Cochain {
    assert_eq!(x.len(), HermitianOperator::dim_for(n));
    Cochain::collect(Grade::Zero, x.iter().enumerate().map(|(p, v)| (Cell::Vertex(site(n, p)), *v)))
}

/// Matrix of `H_{A,V}` on `Ω_N` under the zero-extension convention.
///
/// Entries come from expanding `δ_A d_A` by hand:
///
/// * diagonal: `4 + (A¹_{k,s})² + (A²_{k,s})² + V_{k,s}`
/// * `(k,s) → (k+1,s)`: `−(1 + iA¹_{k,s})`, and `(k,s) → (k−1,s)`: `−(1 − iA¹_{k−1,s})`
/// * likewise along `s` with `A²`.
pub fn assemble(a: &MagneticPotential, v: &ElectricPotential, n: u64) -> HermitianOperator {
    let dim = HermitianOperator::dim_for(n);
    let mut matrix = DMatrix::zeros(dim, dim);
    for row in 0..dim {
        let i = site(n, row);
        let [a1, a2] = a.at(i);
        matrix[(row, row)] = Complex64::new(4.0 + a1 * a1 + a2 * a2 + v.at(i), 0.0);
        for dir in Direction::BOTH {
            if let Some(col) = position(n, i.step(dir)) {
                matrix[(row, col)] = -Complex64::new(1.0, a.component(dir, i));
            }
            let back = i.step_back(dir);
            if let Some(col) = position(n, back) {
                matrix[(row, col)] = -Complex64::new(1.0, -a.component(dir, back));
            }
        }
    }
    HermitianOperator { n, matrix }
}

/// The `count` smallest eigenvalues of `m`, ascending.
pub fn lowest_eigenvalues(m: &HermitianOperator, count: usize) -> Result<Vec<f64>> {
    if count == 0 || count > m.dim() {
        return Err(Error::EigenCount { count, dim: m.dim() });
    }
    m.check_hermitian()?;
    let mut values: Vec<f64> = m.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values.truncate(count);
    Ok(values)
}

fn lambda_min(a: &MagneticPotential, v: &ElectricPotential, n: u64) -> f64 {
    lowest_eigenvalues(&assemble(a, v, n), 1).expect("assembled operators are Hermitian")[0]
}

/// `min_{1 ≤ N ≤ N_max} λ_min(H on Ω_N)`.
///
/// Every truncation value is a Rayleigh quotient of `H` on a compactly
/// supported form, so this is an upper bound on the best constant `c` with
/// `(Hφ, φ) ≥ c‖φ‖²`, and it cannot increase with `N_max`.
pub fn semibound_estimate(a: &MagneticPotential, v: &ElectricPotential, n_max: u64) -> f64 {
    assert!(n_max >= 1, "N_max must be at least 1");
    smallest_by_scale(a, v, n_max).into_iter().map(|(_, l)| l).fold(f64::INFINITY, f64::min)
}

/// `(N, λ_min)` for `N = 1..=N_max`, computed in parallel and returned in order.
pub fn smallest_by_scale(a: &MagneticPotential, v: &ElectricPotential, n_max: u64) -> Vec<(u64, f64)> {
    (1..=n_max).into_par_iter().map(|n| (n, lambda_min(a, v, n))).collect()
}

/// One row of a [`KernelReport`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelScale {
    pub n: u64,
    pub lambda_min: f64,
    /// `λ_min < 1 − margin`: the normalisation `(Hφ, φ) ≥ ‖φ‖²` fails at this scale.
    pub flagged: bool,
}

/// Outcome of [`kernel_triviality`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KernelReport {
    pub margin: f64,
    pub scales: Vec<KernelScale>,
    /// No scale was flagged: every truncation has `λ_min ≥ 1 − margin`, hence trivial kernel.
    pub trivial: bool,
}

/// Checks the strict positivity `λ_min ≥ 1 − margin` at every `N ≤ N_max`.
///
/// Potentials are expected to be normalised so that `(Hφ, φ) ≥ ‖φ‖²`; a
/// scale where this fails is reported, not treated as an error.
pub fn kernel_triviality(a: &MagneticPotential, v: &ElectricPotential, n_max: u64, margin: f64) -> KernelReport {
    let scales: Vec<KernelScale> = (0..=n_max)
        .into_par_iter()
        .map(|n| {
            let lambda_min = lambda_min(a, v, n);
            KernelScale { n, lambda_min, flagged: lambda_min < 1.0 - margin }
        })
        .collect();
    let trivial = scales.iter().all(|s| !s.flagged);
    KernelReport { margin, scales, trivial }
}

/// `4 sin²(pπ / 2(m+1)) + 4 sin²(qπ / 2(m+1))` for `p, q = 1..=m`, ascending:
/// the spectrum of the five-point Dirichlet Laplacian on an `m × m` box.
pub fn dirichlet_spectrum(m: usize) -> Vec<f64> {
    let one_d: Vec<f64> = (1..=m)
        .map(|p| {
            let x = (p as f64 * std::f64::consts::PI / (2.0 * (m as f64 + 1.0))).sin();
            4.0 * x * x
        })
        .collect();
    let mut all: Vec<f64> = one_d.iter().flat_map(|a| one_d.iter().map(move |b| a + b)).collect();
    all.sort_by(f64::total_cmp);
    all
}
