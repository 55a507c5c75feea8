//! Finitely supported linear combinations of basis cells.
//!
//! [`SparseForm`] is shared by real chains and complex cochains. Entries are
//! kept in canonical form: no stored coefficient is zero, so two forms are
//! equal exactly when their coefficient maps are equal.

use std::collections::btree_map::{self, BTreeMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{Cell, Grade, LatticeIndex};

/// Coefficient ring of a [`SparseForm`].
pub trait Scalar:
    Copy
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + Send
    + Sync
    + std::fmt::Debug
{
    const ZERO: Self;
    const ONE: Self;

    fn is_zero(&self) -> bool {
        *self == Self::ZERO
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);
}

/// A finitely supported form of a fixed grade.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseForm<T> {
    grade: Grade,
    entries: BTreeMap<Cell, T>,
}

impl<T: Scalar> SparseForm<T> {
    /// The zero form of `grade`.
    pub fn zero(grade: Grade) -> Self {
        Self { grade, entries: BTreeMap::new() }
    }

    /// A single basis element with unit coefficient.
    pub fn basis(cell: Cell) -> Self {
        Self::term(cell, T::ONE)
    }

    pub fn term(cell: Cell, value: T) -> Self {
        let mut form = Self::zero(cell.grade());
        form.accumulate(cell, value);
        form.prune();
        form
    }

    /// Builds a form from `(cell, coefficient)` pairs. Repeated cells are summed.
    pub fn from_terms(grade: Grade, terms: impl IntoIterator<Item = (Cell, T)>) -> Result<Self> {
        let mut form = Self::zero(grade);
        for (cell, value) in terms {
            if cell.grade() != grade {
                return Err(Error::CellGrade { cell, grade });
            }
            form.accumulate(cell, value);
        }
        form.prune();
        Ok(form)
    }

    /// Like [`SparseForm::from_terms`] for callers that construct cells of the right grade.
    pub(crate) fn collect(grade: Grade, terms: impl IntoIterator<Item = (Cell, T)>) -> Self {
        let mut form = Self::zero(grade);
        for (cell, value) in terms {
            form.accumulate(cell, value);
        }
        form.prune();
        form
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    /// Number of stored (non-zero) coefficients.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Same as [`is_zero`](Self::is_zero): canonical forms store no zeros.
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Coefficient at `cell`; zero off the support.
    pub fn get(&self, cell: Cell) -> T {
        self.entries.get(&cell).copied().unwrap_or(T::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, T)> + '_ {
        self.entries.iter().map(|(c, v)| (*c, *v))
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.entries.keys().copied()
    }

    /// Smallest `R` with every stored cell inside the box `Ω_R`, or `None` for the zero form.
    pub fn support_radius(&self) -> Option<u64> {
        self.entries.keys().map(|c| c.index().radius()).max()
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: T) -> Self {
        Self::collect(self.grade, self.iter().map(|(c, v)| (c, v * factor)))
    }

    /// Applies `f` to every coefficient (zero results are dropped).
    pub fn map_values(&self, f: impl Fn(T) -> T) -> Self {
        Self::collect(self.grade, self.iter().map(|(c, v)| (c, f(v))))
    }

    /// Keeps only the entries whose anchor index satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(LatticeIndex) -> bool) -> Self {
        Self {
            grade: self.grade,
            entries: self.entries.iter().filter(|(c, _)| keep(c.index())).map(|(c, v)| (*c, *v)).collect(),
        }
    }

    pub(crate) fn accumulate(&mut self, cell: Cell, value: T) {
        debug_assert_eq!(cell.grade(), self.grade);
        match self.entries.entry(cell) {
            btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
            }
            btree_map::Entry::Occupied(mut slot) => *slot.get_mut() += value,
        }
    }

    pub(crate) fn prune(&mut self) {
        self.entries.retain(|_, v| !v.is_zero());
    }

    fn combine(&self, other: &Self, sign: T) -> Self {
        assert_eq!(self.grade, other.grade, "adding forms of different grades");
        let mut out = self.clone();
        for (cell, value) in other.iter() {
            out.accumulate(cell, sign * value);
        }
        out.prune();
        out
    }
}

impl SparseForm<Complex64> {
    /// Componentwise complex conjugate.
    pub fn conj(&self) -> Self {
        self.map_values(|v| v.conj())
    }

    /// Largest component modulus (zero for the zero form).
    pub fn max_abs(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl<T: Scalar> Add<&SparseForm<T>> for &SparseForm<T> {
    type Output = SparseForm<T>;

    fn add(self, rhs: &SparseForm<T>) -> SparseForm<T> {
        self.combine(rhs, T::ONE)
    }
}

impl<T: Scalar> Sub<&SparseForm<T>> for &SparseForm<T> {
    type Output = SparseForm<T>;

    fn sub(self, rhs: &SparseForm<T>) -> SparseForm<T> {
        self.combine(rhs, -T::ONE)
    }
}

impl<T: Scalar> Add for SparseForm<T> {
    type Output = SparseForm<T>;

    fn add(self, rhs: SparseForm<T>) -> SparseForm<T> {
        &self + &rhs
    }
}

impl<T: Scalar> Sub for SparseForm<T> {
    type Output = SparseForm<T>;

    fn sub(self, rhs: SparseForm<T>) -> SparseForm<T> {
        &self - &rhs
    }
}

impl<T: Scalar> Neg for &SparseForm<T> {
    type Output = SparseForm<T>;

    fn neg(self) -> SparseForm<T> {
        self.scale(-T::ONE)
    }
}

impl<T: Scalar> Neg for SparseForm<T> {
    type Output = SparseForm<T>;

    fn neg(self) -> SparseForm<T> {
        -&self
    }
}
