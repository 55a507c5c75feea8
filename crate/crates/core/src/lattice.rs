//! Indices and basis cells of the two-dimensional complex.
//!
//! Every basis element of the chain complex (and of its dual cochain
//! complex) is addressed by an integer pair `(k, s)`. One-dimensional cells
//! additionally carry a direction: `e¹` runs along `k`, `e²` along `s`.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A point `(k, s)` of the integer lattice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticeIndex {
    pub k: i64,
    pub s: i64,
}

impl LatticeIndex {
    pub const ORIGIN: LatticeIndex = LatticeIndex { k: 0, s: 0 };

    pub const fn new(k: i64, s: i64) -> Self {
        Self { k, s }
    }

    /// `τ` applied to the first index.
    pub const fn tau_k(self) -> Self {
        Self::new(self.k + 1, self.s)
    }

    /// `σ` applied to the first index.
    pub const fn sigma_k(self) -> Self {
        Self::new(self.k - 1, self.s)
    }

    pub const fn tau_s(self) -> Self {
        Self::new(self.k, self.s + 1)
    }

    pub const fn sigma_s(self) -> Self {
        Self::new(self.k, self.s - 1)
    }

    /// Forward neighbour along `dir`.
    pub const fn step(self, dir: Direction) -> Self {
        match dir {
            Direction::K => self.tau_k(),
            Direction::S => self.tau_s(),
        }
    }

    /// Backward neighbour along `dir`.
    pub const fn step_back(self, dir: Direction) -> Self {
        match dir {
            Direction::K => self.sigma_k(),
            Direction::S => self.sigma_s(),
        }
    }

    /// Chebyshev radius `max(|k|, |s|)`; a point lies in the box `Ω_N` iff this is `≤ N`.
    pub fn radius(self) -> u64 {
        self.k.unsigned_abs().max(self.s.unsigned_abs())
    }
}

impl fmt::Display for LatticeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.k, self.s)
    }
}

/// Direction of an edge: channel 1 (`e¹`, along `k`) or channel 2 (`e²`, along `s`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    K,
    S,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::K, Direction::S];

    /// Channel number used in serialized forms (1 or 2).
    pub const fn channel(self) -> u8 {
        match self {
            Direction::K => 1,
            Direction::S => 2,
        }
    }

    pub const fn from_channel(channel: u8) -> Option<Self> {
        match channel {
            1 => Some(Direction::K),
            2 => Some(Direction::S),
            _ => None,
        }
    }
}

/// Dimension of a cell, chain or cochain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Zero,
    One,
    Two,
}

impl Grade {
    pub const ALL: [Grade; 3] = [Grade::Zero, Grade::One, Grade::Two];

    pub const fn value(self) -> u8 {
        match self {
            Grade::Zero => 0,
            Grade::One => 1,
            Grade::Two => 2,
        }
    }

    pub const fn from_value(p: u8) -> Option<Self> {
        match p {
            0 => Some(Grade::Zero),
            1 => Some(Grade::One),
            2 => Some(Grade::Two),
            _ => None,
        }
    }

    /// `p + 1`, or `None` above the top dimension.
    pub const fn up(self) -> Option<Self> {
        Self::from_value(self.value() + 1)
    }

    /// `p − 1`, or `None` below zero.
    pub const fn down(self) -> Option<Self> {
        match self {
            Grade::Zero => None,
            Grade::One => Some(Grade::Zero),
            Grade::Two => Some(Grade::One),
        }
    }

    /// `2 − p`, the grade of the Hodge dual.
    pub const fn dual(self) -> Self {
        match self {
            Grade::Zero => Grade::Two,
            Grade::One => Grade::One,
            Grade::Two => Grade::Zero,
        }
    }

    /// `p + q` if it does not exceed 2.
    pub const fn sum(self, other: Grade) -> Option<Self> {
        Self::from_value(self.value() + other.value())
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A basis cell: `x_{k,s}`, `e¹_{k,s}`, `e²_{k,s}` or `Ω_{k,s}`.
///
/// The same keys address the dual basis `x^{k,s}`, `e₁^{k,s}`, `e₂^{k,s}`,
/// `Ω^{k,s}` of the cochain complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cell {
    Vertex(LatticeIndex),
    Edge(Direction, LatticeIndex),
    Face(LatticeIndex),
}

impl Cell {
    pub const fn vertex(k: i64, s: i64) -> Self {
        Cell::Vertex(LatticeIndex::new(k, s))
    }

    pub const fn edge(dir: Direction, k: i64, s: i64) -> Self {
        Cell::Edge(dir, LatticeIndex::new(k, s))
    }

    pub const fn face(k: i64, s: i64) -> Self {
        Cell::Face(LatticeIndex::new(k, s))
    }

    pub const fn grade(self) -> Grade {
        match self {
            Cell::Vertex(_) => Grade::Zero,
            Cell::Edge(..) => Grade::One,
            Cell::Face(_) => Grade::Two,
        }
    }

    pub const fn index(self) -> LatticeIndex {
        match self {
            Cell::Vertex(i) | Cell::Edge(_, i) | Cell::Face(i) => i,
        }
    }

    pub const fn direction(self) -> Option<Direction> {
        match self {
            Cell::Edge(d, _) => Some(d),
            _ => None,
        }
    }

    /// Every basis cell of `grade` anchored at `index`.
    pub fn at(grade: Grade, index: LatticeIndex) -> impl Iterator<Item = Cell> {
        let cells: &[Cell] = match grade {
            Grade::Zero => &[Cell::Vertex(LatticeIndex::ORIGIN)],
            Grade::One => {
                &[Cell::Edge(Direction::K, LatticeIndex::ORIGIN), Cell::Edge(Direction::S, LatticeIndex::ORIGIN)]
            }
            Grade::Two => &[Cell::Face(LatticeIndex::ORIGIN)],
        };
        cells.iter().map(move |c| c.with_index(index))
    }

    pub const fn with_index(self, index: LatticeIndex) -> Self {
        match self {
            Cell::Vertex(_) => Cell::Vertex(index),
            Cell::Edge(d, _) => Cell::Edge(d, index),
            Cell::Face(_) => Cell::Face(index),
        }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Vertex(i) => write!(f, "x{i}"),
            Cell::Edge(d, i) => write!(f, "e{}{i}", d.channel()),
            Cell::Face(i) => write!(f, "Ω{i}"),
        }
    }
}
