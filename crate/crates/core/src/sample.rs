//! Seeded random forms for the identity suites.
//!
//! The generator is ChaCha8 from `rand_chacha`, seeded with
//! `SeedableRng::seed_from_u64(seed)` and optionally moved to a numbered
//! stream with `set_stream`. Floating-point draws are derived from raw
//! `next_u64` words so the sequence of values is fixed by this module and
//! not by any distribution code:
//!
//! * uniform in `[0, 1)`: `(w >> 11) · 2⁻⁵³`
//! * dyadic in `[−1, 1)`: `((w >> 43) − 2²⁰) · 2⁻²⁰`
//! * integer below `n`: `(w · n) >> 64` (128-bit product)
//!
//! Random cochains use dyadic coefficients. Products and short sums of
//! such values are exact in `f64`, so identities that hold algebraically
//! hold bit-for-bit on sampled data.

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::complex_core::Chain;
use crate::forms::Cochain;
use crate::lattice::{Cell, Grade, LatticeIndex};

const DYADIC_BITS: u32 = 20;

/// Deterministic random source for forms, potentials and trial seeds.
#[derive(Clone, Debug)]
pub struct SampleRng {
    inner: ChaCha8Rng,
}

impl SampleRng {
    pub fn new(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Independent stream `stream` of the generator seeded with `seed`.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        Self { inner }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on the grid `2⁻²⁰ ℤ ∩ [−1, 1)`.
    pub fn dyadic(&mut self) -> f64 {
        let raw = (self.next_u64() >> (64 - DYADIC_BITS - 1)) as i64 - (1i64 << DYADIC_BITS);
        raw as f64 / (1u64 << DYADIC_BITS) as f64
    }

    /// Uniform integer in `0..n`. `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as u64
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }

    /// Dyadic point of the square `[−1, 1)²`.
    pub fn complex(&mut self) -> Complex64 {
        let re = self.dyadic();
        let im = self.dyadic();
        Complex64::new(re, im)
    }

    /// Uniform lattice point of the box `Ω_radius`.
    pub fn index_in_box(&mut self, radius: u64) -> LatticeIndex {
        let r = radius as i64;
        let k = self.int_in(-r, r);
        let s = self.int_in(-r, r);
        LatticeIndex::new(k, s)
    }

    fn cell_in_box(&mut self, grade: Grade, radius: u64) -> Cell {
        let index = self.index_in_box(radius);
        let choices: Vec<Cell> = Cell::at(grade, index).collect();
        choices[self.below(choices.len() as u64) as usize]
    }

    /// A cochain with up to `count` dyadic entries on random cells of `Ω_radius`.
    pub fn cochain(&mut self, grade: Grade, radius: u64, count: usize) -> Cochain {
        let terms: Vec<_> = (0..count).map(|_| (self.cell_in_box(grade, radius), self.complex())).collect();
        Cochain::collect(grade, terms)
    }

    /// A 0-form with a dyadic entry on every vertex of `Ω_radius`.
    pub fn dense_zero_form(&mut self, radius: u64) -> Cochain {
        let r = radius as i64;
        let mut terms = Vec::new();
        for k in -r..=r {
            for s in -r..=r {
                terms.push((Cell::vertex(k, s), self.complex()));
            }
        }
        Cochain::collect(Grade::Zero, terms)
    }

    /// A chain with up to `count` small integer coefficients on random cells of `Ω_radius`.
    pub fn chain(&mut self, grade: Grade, radius: u64, count: usize) -> Chain {
        let terms: Vec<_> = (0..count)
            .map(|_| {
                let cell = self.cell_in_box(grade, radius);
                (cell, self.int_in(-3, 3) as f64)
            })
            .collect();
        Chain::collect(grade, terms)
    }
}

/// Stream number of a lattice site; the two indices are truncated to 32 bits each.
fn site_stream(index: LatticeIndex) -> u64 {
    ((index.k as i32 as u32 as u64) << 32) | (index.s as i32 as u32 as u64)
}

/// The first `N` uniform `[0, 1)` draws of the per-site stream of `seed`.
///
/// Gives every lattice site its own reproducible random values, which is
/// how infinite random potentials are realised without truncation.
pub fn site_uniforms<const N: usize>(seed: u64, index: LatticeIndex) -> [f64; N] {
    let mut rng = SampleRng::with_stream(seed, site_stream(index));
    std::array::from_fn(|_| rng.uniform())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_sequence() {
        let mut a = SampleRng::new(42);
        let mut b = SampleRng::new(42);
        for _ in 0..16 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_ne!(SampleRng::new(1).next_u64(), SampleRng::new(2).next_u64());
    }

    #[test]
    fn draws_stay_in_range() {
        let mut rng = SampleRng::new(7);
        for _ in 0..1000 {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            let d = rng.dyadic();
            assert!((-1.0..1.0).contains(&d));
            assert_eq!(d * (1u64 << DYADIC_BITS) as f64, (d * (1u64 << DYADIC_BITS) as f64).round());
            let i = rng.int_in(-3, 3);
            assert!((-3..=3).contains(&i));
        }
    }

    #[test]
    fn site_values_are_reproducible_and_distinct() {
        let a: [f64; 2] = site_uniforms(9, LatticeIndex::new(3, -4));
        let b: [f64; 2] = site_uniforms(9, LatticeIndex::new(3, -4));
        let c: [f64; 2] = site_uniforms(9, LatticeIndex::new(-4, 3));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampled_cochains_live_in_the_box() {
        let mut rng = SampleRng::new(3);
        let f = rng.cochain(Grade::One, 5, 40);
        assert!(f.support_radius().unwrap() <= 5);
        assert_eq!(f.grade(), Grade::One);
    }
}
