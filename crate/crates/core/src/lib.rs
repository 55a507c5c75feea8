//! A discrete model of the plane after Dezin, and the magnetic Schrödinger
//! operator `H = −Δ_A + V` built on it.
//!
//! * [`complex_core`]: chains, the boundary operator and the chain–cochain pairing.
//! * [`forms`]: complex cochains (discrete forms), inner products, cutting forms.
//! * [`calculus`]: coboundary, cup product, Hodge star, codifferential, Laplacian.
//! * [`magnetic`]: potentials, the deformed calculus and `H`, with its product rules.
//! * [`spectral`]: Dirichlet truncations of `H` and their low spectrum.
//! * [`verify`]: seeded identity suites over all of the above.
//!
//! The guide under `book/` walks through the constructions; its code blocks
//! are compiled and run as doc-tests of this crate.

pub mod calculus;
pub mod complex_core;
pub mod error;
pub mod forms;
pub mod lattice;
pub mod magnetic;
pub mod residual;
pub mod sample;
pub mod sparse;
pub mod spectral;
pub mod verify;

pub use complex_core::Chain;
pub use error::{Error, Result};
pub use forms::{Cochain, Window};
pub use lattice::{Cell, Direction, Grade, LatticeIndex};
pub use magnetic::{ElectricPotential, MagneticPotential};
pub use residual::Residual;
pub use spectral::HermitianOperator;

// Every chapter of the guide becomes a module so its code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/complex.md")]
    mod complex {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    mod calculus {}
    #[doc = include_str!("../../../book/src/magnetic.md")]
    mod magnetic {}
    #[doc = include_str!("../../../book/src/product-rules.md")]
    mod product_rules {}
    #[doc = include_str!("../../../book/src/spectral.md")]
    mod spectral {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
