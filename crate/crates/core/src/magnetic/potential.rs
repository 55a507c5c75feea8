//! Magnetic and electric potentials, and the preset grammar used by configs.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::forms::Cochain;
use crate::lattice::{Cell, Direction, Grade, LatticeIndex};
use crate::sample::site_uniforms;

type SiteRule<T> = Arc<dyn Fn(LatticeIndex) -> T + Send + Sync>;

/// A real 1-form `A = Σ (A¹_{k,s} e₁^{k,s} + A²_{k,s} e₂^{k,s})`.
///
/// Components are produced on demand by a rule over the whole lattice, so
/// unbounded potentials such as a linear gauge need no truncation. Operators
/// only ever evaluate the rule on the sites they touch.
#[derive(Clone)]
pub struct MagneticPotential {
    rule: SiteRule<[f64; 2]>,
}

impl MagneticPotential {
    pub fn from_fn(rule: impl Fn(LatticeIndex) -> [f64; 2] + Send + Sync + 'static) -> Self {
        Self { rule: Arc::new(rule) }
    }

    pub fn zero() -> Self {
        Self::constant(0.0, 0.0)
    }

    pub fn constant(a1: f64, a2: f64) -> Self {
        Self::from_fn(move |_| [a1, a2])
    }

    /// `A¹ = 0`, `A² = α·k`.
    pub fn landau(alpha: f64) -> Self {
        Self::from_fn(move |i| [0.0, alpha * i.k as f64])
    }

    /// `A¹ = −α·s/2`, `A² = α·k/2`.
    pub fn symmetric(alpha: f64) -> Self {
        Self::from_fn(move |i| [-alpha * i.s as f64 / 2.0, alpha * i.k as f64 / 2.0])
    }

    /// Independent components uniform in `[−amplitude, amplitude)` at every site.
    pub fn random(seed: u64, amplitude: f64) -> Self {
        Self::from_fn(move |i| {
            let [u1, u2] = site_uniforms::<2>(seed, i);
            [amplitude * (2.0 * u1 - 1.0), amplitude * (2.0 * u2 - 1.0)]
        })
    }

    /// Finitely many listed sites; zero elsewhere.
    pub fn from_sites(sites: impl IntoIterator<Item = (LatticeIndex, [f64; 2])>) -> Self {
        let table: std::collections::BTreeMap<_, _> = sites.into_iter().collect();
        Self::from_fn(move |i| table.get(&i).copied().unwrap_or([0.0, 0.0]))
    }

    /// `(A¹_{k,s}, A²_{k,s})`.
    pub fn at(&self, index: LatticeIndex) -> [f64; 2] {
        (self.rule)(index)
    }

    pub fn component(&self, dir: Direction, index: LatticeIndex) -> f64 {
        let [a1, a2] = self.at(index);
        match dir {
            Direction::K => a1,
            Direction::S => a2,
        }
    }

    /// `A` as a cochain, restricted to edges anchored at `sites`.
    pub fn materialize(&self, sites: impl IntoIterator<Item = LatticeIndex>) -> Cochain {
        let terms: Vec<_> = sites
            .into_iter()
            .flat_map(|i| {
                let [a1, a2] = self.at(i);
                [
                    (Cell::Edge(Direction::K, i), Complex64::new(a1, 0.0)),
                    (Cell::Edge(Direction::S, i), Complex64::new(a2, 0.0)),
                ]
            })
            .collect();
        // A site listed twice would otherwise be summed.
        let mut seen = std::collections::BTreeSet::new();
        Cochain::collect(Grade::One, terms.into_iter().filter(|(cell, _)| seen.insert(*cell)))
    }
}

impl fmt::Debug for MagneticPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MagneticPotential").field("at_origin", &self.at(LatticeIndex::ORIGIN)).finish()
    }
}

/// A real 0-form `V = Σ V_{k,s} x^{k,s}`, produced on demand like [`MagneticPotential`].
#[derive(Clone)]
pub struct ElectricPotential {
    rule: SiteRule<f64>,
}

impl ElectricPotential {
    pub fn from_fn(rule: impl Fn(LatticeIndex) -> f64 + Send + Sync + 'static) -> Self {
        Self { rule: Arc::new(rule) }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(c: f64) -> Self {
        Self::from_fn(move |_| c)
    }

    /// `V = w·(k² + s²)`.
    pub fn harmonic(w: f64) -> Self {
        Self::from_fn(move |i| w * ((i.k * i.k + i.s * i.s) as f64))
    }

    /// `V = floor + amplitude·u` with `u` uniform in `[0, 1)` per site.
    pub fn random_bounded_below(seed: u64, floor: f64, amplitude: f64) -> Self {
        Self::from_fn(move |i| {
            let [u] = site_uniforms::<1>(seed, i);
            floor + amplitude * u
        })
    }

    /// `self + c` at every site.
    pub fn shifted(&self, c: f64) -> Self {
        let base = self.clone();
        Self::from_fn(move |i| base.at(i) + c)
    }

    pub fn at(&self, index: LatticeIndex) -> f64 {
        (self.rule)(index)
    }

    /// `V` as a 0-form restricted to `sites`.
    pub fn materialize(&self, sites: impl IntoIterator<Item = LatticeIndex>) -> Cochain {
        let mut seen = std::collections::BTreeSet::new();
        Cochain::collect(
            Grade::Zero,
            sites.into_iter().filter(|i| seen.insert(*i)).map(|i| (Cell::Vertex(i), Complex64::new(self.at(i), 0.0))),
        )
    }
}

impl fmt::Debug for ElectricPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ElectricPotential").field("at_origin", &self.at(LatticeIndex::ORIGIN)).finish()
    }
}

/// Named magnetic potentials, as written in experiment configs.
///
/// JSON form: `{"preset": "landau", "alpha": 0.5}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GaugePreset {
    Zero,
    Constant { a1: f64, a2: f64 },
    Landau { alpha: f64 },
    Symmetric { alpha: f64 },
    Random { seed: u64, amplitude: f64 },
}

impl GaugePreset {
    pub fn build(&self) -> MagneticPotential {
        match *self {
            GaugePreset::Zero => MagneticPotential::zero(),
            GaugePreset::Constant { a1, a2 } => MagneticPotential::constant(a1, a2),
            GaugePreset::Landau { alpha } => MagneticPotential::landau(alpha),
            GaugePreset::Symmetric { alpha } => MagneticPotential::symmetric(alpha),
            GaugePreset::Random { seed, amplitude } => MagneticPotential::random(seed, amplitude),
        }
    }

    /// Same preset with its field strength replaced, for flux sweeps.
    pub fn with_alpha(&self, alpha: f64) -> Option<Self> {
        match self {
            GaugePreset::Landau { .. } => Some(GaugePreset::Landau { alpha }),
            GaugePreset::Symmetric { .. } => Some(GaugePreset::Symmetric { alpha }),
            _ => None,
        }
    }
}

/// Named electric potentials.
///
/// JSON form: `{"preset": "random-bounded-below", "seed": 1, "floor": -2, "amplitude": 3}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ElectricPreset {
    Zero,
    Constant { c: f64 },
    Harmonic { w: f64 },
    RandomBoundedBelow { seed: u64, floor: f64, amplitude: f64 },
}

impl ElectricPreset {
    pub fn build(&self) -> ElectricPotential {
        match *self {
            ElectricPreset::Zero => ElectricPotential::zero(),
            ElectricPreset::Constant { c } => ElectricPotential::constant(c),
            ElectricPreset::Harmonic { w } => ElectricPotential::harmonic(w),
            ElectricPreset::RandomBoundedBelow { seed, floor, amplitude } => {
                ElectricPotential::random_bounded_below(seed, floor, amplitude)
            }
        }
    }

    /// A known lower bound `c ≤ V_{k,s}` over the whole lattice, if the preset has one.
    pub fn floor(&self) -> Option<f64> {
        match *self {
            ElectricPreset::Zero => Some(0.0),
            ElectricPreset::Constant { c } => Some(c),
            ElectricPreset::Harmonic { w } if w >= 0.0 => Some(0.0),
            ElectricPreset::Harmonic { .. } => None,
            ElectricPreset::RandomBoundedBelow { floor, amplitude, .. } if amplitude >= 0.0 => Some(floor),
            ElectricPreset::RandomBoundedBelow { .. } => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauge_rules() {
        let i = LatticeIndex::new(3, -2);
        assert_eq!(MagneticPotential::landau(0.5).at(i), [0.0, 1.5]);
        assert_eq!(MagneticPotential::symmetric(2.0).at(i), [2.0, 3.0]);
        assert_eq!(MagneticPotential::landau(0.0).at(i), MagneticPotential::zero().at(i));
        let r = MagneticPotential::random(4, 0.5);
        let [a1, a2] = r.at(i);
        assert!(a1.abs() <= 0.5 && a2.abs() <= 0.5);
        assert_eq!(r.at(i), MagneticPotential::random(4, 0.5).at(i));
    }

    #[test]
    fn bounded_below_respects_floor() {
        let v = ElectricPotential::random_bounded_below(11, -2.0, 3.0);
        for k in -5..=5 {
            for s in -5..=5 {
                let x = v.at(LatticeIndex::new(k, s));
                assert!((-2.0..1.0).contains(&x));
            }
        }
    }

    #[test]
    fn preset_json() {
        let p: GaugePreset = serde_json::from_str(r#"{"preset":"symmetric","alpha":0.25}"#).unwrap();
        assert_eq!(p, GaugePreset::Symmetric { alpha: 0.25 });
        let e: ElectricPreset =
            serde_json::from_str(r#"{"preset":"random-bounded-below","seed":3,"floor":-2.0,"amplitude":1.0}"#).unwrap();
        assert_eq!(e.floor(), Some(-2.0));
        assert!(serde_json::from_str::<GaugePreset>(r#"{"preset":"peierls"}"#).is_err());
        assert!(serde_json::from_str::<GaugePreset>(r#"{"preset":"landau","alpha":1,"beta":2}"#).is_err());
        assert_eq!(ElectricPreset::Harmonic { w: -1.0 }.floor(), None);
    }

    #[test]
    fn materialize_ignores_repeated_sites() {
        let a = MagneticPotential::constant(1.0, 2.0);
        let o = LatticeIndex::ORIGIN;
        let m = a.materialize([o, o]);
        assert_eq!(m.get(Cell::Edge(Direction::K, o)), Complex64::new(1.0, 0.0));
        let v = ElectricPotential::constant(3.0).materialize([o, o]);
        assert_eq!(v.get(Cell::Vertex(o)), Complex64::new(3.0, 0.0));
    }
}
