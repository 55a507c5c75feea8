use serde::Serialize;

use crate::forms::{norm, Cochain};

/// Size of a discrepancy between two evaluations of the same quantity,
/// together with the magnitude it should be judged against.
///
/// `scale` is the sum of the magnitudes of the terms that were combined,
/// so `norm / scale` bounds the relative rounding error of the computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct Residual {
    pub norm: f64,
    pub scale: f64,
}

impl Residual {
    pub fn new(norm: f64, scale: f64) -> Self {
        Self { norm, scale }
    }

    /// `‖lhs − rhs‖` against `‖lhs‖ + ‖rhs‖`.
    pub fn between(lhs: &Cochain, rhs: &Cochain) -> Self {
        Self::new(norm(&(lhs - rhs)), norm(lhs) + norm(rhs))
    }

    /// `norm / scale`; zero when both vanish, infinite for a nonzero residual of zero scale.
    pub fn relative(&self) -> f64 {
        if self.norm == 0.0 {
            0.0
        } else if self.scale == 0.0 {
            f64::INFINITY
        } else {
            self.norm / self.scale
        }
    }

    /// `norm ≤ tol · scale`.
    pub fn within(&self, tol: f64) -> bool {
        self.norm <= tol * self.scale
    }

    /// Widens the scale by further term magnitudes.
    pub fn with_terms(mut self, extra: impl IntoIterator<Item = f64>) -> Self {
        self.scale += extra.into_iter().sum::<f64>();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relative_edge_cases() {
        assert_eq!(Residual::new(0.0, 0.0).relative(), 0.0);
        assert!(Residual::new(1.0, 0.0).relative().is_infinite());
        assert_eq!(Residual::new(1.0, 4.0).relative(), 0.25);
        assert!(Residual::new(0.0, 0.0).within(1e-12));
        assert!(!Residual::new(1e-10, 1.0).within(1e-12));
    }
}
