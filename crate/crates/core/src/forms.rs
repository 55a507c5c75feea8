//! Discrete forms (complex cochains), their inner products and cutting forms.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Cell, Direction, Grade, LatticeIndex};
use crate::sparse::SparseForm;

/// A complex, finitely supported `p`-form.
///
/// For `p = 1` the two channels hold the components `u` (on `e₁`) and `v`
/// (on `e₂`).
pub type Cochain = SparseForm<Complex64>;

/// Summation domain of an inner product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    /// The box `Ω_N`: `−N ≤ k, s ≤ N`.
    Box(u64),
    /// The whole lattice; in practice the union of the operands' supports.
    Unbounded,
}

impl Window {
    pub fn contains(self, index: LatticeIndex) -> bool {
        match self {
            Window::Box(n) => index.radius() <= n,
            Window::Unbounded => true,
        }
    }
}

/// `(α, β)_w = Σ_{(k,s) ∈ w} α_{k,s} · conj(β_{k,s})`, both channels summed for 1-forms.
pub fn inner_product(alpha: &Cochain, beta: &Cochain, window: Window) -> Result<Complex64> {
    if alpha.grade() != beta.grade() {
        return Err(Error::GradeMismatch { left: alpha.grade(), right: beta.grade() });
    }
    Ok(alpha.iter().filter(|(cell, _)| window.contains(cell.index())).map(|(cell, a)| a * beta.get(cell).conj()).sum())
}

/// `‖α‖ = sqrt((α, α))`.
pub fn norm(alpha: &Cochain) -> f64 {
    alpha.iter().map(|(_, v)| v.norm_sqr()).sum::<f64>().sqrt()
}

/// The cutting form `χ^N`: unit components on the box `Ω_N`, absent elsewhere.
pub fn cutoff(n: u64) -> Cochain {
    let n = n as i64;
    Cochain::collect(
        Grade::Zero,
        (-n..=n).flat_map(|k| (-n..=n).map(move |s| (Cell::vertex(k, s), Complex64::new(1.0, 0.0)))),
    )
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CochainRecord {
    grade: u8,
    entries: Vec<EntryRecord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryRecord {
    k: i64,
    s: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    channel: Option<u8>,
    re: f64,
    im: f64,
}

impl TryFrom<CochainRecord> for Cochain {
    type Error = Error;

    fn try_from(record: CochainRecord) -> Result<Self> {
        let grade = Grade::from_value(record.grade)
            .ok_or_else(|| Error::Format(format!("grade {} is not 0, 1 or 2", record.grade)))?;
        let mut terms = Vec::with_capacity(record.entries.len());
        for e in record.entries {
            let index = LatticeIndex::new(e.k, e.s);
            let cell = match (grade, e.channel) {
                (Grade::Zero, None) => Cell::Vertex(index),
                (Grade::Two, None) => Cell::Face(index),
                (Grade::One, Some(ch)) => {
                    let dir = Direction::from_channel(ch)
                        .ok_or_else(|| Error::Format(format!("channel {ch} at {index} is not 1 or 2")))?;
                    Cell::Edge(dir, index)
                }
                (Grade::One, None) => return Err(Error::Format(format!("1-form entry at {index} has no channel"))),
                (_, Some(_)) => {
                    return Err(Error::Format(format!("grade-{grade} entry at {index} must not carry a channel")))
                }
            };
            terms.push((cell, Complex64::new(e.re, e.im)));
        }
        Cochain::from_terms(grade, terms)
    }
}

impl From<&Cochain> for CochainRecord {
    fn from(form: &Cochain) -> Self {
        CochainRecord {
            grade: form.grade().value(),
            entries: form
                .iter()
                .map(|(cell, v)| {
                    let i = cell.index();
                    EntryRecord {
                        k: i.k,
                        s: i.s,
                        channel: cell.direction().map(Direction::channel),
                        re: v.re,
                        im: v.im,
                    }
                })
                .collect(),
        }
    }
}

/// `{grade, entries: [{k, s, channel?, re, im}]}`
impl Serialize for Cochain {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CochainRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cochain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let record = CochainRecord::deserialize(deserializer)?;
        Cochain::try_from(record).map_err(serde::de::Error::custom)
    }
}

impl Cochain {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_vertex_has_unit_product() {
        let x = Cochain::basis(Cell::vertex(0, 0));
        assert_eq!(inner_product(&x, &x, Window::Unbounded).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn norm_by_hand() {
        assert_eq!(norm(&Cochain::zero(Grade::One)), 0.0);
        let f =
            Cochain::from_terms(Grade::Zero, [(Cell::vertex(0, 0), c(1.0, 0.0)), (Cell::vertex(1, 1), c(0.0, 1.0))])
                .unwrap();
        assert!((norm(&f) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn inner_product_conjugates_second_argument() {
        let a = Cochain::term(Cell::vertex(0, 0), c(0.0, 1.0));
        let b = Cochain::term(Cell::vertex(0, 0), c(2.0, 0.0));
        assert_eq!(inner_product(&a, &b, Window::Unbounded).unwrap(), c(0.0, 2.0));
        assert_eq!(inner_product(&b, &a, Window::Unbounded).unwrap(), c(0.0, -2.0));
    }

    #[test]
    fn window_drops_outside_terms() {
        let f =
            Cochain::from_terms(Grade::Zero, [(Cell::vertex(0, 0), c(1.0, 0.0)), (Cell::vertex(2, 0), c(3.0, 0.0))])
                .unwrap();
        assert_eq!(inner_product(&f, &f, Window::Box(1)).unwrap(), c(1.0, 0.0));
        assert_eq!(inner_product(&f, &f, Window::Box(2)).unwrap(), c(10.0, 0.0));
    }

    #[test]
    fn inner_product_rejects_grade_mismatch() {
        let x = Cochain::basis(Cell::vertex(0, 0));
        let w = Cochain::basis(Cell::face(0, 0));
        assert!(matches!(inner_product(&x, &w, Window::Unbounded), Err(Error::GradeMismatch { .. })));
    }

    #[test]
    fn cutoff_boxes() {
        assert_eq!(cutoff(0), Cochain::basis(Cell::vertex(0, 0)));
        let nine = cutoff(1);
        assert_eq!(nine.len(), 9);
        assert!(nine.iter().all(|(cell, v)| cell.index().radius() <= 1 && v == c(1.0, 0.0)));
    }

    #[test]
    fn json_layout() {
        let w = Cochain::from_terms(
            Grade::One,
            [(Cell::edge(Direction::S, -1, 2), c(0.5, -0.25)), (Cell::edge(Direction::K, 0, 0), c(1.0, 0.0))],
        )
        .unwrap();
        let text = w.to_json().unwrap();
        assert_eq!(
            text,
            r#"{"grade":1,"entries":[{"k":0,"s":0,"channel":1,"re":1.0,"im":0.0},{"k":-1,"s":2,"channel":2,"re":0.5,"im":-0.25}]}"#
        );
        assert_eq!(Cochain::from_json(&text).unwrap(), w);
    }

    #[test]
    fn json_rejects_inconsistent_channels() {
        assert!(Cochain::from_json(r#"{"grade":1,"entries":[{"k":0,"s":0,"re":1,"im":0}]}"#).is_err());
        assert!(Cochain::from_json(r#"{"grade":0,"entries":[{"k":0,"s":0,"channel":1,"re":1,"im":0}]}"#).is_err());
        assert!(Cochain::from_json(r#"{"grade":1,"entries":[{"k":0,"s":0,"channel":3,"re":1,"im":0}]}"#).is_err());
        assert!(Cochain::from_json(r#"{"grade":3,"entries":[]}"#).is_err());
    }
}
