//! The experiment config: one JSON document per run.
//!
//! Every field is optional. Commands read the fields they need, fall back to
//! defaults, and reject out-of-range values with a diagnostic naming the field.

use std::path::{Path, PathBuf};

use dezin::magnetic::{ElectricPreset, GaugePreset};
use serde::Deserialize;

use crate::error::CliError;
use crate::output::Format;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: Option<u64>,
    pub trials: Option<i64>,
    pub tolerance: Option<f64>,
    pub include_printed: Option<bool>,
    /// Subset of verification suites to run, by name.
    pub identities: Option<Vec<String>>,
    /// Window half-width `N`.
    pub n: Option<i64>,
    pub n_list: Option<Vec<i64>>,
    pub n_max: Option<i64>,
    pub count: Option<i64>,
    pub gauge: Option<GaugePreset>,
    pub potential: Option<ElectricPreset>,
    /// Flux values `"p/q"`.
    pub fluxes: Option<Vec<String>>,
    /// Sweep every reduced `p/q ∈ [0, 1]` with `q ≤ q_max` when `fluxes` is absent.
    pub q_max: Option<i64>,
    /// Also run the strict-positivity check `λ_min ≥ 1 − margin` for `N = 0..=n_max`.
    pub kernel_margin: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

pub const MAX_BUTTERFLY_Q: i64 = 12;
pub const MAX_BUTTERFLY_N: i64 = 10;

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let reason = e.into_inner().to_string();
            if field == "." {
                CliError::Parse(reason)
            } else {
                CliError::field(field, reason)
            }
        })
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(42)
    }

    pub fn trials(&self) -> Result<usize, CliError> {
        let trials = self.trials.unwrap_or(200);
        if trials < 1 {
            return Err(CliError::field("trials", format!("must be at least 1, got {trials}")));
        }
        Ok(trials as usize)
    }

    pub fn tolerance(&self) -> Result<f64, CliError> {
        let tol = self.tolerance.unwrap_or(1e-12);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::field("tolerance", format!("must be positive and finite, got {tol:?}")));
        }
        Ok(tol)
    }

    pub fn n(&self, default: i64) -> Result<u64, CliError> {
        window("n", self.n.unwrap_or(default))
    }

    /// `n_list` if given, else `[n]`.
    pub fn windows(&self, default: i64) -> Result<Vec<u64>, CliError> {
        match &self.n_list {
            Some(list) if list.is_empty() => Err(CliError::field("n_list", "must not be empty")),
            Some(list) => list.iter().map(|&n| window("n_list", n)).collect(),
            None => Ok(vec![self.n(default)?]),
        }
    }

    pub fn n_max(&self, default: i64) -> Result<u64, CliError> {
        let n_max = self.n_max.unwrap_or(default);
        if n_max < 1 {
            return Err(CliError::field("n_max", format!("must be at least 1, got {n_max}")));
        }
        Ok(n_max as u64)
    }

    /// Requested eigenvalue count; `None` means the full spectrum.
    pub fn count(&self) -> Result<Option<usize>, CliError> {
        match self.count {
            None => Ok(None),
            Some(c) if c < 1 => Err(CliError::field("count", format!("must be at least 1, got {c}"))),
            Some(c) => Ok(Some(c as usize)),
        }
    }

    pub fn gauge(&self) -> GaugePreset {
        self.gauge.clone().unwrap_or(GaugePreset::Zero)
    }

    pub fn potential(&self) -> ElectricPreset {
        self.potential.clone().unwrap_or(ElectricPreset::Zero)
    }

    pub fn kernel_margin(&self) -> Result<Option<f64>, CliError> {
        match self.kernel_margin {
            Some(m) if !(m >= 0.0 && m.is_finite()) => {
                Err(CliError::field("kernel_margin", format!("must be nonnegative and finite, got {m:?}")))
            }
            m => Ok(m),
        }
    }

    /// Flux values as `(p, q)` pairs, in config order.
    pub fn fluxes(&self) -> Result<Vec<(i64, i64)>, CliError> {
        if let Some(list) = &self.fluxes {
            if list.is_empty() {
                return Err(CliError::field("fluxes", "must not be empty"));
            }
            return list.iter().map(|f| parse_flux(f)).collect();
        }
        let q_max = self.q_max.unwrap_or(6);
        if !(1..=MAX_BUTTERFLY_Q).contains(&q_max) {
            return Err(CliError::field("q_max", format!("must lie in 1..={MAX_BUTTERFLY_Q}, got {q_max}")));
        }
        let mut fluxes: Vec<(i64, i64)> =
            (1..=q_max).flat_map(|q| (0..=q).map(move |p| (p, q))).filter(|&(p, q)| gcd(p, q) == 1).collect();
        fluxes.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
        Ok(fluxes)
    }
}

fn window(field: &str, n: i64) -> Result<u64, CliError> {
    if n < 0 {
        return Err(CliError::field(field, format!("window N must be nonnegative, got {n}")));
    }
    Ok(n as u64)
}

fn parse_flux(text: &str) -> Result<(i64, i64), CliError> {
    let bad = |reason: String| CliError::field("fluxes", reason);
    let (p, q) = text.split_once('/').ok_or_else(|| bad(format!("expected \"p/q\", got {text:?}")))?;
    let p: i64 = p.trim().parse().map_err(|_| bad(format!("bad numerator in {text:?}")))?;
    let q: i64 = q.trim().parse().map_err(|_| bad(format!("bad denominator in {text:?}")))?;
    if !(1..=MAX_BUTTERFLY_Q).contains(&q) {
        return Err(bad(format!("denominator must lie in 1..={MAX_BUTTERFLY_Q}, got {text:?}")));
    }
    Ok((p, q))
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
