//! The five subcommands. Each one renders its whole output before anything is
//! written, so a failed run leaves no partial file behind.

use std::f64::consts::PI;
use std::time::Instant;

use dezin::magnetic::{ElectricPreset, GaugePreset};
use dezin::spectral::{assemble, kernel_triviality, lowest_eigenvalues, KernelReport};
use dezin::verify::{self, IdentityRow, SuiteConfig};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{ExperimentConfig, MAX_BUTTERFLY_N};
use crate::error::CliError;
use crate::output::{self, Format};

/// Additive-coupling caveat attached to every flux sweep.
pub const BUTTERFLY_NOTE: &str = "the magnetic coupling is additive (d_A = d + i A), not the Peierls phase e^{iA}; \
    the Harper/Hofstadter butterfly is a qualitative reference only";

/// Allowed undershoot below a known potential floor.
const FLOOR_SLACK: f64 = 1e-12;

pub struct Outcome {
    pub text: String,
    /// False when a mathematical check failed.
    pub passed: bool,
    /// Human-readable summary for stderr.
    pub notes: Vec<String>,
}

// ---- verify ----------------------------------------------------------------

#[derive(Serialize)]
struct VerifyDoc<'a> {
    command: &'static str,
    seed: u64,
    trials: usize,
    tolerance: f64,
    include_printed: bool,
    passed: bool,
    rows: &'a [IdentityRow],
}

pub fn verify(cfg: &ExperimentConfig, format: Format) -> Result<Outcome, CliError> {
    let suite = SuiteConfig {
        seed: cfg.seed(),
        trials: cfg.trials()?,
        tolerance: cfg.tolerance()?,
        include_printed: cfg.include_printed.unwrap_or(true),
    };
    let started = Instant::now();
    let rows: Vec<IdentityRow> = match &cfg.identities {
        None => verify::run(&suite).rows,
        Some(names) => {
            if let Some(bad) = names.iter().find(|n| !verify::suite_names().any(|s| s == n.as_str())) {
                return Err(CliError::field("identities", format!("unknown suite {bad:?}")));
            }
            names.par_iter().map(|n| verify::run_one(&suite, n).expect("name was checked")).collect()
        }
    };
    log::info!("verify: {} suites in {:.2?}", rows.len(), started.elapsed());
    for row in &rows {
        log::debug!("{} {} max_residual={:e}", row.identity, row.status.as_str(), row.max_residual);
    }
    let passed = rows.iter().all(|r| r.status != verify::Status::Fail);
    let mut notes: Vec<String> = rows
        .iter()
        .filter(|r| r.status == verify::Status::Fail || r.status == verify::Status::Flag)
        .map(|r| format!("{}: {} (max residual {:e})", r.identity, r.status.as_str(), r.max_residual))
        .collect();
    if !passed {
        notes.push("verification failed".into());
    }
    let text = match format {
        Format::Csv => output::csv("identity,kind,trials,max_residual,tolerance,status", &rows)?,
        Format::Json => output::json(&VerifyDoc {
            command: "verify",
            seed: suite.seed,
            trials: suite.trials,
            tolerance: suite.tolerance,
            include_printed: suite.include_printed,
            passed,
            rows: &rows,
        })?,
    };
    Ok(Outcome { text, passed, notes })
}

// ---- spectrum --------------------------------------------------------------

#[derive(Serialize)]
struct SpectrumRow {
    #[serde(rename = "N")]
    n: u64,
    index: usize,
    lambda: f64,
}

#[derive(Serialize)]
struct SpectrumDoc<'a> {
    command: &'static str,
    seed: u64,
    gauge: GaugePreset,
    potential: ElectricPreset,
    rows: &'a [SpectrumRow],
}

fn eigenvalues(
    gauge: &GaugePreset,
    potential: &ElectricPreset,
    n: u64,
    count: Option<usize>,
) -> Result<Vec<f64>, CliError> {
    let op = assemble(&gauge.build(), &potential.build(), n);
    let count = count.unwrap_or(op.dim());
    Ok(lowest_eigenvalues(&op, count)?)
}

pub fn spectrum(cfg: &ExperimentConfig, format: Format) -> Result<Outcome, CliError> {
    let windows = cfg.windows(1)?;
    let count = cfg.count()?;
    let (gauge, potential) = (cfg.gauge(), cfg.potential());
    let started = Instant::now();
    let per_window: Vec<Vec<f64>> =
        windows.par_iter().map(|&n| eigenvalues(&gauge, &potential, n, count)).collect::<Result<_, _>>()?;
    log::info!("spectrum: {} windows in {:.2?}", windows.len(), started.elapsed());
    let rows: Vec<SpectrumRow> = windows
        .iter()
        .zip(&per_window)
        .flat_map(|(&n, values)| {
            values.iter().enumerate().map(move |(index, &lambda)| SpectrumRow { n, index, lambda })
        })
        .collect();
    let text = match format {
        Format::Csv => output::csv("N,index,lambda", &rows)?,
        Format::Json => {
            output::json(&SpectrumDoc { command: "spectrum", seed: cfg.seed(), gauge, potential, rows: &rows })?
        }
    };
    Ok(Outcome { text, passed: true, notes: Vec::new() })
}

// ---- butterfly -------------------------------------------------------------

#[derive(Serialize)]
struct ButterflyRow {
    alpha: f64,
    index: usize,
    lambda: f64,
}

#[derive(Serialize)]
struct Flux {
    p: i64,
    q: i64,
    alpha: f64,
}

#[derive(Serialize)]
struct ButterflyDoc<'a> {
    command: &'static str,
    note: &'static str,
    #[serde(rename = "N")]
    n: u64,
    gauge: GaugePreset,
    potential: ElectricPreset,
    fluxes: Vec<Flux>,
    floor: Option<f64>,
    passed: bool,
    rows: &'a [ButterflyRow],
}

pub fn butterfly(cfg: &ExperimentConfig, format: Format) -> Result<Outcome, CliError> {
    let n = cfg.n(5)?;
    if n > MAX_BUTTERFLY_N as u64 {
        return Err(CliError::field("n", format!("flux sweeps allow N ≤ {MAX_BUTTERFLY_N}, got {n}")));
    }
    let count = cfg.count()?;
    let base = cfg.gauge.clone().unwrap_or(GaugePreset::Landau { alpha: 0.0 });
    if base.with_alpha(0.0).is_none() {
        return Err(CliError::field("gauge", "flux sweeps need a landau or symmetric preset"));
    }
    let potential = cfg.potential();
    let fluxes: Vec<Flux> =
        cfg.fluxes()?.into_iter().map(|(p, q)| Flux { p, q, alpha: 2.0 * PI * p as f64 / q as f64 }).collect();

    let started = Instant::now();
    let spectra: Vec<Vec<f64>> = fluxes
        .par_iter()
        .map(|f| eigenvalues(&base.with_alpha(f.alpha).expect("checked above"), &potential, n, count))
        .collect::<Result<_, _>>()?;
    log::info!("butterfly: {} fluxes at N={n} in {:.2?}", fluxes.len(), started.elapsed());

    let rows: Vec<ButterflyRow> = fluxes
        .iter()
        .zip(&spectra)
        .flat_map(|(f, values)| {
            values.iter().enumerate().map(move |(index, &lambda)| ButterflyRow { alpha: f.alpha, index, lambda })
        })
        .collect();
    let floor = potential.floor();
    let passed = floor.is_none_or(|c| rows.iter().all(|r| r.lambda >= c - FLOOR_SLACK));
    let mut notes = vec![format!("note: {BUTTERFLY_NOTE}")];
    if !passed {
        notes.push(format!("an eigenvalue fell below the potential floor {:?}", floor.unwrap()));
    }
    let text = match format {
        Format::Csv => output::csv("alpha,index,lambda", &rows)?,
        Format::Json => output::json(&ButterflyDoc {
            command: "butterfly",
            note: BUTTERFLY_NOTE,
            n,
            gauge: base,
            potential,
            fluxes,
            floor,
            passed,
            rows: &rows,
        })?,
    };
    Ok(Outcome { text, passed, notes })
}

// ---- semibound -------------------------------------------------------------

#[derive(Serialize)]
struct ScaleRow {
    #[serde(rename = "N")]
    n: u64,
    lambda_min: f64,
    running_min: f64,
}

#[derive(Serialize)]
struct SemiboundDoc<'a> {
    command: &'static str,
    gauge: GaugePreset,
    potential: ElectricPreset,
    n_max: u64,
    estimate: f64,
    floor: Option<f64>,
    margin: Option<f64>,
    passed: bool,
    scales: &'a [ScaleRow],
    kernel: Option<KernelReport>,
}

pub fn semibound(cfg: &ExperimentConfig, format: Format) -> Result<Outcome, CliError> {
    let n_max = cfg.n_max(4)?;
    let tolerance = cfg.tolerance()?;
    let kernel_margin = cfg.kernel_margin()?;
    let (gauge, potential) = (cfg.gauge(), cfg.potential());
    let (a, v) = (gauge.build(), potential.build());

    let started = Instant::now();
    let smallest = dezin::spectral::smallest_by_scale(&a, &v, n_max);
    let kernel = kernel_margin.map(|m| kernel_triviality(&a, &v, n_max, m));
    log::info!("semibound: N_max={n_max} in {:.2?}", started.elapsed());

    let mut running = f64::INFINITY;
    let scales: Vec<ScaleRow> = smallest
        .into_iter()
        .map(|(n, lambda_min)| {
            running = running.min(lambda_min);
            ScaleRow { n, lambda_min, running_min: running }
        })
        .collect();
    let estimate = running;
    let floor = potential.floor();
    let margin = floor.map(|c| estimate - c);
    let mut passed = margin.is_none_or(|m| m >= -tolerance);
    let mut notes = vec![format!(
        "estimate={estimate:?} floor={} margin={}",
        floor.map_or("unknown".into(), |c| format!("{c:?}")),
        margin.map_or("n/a".into(), |m| format!("{m:?}"))
    )];
    if let Some(report) = &kernel {
        notes.push(format!("kernel: {}", if report.trivial { "trivial" } else { "NOT trivial" }));
        passed &= report.trivial;
    }
    let text = match format {
        Format::Csv => output::csv("N,lambda_min,running_min", &scales)?,
        Format::Json => output::json(&SemiboundDoc {
            command: "semibound",
            gauge,
            potential,
            n_max,
            estimate,
            floor,
            margin,
            passed,
            scales: &scales,
            kernel,
        })?,
    };
    Ok(Outcome { text, passed, notes })
}

// ---- assemble --------------------------------------------------------------

#[derive(Serialize)]
struct Entry {
    row: usize,
    col: usize,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct AssembleDoc {
    command: &'static str,
    #[serde(rename = "N")]
    n: u64,
    dim: usize,
    gauge: GaugePreset,
    potential: ElectricPreset,
    entries: Vec<Entry>,
}

/// CSV format writes the plain-text matrix dump.
pub fn assemble_cmd(cfg: &ExperimentConfig, format: Format) -> Result<Outcome, CliError> {
    let n = cfg.n(1)?;
    let (gauge, potential) = (cfg.gauge(), cfg.potential());
    let op = assemble(&gauge.build(), &potential.build(), n);
    op.check_hermitian()?;
    let text = match format {
        Format::Csv => op.to_dump(),
        Format::Json => {
            let m = op.matrix();
            let entries = (0..op.dim())
                .flat_map(|row| (0..op.dim()).map(move |col| (row, col)))
                .filter(|&(row, col)| m[(row, col)].norm_sqr() != 0.0)
                .map(|(row, col)| Entry { row, col, re: m[(row, col)].re + 0.0, im: m[(row, col)].im + 0.0 })
                .collect();
            output::json(&AssembleDoc { command: "assemble", n, dim: op.dim(), gauge, potential, entries })?
        }
    };
    Ok(Outcome { text, passed: true, notes: Vec::new() })
}
