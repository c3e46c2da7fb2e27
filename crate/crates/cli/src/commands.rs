//! One function per subcommand. Each returns the process outcome; text
//! output goes to the `--out` file or stdout, diagnostics to stderr.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use juddian_core::boson::{displaced_osc_hamiltonian, squeeze_params, squeezed_osc_hamiltonian, BosonError, FockCutoff};
use juddian_core::juddian::{juddian_points, juddian_search, verify_point, JuddianError, JuddianPoint, VERIFY_TOL};
use juddian_core::numerics::sym_eigvals;
use juddian_core::rabi::{spectrum_sweep, ModelParams, Units};

use crate::error::CliError;
use crate::format::{juddian_csv, juddian_json, parse_points_json, parse_spectrum_csv, spectrum_csv};
use crate::svg::{render, PlotOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Failure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscillatorType {
    Displaced,
    Squeezed,
}

pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Points for `N = 1..=max_n` ascending in `(N, g)`. A root shortfall is
/// fatal at resonance and reported on stderr elsewhere.
pub fn juddian_table(max_n: usize, params: &ModelParams) -> Result<Vec<JuddianPoint>, CliError> {
    if max_n == 0 {
        return Err(CliError::Invalid("--max-n must be at least 1".into()));
    }
    let mut all = Vec::new();
    for n in 1..=max_n {
        let search = juddian_search(n, params)?;
        if !search.is_complete() {
            // errors at resonance, passes through elsewhere
            juddian_points(n, params)?;
            eprintln!(
                "warning: N = {n}: {} of {} roots in (0, N) at ω̃ = {}",
                search.points.len(),
                search.expected,
                params.omega_tilde()
            );
        }
        all.extend(search.points);
    }
    Ok(all)
}

pub fn cmd_juddian(
    max_n: usize,
    params: &ModelParams,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let points = juddian_table(max_n, params)?;
    let text = match format {
        OutputFormat::Csv => juddian_csv(&points),
        OutputFormat::Json => juddian_json(&points),
    };
    emit(out, &text)?;
    Ok(Outcome::Success)
}

/// Evenly spaced couplings from `g_min` to `g_max` inclusive. A single
/// step is only allowed for the degenerate range `g_min = g_max`.
pub fn g_grid(g_min: f64, g_max: f64, steps: usize) -> Result<Vec<f64>, CliError> {
    if !g_min.is_finite() || !g_max.is_finite() {
        return Err(CliError::Invalid("--g-min and --g-max must be finite".into()));
    }
    if steps == 1 && g_min == g_max {
        return Ok(vec![g_min]);
    }
    if steps < 2 {
        return Err(CliError::Invalid(format!(
            "--g-steps must be at least 2 (got {steps}); a single step needs --g-min = --g-max"
        )));
    }
    if !(g_min < g_max) {
        return Err(CliError::Invalid(format!("--g-min ({g_min}) must be less than --g-max ({g_max})")));
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i + 1 == steps { g_max } else { g_min + (g_max - g_min) * i as f64 / last })
        .collect())
}

pub struct SpectrumArgs {
    pub g_min: f64,
    pub g_max: f64,
    pub g_steps: usize,
    pub cutoff: usize,
    pub levels: usize,
    pub units: Units,
}

pub fn cmd_spectrum(args: &SpectrumArgs, template: &ModelParams, out: Option<&Path>) -> Result<Outcome, CliError> {
    let grid = g_grid(args.g_min, args.g_max, args.g_steps)?;
    let table = spectrum_sweep(template, &grid, FockCutoff(args.cutoff), args.levels, args.units)?;
    emit(out, &spectrum_csv(&table))?;
    Ok(Outcome::Success)
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

pub fn cmd_verify(n: usize, cutoff: usize, params: &ModelParams) -> Result<Outcome, CliError> {
    if n == 0 {
        return Err(CliError::Invalid("--n must be at least 1".into()));
    }
    let cutoff = FockCutoff(cutoff);
    let points = juddian_points(n, params)?;
    let mut report = String::new();
    let _ = writeln!(
        report,
        "{:>3} {:>5} {:>14} {:>14} {:>12} {:>14} {:>14}  status",
        "N", "index", "g", "E", "det_residual", "eigen_residual", "degeneracy_gap"
    );
    let mut all_passed = true;
    for p in &points {
        match verify_point(p, cutoff) {
            Ok(v) => {
                let passed = v.passed();
                all_passed &= passed;
                let _ = writeln!(
                    report,
                    "{:>3} {:>5} {:>14.10} {:>14.10} {:>12} {:>14} {:>14}  {}",
                    p.n,
                    p.root_index,
                    p.g,
                    p.energy,
                    sci(p.det_residual),
                    sci(v.eigen_residual),
                    sci(v.degeneracy_gap),
                    if passed { "ok" } else { "FAIL" }
                );
            }
            Err(JuddianError::NoNearbyLevel { parity, energy, distance }) => {
                all_passed = false;
                let _ = writeln!(
                    report,
                    "{:>3} {:>5} {:>14.10} {:>14.10} {:>12} {:>14} {:>14}  FAIL (no {parity:?} level near E = {energy:.10}, nearest {} away)",
                    p.n,
                    p.root_index,
                    p.g,
                    p.energy,
                    sci(p.det_residual),
                    "-",
                    "-",
                    sci(distance)
                );
            }
            Err(JuddianError::Boson(e @ BosonError::CutoffTooSmall { .. })) => {
                return Err(CliError::Invalid(format!("cutoff M = {} too small: {e}", cutoff.0)));
            }
            Err(e) => return Err(e.into()),
        }
    }
    emit(None, &report)?;
    if all_passed {
        Ok(Outcome::Success)
    } else {
        eprintln!(
            "verification failed (tolerance {VERIFY_TOL:e}) at cutoff M = {}; the truncated basis may be too small, increase --cutoff",
            cutoff.0
        );
        Ok(Outcome::Failure)
    }
}

/// Numerical and analytic energies of the lowest `levels` states.
pub fn oscillator_energies(
    kind: OscillatorType,
    lambda: f64,
    cutoff: usize,
    levels: usize,
) -> Result<Vec<(f64, f64)>, CliError> {
    let m = FockCutoff(cutoff);
    if levels == 0 || levels > m.dim() {
        return Err(CliError::Invalid(format!(
            "--levels must be in 1..={} for cutoff {cutoff}",
            m.dim()
        )));
    }
    if !lambda.is_finite() {
        return Err(BosonError::NonFinite.into());
    }
    let (h, scale) = match kind {
        OscillatorType::Displaced => {
            if lambda * lambda > cutoff as f64 / 4.0 {
                return Err(BosonError::CutoffTooSmall { z: lambda, cutoff }.into());
            }
            (displaced_osc_hamiltonian(lambda, m), 1.0)
        }
        OscillatorType::Squeezed => {
            let sp = squeeze_params(lambda)?;
            (squeezed_osc_hamiltonian(lambda, m)?, sp.omega)
        }
    };
    let vals = sym_eigvals(&h).map_err(|e| CliError::Invalid(format!("eigensolver failed: {e}")))?;
    Ok(vals
        .into_iter()
        .take(levels)
        .enumerate()
        .map(|(n, e)| (e, (n as f64 + 0.5) * scale))
        .collect())
}

pub fn cmd_oscillator(kind: OscillatorType, lambda: f64, cutoff: usize, levels: usize) -> Result<Outcome, CliError> {
    let rows = oscillator_energies(kind, lambda, cutoff, levels)?;
    let mut report = String::new();
    let _ = writeln!(report, "{:>4} {:>20} {:>20} {:>12}", "n", "numerical", "analytic", "deviation");
    let mut max_dev = 0.0f64;
    for (n, (num, exact)) in rows.iter().enumerate() {
        let dev = (num - exact).abs();
        max_dev = max_dev.max(dev);
        let _ = writeln!(report, "{n:>4} {num:>20.14} {exact:>20.14} {:>12}", sci(dev));
    }
    let _ = writeln!(report, "max deviation: {}", sci(max_dev));
    emit(None, &report)?;
    Ok(Outcome::Success)
}

pub fn cmd_plot(spectrum: &Path, points: Option<&Path>, baselines: bool, out: &Path) -> Result<Outcome, CliError> {
    let spec = parse_spectrum_csv(&read(spectrum)?).map_err(|e| e.in_file(spectrum))?;
    let pts = match points {
        Some(path) => parse_points_json(&read(path)?).map_err(|e| e.in_file(path))?,
        None => Vec::new(),
    };
    emit(Some(out), &render(&spec, &pts, &PlotOptions { baselines }))?;
    Ok(Outcome::Success)
}
