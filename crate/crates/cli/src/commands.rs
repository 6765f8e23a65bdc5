use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use motorctl::report::Comparison;
use motorctl::svg::{overlay_chart, step_response_chart};
use motorctl::trace_csv::{read_trace, write_trace};
use motorctl::{compare, run, trace_metrics, SimTrace, StepMetrics};

use crate::error::CliError;
use crate::manifest::RunManifest;

fn prepare_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn write_csv(path: &Path, trace: &SimTrace) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    write_trace(trace, BufWriter::new(file)).map_err(|e| CliError::file(path, e))
}

pub fn format_metrics(m: &StepMetrics) -> String {
    fn opt(v: Option<f64>) -> String {
        v.map_or_else(|| "undefined".to_string(), |x| x.to_string())
    }
    let mut s = String::new();
    let _ = writeln!(s, "final_value = {}", m.final_value);
    let _ = writeln!(s, "overshoot_pct = {}", m.overshoot_pct);
    let _ = writeln!(s, "rise_time_s = {}", opt(m.rise_time));
    let _ = writeln!(s, "settling_time_s = {}", opt(m.settling_time));
    let _ = writeln!(s, "steady_state_error = {}", opt(m.steady_state_error));
    let _ = writeln!(s, "steady = {}", m.steady);
    s
}

/// Runs the selected scenario. Returns the files written.
pub fn cmd_simulate(manifest: &RunManifest) -> Result<Vec<PathBuf>, CliError> {
    let cfg = manifest.selected();
    let label = cfg.controller.kind().label();
    let trace = run(cfg)?;
    prepare_dir(&manifest.out_dir)?;
    let mut written = Vec::new();

    if manifest.emit.csv {
        let path = manifest.out_dir.join(format!("{label}.csv"));
        write_csv(&path, &trace)?;
        written.push(path);
    }
    if manifest.emit.report {
        let path = manifest.out_dir.join(format!("{label}.metrics.txt"));
        write_text(&path, &format_metrics(&trace_metrics(&trace)?))?;
        written.push(path);
    }
    if manifest.emit.svg {
        let path = manifest.out_dir.join(format!("{label}.svg"));
        let chart = step_response_chart(&format!("{label} step response"), &trace);
        write_text(&path, &chart.render())?;
        written.push(path);
    }
    Ok(written)
}

pub fn render_overlay(cmp: &Comparison) -> String {
    let traces: Vec<(&str, &SimTrace)> = cmp
        .columns
        .iter()
        .filter_map(|c| c.trace().map(|t| (c.label.as_str(), t)))
        .collect();
    overlay_chart("Step responses", &traces).render()
}

/// Runs all three scenarios and writes the table and the overlay plot,
/// plus one trace per scenario when CSV output is on.
pub fn cmd_compare(manifest: &RunManifest) -> Result<(Comparison, Vec<PathBuf>), CliError> {
    let cmp = compare(&manifest.scenarios)?;
    prepare_dir(&manifest.out_dir)?;
    let mut written = Vec::new();

    let report = manifest.out_dir.join("compare.txt");
    write_text(&report, &cmp.to_string())?;
    written.push(report);

    let svg = manifest.out_dir.join("compare.svg");
    write_text(&svg, &render_overlay(&cmp))?;
    written.push(svg);

    if manifest.emit.csv {
        for col in &cmp.columns {
            if let Some(trace) = col.trace() {
                let path = manifest.out_dir.join(format!("{}.csv", col.label));
                write_csv(&path, trace)?;
                written.push(path);
            }
        }
    }
    Ok((cmp, written))
}

/// Evenly spaced samples of `[-half, half]`; the middle one is exactly 0
/// for odd `n`.
fn grid(half: f64, n: usize) -> Vec<f64> {
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| half * (2.0 * i as f64 - last) / last)
        .collect()
}

pub fn gains_surface(manifest: &RunManifest) -> String {
    let fis = &manifest.fis;
    let n = manifest.settings.surface_grid;
    let e_half = fis.e_var().universe().1 / fis.e_var().scale();
    let de_half = fis.de_var().universe().1 / fis.de_var().scale();
    let mut out = String::from("e,de,kp,ki,kd\n");
    for &e in &grid(e_half, n) {
        for &de in &grid(de_half, n) {
            let g = fis.gains_from_error(e, de);
            let _ = writeln!(out, "{e},{de},{},{},{}", g.kp, g.ki, g.kd);
        }
    }
    out
}

pub fn cmd_gains_surface(manifest: &RunManifest) -> Result<PathBuf, CliError> {
    prepare_dir(&manifest.out_dir)?;
    let path = manifest.out_dir.join("gains_surface.csv");
    write_text(&path, &gains_surface(manifest))?;
    Ok(path)
}

pub fn cmd_metrics(path: &Path) -> Result<String, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    let trace = read_trace(file).map_err(|e| CliError::file(path, e))?;
    let m = trace_metrics(&trace).map_err(|e| CliError::file(path, e))?;
    Ok(format_metrics(&m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_symmetric_with_exact_zero() {
        let g = grid(2000.0, 41);
        assert_eq!(g.len(), 41);
        assert_eq!(g[0], -2000.0);
        assert_eq!(g[40], 2000.0);
        assert_eq!(g[20], 0.0);
        for i in 0..41 {
            assert_eq!(g[i], -g[40 - i]);
        }
    }
}
