//! Side-by-side step-response comparison in the layout of the classic
//! open-loop / PID / fuzzy-PID results table.

use std::fmt;
use std::thread;

use crate::error::{Error, Result};
use crate::metrics::{trace_metrics, StepMetrics};
use crate::sim::{run, SimConfig, SimTrace};

/// One scenario's outcome. A failure stays in its own column.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub label: String,
    pub outcome: Result<(SimTrace, StepMetrics)>,
}

impl Column {
    pub fn metrics(&self) -> Option<&StepMetrics> {
        self.outcome.as_ref().ok().map(|(_, m)| m)
    }

    pub fn trace(&self) -> Option<&SimTrace> {
        self.outcome.as_ref().ok().map(|(t, _)| t)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub columns: Vec<Column>,
}

fn evaluate(config: &SimConfig) -> Result<(SimTrace, StepMetrics)> {
    let trace = run(config)?;
    let metrics = trace_metrics(&trace)?;
    Ok((trace, metrics))
}

/// Runs every scenario (concurrently) and keeps the input order.
/// Labels default to the controller kind.
pub fn compare(configs: &[SimConfig]) -> Result<Comparison> {
    let labelled: Vec<(String, SimConfig)> = configs
        .iter()
        .map(|c| (c.controller.kind().label().to_string(), c.clone()))
        .collect();
    compare_labelled(&labelled)
}

pub fn compare_labelled(configs: &[(String, SimConfig)]) -> Result<Comparison> {
    if configs.is_empty() {
        return Err(Error::invalid("configs", "need at least one scenario"));
    }
    let outcomes: Vec<Result<(SimTrace, StepMetrics)>> = thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|(_, cfg)| s.spawn(move || evaluate(cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scenario thread panicked"))
            .collect()
    });
    let columns = configs
        .iter()
        .zip(outcomes)
        .map(|((label, _), outcome)| Column {
            label: label.clone(),
            outcome,
        })
        .collect();
    Ok(Comparison { columns })
}

pub const ROW_LABELS: [&str; 4] = [
    "Overshoot (%)",
    "Rise time (10-90%) (s)",
    "Steady state error",
    "Settling time (2%) (s)",
];

const LABEL_WIDTH: usize = 24;
const CELL_WIDTH: usize = 14;

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "undefined".to_string(), |x| format!("{x:.digits$}"))
}

impl Comparison {
    /// Cell text for each row, column by column.
    pub fn cells(&self) -> Vec<[String; 4]> {
        self.columns
            .iter()
            .map(|c| match c.metrics() {
                Some(m) => [
                    format!("{:.3}", m.overshoot_pct),
                    opt(m.rise_time, 4),
                    opt(m.steady_state_error, 3),
                    opt(m.settling_time, 4),
                ],
                None => std::array::from_fn(|_| "error".to_string()),
            })
            .collect()
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:<LABEL_WIDTH$}", "Parameters")?;
        for c in &self.columns {
            write!(f, " {:>CELL_WIDTH$}", c.label)?;
        }
        writeln!(f)?;
        let cells = self.cells();
        for (r, label) in ROW_LABELS.iter().enumerate() {
            write!(f, "{label:<LABEL_WIDTH$}")?;
            for col in &cells {
                write!(f, " {:>CELL_WIDTH$}", col[r])?;
            }
            writeln!(f)?;
        }
        for c in &self.columns {
            if let Err(e) = &c.outcome {
                writeln!(f, "{}: {e}", c.label)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pid::PidGains;

    #[test]
    fn single_and_duplicate_columns() {
        let cfg = SimConfig::open_loop();
        let one = compare(std::slice::from_ref(&cfg)).unwrap();
        assert_eq!(one.columns.len(), 1);
        let two = compare(&[cfg.clone(), cfg]).unwrap();
        assert_eq!(two.columns[0], two.columns[1]);
        assert_eq!(two.to_string().lines().count(), 5);
    }

    #[test]
    fn failing_column_does_not_abort_others() {
        let good = SimConfig::open_loop();
        let mut bad = SimConfig::pid(PidGains::default());
        bad.dt = 0.0;
        let cmp = compare(&[good, bad]).unwrap();
        assert!(cmp.columns[0].outcome.is_ok());
        assert!(cmp.columns[1].outcome.is_err());
        let text = cmp.to_string();
        assert!(text.contains("error"));
        assert!(text.lines().last().unwrap().starts_with("pid: "));
    }

    #[test]
    fn empty_input_rejected() {
        assert!(compare(&[]).is_err());
    }
}
