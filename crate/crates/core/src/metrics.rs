//! Step-response figures of merit.
//!
//! The final value is the mean of the trailing 10% of samples. Overshoot
//! compares it with the extreme reached before that window. Settling time
//! and steady-state error are only reported when the tail is flat (range
//! under 0.5% of the setpoint).

use crate::error::{Error, Result};
use crate::sim::SimTrace;

/// Fraction of the trace averaged for the final value.
pub const TAIL_FRACTION: f64 = 0.1;
/// Allowed tail range, relative to the setpoint.
pub const STEADY_TOLERANCE: f64 = 0.005;
/// Settling band, relative to the final value.
pub const SETTLING_BAND: f64 = 0.02;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepMetrics {
    pub final_value: f64,
    /// Percent of the final value, never negative.
    pub overshoot_pct: f64,
    /// 10–90% rise time in seconds.
    pub rise_time: Option<f64>,
    /// Last exit from the 2% band, in seconds.
    pub settling_time: Option<f64>,
    pub steady_state_error: Option<f64>,
    pub steady: bool,
}

pub fn trace_metrics(trace: &SimTrace) -> Result<StepMetrics> {
    trace.validate()?;
    let setpoint = *trace
        .setpoint
        .last()
        .ok_or_else(|| Error::InvalidTrace("trace is empty".into()))?;
    step_metrics(&trace.t, &trace.speed, setpoint)
}

pub fn step_metrics(t: &[f64], y: &[f64], setpoint: f64) -> Result<StepMetrics> {
    let n = y.len();
    if t.len() != n {
        return Err(Error::InvalidTrace("time and response lengths differ".into()));
    }
    if n < 2 {
        return Err(Error::InvalidTrace("need at least two samples".into()));
    }
    if t.iter().chain(y).any(|v| !v.is_finite()) || !setpoint.is_finite() {
        return Err(Error::NonFinite("trace"));
    }
    if t.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidTrace("time must be strictly increasing".into()));
    }

    let tail_len = ((n as f64 * TAIL_FRACTION) as usize).max(1);
    let w0 = n - tail_len;
    let tail = &y[w0..];
    let final_value = tail.iter().sum::<f64>() / tail_len as f64;
    let (lo, hi) = min_max(tail);
    let reference = if setpoint != 0.0 { setpoint.abs() } else { final_value.abs() };
    let steady = hi - lo < STEADY_TOLERANCE * reference;

    let y0 = y[0];
    let rising = final_value >= y0;
    let transient = if w0 > 0 { &y[..w0] } else { y };
    let (t_lo, t_hi) = min_max(transient);
    let overshoot_pct = if final_value == 0.0 {
        0.0
    } else {
        let excess = if rising { t_hi - final_value } else { final_value - t_lo };
        (excess / final_value.abs() * 100.0).max(0.0)
    };

    let rise_time = rise_time(t, y, y0, final_value);
    let settling_time = if steady { settling_time(t, y, final_value) } else { None };
    let steady_state_error = steady.then(|| (setpoint - final_value).abs());

    Ok(StepMetrics {
        final_value,
        overshoot_pct,
        rise_time,
        settling_time,
        steady_state_error,
        steady,
    })
}

fn min_max(xs: &[f64]) -> (f64, f64) {
    xs.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

fn rise_time(t: &[f64], y: &[f64], y0: f64, fin: f64) -> Option<f64> {
    let span = fin - y0;
    if span == 0.0 {
        return None;
    }
    // progress toward the final value, 0 at the start
    let frac = |k: usize| (y[k] - y0) / span;
    let crossing = |level: f64| -> Option<f64> {
        let k = (1..y.len()).find(|&k| frac(k) >= level)?;
        let (a, b) = (frac(k - 1), frac(k));
        Some(t[k - 1] + (level - a) / (b - a) * (t[k] - t[k - 1]))
    };
    Some(crossing(0.9)? - crossing(0.1)?)
}

fn settling_time(t: &[f64], y: &[f64], fin: f64) -> Option<f64> {
    let band = SETTLING_BAND * fin.abs();
    let Some(k) = (0..y.len()).rev().find(|&k| (y[k] - fin).abs() > band) else {
        return Some(t[0]);
    };
    if k + 1 == y.len() {
        return None;
    }
    let edge = if y[k] > fin { fin + band } else { fin - band };
    Some(t[k] + (edge - y[k]) / (y[k + 1] - y[k]) * (t[k + 1] - t[k]))
}
