//! Fuzzy self-tuning PID: the scheduler picks (Kp, Ki, Kd) from the current
//! error and its raw backward difference, then the PID law runs with them.

use crate::error::{ensure_finite, Error, Result};
use crate::fuzzy::FuzzySystem;
use crate::pid::{pid_step, PidConfig, PidGains, PidState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyPidState {
    pub pid: PidState,
    pub last_gains: PidGains,
    /// Error at the previous sample; `None` before the first one.
    pub prev_error: Option<f64>,
}

impl Default for FuzzyPidState {
    fn default() -> Self {
        FuzzyPidState {
            pid: PidState::new(),
            last_gains: PidGains::ZERO,
            prev_error: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyPidStep {
    pub control: f64,
    pub gains: PidGains,
    pub error: f64,
    /// Error change fed to the scheduler.
    pub error_rate: f64,
    pub state: FuzzyPidState,
}

pub fn fuzzy_pid_step(
    state: &FuzzyPidState,
    fis: &FuzzySystem,
    setpoint: f64,
    measurement: f64,
    dt: f64,
    config: &PidConfig,
) -> Result<FuzzyPidStep> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("dt", format!("must be finite and > 0, got {dt}")));
    }
    ensure_finite(setpoint, "setpoint")?;
    ensure_finite(measurement, "measurement")?;

    let error = setpoint - measurement;
    let error_rate = match state.prev_error {
        Some(prev) => (error - prev) / dt,
        None => 0.0,
    };
    let gains = fis.gains_from_error(error, error_rate);
    let out = pid_step(&state.pid, &gains, setpoint, measurement, dt, config)?;

    Ok(FuzzyPidStep {
        control: out.control,
        gains,
        error,
        error_rate,
        state: FuzzyPidState {
            pid: out.state,
            last_gains: gains,
            prev_error: Some(error),
        },
    })
}
