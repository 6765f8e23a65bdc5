//! Sampled-time PID law.
//!
//! `u = kp·e + I + kd·d`, where `I` accumulates `ki·e` with the trapezoidal
//! rule and `d` is the error derivative passed through the first-order
//! filter `N/(s + N)`. Accumulating `ki·e` (rather than scaling a bare
//! `∫e` by the current `ki`) keeps the output continuous when the gains
//! are rescheduled every sample. For constant gains the two forms agree.

use crate::error::{ensure_finite, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidGains {
    pub kp: f64,
    /// 1/s
    pub ki: f64,
    /// s
    pub kd: f64,
}

impl Default for PidGains {
    /// Manually tuned gains for the reference motor.
    fn default() -> Self {
        PidGains {
            kp: 30.0,
            ki: 12.0,
            kd: 1.0,
        }
    }
}

impl PidGains {
    pub const ZERO: PidGains = PidGains {
        kp: 0.0,
        ki: 0.0,
        kd: 0.0,
    };

    pub fn new(kp: f64, ki: f64, kd: f64) -> Result<Self> {
        let gains = PidGains { kp, ki, kd };
        gains.validate()?;
        Ok(gains)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("kp", self.kp), ("ki", self.ki), ("kd", self.kd)] {
            if !(value.is_finite() && value >= 0.0) {
                return Err(Error::invalid(name, format!("must be finite and >= 0, got {value}")));
            }
        }
        Ok(())
    }
}

/// How the derivative path treats the very first sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivativeStart {
    /// The error is taken to be zero before the first sample, so a setpoint
    /// step produces the usual (filtered) derivative kick.
    #[default]
    FromRest,
    /// The derivative term is zero on the first sample.
    Suppressed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidConfig {
    /// Derivative filter bandwidth `N` in rad/s. `None` uses the raw
    /// backward difference.
    pub filter_n: Option<f64>,
    /// Output clamp `(min, max)`. Enables conditional integration.
    pub output_limits: Option<(f64, f64)>,
    pub derivative_start: DerivativeStart,
}

impl Default for PidConfig {
    fn default() -> Self {
        PidConfig {
            filter_n: Some(100.0),
            output_limits: None,
            derivative_start: DerivativeStart::FromRest,
        }
    }
}

impl PidConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(n) = self.filter_n {
            if !(n.is_finite() && n > 0.0) {
                return Err(Error::invalid("filter_n", format!("must be finite and > 0, got {n}")));
            }
        }
        if let Some((lo, hi)) = self.output_limits {
            if lo.is_nan() || hi.is_nan() || lo >= hi {
                return Err(Error::invalid(
                    "output_limits",
                    format!("need min < max, got ({lo}, {hi})"),
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PidState {
    /// Trapezoidal accumulation of `ki·e`, in output units.
    pub integral: f64,
    pub prev_error: f64,
    /// Filtered error derivative.
    pub d_filt: f64,
    pub initialized: bool,
}

impl PidState {
    pub fn new() -> Self {
        Self::default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PidStep {
    pub control: f64,
    pub state: PidState,
    pub error: f64,
    /// Raw backward difference of the error, zero on the first sample.
    pub error_rate: f64,
}

pub fn pid_step(
    state: &PidState,
    gains: &PidGains,
    setpoint: f64,
    measurement: f64,
    dt: f64,
    config: &PidConfig,
) -> Result<PidStep> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("dt", format!("must be finite and > 0, got {dt}")));
    }
    ensure_finite(setpoint, "setpoint")?;
    ensure_finite(measurement, "measurement")?;

    let error = setpoint - measurement;
    let (error_rate, derivative_input, increment) = if state.initialized {
        let rate = (error - state.prev_error) / dt;
        let inc = gains.ki * 0.5 * (error + state.prev_error) * dt;
        (rate, rate, inc)
    } else {
        let kick = match config.derivative_start {
            DerivativeStart::FromRest => error / dt,
            DerivativeStart::Suppressed => 0.0,
        };
        (0.0, kick, 0.0)
    };

    let d_filt = match config.filter_n {
        Some(n) => {
            let tf = 1.0 / n;
            // backward Euler on tf·ḋ + d = de/dt
            (tf * state.d_filt + dt * derivative_input) / (tf + dt)
        }
        None => derivative_input,
    };

    let pd = gains.kp * error + gains.kd * d_filt;
    let mut integral = state.integral + increment;
    let mut control = pd + integral;
    if let Some((lo, hi)) = config.output_limits {
        let winding_up = (control > hi && increment > 0.0) || (control < lo && increment < 0.0);
        if winding_up {
            integral = state.integral;
            control = pd + integral;
        }
        control = control.clamp(lo, hi);
    }

    Ok(PidStep {
        control,
        state: PidState {
            integral,
            prev_error: error,
            d_filt,
            initialized: true,
        },
        error,
        error_rate,
    })
}
