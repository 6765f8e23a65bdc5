//! Closed-loop scenario runner.
//!
//! The plant is sampled every `dt`; the controller output is held over the
//! following interval (zero-order hold) while RK4 advances the motor.
//! In open loop the setpoint value is applied directly as armature voltage.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzySystem;
use crate::pid::{pid_step, PidConfig, PidGains, PidState};
use crate::plant::{step_rk4, MotorParams, PlantState};
use crate::supervisor::{fuzzy_pid_step, FuzzyPidState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ControllerKind {
    OpenLoop,
    Pid,
    FuzzyPid,
}

impl ControllerKind {
    pub const ALL: [ControllerKind; 3] = [
        ControllerKind::OpenLoop,
        ControllerKind::Pid,
        ControllerKind::FuzzyPid,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ControllerKind::OpenLoop => "open-loop",
            ControllerKind::Pid => "pid",
            ControllerKind::FuzzyPid => "fuzzy-pid",
        }
    }

    /// Run length that leaves the trailing 10% of the trace settled.
    pub fn default_duration(self) -> f64 {
        match self {
            ControllerKind::OpenLoop => 5.0,
            ControllerKind::Pid => 12.0,
            ControllerKind::FuzzyPid => 2.0,
        }
    }
}

impl fmt::Display for ControllerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ControllerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ControllerKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| {
                Error::invalid("controller", format!("expected open-loop, pid or fuzzy-pid, got `{s}`"))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Controller {
    OpenLoop,
    Pid(PidGains),
    FuzzyPid(Arc<FuzzySystem>),
}

impl Controller {
    pub fn kind(&self) -> ControllerKind {
        match self {
            Controller::OpenLoop => ControllerKind::OpenLoop,
            Controller::Pid(_) => ControllerKind::Pid,
            Controller::FuzzyPid(_) => ControllerKind::FuzzyPid,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub controller: Controller,
    pub setpoint: f64,
    pub dt: f64,
    pub duration: f64,
    pub plant: MotorParams,
    pub pid: PidConfig,
}

impl SimConfig {
    /// 2000-unit step, 1 ms sampling, reference motor, per-kind duration.
    pub fn new(controller: Controller) -> Self {
        let duration = controller.kind().default_duration();
        SimConfig {
            controller,
            setpoint: 2000.0,
            dt: 1e-3,
            duration,
            plant: MotorParams::default(),
            pid: PidConfig::default(),
        }
    }

    pub fn open_loop() -> Self {
        Self::new(Controller::OpenLoop)
    }

    pub fn pid(gains: PidGains) -> Self {
        Self::new(Controller::Pid(gains))
    }

    pub fn fuzzy_pid(fis: Arc<FuzzySystem>) -> Self {
        Self::new(Controller::FuzzyPid(fis))
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::invalid("dt", format!("must be finite and > 0, got {}", self.dt)));
        }
        if !self.duration.is_finite() || self.duration < 100.0 * self.dt {
            return Err(Error::invalid(
                "duration",
                format!("must be at least 100·dt = {}, got {}", 100.0 * self.dt, self.duration),
            ));
        }
        if !self.setpoint.is_finite() {
            return Err(Error::invalid("setpoint", "must be finite"));
        }
        self.plant.validate()?;
        self.pid.validate()?;
        if let Controller::Pid(g) = &self.controller {
            g.validate()?;
        }
        Ok(())
    }

    pub fn samples(&self) -> usize {
        (self.duration / self.dt).round() as usize + 1
    }
}

/// Uniformly sampled record of one run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SimTrace {
    pub t: Vec<f64>,
    pub setpoint: Vec<f64>,
    pub speed: Vec<f64>,
    pub control: Vec<f64>,
    pub error: Vec<f64>,
    pub derror: Vec<f64>,
    pub kp: Vec<f64>,
    pub ki: Vec<f64>,
    pub kd: Vec<f64>,
}

/// One row of a [`SimTrace`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub t: f64,
    pub setpoint: f64,
    pub speed: f64,
    pub control: f64,
    pub error: f64,
    pub derror: f64,
    pub gains: PidGains,
}

impl SimTrace {
    pub fn with_capacity(n: usize) -> Self {
        SimTrace {
            t: Vec::with_capacity(n),
            setpoint: Vec::with_capacity(n),
            speed: Vec::with_capacity(n),
            control: Vec::with_capacity(n),
            error: Vec::with_capacity(n),
            derror: Vec::with_capacity(n),
            kp: Vec::with_capacity(n),
            ki: Vec::with_capacity(n),
            kd: Vec::with_capacity(n),
        }
    }

    pub fn push(&mut self, s: Sample) {
        self.t.push(s.t);
        self.setpoint.push(s.setpoint);
        self.speed.push(s.speed);
        self.control.push(s.control);
        self.error.push(s.error);
        self.derror.push(s.derror);
        self.kp.push(s.gains.kp);
        self.ki.push(s.gains.ki);
        self.kd.push(s.gains.kd);
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn sample(&self, k: usize) -> Sample {
        Sample {
            t: self.t[k],
            setpoint: self.setpoint[k],
            speed: self.speed[k],
            control: self.control[k],
            error: self.error[k],
            derror: self.derror[k],
            gains: PidGains {
                kp: self.kp[k],
                ki: self.ki[k],
                kd: self.kd[k],
            },
        }
    }

    pub fn columns(&self) -> [&[f64]; 9] {
        [
            &self.t,
            &self.setpoint,
            &self.speed,
            &self.control,
            &self.error,
            &self.derror,
            &self.kp,
            &self.ki,
            &self.kd,
        ]
    }

    /// Checks equal column lengths and a strictly increasing time grid.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if self.columns().iter().any(|c| c.len() != n) {
            return Err(Error::InvalidTrace("columns have different lengths".into()));
        }
        if self.t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidTrace("time must be strictly increasing".into()));
        }
        Ok(())
    }
}

enum LoopState {
    Open { prev_error: Option<f64> },
    Pid(PidState),
    Fuzzy(FuzzyPidState),
}

/// Simulate one step response.
pub fn run(config: &SimConfig) -> Result<SimTrace> {
    config.validate()?;
    let n = config.samples();
    let dt = config.dt;
    let sp = config.setpoint;
    let mut trace = SimTrace::with_capacity(n);
    let mut plant = PlantState::REST;
    let mut ctl = match &config.controller {
        Controller::OpenLoop => LoopState::Open { prev_error: None },
        Controller::Pid(_) => LoopState::Pid(PidState::new()),
        Controller::FuzzyPid(_) => LoopState::Fuzzy(FuzzyPidState::default()),
    };

    for k in 0..n {
        let t = k as f64 * dt;
        let speed = plant.speed;
        let (control, error, derror, gains) = match (&config.controller, &mut ctl) {
            (Controller::OpenLoop, LoopState::Open { prev_error }) => {
                let e = sp - speed;
                let de = prev_error.map_or(0.0, |p| (e - p) / dt);
                *prev_error = Some(e);
                (sp, e, de, PidGains::ZERO)
            }
            (Controller::Pid(gains), LoopState::Pid(state)) => {
                let out = pid_step(state, gains, sp, speed, dt, &config.pid)?;
                *state = out.state;
                (out.control, out.error, out.error_rate, *gains)
            }
            (Controller::FuzzyPid(fis), LoopState::Fuzzy(state)) => {
                let out = fuzzy_pid_step(state, fis, sp, speed, dt, &config.pid)?;
                *state = out.state;
                (out.control, out.error, out.error_rate, out.gains)
            }
            _ => unreachable!("loop state is built from the controller"),
        };
        trace.push(Sample {
            t,
            setpoint: sp,
            speed,
            control,
            error,
            derror,
            gains,
        });
        if k + 1 < n {
            plant = step_rk4(plant, control, dt, &config.plant)?;
        }
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn open_loop_trace_shape() {
        let cfg = SimConfig::open_loop();
        let tr = run(&cfg).unwrap();
        assert_eq!(tr.len(), 5001);
        tr.validate().unwrap();
        assert_eq!(tr.t[0], 0.0);
        assert!((tr.t[5000] - 5.0).abs() < 1e-12);
        assert!(tr.kp.iter().chain(&tr.ki).chain(&tr.kd).all(|&g| g == 0.0));
        assert!(tr.control.iter().all(|&u| u == 2000.0));
        assert_eq!(tr.derror[0], 0.0);
        let last = *tr.speed.last().unwrap();
        assert!((last - 1503.76).abs() < 0.001 * 1503.76, "{last}");
    }

    #[test]
    fn rejects_invalid_config() {
        let mut cfg = SimConfig::open_loop();
        cfg.dt = -1.0;
        assert!(run(&cfg).is_err());
        let mut cfg = SimConfig::open_loop();
        cfg.duration = 50.0 * cfg.dt;
        assert!(run(&cfg).is_err());
        let mut cfg = SimConfig::open_loop();
        cfg.setpoint = f64::NAN;
        assert!(run(&cfg).is_err());
    }

    #[test]
    fn deterministic() {
        let cfg = SimConfig::pid(PidGains::default());
        assert_eq!(run(&cfg).unwrap(), run(&cfg).unwrap());
    }

    #[test]
    fn kind_labels() {
        for k in ControllerKind::ALL {
            assert_eq!(k.label().parse::<ControllerKind>().unwrap(), k);
        }
        assert!("fuzzy".parse::<ControllerKind>().is_err());
    }
}
