//! Speed control of an armature-driven DC motor.
//!
//! * [`plant`]: the two-state motor model and its RK4 integrator.
//! * [`oracle`]: closed-form step responses and closed-loop poles used to
//!   check the integrator and the PID loop.
//! * [`pid`]: discrete PID with filtered derivative and optional clamp.
//! * [`fuzzy`]: Mamdani inference mapping (error, error change) to gains.
//! * [`supervisor`]: the fuzzy self-tuning PID step.
//! * [`sim`], [`metrics`], [`report`], [`svg`], [`trace_csv`]: scenario
//!   runner, step-response figures, comparison table and file output.

pub mod error;
pub mod fuzzy;
pub mod metrics;
pub mod oracle;
pub mod pid;
pub mod plant;
pub mod report;
pub mod sim;
pub mod supervisor;
pub mod svg;
pub mod trace_csv;

pub use error::{Error, Result};
pub use fuzzy::{FuzzyConfig, FuzzySystem};
pub use metrics::{step_metrics, trace_metrics, StepMetrics};
pub use pid::{pid_step, DerivativeStart, PidConfig, PidGains, PidState, PidStep};
pub use plant::{step_rk4, MotorParams, PlantState};
pub use report::{compare, Comparison};
pub use sim::{run, Controller, ControllerKind, SimConfig, SimTrace};
pub use supervisor::{fuzzy_pid_step, FuzzyPidState, FuzzyPidStep};
