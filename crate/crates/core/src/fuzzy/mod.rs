//! Mamdani fuzzy inference for PID gain scheduling.
//!
//! Two inputs (speed error and its rate of change), each partitioned into
//! NL, NS, ZE, PS, PL. Three outputs (Kp, Ki, Kd), each with seven terms
//! PVS..PVL. Min for AND, max for aggregation, centroid defuzzification.

mod config;
mod membership;
mod rules;
mod system;
mod terms;
mod variable;

pub use config::{uniform_peaks, FuzzyConfig, InputGeometry, KD_MAX, KI_MAX, KP_MAX};
pub use membership::MembershipFn;
pub use rules::{RuleBase, RuleTable, DEFAULT_RULES};
pub use system::{defuzz_centroid, infer, FuzzySystem, Inference, MIN_RESOLUTION};
pub use terms::{InputTerm, OutputTerm, UnknownTerm};
pub use variable::{InputVariable, OutputVariable};
