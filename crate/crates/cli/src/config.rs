//! Flat `key = value` run configuration.
//!
//! Blank lines and `#` comments are ignored. Every key is optional and
//! unknown keys are rejected. [`Settings::to_config_string`] writes every
//! key back out, so a written file parses to an equal value.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use motorctl::fuzzy::{FuzzyConfig, InputGeometry, KD_MAX, KI_MAX, KP_MAX, MIN_RESOLUTION};
use motorctl::{ControllerKind, DerivativeStart, MotorParams, PidConfig, PidGains};

use crate::error::CliError;

/// Every key accepted in a config file, in the order they are written.
pub const KEYS: &[&str] = &[
    "sim.controller",
    "sim.setpoint",
    "sim.dt",
    "sim.duration",
    "plant.kt",
    "plant.kb",
    "plant.ra",
    "plant.la",
    "plant.b",
    "plant.j",
    "pid.kp",
    "pid.ki",
    "pid.kd",
    "pid.filter_n",
    "pid.u_min",
    "pid.u_max",
    "pid.derivative_start",
    "fuzzy.e.universe",
    "fuzzy.e.inner",
    "fuzzy.e.scale",
    "fuzzy.de.universe",
    "fuzzy.de.inner",
    "fuzzy.de.scale",
    "fuzzy.kp.peaks",
    "fuzzy.ki.peaks",
    "fuzzy.kd.peaks",
    "fuzzy.resolution",
    "fuzzy.rules",
    "surface.grid",
    "out.dir",
    "out.csv",
    "out.svg",
    "out.report",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub controller: ControllerKind,
    pub setpoint: f64,
    pub dt: f64,
    /// `None` picks the per-controller default.
    pub duration: Option<f64>,
    pub plant: MotorParams,
    pub gains: PidGains,
    pub pid: PidConfig,
    pub fuzzy: FuzzyGeometry,
    /// Rule fixture path; `None` uses the built-in tables.
    pub rules: Option<PathBuf>,
    pub surface_grid: usize,
    pub out_dir: PathBuf,
    pub emit: Emit,
}

/// The numeric part of a [`FuzzyConfig`]; rule tables are loaded separately.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FuzzyGeometry {
    pub e: InputGeometry,
    pub de: InputGeometry,
    pub kp_peaks: [f64; 7],
    pub ki_peaks: [f64; 7],
    pub kd_peaks: [f64; 7],
    pub resolution: usize,
}

impl Default for FuzzyGeometry {
    fn default() -> Self {
        let d = FuzzyConfig::default();
        FuzzyGeometry {
            e: d.e,
            de: d.de,
            kp_peaks: d.kp_peaks,
            ki_peaks: d.ki_peaks,
            kd_peaks: d.kd_peaks,
            resolution: d.resolution,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Emit {
    pub csv: bool,
    pub svg: bool,
    pub report: bool,
}

impl Default for Emit {
    fn default() -> Self {
        Emit {
            csv: true,
            svg: false,
            report: true,
        }
    }
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            controller: ControllerKind::Pid,
            setpoint: 2000.0,
            dt: 1e-3,
            duration: None,
            plant: MotorParams::default(),
            gains: PidGains::default(),
            pid: PidConfig::default(),
            fuzzy: FuzzyGeometry::default(),
            rules: None,
            surface_grid: 41,
            out_dir: PathBuf::from("out"),
            emit: Emit::default(),
        }
    }
}

struct Line<'a> {
    no: usize,
    key: &'a str,
    value: &'a str,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> CliError {
        CliError::Config {
            line: self.no,
            message: format!("`{}`: {}", self.key, message.into()),
        }
    }

    fn float(&self) -> Result<f64, CliError> {
        let v: f64 = self
            .value
            .parse()
            .map_err(|_| self.err(format!("expected a number, got `{}`", self.value)))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(self.err("must be finite"))
        }
    }

    fn positive(&self) -> Result<f64, CliError> {
        let v = self.float()?;
        if v > 0.0 {
            Ok(v)
        } else {
            Err(self.err(format!("must be > 0, got {v}")))
        }
    }

    fn non_negative(&self) -> Result<f64, CliError> {
        let v = self.float()?;
        if v >= 0.0 {
            Ok(v)
        } else {
            Err(self.err(format!("must be >= 0, got {v}")))
        }
    }

    fn unit_open(&self) -> Result<f64, CliError> {
        let v = self.float()?;
        if v > 0.0 && v < 1.0 {
            Ok(v)
        } else {
            Err(self.err(format!("must lie strictly between 0 and 1, got {v}")))
        }
    }

    fn optional(&self) -> Option<&str> {
        (self.value != "none").then_some(self.value)
    }

    fn boolean(&self) -> Result<bool, CliError> {
        match self.value {
            "true" => Ok(true),
            "false" => Ok(false),
            other => Err(self.err(format!("expected true or false, got `{other}`"))),
        }
    }

    fn count(&self, min: usize) -> Result<usize, CliError> {
        let v: usize = self
            .value
            .parse()
            .map_err(|_| self.err(format!("expected a whole number, got `{}`", self.value)))?;
        if v >= min {
            Ok(v)
        } else {
            Err(self.err(format!("must be at least {min}, got {v}")))
        }
    }

    fn peaks(&self, max: f64) -> Result<[f64; 7], CliError> {
        let parts: Vec<&str> = self.value.split(',').map(str::trim).collect();
        if parts.len() != 7 {
            return Err(self.err(format!("expected 7 comma-separated peaks, got {}", parts.len())));
        }
        let mut out = [0.0_f64; 7];
        for (slot, p) in out.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| self.err(format!("`{p}` is not a number")))?;
        }
        if out[0] < 0.0 || out[6] != max || out.windows(2).any(|w| w[0] >= w[1]) {
            return Err(self.err(format!(
                "peaks must increase strictly from >= 0 and end at {max}"
            )));
        }
        Ok(out)
    }
}

impl Settings {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut s = Settings::default();
        let mut seen: Vec<&str> = Vec::new();
        // lines of the clamp keys, for the cross-check below
        let mut limit_line = 0;
        let (mut u_min, mut u_max) = (None, None);

        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or(CliError::Config {
                line: no,
                message: format!("expected `key = value`, got `{content}`"),
            })?;
            let line = Line {
                no,
                key: key.trim(),
                value: value.trim(),
            };
            let Some(&key) = KEYS.iter().find(|k| **k == line.key) else {
                return Err(CliError::Config {
                    line: no,
                    message: format!("unknown key `{}`", line.key),
                });
            };
            if seen.contains(&key) {
                return Err(line.err("set more than once"));
            }
            seen.push(key);

            match key {
                "sim.controller" => {
                    s.controller = ControllerKind::from_str(line.value).map_err(|e| line.err(e.to_string()))?
                }
                "sim.setpoint" => s.setpoint = line.float()?,
                "sim.dt" => s.dt = line.positive()?,
                "sim.duration" => {
                    s.duration = match line.optional() {
                        None => None,
                        Some(_) => Some(line.positive()?),
                    }
                }
                "plant.kt" => s.plant.kt = line.positive()?,
                "plant.kb" => s.plant.kb = line.positive()?,
                "plant.ra" => s.plant.ra = line.positive()?,
                "plant.la" => s.plant.la = line.positive()?,
                "plant.b" => s.plant.b = line.positive()?,
                "plant.j" => s.plant.j = line.positive()?,
                "pid.kp" => s.gains.kp = line.non_negative()?,
                "pid.ki" => s.gains.ki = line.non_negative()?,
                "pid.kd" => s.gains.kd = line.non_negative()?,
                "pid.filter_n" => {
                    s.pid.filter_n = match line.optional() {
                        None => None,
                        Some(_) => Some(line.positive()?),
                    }
                }
                "pid.u_min" => {
                    u_min = line.optional().map(|_| line.float()).transpose()?;
                    limit_line = limit_line.max(no);
                }
                "pid.u_max" => {
                    u_max = line.optional().map(|_| line.float()).transpose()?;
                    limit_line = limit_line.max(no);
                }
                "pid.derivative_start" => {
                    s.pid.derivative_start = match line.value {
                        "from-rest" => DerivativeStart::FromRest,
                        "suppressed" => DerivativeStart::Suppressed,
                        other => return Err(line.err(format!("expected from-rest or suppressed, got `{other}`"))),
                    }
                }
                "fuzzy.e.universe" => s.fuzzy.e.half_width = line.positive()?,
                "fuzzy.e.inner" => s.fuzzy.e.inner = line.unit_open()?,
                "fuzzy.e.scale" => s.fuzzy.e.scale = line.positive()?,
                "fuzzy.de.universe" => s.fuzzy.de.half_width = line.positive()?,
                "fuzzy.de.inner" => s.fuzzy.de.inner = line.unit_open()?,
                "fuzzy.de.scale" => s.fuzzy.de.scale = line.positive()?,
                "fuzzy.kp.peaks" => s.fuzzy.kp_peaks = line.peaks(KP_MAX)?,
                "fuzzy.ki.peaks" => s.fuzzy.ki_peaks = line.peaks(KI_MAX)?,
                "fuzzy.kd.peaks" => s.fuzzy.kd_peaks = line.peaks(KD_MAX)?,
                "fuzzy.resolution" => s.fuzzy.resolution = line.count(MIN_RESOLUTION)?,
                "fuzzy.rules" => s.rules = line.optional().map(PathBuf::from),
                "surface.grid" => s.surface_grid = line.count(2)?,
                "out.dir" => {
                    if line.value.is_empty() {
                        return Err(line.err("must not be empty"));
                    }
                    s.out_dir = PathBuf::from(line.value)
                }
                "out.csv" => s.emit.csv = line.boolean()?,
                "out.svg" => s.emit.svg = line.boolean()?,
                "out.report" => s.emit.report = line.boolean()?,
                _ => unreachable!("every entry in KEYS is handled"),
            }
        }

        s.pid.output_limits = match (u_min, u_max) {
            (None, None) => None,
            (Some(lo), Some(hi)) if lo < hi => Some((lo, hi)),
            (Some(lo), Some(hi)) => {
                return Err(CliError::Config {
                    line: limit_line,
                    message: format!("`pid.u_min` ({lo}) must be below `pid.u_max` ({hi})"),
                })
            }
            _ => {
                return Err(CliError::Config {
                    line: limit_line,
                    message: "`pid.u_min` and `pid.u_max` must be set together".into(),
                })
            }
        };
        Ok(s)
    }

    pub fn to_config_string(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map_or_else(|| "none".to_string(), |x| x.to_string())
        }
        fn peaks(p: &[f64; 7]) -> String {
            p.iter().map(f64::to_string).collect::<Vec<_>>().join(", ")
        }
        let f = &self.fuzzy;
        let (u_min, u_max) = match self.pid.output_limits {
            Some((lo, hi)) => (Some(lo), Some(hi)),
            None => (None, None),
        };
        let start = match self.pid.derivative_start {
            DerivativeStart::FromRest => "from-rest",
            DerivativeStart::Suppressed => "suppressed",
        };
        let values: Vec<String> = vec![
            self.controller.to_string(),
            self.setpoint.to_string(),
            self.dt.to_string(),
            opt(self.duration),
            self.plant.kt.to_string(),
            self.plant.kb.to_string(),
            self.plant.ra.to_string(),
            self.plant.la.to_string(),
            self.plant.b.to_string(),
            self.plant.j.to_string(),
            self.gains.kp.to_string(),
            self.gains.ki.to_string(),
            self.gains.kd.to_string(),
            opt(self.pid.filter_n),
            opt(u_min),
            opt(u_max),
            start.to_string(),
            f.e.half_width.to_string(),
            f.e.inner.to_string(),
            f.e.scale.to_string(),
            f.de.half_width.to_string(),
            f.de.inner.to_string(),
            f.de.scale.to_string(),
            peaks(&f.kp_peaks),
            peaks(&f.ki_peaks),
            peaks(&f.kd_peaks),
            f.resolution.to_string(),
            self.rules
                .as_ref()
                .map_or_else(|| "none".to_string(), |p| p.display().to_string()),
            self.surface_grid.to_string(),
            self.out_dir.display().to_string(),
            self.emit.csv.to_string(),
            self.emit.svg.to_string(),
            self.emit.report.to_string(),
        ];
        let mut out = String::new();
        for (key, value) in KEYS.iter().zip(values) {
            let _ = writeln!(out, "{key} = {value}");
        }
        out
    }
}
