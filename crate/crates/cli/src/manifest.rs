use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use motorctl::fuzzy::{FuzzyConfig, RuleBase};
use motorctl::{Controller, ControllerKind, FuzzySystem, SimConfig};

use crate::config::{Emit, Settings};
use crate::error::CliError;

/// Settings resolved into runnable scenarios.
#[derive(Debug, Clone, PartialEq)]
pub struct RunManifest {
    pub settings: Settings,
    /// Open-loop, PID and fuzzy-PID, in that order.
    pub scenarios: Vec<SimConfig>,
    pub fis: Arc<FuzzySystem>,
    pub out_dir: PathBuf,
    pub emit: Emit,
}

/// Command-line values that take precedence over the config file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub dt: Option<f64>,
    pub setpoint: Option<f64>,
    pub controller: Option<ControllerKind>,
    pub out_dir: Option<PathBuf>,
    pub csv: bool,
    pub svg: bool,
}

impl Overrides {
    pub fn apply(&self, s: &mut Settings) -> Result<(), CliError> {
        if let Some(dt) = self.dt {
            if !(dt.is_finite() && dt > 0.0) {
                return Err(CliError::Usage(format!("--dt must be finite and > 0, got {dt}")));
            }
            s.dt = dt;
        }
        if let Some(sp) = self.setpoint {
            if !sp.is_finite() {
                return Err(CliError::Usage("--setpoint must be finite".into()));
            }
            s.setpoint = sp;
        }
        if let Some(k) = self.controller {
            s.controller = k;
        }
        if let Some(dir) = &self.out_dir {
            s.out_dir = dir.clone();
        }
        s.emit.csv |= self.csv;
        s.emit.svg |= self.svg;
        Ok(())
    }
}

/// Reads and resolves a config file. A relative `fuzzy.rules` path is taken
/// relative to the config file.
pub fn parse_config(path: &Path) -> Result<RunManifest, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let settings = Settings::parse(&text)?;
    RunManifest::from_settings(settings, path.parent().unwrap_or(Path::new(".")))
}

impl RunManifest {
    pub fn from_settings(settings: Settings, base_dir: &Path) -> Result<Self, CliError> {
        let e = &settings.emit;
        if !(e.csv || e.svg || e.report) {
            return Err(CliError::Usage("at least one of out.csv, out.svg, out.report must be true".into()));
        }

        let rules = match &settings.rules {
            None => RuleBase::default(),
            Some(p) => {
                let path = base_dir.join(p);
                let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
                RuleBase::parse(&text).map_err(|e| CliError::file(&path, e))?
            }
        };
        let g = &settings.fuzzy;
        let fis = Arc::new(
            FuzzyConfig {
                e: g.e,
                de: g.de,
                kp_peaks: g.kp_peaks,
                ki_peaks: g.ki_peaks,
                kd_peaks: g.kd_peaks,
                resolution: g.resolution,
                rules,
            }
            .build()?,
        );

        let scenarios = ControllerKind::ALL
            .into_iter()
            .map(|kind| {
                let controller = match kind {
                    ControllerKind::OpenLoop => Controller::OpenLoop,
                    ControllerKind::Pid => Controller::Pid(settings.gains),
                    ControllerKind::FuzzyPid => Controller::FuzzyPid(Arc::clone(&fis)),
                };
                let mut cfg = SimConfig::new(controller);
                cfg.setpoint = settings.setpoint;
                cfg.dt = settings.dt;
                if let Some(d) = settings.duration {
                    cfg.duration = d;
                }
                cfg.plant = settings.plant;
                cfg.pid = settings.pid;
                cfg.validate().map(|_| cfg)
            })
            .collect::<Result<Vec<_>, _>>()?;

        Ok(RunManifest {
            out_dir: settings.out_dir.clone(),
            emit: settings.emit,
            settings,
            scenarios,
            fis,
        })
    }

    pub fn scenario(&self, kind: ControllerKind) -> &SimConfig {
        self.scenarios
            .iter()
            .find(|c| c.controller.kind() == kind)
            .expect("every controller kind is resolved")
    }

    /// The scenario selected by `sim.controller`.
    pub fn selected(&self) -> &SimConfig {
        self.scenario(self.settings.controller)
    }

    pub fn to_config_string(&self) -> String {
        self.settings.to_config_string()
    }
}
