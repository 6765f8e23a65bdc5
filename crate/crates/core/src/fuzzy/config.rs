use crate::error::Result;

use super::rules::RuleBase;
use super::system::FuzzySystem;
use super::variable::{InputVariable, OutputVariable};

/// Symmetric five-term input partition over `[-half_width, half_width]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputGeometry {
    pub half_width: f64,
    /// NS/PS peaks sit at `±inner·half_width`.
    pub inner: f64,
    pub scale: f64,
}

impl InputGeometry {
    pub fn build(&self) -> Result<InputVariable> {
        InputVariable::symmetric(self.half_width, self.inner, self.scale)
    }
}

/// Everything needed to build a [`FuzzySystem`].
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyConfig {
    pub e: InputGeometry,
    pub de: InputGeometry,
    pub kp_peaks: [f64; 7],
    pub ki_peaks: [f64; 7],
    pub kd_peaks: [f64; 7],
    pub resolution: usize,
    pub rules: RuleBase,
}

pub const KP_MAX: f64 = 30.0;
pub const KI_MAX: f64 = 12.0;
pub const KD_MAX: f64 = 1.0;

/// Calibrated geometry. The error partition is wide, so a full 2000-unit
/// step still sits mostly in ZE; the error-change partition is narrow, so
/// any noticeable deceleration reads as NL.
impl Default for FuzzyConfig {
    fn default() -> Self {
        FuzzyConfig {
            e: InputGeometry {
                half_width: 45_000.0,
                inner: 0.76,
                scale: 1.0,
            },
            de: InputGeometry {
                half_width: 3.15,
                inner: 0.117,
                scale: 1.0,
            },
            kp_peaks: [13.7, 16.5, 20.17, 22.62, 25.77, 28.11, 30.0],
            ki_peaks: [10.49, 11.37, 11.68, 11.86, 11.93, 11.96, 12.0],
            kd_peaks: [0.0138, 0.0345, 0.0589, 0.0758, 0.0995, 0.1534, 1.0],
            resolution: 1001,
            rules: RuleBase::default(),
        }
    }
}

/// Peaks at `k/6 · max`, the uncalibrated starting point.
pub fn uniform_peaks(max: f64) -> [f64; 7] {
    std::array::from_fn(|k| max * k as f64 / 6.0)
}

impl FuzzyConfig {
    pub fn build(&self) -> Result<FuzzySystem> {
        FuzzySystem::new(
            self.e.build()?,
            self.de.build()?,
            [
                OutputVariable::from_peaks(KP_MAX, self.kp_peaks)?,
                OutputVariable::from_peaks(KI_MAX, self.ki_peaks)?,
                OutputVariable::from_peaks(KD_MAX, self.kd_peaks)?,
            ],
            self.rules,
            self.resolution,
        )
    }
}

impl Default for FuzzySystem {
    fn default() -> Self {
        FuzzyConfig::default()
            .build()
            .expect("default fuzzy configuration is valid")
    }
}
