//! Armature-controlled DC motor.
//!
//! The state is the armature current and the shaft speed. Speed carries a
//! single unit end to end: the controller setpoint, the measured speed and
//! the open-loop input all share it, with no rad/s to rpm conversion.

use crate::error::{ensure_finite, Error, Result};

/// Physical constants of the motor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotorParams {
    /// Torque constant, N·m/A.
    pub kt: f64,
    /// Back-EMF constant, V·s/rad.
    pub kb: f64,
    /// Armature resistance, Ω.
    pub ra: f64,
    /// Armature inductance, H.
    pub la: f64,
    /// Viscous friction, N·m·s/rad.
    pub b: f64,
    /// Rotor inertia, kg·m².
    pub j: f64,
}

impl Default for MotorParams {
    fn default() -> Self {
        MotorParams {
            kt: 0.5,
            kb: 1.25,
            ra: 5.0,
            la: 0.2,
            b: 0.008,
            j: 0.1,
        }
    }
}

impl MotorParams {
    pub fn new(kt: f64, kb: f64, ra: f64, la: f64, b: f64, j: f64) -> Result<Self> {
        let params = MotorParams {
            kt,
            kb,
            ra,
            la,
            b,
            j,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in self.fields() {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(name, format!("must be finite and > 0, got {value}")));
            }
        }
        Ok(())
    }

    pub fn fields(&self) -> [(&'static str, f64); 6] {
        [
            ("kt", self.kt),
            ("kb", self.kb),
            ("ra", self.ra),
            ("la", self.la),
            ("b", self.b),
            ("j", self.j),
        ]
    }

    /// Steady-state speed for a constant armature voltage.
    pub fn equilibrium_speed(&self, voltage: f64) -> f64 {
        voltage * self.kt / (self.ra * self.b + self.kt * self.kb)
    }

    /// Steady-state (current, speed) for a constant armature voltage.
    pub fn equilibrium(&self, voltage: f64) -> PlantState {
        let speed = self.equilibrium_speed(voltage);
        PlantState {
            current: self.b * speed / self.kt,
            speed,
        }
    }
}

/// Armature current (A) and shaft speed.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PlantState {
    pub current: f64,
    pub speed: f64,
}

impl PlantState {
    pub const REST: PlantState = PlantState {
        current: 0.0,
        speed: 0.0,
    };

    pub fn is_finite(&self) -> bool {
        self.current.is_finite() && self.speed.is_finite()
    }
}

/// Time derivative of [`PlantState`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantRate {
    pub di_dt: f64,
    pub dw_dt: f64,
}

/// Right-hand side of the motor equations:
/// `La·di/dt = V − Ra·i − Kb·ω` and `J·dω/dt = Kt·i − b·ω`.
pub fn derivatives(state: PlantState, v_in: f64, params: &MotorParams) -> PlantRate {
    let back_emf = params.kb * state.speed;
    let torque = params.kt * state.current;
    PlantRate {
        di_dt: (v_in - params.ra * state.current - back_emf) / params.la,
        dw_dt: (torque - params.b * state.speed) / params.j,
    }
}

fn advance(state: PlantState, rate: PlantRate, h: f64) -> PlantState {
    PlantState {
        current: state.current + h * rate.di_dt,
        speed: state.speed + h * rate.dw_dt,
    }
}

/// One classical fourth-order Runge-Kutta step with `v_in` held over the step.
pub fn step_rk4(state: PlantState, v_in: f64, dt: f64, params: &MotorParams) -> Result<PlantState> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("dt", format!("must be finite and > 0, got {dt}")));
    }
    ensure_finite(v_in, "applied voltage")?;
    if !state.is_finite() {
        return Err(Error::NonFinite("plant state"));
    }

    let k1 = derivatives(state, v_in, params);
    let k2 = derivatives(advance(state, k1, 0.5 * dt), v_in, params);
    let k3 = derivatives(advance(state, k2, 0.5 * dt), v_in, params);
    let k4 = derivatives(advance(state, k3, dt), v_in, params);

    let next = PlantState {
        current: state.current
            + dt / 6.0 * (k1.di_dt + 2.0 * k2.di_dt + 2.0 * k3.di_dt + k4.di_dt),
        speed: state.speed + dt / 6.0 * (k1.dw_dt + 2.0 * k2.dw_dt + 2.0 * k3.dw_dt + k4.dw_dt),
    };
    if !next.is_finite() {
        return Err(Error::NonFinite("plant state after step"));
    }
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_motor_table() {
        let p = MotorParams::default();
        assert_eq!(
            (p.kt, p.kb, p.ra, p.b, p.la, p.j),
            (0.5, 1.25, 5.0, 0.008, 0.2, 0.1)
        );
        assert!(p.validate().is_ok());
    }

    #[test]
    fn rejects_non_positive_params() {
        assert!(MotorParams::new(0.0, 1.25, 5.0, 0.2, 0.008, 0.1).is_err());
        assert!(MotorParams::new(0.5, 1.25, -5.0, 0.2, 0.008, 0.1).is_err());
        assert!(MotorParams::new(0.5, 1.25, 5.0, 0.2, 0.008, f64::NAN).is_err());
    }

    #[test]
    fn derivative_examples() {
        let p = MotorParams::default();
        assert_eq!(
            derivatives(PlantState::REST, 0.0, &p),
            PlantRate { di_dt: 0.0, dw_dt: 0.0 }
        );

        let r = derivatives(PlantState::REST, 1.0, &p);
        assert!((r.di_dt - 5.0).abs() < 1e-12);
        assert_eq!(r.dw_dt, 0.0);

        let r = derivatives(PlantState { current: 1.0, speed: 0.0 }, 0.0, &p);
        assert!((r.di_dt + 25.0).abs() < 1e-12);
        assert!((r.dw_dt - 5.0).abs() < 1e-12);
    }

    #[test]
    fn rest_is_a_fixed_point() {
        let p = MotorParams::default();
        for dt in [1e-4, 1e-3, 0.1] {
            assert_eq!(step_rk4(PlantState::REST, 0.0, dt, &p).unwrap(), PlantState::REST);
        }
    }

    #[test]
    fn rejects_bad_step_inputs() {
        let p = MotorParams::default();
        assert!(step_rk4(PlantState::REST, 1.0, 0.0, &p).is_err());
        assert!(step_rk4(PlantState::REST, 1.0, -1e-3, &p).is_err());
        assert!(step_rk4(PlantState::REST, f64::INFINITY, 1e-3, &p).is_err());
        let bad = PlantState { current: f64::NAN, speed: 0.0 };
        assert!(step_rk4(bad, 1.0, 1e-3, &p).is_err());
    }

    #[test]
    fn unit_step_settles_at_dc_gain() {
        let p = MotorParams::default();
        let mut s = PlantState::REST;
        for _ in 0..100_000 {
            s = step_rk4(s, 1.0, 1e-4, &p).unwrap();
        }
        // 0.5 / (5 * 0.008 + 0.5 * 1.25)
        assert!((s.speed - 0.751_879_699_248_12).abs() < 1e-6, "{}", s.speed);
    }

    #[test]
    fn converges_to_equilibrium() {
        let p = MotorParams::default();
        let v = 37.0;
        let target = p.equilibrium(v);
        let mut s = PlantState::REST;
        // slowest time constant is about 0.71 s
        for _ in 0..7_200 {
            s = step_rk4(s, v, 1e-3, &p).unwrap();
        }
        assert!((s.speed - target.speed).abs() <= 1e-3 * target.speed.abs());
        assert!((s.current - target.current).abs() <= 1e-3 * target.current.abs());
    }

    #[test]
    fn trajectory_is_linear_in_voltage() {
        let p = MotorParams::default();
        let (mut a, mut b) = (PlantState::REST, PlantState::REST);
        for _ in 0..3_000 {
            a = step_rk4(a, 3.0, 1e-3, &p).unwrap();
            b = step_rk4(b, 6.0, 1e-3, &p).unwrap();
            assert!((2.0 * a.speed - b.speed).abs() <= 1e-12 * b.speed.abs().max(1.0));
            assert!((2.0 * a.current - b.current).abs() <= 1e-12 * b.current.abs().max(1.0));
        }
    }
}
