//! Closed-form linear-systems reference for the motor.
//!
//! Independent of the numerical integrator: open-loop step responses come
//! from partial fractions, closed-loop PID poles from a cubic root solver.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pid::PidGains;
use crate::plant::MotorParams;

/// `a2·s² + a1·s + a0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Poly2 {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
}

/// Roots of a real quadratic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QuadRoots {
    /// Ordered so that `.0 > .1`.
    RealDistinct(f64, f64),
    Repeated(f64),
    /// `re ± j·im` with `im > 0`.
    Complex { re: f64, im: f64 },
}

impl Poly2 {
    pub fn new(a2: f64, a1: f64, a0: f64) -> Result<Self> {
        if a2 == 0.0 || !a2.is_finite() {
            return Err(Error::invalid("a2", "leading coefficient must be finite and non-zero"));
        }
        Ok(Poly2 { a2, a1, a0 })
    }

    pub fn eval(&self, s: f64) -> f64 {
        (self.a2 * s + self.a1) * s + self.a0
    }

    pub fn discriminant(&self) -> f64 {
        self.a1 * self.a1 - 4.0 * self.a2 * self.a0
    }

    pub fn roots(&self) -> QuadRoots {
        let disc = self.discriminant();
        if disc > 0.0 {
            // avoid cancellation: q = -(a1 + sign(a1)·√disc)/2
            let sq = disc.sqrt();
            let q = -0.5 * (self.a1 + self.a1.signum() * sq);
            let (r1, r2) = if q == 0.0 {
                (sq / (2.0 * self.a2), -sq / (2.0 * self.a2))
            } else {
                (q / self.a2, self.a0 / q)
            };
            QuadRoots::RealDistinct(r1.max(r2), r1.min(r2))
        } else if disc == 0.0 {
            QuadRoots::Repeated(-self.a1 / (2.0 * self.a2))
        } else {
            QuadRoots::Complex {
                re: -self.a1 / (2.0 * self.a2),
                im: (-disc).sqrt() / (2.0 * self.a2.abs()),
            }
        }
    }
}

/// Numerator gain `Kt` and the expanded denominator `(J·s+b)(La·s+Ra) + Kt·Kb`
/// of the voltage-to-speed transfer function.
pub fn transfer_coeffs(params: &MotorParams) -> (f64, Poly2) {
    let den = Poly2 {
        a2: params.j * params.la,
        a1: params.j * params.ra + params.b * params.la,
        a0: params.b * params.ra + params.kt * params.kb,
    };
    (params.kt, den)
}

pub fn dc_gain(params: &MotorParams) -> f64 {
    let (gain, den) = transfer_coeffs(params);
    gain / den.a0
}

/// Open-loop poles ordered slow (closest to zero) first.
pub fn open_loop_poles(params: &MotorParams) -> QuadRoots {
    transfer_coeffs(params).1.roots()
}

/// Exact speed at time `t` after a voltage step of `v_step` from rest.
pub fn open_loop_step(params: &MotorParams, v_step: f64, t: f64) -> Result<f64> {
    let (gain, den) = transfer_coeffs(params);
    let (p1, p2) = match den.roots() {
        QuadRoots::RealDistinct(p1, p2) => (p1, p2),
        other => {
            return Err(Error::UnsupportedPoles(format!(
                "open-loop step oracle needs real distinct poles, got {other:?}"
            )))
        }
    };
    if t <= 0.0 {
        return Ok(0.0);
    }
    // Y(s) = v·K / (a2·s·(s − p1)(s − p2))
    let k = v_step * gain / den.a2;
    let r0 = 1.0 / (p1 * p2);
    let r1 = 1.0 / (p1 * (p1 - p2));
    let r2 = 1.0 / (p2 * (p2 - p1));
    Ok(k * (r0 + r1 * (p1 * t).exp() + r2 * (p2 * t).exp()))
}

/// Coefficients `[c3, c2, c1, c0]` of the closed-loop characteristic
/// polynomial for unity feedback through a PID controller.
pub fn closed_loop_characteristic(params: &MotorParams, gains: &PidGains) -> [f64; 4] {
    let (kt, den) = transfer_coeffs(params);
    [
        den.a2,
        den.a1 + kt * gains.kd,
        den.a0 + kt * gains.kp,
        kt * gains.ki,
    ]
}

/// Roots of the closed-loop characteristic cubic, sorted by real part
/// ascending (imaginary part ascending on ties).
pub fn closed_loop_poles(params: &MotorParams, gains: &PidGains) -> Result<[Complex64; 3]> {
    params.validate()?;
    gains.validate()?;
    Ok(cubic_roots(closed_loop_characteristic(params, gains)))
}

fn horner(c: &[f64; 4], s: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(c[0], 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ci in &c[1..] {
        dp = dp * s + p;
        p = p * s + ci;
    }
    (p, dp)
}

fn polish(c: &[f64; 4], mut s: Complex64) -> Complex64 {
    for _ in 0..4 {
        let (p, dp) = horner(c, s);
        if dp.norm() == 0.0 || p.norm() == 0.0 {
            break;
        }
        let next = s - p / dp;
        if !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        // accept only if the residual does not grow
        if horner(c, next).0.norm() > p.norm() {
            break;
        }
        s = next;
    }
    s
}

/// Roots of a real cubic given as `[s³, s², s¹, s⁰]` coefficients.
/// Trigonometric/Cardano real root, Newton polish, deflation, quadratic.
pub fn cubic_roots(coeffs: [f64; 4]) -> [Complex64; 3] {
    let [c3, c2, c1, c0] = coeffs;
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;

    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let half_q = 0.5 * q;
    let third_p = p / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    let shift = -a / 3.0;
    let t = if disc > 0.0 {
        let sq = disc.sqrt();
        (-half_q + sq).cbrt() + (-half_q - sq).cbrt()
    } else if p == 0.0 {
        0.0
    } else {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        m * (arg.acos() / 3.0).cos()
    };

    let real = polish(&coeffs, Complex64::new(t + shift, 0.0)).re;

    // deflate s³ + a s² + b s + c by (s − real)
    let q1 = a + real;
    let q0 = b + real * q1;
    let (r2, r3) = match (Poly2 { a2: 1.0, a1: q1, a0: q0 }).roots() {
        QuadRoots::RealDistinct(x, y) => (Complex64::new(x, 0.0), Complex64::new(y, 0.0)),
        QuadRoots::Repeated(x) => (Complex64::new(x, 0.0), Complex64::new(x, 0.0)),
        QuadRoots::Complex { re, im } => (Complex64::new(re, im), Complex64::new(re, -im)),
    };
    let polish_pair = |z: Complex64| {
        if z.im == 0.0 {
            Complex64::new(polish(&coeffs, z).re, 0.0)
        } else {
            let w = polish(&coeffs, z);
            Complex64::new(w.re, w.im.abs() * z.im.signum())
        }
    };

    let mut roots = [Complex64::new(real, 0.0), polish_pair(r2), polish_pair(r3)];
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    roots
}
