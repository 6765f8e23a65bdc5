use crate::error::{Error, Result};

/// Piecewise-linear membership function given by its vertices.
///
/// Degrees are interpolated linearly between vertices and are zero outside
/// `[first.x, last.x]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipFn {
    vertices: Vec<(f64, f64)>,
}

impl MembershipFn {
    pub fn new(vertices: Vec<(f64, f64)>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::invalid("vertices", "need at least two vertices"));
        }
        for &(x, mu) in &vertices {
            if !x.is_finite() || !(0.0..=1.0).contains(&mu) {
                return Err(Error::invalid(
                    "vertices",
                    format!("bad vertex ({x}, {mu}): x must be finite and degree in [0, 1]"),
                ));
            }
        }
        if vertices.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::invalid("vertices", "x must be strictly increasing"));
        }
        Ok(MembershipFn { vertices })
    }

    pub fn triangle(left: f64, peak: f64, right: f64) -> Result<Self> {
        Self::new(vec![(left, 0.0), (peak, 1.0), (right, 0.0)])
    }

    pub fn trapezoid(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(vec![(a, 0.0), (b, 1.0), (c, 1.0), (d, 0.0)])
    }

    /// Full membership on `[start, core_end]`, falling to zero at `zero_at`.
    pub fn left_shoulder(start: f64, core_end: f64, zero_at: f64) -> Result<Self> {
        if start == core_end {
            Self::new(vec![(core_end, 1.0), (zero_at, 0.0)])
        } else {
            Self::new(vec![(start, 1.0), (core_end, 1.0), (zero_at, 0.0)])
        }
    }

    /// Rising from zero at `zero_at` to full membership on `[core_start, end]`.
    pub fn right_shoulder(zero_at: f64, core_start: f64, end: f64) -> Result<Self> {
        if core_start == end {
            Self::new(vec![(zero_at, 0.0), (core_start, 1.0)])
        } else {
            Self::new(vec![(zero_at, 0.0), (core_start, 1.0), (end, 1.0)])
        }
    }

    pub fn vertices(&self) -> &[(f64, f64)] {
        &self.vertices
    }

    pub fn support(&self) -> (f64, f64) {
        (self.vertices[0].0, self.vertices[self.vertices.len() - 1].0)
    }

    /// Leftmost x at which the degree is maximal.
    pub fn peak(&self) -> f64 {
        let top = self.vertices.iter().map(|v| v.1).fold(0.0, f64::max);
        self.vertices.iter().find(|v| v.1 == top).map(|v| v.0).unwrap_or(self.vertices[0].0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (lo, hi) = self.support();
        if !(lo..=hi).contains(&x) {
            return 0.0;
        }
        // index of the first vertex with vx >= x
        let k = self.vertices.partition_point(|v| v.0 < x);
        if k == 0 {
            return self.vertices[0].1;
        }
        let (x0, m0) = self.vertices[k - 1];
        let (x1, m1) = self.vertices[k];
        if x == x1 {
            return m1;
        }
        m0 + (m1 - m0) * (x - x0) / (x1 - x0)
    }
}
