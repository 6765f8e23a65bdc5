use crate::error::{Error, Result};

use super::membership::MembershipFn;

const PARTITION_TOL: f64 = 1e-9;

/// Error or error-change input: five terms NL, NS, ZE, PS, PL forming a
/// partition of unity over `universe`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputVariable {
    universe: (f64, f64),
    terms: [MembershipFn; 5],
    scale: f64,
}

impl InputVariable {
    pub fn new(universe: (f64, f64), terms: [MembershipFn; 5], scale: f64) -> Result<Self> {
        let (lo, hi) = universe;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid("universe", format!("need finite lo < hi, got [{lo}, {hi}]")));
        }
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::invalid("scale", format!("must be finite and > 0, got {scale}")));
        }

        // sum of piecewise-linear terms is linear between breakpoints
        let mut xs: Vec<f64> = terms
            .iter()
            .flat_map(|t| t.vertices().iter().map(|v| v.0))
            .chain([lo, hi])
            .filter(|x| (lo..=hi).contains(x))
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        for &x in &xs {
            let sum: f64 = terms.iter().map(|t| t.eval(x)).sum();
            if (sum - 1.0).abs() > PARTITION_TOL {
                return Err(Error::invalid(
                    "terms",
                    format!("degrees sum to {sum} at x = {x}; terms must partition the universe"),
                ));
            }
        }
        if terms[0].eval(lo) != 1.0 || terms[4].eval(hi) != 1.0 {
            return Err(Error::invalid("terms", "NL and PL must saturate at the universe edges"));
        }

        Ok(InputVariable {
            universe,
            terms,
            scale,
        })
    }

    /// Triangular partition with term peaks at `peaks` (NL..PL order);
    /// NL and PL are shoulders out to the universe edges.
    pub fn ruspini(universe: (f64, f64), peaks: [f64; 5], scale: f64) -> Result<Self> {
        let (lo, hi) = universe;
        if peaks[0] < lo || peaks[4] > hi {
            return Err(Error::invalid("peaks", "peaks must lie inside the universe"));
        }
        let terms = [
            MembershipFn::left_shoulder(lo, peaks[0], peaks[1])?,
            MembershipFn::triangle(peaks[0], peaks[1], peaks[2])?,
            MembershipFn::triangle(peaks[1], peaks[2], peaks[3])?,
            MembershipFn::triangle(peaks[2], peaks[3], peaks[4])?,
            MembershipFn::right_shoulder(peaks[3], peaks[4], hi)?,
        ];
        Self::new(universe, terms, scale)
    }

    /// Symmetric partition over `[-half_width, half_width]` with the small
    /// terms peaking at `±inner·half_width`.
    pub fn symmetric(half_width: f64, inner: f64, scale: f64) -> Result<Self> {
        if !(inner > 0.0 && inner < 1.0) {
            return Err(Error::invalid("inner", format!("must be in (0, 1), got {inner}")));
        }
        let h = half_width;
        Self::ruspini((-h, h), [-h, -inner * h, 0.0, inner * h, h], scale)
    }

    pub fn universe(&self) -> (f64, f64) {
        self.universe
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn terms(&self) -> &[MembershipFn; 5] {
        &self.terms
    }

    /// Degrees of NL..PL at the scaled input, clamped to the universe.
    pub fn fuzzify(&self, x: f64) -> [f64; 5] {
        let v = (self.scale * x).clamp(self.universe.0, self.universe.1);
        std::array::from_fn(|k| self.terms[k].eval(v))
    }
}

/// Gain output: seven terms PVS..PVL over `[0, max]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputVariable {
    max: f64,
    terms: [MembershipFn; 7],
}

impl OutputVariable {
    pub fn new(max: f64, terms: [MembershipFn; 7]) -> Result<Self> {
        if !(max.is_finite() && max > 0.0) {
            return Err(Error::invalid("max", format!("must be finite and > 0, got {max}")));
        }
        for t in &terms {
            let (a, b) = t.support();
            if a < 0.0 || b > max {
                return Err(Error::invalid("terms", format!("support [{a}, {b}] leaves [0, {max}]")));
            }
        }
        if terms.windows(2).any(|w| w[0].peak() >= w[1].peak()) {
            return Err(Error::invalid("terms", "term peaks must be strictly increasing"));
        }
        if terms[6].peak() != max {
            return Err(Error::invalid("terms", "PVL must peak at the universe maximum"));
        }
        Ok(OutputVariable { max, terms })
    }

    /// Triangles peaking at `peaks`, each reaching zero at its neighbours'
    /// peaks. PVS is full from 0 to its peak, PVL peaks at `max`.
    pub fn from_peaks(max: f64, peaks: [f64; 7]) -> Result<Self> {
        if peaks[0] < 0.0 || peaks[6] != max {
            return Err(Error::invalid("peaks", format!("need 0 <= PVS peak and PVL peak = {max}")));
        }
        if peaks.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("peaks", "peaks must be strictly increasing"));
        }
        let terms = [
            MembershipFn::left_shoulder(0.0, peaks[0], peaks[1])?,
            MembershipFn::triangle(peaks[0], peaks[1], peaks[2])?,
            MembershipFn::triangle(peaks[1], peaks[2], peaks[3])?,
            MembershipFn::triangle(peaks[2], peaks[3], peaks[4])?,
            MembershipFn::triangle(peaks[3], peaks[4], peaks[5])?,
            MembershipFn::triangle(peaks[4], peaks[5], peaks[6])?,
            MembershipFn::right_shoulder(peaks[5], peaks[6], max)?,
        ];
        Self::new(max, terms)
    }

    /// Peaks evenly spaced at `k/6 · max`.
    pub fn uniform(max: f64) -> Result<Self> {
        Self::from_peaks(max, std::array::from_fn(|k| max * k as f64 / 6.0))
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn terms(&self) -> &[MembershipFn; 7] {
        &self.terms
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_partition_examples() {
        let v = InputVariable::symmetric(2000.0, 0.25, 1.0).unwrap();
        assert_eq!(v.fuzzify(0.0), [0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(v.fuzzify(1e9), [0.0, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(v.fuzzify(-1e9), [1.0, 0.0, 0.0, 0.0, 0.0]);
        // ZE falls over [0, 500] and PS rises over the same span
        let d = v.fuzzify(250.0);
        assert_eq!(d, [0.0, 0.0, 0.5, 0.5, 0.0]);
    }

    #[test]
    fn scale_is_applied_before_lookup() {
        let v = InputVariable::symmetric(1.0, 0.5, 0.001).unwrap();
        assert_eq!(v.fuzzify(250.0), [0.0, 0.0, 0.5, 0.5, 0.0]);
    }

    #[test]
    fn rejects_non_partition() {
        let t = |a, b, c| MembershipFn::triangle(a, b, c).unwrap();
        let terms = [
            MembershipFn::left_shoulder(-2.0, -2.0, -1.0).unwrap(),
            t(-2.0, -1.0, 0.0),
            t(-1.0, 0.0, 1.0),
            t(0.0, 1.5, 2.0),
            MembershipFn::right_shoulder(1.0, 2.0, 2.0).unwrap(),
        ];
        assert!(InputVariable::new((-2.0, 2.0), terms, 1.0).is_err());
        assert!(InputVariable::symmetric(1.0, 1.5, 1.0).is_err());
        assert!(InputVariable::symmetric(1.0, 0.5, 0.0).is_err());
    }

    #[test]
    fn output_peaks() {
        let o = OutputVariable::uniform(30.0).unwrap();
        let peaks: Vec<f64> = o.terms().iter().map(|t| t.peak()).collect();
        assert_eq!(peaks, vec![0.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0]);
        assert!(OutputVariable::from_peaks(1.0, [0.0, 0.1, 0.1, 0.3, 0.4, 0.5, 1.0]).is_err());
        assert!(OutputVariable::from_peaks(1.0, [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.9]).is_err());
    }
}
