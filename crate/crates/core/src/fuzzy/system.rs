use crate::error::{Error, Result};
use crate::pid::PidGains;

use super::rules::{RuleBase, RuleTable};
use super::terms::InputTerm;
use super::variable::{InputVariable, OutputVariable};

pub const MIN_RESOLUTION: usize = 101;

/// Mamdani min–max inference: a rule fires with the smaller of its two
/// input degrees, and each output term takes the strongest rule naming it.
pub fn infer(rules: &RuleTable, e_deg: &[f64; 5], de_deg: &[f64; 5]) -> [f64; 7] {
    let mut act = [0.0_f64; 7];
    for e in InputTerm::ALL {
        for de in InputTerm::ALL {
            let strength = e_deg[e.index()].min(de_deg[de.index()]);
            let slot = &mut act[rules.get(e, de).index()];
            *slot = slot.max(strength);
        }
    }
    act
}

/// Term memberships sampled on a uniform grid over `[0, max]`.
#[derive(Debug, Clone, PartialEq)]
struct SampledOutput {
    xs: Vec<f64>,
    mus: Vec<[f64; 7]>,
}

impl SampledOutput {
    fn new(var: &OutputVariable, resolution: usize) -> Self {
        let last = (resolution - 1) as f64;
        let xs: Vec<f64> = (0..resolution).map(|i| var.max() * i as f64 / last).collect();
        let mus = xs
            .iter()
            .map(|&x| std::array::from_fn(|k| var.terms()[k].eval(x)))
            .collect();
        SampledOutput { xs, mus }
    }

    fn centroid(&self, act: &[f64; 7]) -> Result<f64> {
        if !act.iter().any(|&a| a > 0.0) {
            return Err(Error::NoRuleFired);
        }
        let (mut num, mut den) = (0.0, 0.0);
        for (x, mu) in self.xs.iter().zip(&self.mus) {
            let agg = mu
                .iter()
                .zip(act)
                .fold(0.0_f64, |m, (&m_k, &a_k)| m.max(m_k.min(a_k)));
            num += x * agg;
            den += agg;
        }
        if den == 0.0 {
            return Err(Error::NoRuleFired);
        }
        Ok(num / den)
    }
}

/// Clip each term at its activation, aggregate with max over `resolution`
/// uniform samples of the output universe and return the centroid.
pub fn defuzz_centroid(var: &OutputVariable, activations: &[f64; 7], resolution: usize) -> Result<f64> {
    if resolution < 2 {
        return Err(Error::invalid("resolution", "need at least two samples"));
    }
    SampledOutput::new(var, resolution).centroid(activations)
}

/// Self-tuning gain scheduler: (error, error change) → (Kp, Ki, Kd).
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzySystem {
    e_var: InputVariable,
    de_var: InputVariable,
    outputs: [OutputVariable; 3],
    rules: RuleBase,
    resolution: usize,
    sampled: [SampledOutput; 3],
}

/// Crisp gains plus the intermediate fuzzy quantities that produced them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inference {
    pub e_degrees: [f64; 5],
    pub de_degrees: [f64; 5],
    /// Activations per output term, in Kp, Ki, Kd order.
    pub activations: [[f64; 7]; 3],
    pub gains: PidGains,
}

impl FuzzySystem {
    pub fn new(
        e_var: InputVariable,
        de_var: InputVariable,
        outputs: [OutputVariable; 3],
        rules: RuleBase,
        resolution: usize,
    ) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(Error::invalid(
                "resolution",
                format!("must be at least {MIN_RESOLUTION}, got {resolution}"),
            ));
        }
        let sampled = std::array::from_fn(|k| SampledOutput::new(&outputs[k], resolution));
        Ok(FuzzySystem {
            e_var,
            de_var,
            outputs,
            rules,
            resolution,
            sampled,
        })
    }

    pub fn e_var(&self) -> &InputVariable {
        &self.e_var
    }

    pub fn de_var(&self) -> &InputVariable {
        &self.de_var
    }

    pub fn kp_out(&self) -> &OutputVariable {
        &self.outputs[0]
    }

    pub fn ki_out(&self) -> &OutputVariable {
        &self.outputs[1]
    }

    pub fn kd_out(&self) -> &OutputVariable {
        &self.outputs[2]
    }

    pub fn rules(&self) -> &RuleBase {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Same system at a different defuzzification resolution.
    pub fn with_resolution(&self, resolution: usize) -> Result<Self> {
        Self::new(
            self.e_var.clone(),
            self.de_var.clone(),
            self.outputs.clone(),
            self.rules,
            resolution,
        )
    }

    pub fn evaluate(&self, e: f64, de: f64) -> Inference {
        let e_degrees = self.e_var.fuzzify(e);
        let de_degrees = self.de_var.fuzzify(de);
        let tables = [&self.rules.kp, &self.rules.ki, &self.rules.kd];
        let activations: [[f64; 7]; 3] = std::array::from_fn(|k| infer(tables[k], &e_degrees, &de_degrees));
        // partitioned inputs always fire at least one rule at degree >= 0.2
        let crisp: [f64; 3] = std::array::from_fn(|k| {
            self.sampled[k]
                .centroid(&activations[k])
                .expect("partitioned inputs always fire a rule")
        });
        Inference {
            e_degrees,
            de_degrees,
            activations,
            gains: PidGains {
                kp: crisp[0],
                ki: crisp[1],
                kd: crisp[2],
            },
        }
    }

    pub fn gains_from_error(&self, e: f64, de: f64) -> PidGains {
        self.evaluate(e, de).gains
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::membership::MembershipFn;
    use crate::fuzzy::terms::OutputTerm;

    fn one_hot(k: usize) -> [f64; 5] {
        let mut d = [0.0; 5];
        d[k] = 1.0;
        d
    }

    #[test]
    fn zero_zero_activations() {
        let rb = RuleBase::default();
        let ze = one_hot(InputTerm::Zero.index());
        let kp = infer(&rb.kp, &ze, &ze);
        let mut want = [0.0; 7];
        want[OutputTerm::Small.index()] = 1.0;
        assert_eq!(kp, want);
        let ki = infer(&rb.ki, &ze, &ze);
        let mut want = [0.0; 7];
        want[OutputTerm::VerySmall.index()] = 1.0;
        assert_eq!(ki, want);
        assert_eq!(infer(&rb.kd, &[0.0; 5], &[0.0; 5]), [0.0; 7]);
    }

    #[test]
    fn mixed_strengths_take_min_then_max() {
        let rb = RuleBase::default();
        let e = [0.0, 0.0, 0.3, 0.7, 0.0];
        let de = [0.0, 0.0, 0.6, 0.4, 0.0];
        let act = infer(&rb.kp, &e, &de);
        // (ZE,ZE)->PS 0.3, (ZE,PS)->PMS 0.3, (PS,ZE)->PML 0.6, (PS,PS)->PL 0.4
        assert_eq!(act[OutputTerm::Small.index()], 0.3);
        assert_eq!(act[OutputTerm::MediumSmall.index()], 0.3);
        assert_eq!(act[OutputTerm::MediumLarge.index()], 0.6);
        assert_eq!(act[OutputTerm::Large.index()], 0.4);
        assert_eq!(act[OutputTerm::VeryLarge.index()], 0.0);
    }

    fn single_triangle(center: f64, half: f64) -> OutputVariable {
        // a 7-term variable whose PM term is the triangle under test
        let max = 2.0 * center;
        OutputVariable::new(
            max,
            [
                MembershipFn::left_shoulder(0.0, 0.0, 0.1 * max).unwrap(),
                MembershipFn::triangle(0.0, 0.1 * max, 0.2 * max).unwrap(),
                MembershipFn::triangle(0.1 * max, 0.2 * max, 0.3 * max).unwrap(),
                MembershipFn::triangle(center - half, center, center + half).unwrap(),
                MembershipFn::triangle(0.6 * max, 0.7 * max, 0.8 * max).unwrap(),
                MembershipFn::triangle(0.7 * max, 0.8 * max, 0.9 * max).unwrap(),
                MembershipFn::right_shoulder(0.9 * max, max, max).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn centroid_of_symmetric_triangle() {
        let var = single_triangle(5.0, 2.0);
        let mut act = [0.0; 7];
        act[3] = 1.0;
        let c = defuzz_centroid(&var, &act, 1001).unwrap();
        assert!((c - 5.0).abs() < 1e-9, "{c}");
        act[3] = 0.4;
        let c = defuzz_centroid(&var, &act, 1001).unwrap();
        assert!((c - 5.0).abs() < 1e-9, "{c}");
    }

    #[test]
    fn centroid_of_symmetric_twins() {
        let var = OutputVariable::uniform(12.0).unwrap();
        let mut act = [0.0; 7];
        act[2] = 0.7;
        act[4] = 0.7;
        let c = defuzz_centroid(&var, &act, 1201).unwrap();
        assert!((c - 6.0).abs() < 1e-9, "{c}");
    }

    #[test]
    fn very_large_only_stays_in_upper_range() {
        let var = OutputVariable::uniform(30.0).unwrap();
        let mut act = [0.0; 7];
        act[6] = 1.0;
        let c = defuzz_centroid(&var, &act, 1001).unwrap();
        assert!(c > 25.0 && c <= 30.0, "{c}");
    }

    #[test]
    fn no_rule_fired() {
        let var = OutputVariable::uniform(1.0).unwrap();
        assert_eq!(defuzz_centroid(&var, &[0.0; 7], 1001), Err(Error::NoRuleFired));
    }

    #[test]
    fn resolution_floor() {
        let fis = FuzzySystem::default();
        assert!(fis.with_resolution(100).is_err());
        assert!(fis.with_resolution(101).is_ok());
    }
}
