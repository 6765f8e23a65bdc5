use proptest::prelude::*;

use motorctl::fuzzy::{FuzzySystem, InputVariable, MembershipFn};
use motorctl::{pid_step, PidConfig, PidGains, PidState};

fn fis() -> &'static FuzzySystem {
    static FIS: std::sync::OnceLock<FuzzySystem> = std::sync::OnceLock::new();
    FIS.get_or_init(FuzzySystem::default)
}

proptest! {
    #[test]
    fn symmetric_partitions_sum_to_one(
        half in 1e-3f64..1e6,
        inner in 0.01f64..0.99,
        scale in 0.01f64..100.0,
        u in -1.5f64..1.5,
    ) {
        let var = InputVariable::symmetric(half, inner, scale).unwrap();
        let degrees = var.fuzzify(u * half / scale);
        prop_assert!((degrees.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        prop_assert!(degrees.iter().all(|d| (0.0..=1.0).contains(d)));
    }

    #[test]
    fn membership_stays_in_unit_interval(
        a in -10.0f64..0.0, b in 0.0f64..1.0, c in 1.0f64..2.0, d in 2.0f64..10.0, x in -20.0f64..20.0,
    ) {
        let m = MembershipFn::trapezoid(a, b, c, d).unwrap();
        let v = m.eval(x);
        prop_assert!((0.0..=1.0).contains(&v));
        if (b..=c).contains(&x) {
            prop_assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn scheduled_gains_stay_in_range(e in -1e5f64..1e5, de in -1e7f64..1e7) {
        let g = fis().gains_from_error(e, de);
        prop_assert!((0.0..=30.0).contains(&g.kp));
        prop_assert!((0.0..=12.0).contains(&g.ki));
        prop_assert!((0.0..=1.0).contains(&g.kd));
        let m = fis().gains_from_error(-e, de);
        prop_assert!((g.kp - m.kp).abs() < 1e-9);
        prop_assert!((g.ki - m.ki).abs() < 1e-9);
    }

    #[test]
    fn pid_is_linear_in_error(
        errors in prop::collection::vec(-500.0f64..500.0, 2..60),
        alpha in -4.0f64..4.0,
        kp in 0.0f64..40.0, ki in 0.0f64..20.0, kd in 0.0f64..2.0,
    ) {
        let gains = PidGains::new(kp, ki, kd).unwrap();
        let cfg = PidConfig::default();
        let (mut a, mut b) = (PidState::new(), PidState::new());
        for &e in &errors {
            let x = pid_step(&a, &gains, e, 0.0, 1e-3, &cfg).unwrap();
            let y = pid_step(&b, &gains, alpha * e, 0.0, 1e-3, &cfg).unwrap();
            let tol = 1e-9 * (1.0 + x.control.abs() * alpha.abs());
            prop_assert!((y.control - alpha * x.control).abs() <= tol, "{} vs {}", y.control, alpha * x.control);
            a = x.state;
            b = y.state;
        }
    }
}
