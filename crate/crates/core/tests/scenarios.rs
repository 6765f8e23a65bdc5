use std::sync::Arc;

use motorctl::fuzzy::FuzzySystem;
use motorctl::report::compare;
use motorctl::{run, trace_metrics, MotorParams, PidGains, SimConfig};

#[test]
fn open_loop_settles_at_dc_gain() {
    let trace = run(&SimConfig::open_loop()).unwrap();
    let expected = MotorParams::default().equilibrium_speed(2000.0);
    let last = *trace.speed.last().unwrap();
    assert!((last - expected).abs() < 1e-3 * expected, "{last} vs {expected}");
    assert!((expected - 1503.7594).abs() < 1e-3);
}

#[test]
fn identical_configs_give_identical_traces() {
    let cfg = SimConfig::fuzzy_pid(Arc::new(FuzzySystem::default()));
    let a = run(&cfg).unwrap();
    let b = run(&cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(trace_metrics(&a).unwrap(), trace_metrics(&a).unwrap());
}

#[test]
fn halving_dt_barely_moves_pid_metrics() {
    let coarse = SimConfig::pid(PidGains::default());
    let mut fine = coarse.clone();
    fine.dt /= 2.0;
    let a = trace_metrics(&run(&coarse).unwrap()).unwrap();
    let b = trace_metrics(&run(&fine).unwrap()).unwrap();
    // The first-sample derivative kick lasts one step, so rise time carries
    // an O(dt) term the later metrics do not.
    let pairs = [
        (a.rise_time, b.rise_time, 0.03),
        (a.settling_time, b.settling_time, 0.01),
        (a.steady_state_error, b.steady_state_error, 0.01),
    ];
    for (x, y, tol) in pairs {
        let (x, y) = (x.unwrap(), y.unwrap());
        assert!((x - y).abs() < tol * x.abs(), "{x} vs {y}");
    }
    assert_eq!(a.overshoot_pct, b.overshoot_pct);
}

#[test]
fn scheduler_rate_matches_recorded_error() {
    let trace = run(&SimConfig::fuzzy_pid(Arc::new(FuzzySystem::default()))).unwrap();
    assert_eq!(trace.derror[0], 0.0);
    for k in 1..trace.len() {
        let expected = (trace.error[k] - trace.error[k - 1]) / 1e-3;
        assert!((trace.derror[k] - expected).abs() <= 1e-9 * expected.abs().max(1.0));
    }
}

#[test]
fn fuzzy_error_decays_after_the_first_sample() {
    let trace = run(&SimConfig::fuzzy_pid(Arc::new(FuzzySystem::default()))).unwrap();
    let peak = trace.control.iter().cloned().fold(f64::MIN, f64::max);
    assert_eq!(trace.control[0], peak);
    assert!(trace.error.windows(2).all(|w| w[1].abs() <= w[0].abs() + 1e-9));
}

#[test]
fn first_sample_gains_come_from_the_large_error_row() {
    let fis = FuzzySystem::default();
    let g = fis.gains_from_error(2000.0, 0.0);
    let zero = fis.gains_from_error(0.0, 0.0);
    assert!(g.kp > zero.kp);
}

#[test]
fn comparison_orders_columns_by_input() {
    let cmp = compare(&[
        SimConfig::pid(PidGains::default()),
        SimConfig::open_loop(),
    ])
    .unwrap();
    assert_eq!(cmp.columns[0].label, "pid");
    assert_eq!(cmp.columns[1].label, "open-loop");
}
