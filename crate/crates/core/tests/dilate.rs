use graphstar::dilate::*;

fn cfg(trials: usize) -> DilateConfig {
    DilateConfig { seed: 11, trials, ..DilateConfig::default() }
}

#[test]
fn egervary_suite_passes() {
    let r = run_egervary_suite(&cfg(100));
    assert_eq!(r.failures, 0, "{}", serde_json::to_string(&r).unwrap());
}

#[test]
fn dilation_gram_suite_passes() {
    let r = run_dilation_gram_suite(&cfg(40));
    assert_eq!(r.failures, 0, "{}", serde_json::to_string(&r).unwrap());
}

#[test]
fn vn_suite_passes() {
    let r = run_vn_suite(&cfg(30));
    assert_eq!(r.failures, 0, "{}", serde_json::to_string(&r).unwrap());
}

#[test]
fn independence_suite_passes() {
    let r = run_gp_independence_suite(&cfg(60));
    assert_eq!(r.failures, 0, "{}", serde_json::to_string(&r).unwrap());
}

#[test]
fn egervary_suite_is_deterministic() {
    let a = serde_json::to_value(run_egervary_suite(&cfg(20))).unwrap();
    let b = serde_json::to_value(run_egervary_suite(&cfg(20))).unwrap();
    assert_eq!(a, b);
}
