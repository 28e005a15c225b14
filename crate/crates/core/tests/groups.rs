use graphstar::graphwords::SimplicialGraph;
use graphstar::groups::*;

fn z(k: usize) -> FiniteGroup {
    FiniteGroup::cyclic(k).unwrap()
}

#[test]
fn infinite_dihedral_ball_sizes() {
    let p = GraphProductGroup::new(SimplicialGraph::edgeless(2).unwrap(), vec![z(2), z(2)]).unwrap();
    for r in 0..6 {
        assert_eq!(p.ball(r, 10_000).unwrap().len(), 2 * r + 1);
    }
}

#[test]
fn direct_product_ball_is_whole_group() {
    let p = GraphProductGroup::new(SimplicialGraph::complete(2).unwrap(), vec![z(2), z(3)]).unwrap();
    assert_eq!(p.ball(2, 10_000).unwrap().len(), 6);
    assert_eq!(p.ball(5, 10_000).unwrap().len(), 6);
}

#[test]
fn products_and_inverses() {
    let p = GraphProductGroup::new(SimplicialGraph::path(3).unwrap(), vec![z(3), FiniteGroup::symmetric3(), z(2)]).unwrap();
    let mut rng = graphstar::rng::seeded(9);
    for _ in 0..200 {
        let a = p.random_element(5, &mut rng);
        let b = p.random_element(5, &mut rng);
        let c = p.random_element(5, &mut rng);
        assert_eq!(p.mul(&p.mul(&a, &b), &c), p.mul(&a, &p.mul(&b, &c)));
        assert!(p.mul(&a, &p.inverse(&a)).is_empty());
    }
}

#[test]
fn pd_suite_passes() {
    let r = run_pd_suite(&PdSuiteConfig { trials: 30, seed: 5, ..PdSuiteConfig::default() });
    assert_eq!(r.failures, 0, "{}", serde_json::to_string(&r).unwrap());
    assert_eq!(r.passes, 30);
}

#[test]
fn pd_suite_is_deterministic() {
    let cfg = PdSuiteConfig { trials: 10, seed: 6, ..PdSuiteConfig::default() };
    assert_eq!(serde_json::to_value(run_pd_suite(&cfg)).unwrap(), serde_json::to_value(run_pd_suite(&cfg)).unwrap());
}

#[test]
fn group_spec_json_is_validated() {
    assert!(serde_json::from_str::<FiniteGroup>(r#"{"name":"bad","table":[[0,1],[0,1]]}"#).is_err());
    let g = z(4);
    let s = serde_json::to_string(&g).unwrap();
    assert_eq!(serde_json::from_str::<FiniteGroup>(&s).unwrap(), g);
}
