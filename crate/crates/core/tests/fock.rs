use graphstar::fock::{restrict_columns, run_independence_suite, run_moments_suite, FockConfig, FockModel};
use graphstar::graphwords::SimplicialGraph;
use graphstar::rng::seeded;
use graphstar::staralg::{random_density, GraphProductAlgebra, VertexAlgebra};

#[test]
fn moments_on_graphs_up_to_three_vertices() {
    let cfg = FockConfig { seed: 2, max_vertices: 3, ..Default::default() };
    let r = run_moments_suite(&cfg);
    assert!(r.all_pass(), "{r:?}");
    assert_eq!(r.trials, 1 + 2 + 8);
}

#[test]
fn independence_suite_passes() {
    let r = run_independence_suite(&FockConfig { seed: 9, ..Default::default() }, 60);
    assert!(r.all_pass(), "{r:?}");
}

#[test]
fn moments_suite_is_deterministic() {
    let cfg = FockConfig { seed: 4, max_vertices: 2, ..Default::default() };
    assert_eq!(run_moments_suite(&cfg), run_moments_suite(&cfg));
}

#[test]
fn non_adjacent_vertices_do_not_commute() {
    let mut rng = seeded(6);
    let algs = vec![VertexAlgebra::matrix(random_density(2, &mut rng)).unwrap(); 2];
    let p = GraphProductAlgebra::new(SimplicialGraph::edgeless(2).unwrap(), algs).unwrap();
    let m = FockModel::new(p, 3, 5000).unwrap();
    let x = m.lambda(0, &m.product.algebras[0].random_element(&mut rng)).unwrap().matrix;
    let y = m.lambda(1, &m.product.algebras[1].random_element(&mut rng)).unwrap().matrix;
    let safe = m.fock.indices_up_to(1);
    assert!(restrict_columns(&x.commutator(&y), &safe).max_abs() > 1e-3);
}
