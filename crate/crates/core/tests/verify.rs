use graphstar::graphwords::SimplicialGraph;
use graphstar::mathcore::{op_norm, psd_pinv, psd_sqrt, CMatrix};
use graphstar::rng::seeded;
use graphstar::staralg::{random_theta, ThetaConfig, ThetaSpec};
use graphstar::verify::suite::{run_gram_suite, SuiteConfig};
use graphstar::verify::*;

fn single_letter(seed: u64) -> (ThetaSpec, WordFamily) {
    let mut rng = seeded(seed);
    let spec = random_theta(&SimplicialGraph::edgeless(1).unwrap(), &ThetaConfig::default(), &mut rng).unwrap();
    let a = spec.product().algebras[0].random_centered(&mut rng);
    let words = [OpWord::unit(), OpWord { word: vec![0], ids: vec![0] }];
    let fam = WordFamily::from_op_words(spec.product(), &[(0, a)], &words).unwrap();
    (spec, fam)
}

// Closed form for X = {(), x}: ‖L_x‖² = λ_max(M^{-1/2} S M^{-1/2}), M = I − T S⁺ T*.
#[test]
fn lx_norm_matches_closed_form() {
    let tol = Tolerances::default();
    for seed in 0..5 {
        let (spec, fam) = single_letter(seed);
        let p = spec.product();
        let x = &fam.elements[1];
        let rep = gram(&spec, &fam, &tol).unwrap();
        let cs = build_concat_space(&spec, &fam, &rep, &tol).unwrap();
        let v = check_lx_bound(&cs, &cs.shifts[0], letter_norm(p, x), &tol);
        let t = spec.eval(x).unwrap();
        let s = spec.eval(&p.mul(&p.adjoint(x), x).unwrap()).unwrap();
        let m = &CMatrix::identity(t.rows()) - &(&(&t * &psd_pinv(&s, 1e-12).unwrap()) * &t.adjoint());
        let m_inv_sqrt = psd_pinv(&psd_sqrt(&m, 1e-10).unwrap(), 1e-12).unwrap();
        let oracle = op_norm(&(&psd_sqrt(&s, 1e-10).unwrap() * &m_inv_sqrt));
        assert!((v.norm_l - oracle).abs() < 1e-8 * (1.0 + oracle), "{} vs {oracle}", v.norm_l);
    }
}

#[test]
fn schwarz_mixed_pairs_counterexample() {
    let (spec, fam) = single_letter(3);
    let tol = Tolerances::default();
    assert!(check_schwarz(&spec, &fam, &[(1, 0)], &tol).unwrap().pass);
    assert!(check_schwarz(&spec, &fam, &[(0, 1)], &tol).unwrap().pass);
    let mixed = check_schwarz(&spec, &fam, &[(0, 1), (1, 0)], &tol).unwrap();
    assert!(!mixed.pass && mixed.min_eig < -1e-3, "{mixed:?}");
}

#[test]
fn schwarz_all_unit_b_is_gram() {
    let (spec, fam) = single_letter(4);
    let v = check_schwarz(&spec, &fam, &[(0, 0), (0, 1)], &Tolerances::default()).unwrap();
    assert!(v.pass);
}

#[test]
fn schwarz_rejects_pairs_outside_family() {
    let (spec, fam) = single_letter(5);
    let e = check_schwarz(&spec, &fam, &[(1, 1)], &Tolerances::default()).unwrap_err();
    assert!(matches!(e, VerifyError::PairNotInX(_)));
}

#[test]
fn gram_suite_is_deterministic() {
    let cfg = SuiteConfig { seed: 11, trials: 12, ..Default::default() };
    assert_eq!(run_gram_suite(&cfg), run_gram_suite(&cfg));
}
