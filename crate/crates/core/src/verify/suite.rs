//! Seeded randomized suites over the checks in this module.

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::*;
use crate::graphwords::SimplicialGraph;
use crate::report::{run_trials, violation, Outcome, SuiteReport};
use crate::rng::TrialRng;
use crate::staralg::{random_theta, ThetaConfig, ThetaSpec};

/// Parameters shared by the verification suites.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Fixed graph; random graphs on up to `max_vertices` vertices otherwise.
    pub graph: Option<SimplicialGraph>,
    pub max_vertices: usize,
    /// Matrix sizes drawn per vertex.
    pub vertex_dims: Vec<usize>,
    pub max_word_len: usize,
    pub max_words: usize,
    pub tol: Tolerances,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 200,
            graph: None,
            max_vertices: 5,
            vertex_dims: vec![2, 3],
            max_word_len: 5,
            max_words: 30,
            tol: Tolerances::default(),
        }
    }
}

/// Each of the `n(n-1)/2` edges present with probability one half.
pub fn random_graph(rng: &mut TrialRng, min_n: usize, max_n: usize) -> SimplicialGraph {
    let n = rng.gen_range(min_n..=max_n.max(min_n));
    let mut g = SimplicialGraph::edgeless(n).expect("small n");
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                g.add_edge(i, j).expect("valid edge");
            }
        }
    }
    g
}

impl SuiteConfig {
    fn graph(&self, rng: &mut TrialRng, min_n: usize) -> SimplicialGraph {
        self.graph.clone().unwrap_or_else(|| random_graph(rng, min_n, self.max_vertices))
    }

    pub fn random_spec(&self, graph: &SimplicialGraph, rng: &mut TrialRng) -> Result<ThetaSpec, VerifyError> {
        let dims: Vec<usize> = (0..graph.n_vertices())
            .map(|_| self.vertex_dims[rng.gen_range(0..self.vertex_dims.len().max(1))])
            .collect();
        let cfg = ThetaConfig { vertex_dims: dims, ..ThetaConfig::default() };
        Ok(random_theta(graph, &cfg, rng)?)
    }

    fn family_config(&self) -> FamilyConfig {
        FamilyConfig { max_seeds: 3, max_len: self.max_word_len, max_words: self.max_words }
    }
}

fn error_artifact(trial: usize, e: &VerifyError) -> serde_json::Value {
    json!({ "trial": trial, "error": e.to_string() })
}

/// Per-trial diagnostics of the main suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UcpTrial {
    pub trial: usize,
    pub n_vertices: usize,
    pub gram: GramSummary,
    pub generators: usize,
    pub lx_max_excess: f64,
    pub lx_pass: bool,
    pub well_defined_max: f64,
    pub compression: Option<CompressionVerdict>,
    pub factor_residual: f64,
    pub isometry_residual: f64,
}

impl UcpTrial {
    pub fn pass(&self) -> bool {
        self.gram.pass && self.lx_pass && self.compression.as_ref().is_some_and(|c| c.pass)
    }
}

/// One trial of the main suite: random graph, spec and complete set; Gram
/// positivity, `L_x` bounds and compressions.
pub fn ucp_trial(cfg: &SuiteConfig, trial: usize, rng: &mut TrialRng) -> Result<(UcpTrial, ThetaSpec, WordFamily), VerifyError> {
    let graph = cfg.graph(rng, 1);
    let spec = cfg.random_spec(&graph, rng)?;
    let fam = random_family(spec.product(), &cfg.family_config(), rng)?;
    let report = gram(&spec, &fam, &cfg.tol)?;
    let mut out = UcpTrial {
        trial,
        n_vertices: graph.n_vertices(),
        gram: report.summary(),
        generators: 0,
        lx_max_excess: 0.0,
        lx_pass: false,
        well_defined_max: 0.0,
        compression: None,
        factor_residual: 0.0,
        isometry_residual: 0.0,
    };
    if !report.verdict.pass {
        return Ok((out, spec, fam));
    }
    let cs = build_concat_space(&spec, &fam, &report, &cfg.tol)?;
    let mut lx_pass = true;
    let mut excess = f64::NEG_INFINITY;
    for s in &cs.shifts {
        let v = check_lx_bound(&cs, s, letter_norm(spec.product(), &fam.elements[s.generator]), &cfg.tol);
        lx_pass &= v.pass;
        excess = excess.max(v.excess());
    }
    let chains = generator_chains(&fam)?;
    out.generators = cs.shifts.len();
    out.lx_max_excess = if cs.shifts.is_empty() { 0.0 } else { excess };
    out.lx_pass = lx_pass;
    out.well_defined_max = cs.max_well_defined_residual() / (1.0 + cs.gram_norm);
    out.compression = Some(check_compression(&cs, &report, &chains, &cfg.tol)?);
    out.factor_residual = cs.factor_residual;
    out.isometry_residual = cs.isometry_residual;
    Ok((out, spec, fam))
}

/// Main suite: a trial passes when its Gram matrix is PSD. The
/// concatenation Stinespring checks run on every trial and are tallied in
/// the metrics.
pub fn run_ucp_suite(cfg: &SuiteConfig) -> SuiteReport {
    concat_suite(cfg, "ucp", false)
}

/// Same trials as [`run_ucp_suite`], but a trial also has to satisfy the
/// `L_x` bound and the compression identity.
pub fn run_stinespring_suite(cfg: &SuiteConfig) -> SuiteReport {
    concat_suite(cfg, "stinespring", true)
}

fn concat_suite(cfg: &SuiteConfig, name: &str, strict: bool) -> SuiteReport {
    let results = run_trials(cfg.seed, cfg.trials, |i, rng| ucp_trial(cfg, i, rng));
    let mut report = SuiteReport::new(name, cfg.seed);
    let (mut gram_fail, mut lx_fail, mut comp_fail, mut errors) = (0usize, 0usize, 0usize, 0usize);
    let (mut lx_excess, mut comp_res, mut well, mut max_words) = (f64::NEG_INFINITY, 0.0f64, 0.0f64, 0usize);
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Err(e) => {
                errors += 1;
                report.push(Outcome::Fail { residual: f64::MAX, artifact: error_artifact(i, &e) });
            }
            Ok((t, spec, fam)) => {
                gram_fail += usize::from(!t.gram.pass);
                lx_fail += usize::from(t.gram.pass && !t.lx_pass);
                let c_ok = t.compression.as_ref().is_some_and(|c| c.pass);
                comp_fail += usize::from(t.gram.pass && !c_ok);
                if t.generators > 0 {
                    lx_excess = lx_excess.max(t.lx_max_excess);
                }
                if let Some(c) = &t.compression {
                    comp_res = comp_res.max(c.max_residual);
                }
                well = well.max(t.well_defined_max);
                max_words = max_words.max(t.gram.n_words);
                let residual = violation(t.gram.relative_slack);
                if (strict && t.pass()) || (!strict && t.gram.pass) {
                    report.push(Outcome::Pass { residual });
                } else {
                    let artifact = json!({ "trial": i, "diagnostics": t, "spec": spec, "family": fam });
                    report.push(Outcome::Fail { residual, artifact });
                }
            }
        }
    }
    report.metric("gram_failures", gram_fail as f64);
    report.metric("lx_failures", lx_fail as f64);
    report.metric("compression_failures", comp_fail as f64);
    report.metric("errors", errors as f64);
    report.metric("lx_max_excess", if lx_excess.is_finite() { lx_excess } else { 0.0 });
    report.metric("compression_max_residual", comp_res);
    report.metric("well_defined_max", well);
    report.metric("max_family_size", max_words as f64);
    report
}

/// Gram positivity only.
pub fn run_gram_suite(cfg: &SuiteConfig) -> SuiteReport {
    let results = run_trials(cfg.seed, cfg.trials, |i, rng| -> Result<(GramSummary, serde_json::Value), VerifyError> {
        let graph = cfg.graph(rng, 1);
        let spec = cfg.random_spec(&graph, rng)?;
        let fam = random_family(spec.product(), &cfg.family_config(), rng)?;
        let s = gram(&spec, &fam, &cfg.tol)?.summary();
        Ok((s, json!({ "trial": i, "spec": spec, "family": fam })))
    });
    let mut report = SuiteReport::new("gram", cfg.seed);
    for (i, r) in results.into_iter().enumerate() {
        report.push(match r {
            Err(e) => Outcome::Fail { residual: f64::MAX, artifact: error_artifact(i, &e) },
            Ok((s, _)) if s.pass => Outcome::Pass { residual: violation(s.relative_slack) },
            Ok((s, a)) => Outcome::Fail { residual: violation(s.relative_slack), artifact: a },
        });
    }
    report
}

struct LemmaTally {
    report: SuiteReport,
    nc: usize,
}

impl LemmaTally {
    fn new(name: &str, seed: u64) -> Self {
        Self { report: SuiteReport::new(name, seed), nc: 0 }
    }

    fn push(&mut self, trial: usize, r: Result<(bool, f64, bool, serde_json::Value), VerifyError>) {
        match r {
            Err(VerifyError::HypothesisNotMet(_)) => self.report.push(Outcome::Skipped),
            Err(e) => self.report.push(Outcome::Fail { residual: f64::MAX, artifact: error_artifact(trial, &e) }),
            Ok((pass, residual, nc, artifact)) => {
                self.nc += usize::from(nc);
                self.report.push(if pass { Outcome::Pass { residual } } else { Outcome::Fail { residual, artifact } });
            }
        }
    }

    fn finish(mut self) -> SuiteReport {
        let checked = self.report.passes + self.report.failures;
        self.report.metric("checked", checked as f64);
        self.report.metric("nc_branch", self.nc as f64);
        self.report.metric("nc_branch_fraction", if checked == 0 { 0.0 } else { self.nc as f64 / checked as f64 });
        self.report
    }
}

type LemmaResult = Result<(bool, f64, bool, serde_json::Value), VerifyError>;

fn run_lemma<F>(cfg: &SuiteConfig, name: &str, min_n: usize, f: F) -> SuiteReport
where
    F: Fn(&ThetaSpec, usize, &mut TrialRng) -> LemmaResult + Sync,
{
    let results = run_trials(cfg.seed, cfg.trials, |i, rng| -> LemmaResult {
        let graph = cfg.graph(rng, min_n);
        let spec = cfg.random_spec(&graph, rng)?;
        f(&spec, i, rng)
    });
    let mut tally = LemmaTally::new(name, cfg.seed);
    for (i, r) in results.into_iter().enumerate() {
        tally.push(i, r);
    }
    tally.finish()
}

pub fn run_x1_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_lemma(cfg, "x1", 2, |spec, i, rng| {
        let inst = random_x1_instance(spec.product(), cfg.max_word_len, rng)?;
        let v = check_lemma_x1(spec, &inst, &cfg.tol)?;
        Ok((v.pass, v.worst(), v.nc_branch, json!({ "trial": i, "verdict": v, "instance": inst, "spec": spec })))
    })
}

pub fn run_y1_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_lemma(cfg, "y1", 2, |spec, i, rng| {
        let inst = random_y1_instance(spec.product(), cfg.max_word_len, rng)?;
        let v = check_lemma_y1(spec, &inst, &cfg.tol)?;
        Ok((v.pass, v.worst(), v.nc_branch, json!({ "trial": i, "verdict": v, "instance": inst, "spec": spec })))
    })
}

/// Both cross-term lemmas in one report.
pub fn run_lemmas_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut r = SuiteReport::new("lemmas", cfg.seed);
    r.absorb(run_x1_suite(cfg));
    r.absorb(run_y1_suite(cfg));
    r
}

pub fn run_techlem_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_lemma(cfg, "techlem", 2, |spec, i, rng| {
        let inst = random_tech_instance(spec.product(), cfg.max_word_len, rng)?;
        let v = check_techlem(spec, &inst, &cfg.tol)?;
        let res = violation(v.relative_slack).max(v.residuals.iter().copied().fold(0.0, f64::max));
        Ok((v.pass, res, v.nc_branch, json!({ "trial": i, "verdict": v, "instance": inst, "spec": spec })))
    })
}

pub fn run_y1_square_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_lemma(cfg, "y1square", 2, |spec, i, rng| {
        let inst = random_y1_square_instance(spec.product(), cfg.max_word_len, 3, rng)?;
        let v = check_y1_square(spec, &inst, &cfg.tol)?;
        Ok((v.pass, violation(v.relative_slack), v.nc_branch, json!({ "trial": i, "verdict": v, "instance": inst, "spec": spec })))
    })
}

pub fn run_schwarz_suite(cfg: &SuiteConfig) -> SuiteReport {
    run_lemma(cfg, "schwarz", 1, |spec, i, rng| {
        let fam = random_family(spec.product(), &cfg.family_config(), rng)?;
        let pairs = random_schwarz_pairs(spec.product(), &fam, 4, rng)?;
        let v = check_schwarz(spec, &fam, &pairs, &cfg.tol)?;
        Ok((
            v.pass,
            violation(v.relative_slack),
            v.nc_branch,
            json!({ "trial": i, "verdict": v, "pairs": pairs, "family": fam, "spec": spec }),
        ))
    })
}

/// Complete graphs: order independence. Edgeless graphs: agreement with the
/// free-product builder. One vertex: Gram versus Choi. Each trial runs all three.
pub fn run_degenerate_suite(cfg: &SuiteConfig) -> SuiteReport {
    let results = run_trials(cfg.seed, cfg.trials, |i, rng| -> Result<[(bool, f64, serde_json::Value); 3], VerifyError> {
        let n = rng.gen_range(2..=4);
        let spec = cfg.random_spec(&SimplicialGraph::complete(n)?, rng)?;
        let p = spec.product();
        let k = rng.gen_range(1..=n);
        let mut verts: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(verts.as_mut_slice(), rng);
        verts.truncate(k);
        let letters: Vec<_> = verts.iter().map(|&v| (v, p.algebras[v].random_centered(rng))).collect();
        let res = complete_graph_order_residual(&spec, &letters)?;
        let a = (res <= cfg.tol.degeneration, res, json!({ "trial": i, "kind": "complete", "spec": spec, "letters": letters }));

        let n = rng.gen_range(2..=3);
        let spec = cfg.random_spec(&SimplicialGraph::edgeless(n)?, rng)?;
        let fam = random_family(spec.product(), &cfg.family_config(), rng)?;
        let c = free_cross_check(&spec, &fam, &cfg.tol)?;
        let b = (c.agree, c.gram_residual, json!({ "trial": i, "kind": "edgeless", "check": c, "spec": spec, "family": fam }));

        let spec = cfg.random_spec(&SimplicialGraph::edgeless(1)?, rng)?;
        let fam = random_family(spec.product(), &cfg.family_config(), rng)?;
        let s = single_vertex_check(&spec, &fam, &cfg.tol)?;
        let c = (s.agree, 0.0, json!({ "trial": i, "kind": "single_vertex", "check": s, "spec": spec }));
        Ok([a, b, c])
    });
    let mut report = SuiteReport::new("degenerate", cfg.seed);
    let mut worst = [0.0f64; 3];
    let mut fails = [0usize; 3];
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Err(e) => report.push(Outcome::Fail { residual: f64::MAX, artifact: error_artifact(i, &e) }),
            Ok(checks) => {
                for (k, (pass, res, art)) in checks.into_iter().enumerate() {
                    worst[k] = worst[k].max(res);
                    fails[k] += usize::from(!pass);
                    report.push(if pass { Outcome::Pass { residual: res } } else { Outcome::Fail { residual: res, artifact: art } });
                }
            }
        }
    }
    report.metric("complete_max_residual", worst[0]);
    report.metric("edgeless_max_residual", worst[1]);
    report.metric("complete_failures", fails[0] as f64);
    report.metric("edgeless_failures", fails[1] as f64);
    report.metric("single_vertex_failures", fails[2] as f64);
    report
}
