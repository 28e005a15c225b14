use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphstar::dilate::{self, Contraction, DilateConfig};
use graphstar::fock::{self, FockConfig};
use graphstar::formats;
use graphstar::graphwords::{self, SimplicialGraph, VertexWord};
use graphstar::groups::{self, GraphProductGroup, PdSuiteConfig};
use graphstar::report::SuiteReport;
use graphstar::rng::seeded;
use graphstar::verify::suite::SuiteConfig;
use graphstar::verify::{self, Tolerances};
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Run(String),
}

impl From<formats::FormatError> for CliError {
    fn from(e: formats::FormatError) -> Self {
        Self::Usage(e.to_string())
    }
}

fn run_err(e: impl std::fmt::Display) -> CliError {
    CliError::Run(e.to_string())
}

/// Word calculus of graph products and numerical checks for graph products
/// of completely positive maps.
#[derive(Parser, Debug)]
#[command(name = "graphstar", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Word operations on a graph.
    Words {
        op: WordOp,
        #[command(flatten)]
        w: WordArgs,
    },
    /// Positivity, lemma and degeneration suites.
    Verify {
        suite: VerifySuite,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Truncated Fock space suites.
    Fock {
        suite: FockSuite,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Graph products of finite groups.
    Groups {
        op: GroupOp,
        #[command(flatten)]
        run: RunArgs,
        /// Vertex groups, e.g. `cyclic:2,sym:3`.
        #[arg(long)]
        groups: Option<String>,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Unitary dilations.
    Dilate {
        op: DilateOp,
        #[command(flatten)]
        run: RunArgs,
        /// Contraction as `;`-separated rows, e.g. `0.5,0;0,0.2`.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        /// Polynomial as `COEF:WORD;...`, e.g. `1:0,1;-0.5:1`.
        #[arg(long)]
        poly: Option<String>,
    },
    /// Run several suites into one report array.
    Report {
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        /// Also write a one-line-per-suite CSV summary.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WordOp {
    Reduce,
    Nf,
    Stdform,
    Closure,
    Nclen,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifySuite {
    Ucp,
    Gram,
    Stinespring,
    Schwarz,
    Lemmas,
    Techlem,
    Y1square,
    Degenerate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FockSuite {
    Independence,
    Moments,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupOp {
    Pd,
    Ball,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DilateOp {
    Halmos,
    Egervary,
    Gram,
    Vn,
    Independence,
}

#[derive(Args, Debug)]
struct WordArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Comma-separated vertices; repeat for `closure`.
    #[arg(long, required = true)]
    word: Vec<String>,
    /// The vertex `v0` for `stdform` and `nclen`.
    #[arg(long)]
    vertex: Option<usize>,
}

#[derive(Args, Debug, Default)]
struct RunArgs {
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    /// Comma-separated vertex matrix sizes.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    max_word_len: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Report path; stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_graph(path: &Path) -> Result<SimplicialGraph, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    formats::parse_graph(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

impl RunArgs {
    fn graph(&self) -> Result<Option<SimplicialGraph>, CliError> {
        self.graph.as_deref().map(read_graph).transpose()
    }

    fn dims(&self) -> Result<Option<Vec<usize>>, CliError> {
        self.dims.as_deref().map(formats::parse_usize_list).transpose().map_err(Into::into)
    }

    fn suite_config(&self) -> Result<SuiteConfig, CliError> {
        let mut cfg = SuiteConfig { seed: self.seed, graph: self.graph()?, ..SuiteConfig::default() };
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(d) = self.dims()? {
            if d.is_empty() || d.iter().any(|&x| x == 0 || x > 3) {
                return Err(CliError::Usage("--dims entries must be in 1..=3".into()));
            }
            cfg.vertex_dims = d;
        }
        if let Some(l) = self.max_word_len {
            cfg.max_word_len = l;
        }
        if let Some(t) = self.tol {
            cfg.tol = Tolerances { psd: t, ..Tolerances::default() };
        }
        Ok(cfg)
    }

    fn fock_config(&self) -> Result<FockConfig, CliError> {
        let mut cfg = FockConfig { seed: self.seed, ..FockConfig::default() };
        if let Some(d) = self.dims()? {
            cfg.max_d = d.into_iter().max().unwrap_or(cfg.max_d);
        }
        if let Some(l) = self.max_word_len {
            cfg.max_word_len = l;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        Ok(cfg)
    }

    fn pd_config(&self, groups: Option<&str>) -> Result<PdSuiteConfig, CliError> {
        let mut cfg = PdSuiteConfig { seed: self.seed, graph: self.graph()?, ..PdSuiteConfig::default() };
        cfg.groups = groups.map(formats::parse_groups).transpose()?;
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(d) = self.dims()? {
            cfg.max_dim = d.into_iter().max().unwrap_or(cfg.max_dim);
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        Ok(cfg)
    }

    fn dilate_config(&self) -> Result<DilateConfig, CliError> {
        let mut cfg = DilateConfig { seed: self.seed, graph: self.graph()?, ..DilateConfig::default() };
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(d) = self.dims()? {
            cfg.max_dim = d.into_iter().max().unwrap_or(cfg.max_dim);
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        Ok(cfg)
    }
}

fn stamp(mut r: SuiteReport) -> SuiteReport {
    r.timestamp = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
    r
}

fn emit(out: Option<&Path>, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(run_err)? + "\n";
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(run: &RunArgs, r: SuiteReport) -> Result<bool, CliError> {
    let r = stamp(r);
    eprintln!(
        "{}: {} trials, {} passed, {} failed, {} skipped, worst residual {:.3e}",
        r.suite, r.trials, r.passes, r.failures, r.skipped, r.worst_residual
    );
    emit(run.out.as_deref(), &serde_json::to_value(&r).map_err(run_err)?)?;
    Ok(r.all_pass())
}

fn words(op: WordOp, a: &WordArgs) -> Result<bool, CliError> {
    let g = read_graph(&a.graph)?;
    let ws = a.word.iter().map(|w| formats::parse_word_on(&g, w)).collect::<Result<Vec<_>, _>>()?;
    let vertex = || -> Result<usize, CliError> {
        let v = a.vertex.ok_or_else(|| CliError::Usage("--vertex is required".into()))?;
        g.check_vertex(v).map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(v)
    };
    for w in &ws {
        match op {
            WordOp::Reduce => println!("{}", graphwords::reduce(&g, w)),
            WordOp::Nf => println!("{}", graphwords::normal_form(&g, w)),
            WordOp::Stdform => {
                let r = graphwords::normal_form(&g, w);
                let s = graphwords::standard_form(&g, &r, vertex()?).map_err(run_err)?;
                println!("y={} c={} v0={} b={} nc={}", s.y, s.c, s.v0, s.b, s.nc);
            }
            WordOp::Nclen => {
                let r = graphwords::normal_form(&g, w);
                println!("{}", graphwords::nc_length(&g, &r, vertex()?).map_err(run_err)?);
            }
            WordOp::Closure => {}
        }
    }
    if let WordOp::Closure = op {
        let seeds: Vec<VertexWord> = ws.into_iter().map(VertexWord).collect();
        for w in graphwords::complete_closure(&g, &seeds) {
            println!("{w}");
        }
    }
    Ok(true)
}

const ALL_SUITES: &[&str] = &[
    "gram", "ucp", "stinespring", "schwarz", "lemmas", "techlem", "y1square", "degenerate", "moments", "independence", "pd",
    "egervary", "dilation_gram", "vn", "dilation_independence",
];

fn named_suite(name: &str, run: &RunArgs) -> Result<SuiteReport, CliError> {
    let trials = |default: usize| run.trials.unwrap_or(default);
    Ok(match name {
        "gram" => verify::suite::run_gram_suite(&run.suite_config()?),
        "ucp" => verify::suite::run_ucp_suite(&run.suite_config()?),
        "stinespring" => verify::suite::run_stinespring_suite(&run.suite_config()?),
        "schwarz" => verify::suite::run_schwarz_suite(&run.suite_config()?),
        "lemmas" => verify::suite::run_lemmas_suite(&run.suite_config()?),
        "techlem" => verify::suite::run_techlem_suite(&run.suite_config()?),
        "y1square" => verify::suite::run_y1_square_suite(&run.suite_config()?),
        "degenerate" => verify::suite::run_degenerate_suite(&run.suite_config()?),
        "moments" => fock::run_moments_suite(&run.fock_config()?),
        "independence" => fock::run_independence_suite(&run.fock_config()?, trials(100)),
        "pd" => groups::run_pd_suite(&run.pd_config(None)?),
        "egervary" => dilate::run_egervary_suite(&run.dilate_config()?),
        "dilation_gram" => dilate::run_dilation_gram_suite(&DilateConfig { trials: trials(200), ..run.dilate_config()? }),
        "vn" => dilate::run_vn_suite(&DilateConfig { trials: trials(100), ..run.dilate_config()? }),
        "dilation_independence" => {
            dilate::run_gp_independence_suite(&DilateConfig { trials: trials(200), ..run.dilate_config()? })
        }
        other => return Err(CliError::Usage(format!("unknown suite `{other}`; known: {}", ALL_SUITES.join(", ")))),
    })
}

fn report(suites: &str, run: &RunArgs, csv: Option<&Path>) -> Result<bool, CliError> {
    let names: Vec<&str> =
        if suites.trim() == "all" { ALL_SUITES.to_vec() } else { suites.split(',').map(str::trim).collect() };
    let reports = names.iter().map(|n| named_suite(n, run).map(stamp)).collect::<Result<Vec<_>, _>>()?;
    for r in &reports {
        eprintln!("{:<22} {}", r.suite, if r.all_pass() { "PASS" } else { "FAIL" });
    }
    if let Some(p) = csv {
        let mut text = String::from("suite,trials,passes,failures,skipped,worst_residual\n");
        for r in &reports {
            text.push_str(&format!("{},{},{},{},{},{:e}\n", r.suite, r.trials, r.passes, r.failures, r.skipped, r.worst_residual));
        }
        fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
    }
    let ok = reports.iter().all(SuiteReport::all_pass);
    emit(run.out.as_deref(), &serde_json::to_value(&reports).map_err(run_err)?)?;
    Ok(ok)
}

fn contraction(matrix: Option<&str>, seed: u64) -> Result<Contraction, CliError> {
    match matrix {
        Some(m) => Contraction::new(formats::parse_matrix(m)?).map_err(|e| CliError::Usage(e.to_string())),
        None => Ok(Contraction::random(2, 0.2, 0.95, &mut seeded(seed))),
    }
}

fn dilation(op: DilateOp, run: &RunArgs, matrix: Option<&str>, degree: usize, poly: Option<&str>) -> Result<bool, CliError> {
    match op {
        DilateOp::Halmos | DilateOp::Egervary => {
            let t = contraction(matrix, run.seed)?;
            let d = match op {
                DilateOp::Halmos => dilate::NDilation { u: dilate::halmos(&t).map_err(run_err)?, dim: t.dim(), degree: 1 },
                _ => dilate::egervary(&t, degree).map_err(|e| CliError::Usage(e.to_string()))?,
            };
            let res = d.residuals(&t);
            let tol = run.tol.unwrap_or(1e-9);
            let ok = res.unitarity <= tol && res.compression <= tol;
            emit(
                run.out.as_deref(),
                &serde_json::json!({
                    "contraction": formats::write_matrix(t.matrix()),
                    "degree": d.degree,
                    "unitary": d.u,
                    "residuals": res,
                    "pass": ok,
                }),
            )?;
            Ok(ok)
        }
        DilateOp::Vn => match poly {
            None => emit_report(run, named_suite("vn", run)?),
            Some(p) => {
                let p = formats::parse_polynomial(p)?;
                let g = run.graph()?.ok_or_else(|| CliError::Usage("--poly needs --graph".into()))?;
                let ts = dilate::random_doubly_commuting(&g, 2, 4, &mut seeded(run.seed));
                let r = dilate::vn_surrogate(&g, &ts, &p, 60, &Tolerances::default()).map_err(run_err)?;
                emit(run.out.as_deref(), &serde_json::json!({ "polynomial": formats::write_polynomial(&p), "report": r }))?;
                Ok(r.pass)
            }
        },
        DilateOp::Gram => emit_report(run, named_suite("dilation_gram", run)?),
        DilateOp::Independence => emit_report(run, named_suite("dilation_independence", run)?),
    }
}

fn ball(run: &RunArgs, groups: Option<&str>, radius: usize) -> Result<bool, CliError> {
    let g = run.graph()?.ok_or_else(|| CliError::Usage("ball needs --graph".into()))?;
    let gs = formats::parse_groups(groups.ok_or_else(|| CliError::Usage("ball needs --groups".into()))?)?;
    let p = GraphProductGroup::new(g, gs).map_err(|e| CliError::Usage(e.to_string()))?;
    let b = p.ball(radius, 100_000).map_err(run_err)?;
    for e in &b {
        let s: Vec<String> = e.letters().iter().map(|(v, x)| format!("{v}:{x}")).collect();
        println!("{}", if s.is_empty() { "()".to_string() } else { s.join(",") });
    }
    eprintln!("{} elements", b.len());
    Ok(true)
}

fn dispatch(cli: Cli) -> Result<bool, CliError> {
    match cli.cmd {
        Cmd::Words { op, w } => words(op, &w),
        Cmd::Verify { suite, run } => {
            let name = match suite {
                VerifySuite::Ucp => "ucp",
                VerifySuite::Gram => "gram",
                VerifySuite::Stinespring => "stinespring",
                VerifySuite::Schwarz => "schwarz",
                VerifySuite::Lemmas => "lemmas",
                VerifySuite::Techlem => "techlem",
                VerifySuite::Y1square => "y1square",
                VerifySuite::Degenerate => "degenerate",
            };
            emit_report(&run, named_suite(name, &run)?)
        }
        Cmd::Fock { suite, run } => {
            let name = match suite {
                FockSuite::Independence => "independence",
                FockSuite::Moments => "moments",
            };
            emit_report(&run, named_suite(name, &run)?)
        }
        Cmd::Groups { op: GroupOp::Pd, run, groups, .. } => {
            emit_report(&run, groups::run_pd_suite(&run.pd_config(groups.as_deref())?))
        }
        Cmd::Groups { op: GroupOp::Ball, run, groups, radius } => ball(&run, groups.as_deref(), radius),
        Cmd::Dilate { op, run, matrix, degree, poly } => {
            dilation(op, &run, matrix.as_deref(), degree, poly.as_deref())
        }
        Cmd::Report { suite, run, csv } => report(&suite, &run, csv.as_deref()),
    }
}

fn init_threads() -> Result<(), CliError> {
    if let Ok(v) = std::env::var("GRAPHSTAR_THREADS") {
        let n: usize = v.parse().map_err(|_| CliError::Usage(format!("GRAPHSTAR_THREADS=`{v}` is not a number")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(run_err)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match init_threads().and_then(|_| dispatch(cli)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Run(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
