use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use keller_core::attrlab::mfs_sample;
use keller_core::certlab::{fiber_transport_check, verify_certificate, Certificate};
use keller_core::gzpair::{pair_down, pair_up, verify_pairing};
use keller_core::polymap::{classify, is_druzkowski, is_yagzhev, jh_nilpotency};
use keller_core::reducer::{lower_degree, meng_symmetrize, segre_extend, to_yagzhev, REFERENCE_CUBIC_DIM, REFERENCE_YAGZHEV_DIM};
use keller_core::shell::{
    builtin_example, builtin_examples, map_to_text, parse_map, print_map, print_poly, default_var_names,
    AnalyzeReport, CertificateJson, ExampleEntry, PairReport, PairingJson, ReduceReport, SegreReport,
    SymmetrizeReport, VerifyReport,
};
use keller_core::{Budget, Error, PolyMap, RatMatrix, Rational};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "keller", version, about = "Exact tools for polynomial maps of R^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    global: Global,
}

#[derive(Args, Clone)]
struct Global {
    /// Largest map dimension the reducer may produce.
    #[arg(long, global = true, default_value_t = 2000)]
    budget_dim: usize,
    /// Wall-clock limit for a reduction, in milliseconds.
    #[arg(long, global = true, default_value_t = 300_000)]
    budget_ms: u64,
    /// Dimension up to which Jacobian determinants are computed exactly.
    #[arg(long, global = true, default_value_t = 12)]
    exact_threshold: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Keep wall-clock fields in reports (they make output non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    Cubic,
    Yagzhev,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a map: degeneracy, Keller property, structure, attributes.
    Analyze {
        input: String,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Reduce to a cubic or cubic homogeneous map, with a certificate.
    Reduce {
        input: String,
        #[arg(long, value_enum)]
        to: Target,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Cubic linear partner of a cubic homogeneous map.
    PairUp {
        input: String,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Cubic homogeneous partner of `X + (AX)^3`.
    PairDown {
        input: String,
        /// Text matrix: one row per line, entries separated by spaces.
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Symmetrize to a gradient map in twice the dimension.
    Symmetrize {
        input: String,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Segre extension `(F(tx)/t, t)`.
    Segre {
        input: String,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Verify a certificate; optionally transport sampled fibers through it.
    VerifyCert {
        file: PathBuf,
        #[arg(long)]
        fiber_samples: Option<usize>,
    },
    /// Fiber attributes of a plane map.
    Attributes {
        input: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Built-in example maps.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
}

#[derive(Subcommand)]
enum ExamplesAction {
    List,
    Show { id: String },
}

/// Failure classes with distinct exit codes.
enum Failure {
    Check(String),
    Usage(anyhow::Error),
    Budget(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::BudgetExceeded(msg)) => Failure::Budget(msg.clone()),
            _ => Failure::Usage(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from(anyhow::Error::from(e))
    }
}

type Outcome = Result<(), Failure>;

fn budget(g: &Global) -> Budget {
    let mut b = Budget::default();
    b.max_dim = g.budget_dim;
    b.max_ms = g.budget_ms;
    b.exact_det_dim = g.exact_threshold;
    b
}

/// A file path, or the id of a built-in example when no such file exists.
fn load(input: &str) -> anyhow::Result<(PolyMap, Option<ExampleEntry>)> {
    let path = Path::new(input);
    if !path.exists() {
        if let Ok(entry) = builtin_example(input) {
            return Ok((entry.document.to_map()?, Some(entry)));
        }
    }
    let text = fs::read_to_string(path).with_context(|| format!("reading `{input}`"))?;
    let doc = parse_map(&text).with_context(|| format!("parsing `{input}`"))?;
    Ok((doc.to_map()?, None))
}

fn write_file(path: &Path, contents: &str) -> anyhow::Result<()> {
    fs::write(path, contents).with_context(|| format!("writing `{}`", path.display()))
}

fn write_cert(path: Option<&PathBuf>, c: &Certificate) -> anyhow::Result<()> {
    if let Some(p) = path {
        let json = serde_json::to_string_pretty(&CertificateJson::from_certificate(c))?;
        write_file(p, &(json + "\n"))?;
    }
    Ok(())
}

fn print_json<T: Serialize>(v: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn parse_matrix(text: &str) -> anyhow::Result<RatMatrix> {
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|s| s.parse::<Rational>().map_err(|_| anyhow!("bad matrix entry `{s}`")))
                .collect::<anyhow::Result<Vec<_>>>()
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(RatMatrix::from_rows(rows)?)
}

fn analyze(g: &Global, input: &str, samples: usize) -> Outcome {
    let (f, entry) = load(input)?;
    let b = budget(g);
    let classification = classify(&f, g.seed, &b)?;
    let yagzhev = is_yagzhev(&f).holds;
    let jh = if yagzhev {
        Some(jh_nilpotency(&f, &b, g.seed)?)
    } else {
        None
    };
    let attributes = if f.nvars() == 2 && classification.nondegenerate {
        let sag = entry.as_ref().and_then(|e| e.expected.sag_external);
        Some(mfs_sample(&f, g.seed, samples)?.with_sag(sag))
    } else {
        None
    };
    let report = AnalyzeReport {
        dim: f.nvars(),
        degree: f.degree().finite(),
        druzkowski: is_druzkowski(&f).holds,
        classification,
        yagzhev,
        jh_nilpotency: jh,
        attributes,
        seed: g.seed,
    };
    if g.json {
        print_json(&report)?;
    } else {
        let c = &report.classification;
        println!("dimension      {}", report.dim);
        println!("degree         {}", report.degree.map_or("-".into(), |d| d.to_string()));
        println!("nondegenerate  {} ({})", c.nondegenerate, c.nondegenerate_method);
        println!("keller         {:?}", c.keller);
        if let Some(j) = &c.jacobian_constant {
            println!("jacobian       {j}");
        }
        println!(
            "nonsingular    {} on {} sampled points{}",
            c.nonsingular_sampled.pass,
            c.nonsingular_sampled.samples,
            if c.nonsingular_sampled.pass { " (sampled evidence)" } else { "" }
        );
        println!("yagzhev        {}", report.yagzhev);
        println!("druzkowski     {}", report.druzkowski);
        if let Some(n) = &report.jh_nilpotency {
            println!("J(H) nilpotent {:?}", n.is_nilpotent());
        }
        if let Some(a) = &report.attributes {
            print_attributes(a);
        }
    }
    Ok(())
}

fn print_attributes(a: &keller_core::attrlab::AttributeReport) {
    let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
    println!("dex            {}", show(a.dex));
    println!("mfs observed   {} over {} fibers", show(a.mfs_observed), a.samples);
    println!(
        "parity         {}",
        a.parity_consistent.map_or("-".into(), |p| if p { "consistent".into() } else { "INCONSISTENT".to_string() })
    );
    if let Some(s) = a.sag_external {
        println!("sag            {s} (external, not computed)");
    }
}

fn reduce(g: &Global, input: &str, to: Target, out: Option<&PathBuf>, cert: Option<&PathBuf>) -> Outcome {
    let (f, _) = load(input)?;
    let b = budget(g);
    let (map, certificate, mut report) = match to {
        Target::Cubic => {
            let start = std::time::Instant::now();
            let l = lower_degree(&f)?;
            let ms = start.elapsed().as_millis() as u64;
            b.check_dim(l.map.nvars(), "degree lowering")?;
            let stages = vec![
                keller_core::reducer::StageRecord {
                    name: "input".into(),
                    dim: f.nvars(),
                    moves: 0,
                    millis: 0,
                },
                keller_core::reducer::StageRecord {
                    name: "step1_lower_degree".into(),
                    dim: l.map.nvars(),
                    moves: l.certificate.moves.len(),
                    millis: ms,
                },
            ];
            let report = ReduceReport {
                to: "cubic".into(),
                input_dim: f.nvars(),
                output_dim: l.map.nvars(),
                output_degree: l.map.degree().finite(),
                stages,
                potentials: l.potentials.clone(),
                moves: l.certificate.moves.len(),
                yagzhev: is_yagzhev(&l.map).holds,
                segre_identity: None,
                base_point: Vec::new(),
                reference_cubic_dim: REFERENCE_CUBIC_DIM,
                reference_yagzhev_dim: REFERENCE_YAGZHEV_DIM,
                elapsed_ms: ms,
            };
            (l.map, l.certificate, report)
        }
        Target::Yagzhev => {
            let (map, trace) = to_yagzhev(&f, g.seed, &b)?;
            let report = ReduceReport {
                to: "yagzhev".into(),
                input_dim: f.nvars(),
                output_dim: map.nvars(),
                output_degree: map.degree().finite(),
                stages: trace.stages.clone(),
                potentials: trace.potentials.clone(),
                moves: trace.certificate.moves.len(),
                yagzhev: is_yagzhev(&map).holds,
                segre_identity: trace.segre_identity,
                base_point: trace.base_point.iter().map(ToString::to_string).collect(),
                reference_cubic_dim: REFERENCE_CUBIC_DIM,
                reference_yagzhev_dim: REFERENCE_YAGZHEV_DIM,
                elapsed_ms: trace.elapsed_ms,
            };
            (map, trace.certificate, report)
        }
    };
    if !g.timings {
        report.elapsed_ms = 0;
        report.stages.iter_mut().for_each(|s| s.millis = 0);
    }
    match out {
        Some(p) => write_file(p, &map_to_text(&map))?,
        None if !g.json => print!("{}", map_to_text(&map)),
        None => {}
    }
    write_cert(cert, &certificate)?;
    if g.json {
        print_json(&report)?;
    } else {
        let dims: Vec<String> = report.stages.iter().map(|s| format!("{}:{}", s.name, s.dim)).collect();
        eprintln!("stages         {}", dims.join(" "));
        eprintln!("moves          {}", report.moves);
        eprintln!(
            "reference      cubic {} / yagzhev {} (for comparison only)",
            REFERENCE_CUBIC_DIM, REFERENCE_YAGZHEV_DIM
        );
    }
    Ok(())
}

fn pair_report(g: &Global, p: keller_core::gzpair::GzPairing, cert: Option<&PathBuf>) -> Outcome {
    let verdict = verify_pairing(&p);
    if let Some(path) = cert {
        let c = keller_core::gzpair::pairing_to_equivalence(&p)?;
        write_cert(Some(path), &c)?;
    }
    let report = PairReport {
        pairing: PairingJson::from_pairing(&p),
        verdict,
    };
    if g.json {
        print_json(&report)?;
    } else {
        println!("n = {}, m = {}", p.n(), p.m());
        print!("{}", report.pairing.f);
        print!("{}", report.pairing.g);
        println!("pairing valid: {}", report.verdict.valid);
    }
    if !report.verdict.valid {
        return Err(Failure::Check(format!(
            "pairing axiom {} fails",
            report.verdict.failed_axiom.unwrap_or(0)
        )));
    }
    Ok(())
}

fn symmetrize(g: &Global, input: &str, cert: Option<&PathBuf>) -> Outcome {
    let (f, _) = load(input)?;
    let s = meng_symmetrize(&f, g.seed)?;
    write_cert(cert, &s.certificate)?;
    let jac = s.map.jacobian();
    let report = SymmetrizeReport {
        dim: s.map.nvars(),
        map: map_to_text(&s.map),
        potential: print_poly(&s.potential, &default_var_names(s.map.nvars())),
        jacobian_symmetric: jac.transpose() == *jac,
        inverse_status: s.inverse_status,
        moves: s.certificate.moves.len(),
    };
    if g.json {
        print_json(&report)?;
    } else {
        print!("{}", report.map);
    }
    Ok(())
}

fn segre(g: &Global, input: &str, cert: Option<&PathBuf>) -> Outcome {
    let (f, _) = load(input)?;
    let s = segre_extend(&f, &budget(g))?;
    write_cert(cert, &s.certificate)?;
    let report = SegreReport {
        dim: s.map.nvars(),
        map: map_to_text(&s.map),
        identity_holds: s.identity_holds,
    };
    if g.json {
        print_json(&report)?;
    } else {
        print!("{}", report.map);
    }
    if report.identity_holds == Some(false) {
        return Err(Failure::Check("Jacobian identity fails".into()));
    }
    Ok(())
}

fn verify(g: &Global, file: &Path, fiber_samples: Option<usize>) -> Outcome {
    let text = fs::read_to_string(file).with_context(|| format!("reading `{}`", file.display()))?;
    let json: CertificateJson = serde_json::from_str(&text).context("certificate JSON")?;
    let c = match json.to_certificate() {
        Ok(c) => c,
        // a move that cannot be replayed makes the certificate invalid, not the input malformed
        Err(e @ (Error::NonPolynomialComposition | Error::SegreNotAtOrigin | Error::DimensionMismatch(_))) => {
            return Err(Failure::Check(e.to_string()));
        }
        Err(e) => return Err(e.into()),
    };
    let verdict = verify_certificate(&c);
    let transport = fiber_samples.map(|n| fiber_transport_check(&c, g.seed, n));
    let report = VerifyReport { verdict, transport };
    if g.json {
        print_json(&report)?;
    } else {
        println!("moves          {}", report.verdict.moves);
        println!("valid          {}", report.verdict.valid);
        if let Some(r) = &report.verdict.reason {
            println!("reason         {r}");
        }
        println!("weakest status {:?}", report.verdict.weakest_status);
        if let Some(t) = &report.transport {
            println!("transport      {}/{} samples", t.matches, t.samples);
        }
    }
    if !report.valid() {
        return Err(Failure::Check("certificate does not verify".into()));
    }
    Ok(())
}

fn attributes(g: &Global, input: &str, samples: usize) -> Outcome {
    let (f, entry) = load(input)?;
    let sag = entry.as_ref().and_then(|e| e.expected.sag_external);
    let report = mfs_sample(&f, g.seed, samples)?.with_sag(sag);
    if g.json {
        print_json(&report)?;
    } else {
        print_attributes(&report);
    }
    if report.parity_consistent == Some(false) || report.empty_image_fibers > 0 {
        return Err(Failure::Check("fiber counts are inconsistent".into()));
    }
    Ok(())
}

fn examples(g: &Global, action: &ExamplesAction) -> Outcome {
    match action {
        ExamplesAction::List => {
            for e in builtin_examples() {
                println!("{:<16} dim {}  {}", e.id, e.document.vars().len(), e.description);
            }
        }
        ExamplesAction::Show { id } => {
            let e = builtin_example(id)?;
            if g.json {
                print_json(&serde_json::json!({
                    "id": e.id,
                    "description": e.description,
                    "map": print_map(&e.document),
                    "expected": e.expected,
                }))?;
            } else {
                print!("{}", print_map(&e.document));
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Analyze { input, samples } => analyze(g, input, *samples),
        Command::Reduce { input, to, out, cert } => reduce(g, input, *to, out.as_ref(), cert.as_ref()),
        Command::PairUp { input, cert } => {
            let (f, _) = load(input)?;
            pair_report(g, pair_up(&f)?, cert.as_ref())
        }
        Command::PairDown { input, matrix, cert } => {
            let (f, _) = load(input)?;
            let text = fs::read_to_string(matrix).with_context(|| format!("reading `{}`", matrix.display()))?;
            let a = parse_matrix(&text)?;
            pair_report(g, pair_down(&f, &a)?, cert.as_ref())
        }
        Command::Symmetrize { input, cert } => symmetrize(g, input, cert.as_ref()),
        Command::Segre { input, cert } => segre(g, input, cert.as_ref()),
        Command::VerifyCert { file, fiber_samples } => verify(g, file, *fiber_samples),
        Command::Attributes { input, samples } => attributes(g, input, *samples),
        Command::Examples { action } => examples(g, action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("budget exceeded: {msg}");
            ExitCode::from(3)
        }
    }
}
