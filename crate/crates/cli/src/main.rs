mod error;
mod expr;
mod workspace;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grpscheme::adjunction::coinduce;
use grpscheme::extcoh::{ext_dim, DEFAULT_SIZE_CAP};
use grpscheme::hopf::subgroup::{trivial_subgroup, SubgroupEmbedding};
use grpscheme::norm::{mumford_norm, NormPlan, Transversal};
use grpscheme::suites::{run_suite, run_suites, CheckLine, SuiteConfig, SUITES};
use grpscheme::transfer::{g_retraction, lambda_scalar, omega, trivial_is_summand, Lambda};

use error::CliError;
use workspace::{carrier_expr, Algebra, Finding, Workspace};

#[derive(Parser)]
#[command(name = "grpscheme", version, about = "Transfer and norm computations for finite group schemes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Choice {
    First,
    Last,
}

#[derive(Subcommand)]
enum Command {
    /// Build every object in a workspace and print its axiom checks.
    Validate {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run named verification suites.
    Run {
        file: PathBuf,
        /// A suite name or `all`; defaults to the workspace `suites` list.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Relative norm `Nm_H^G` of an element of a comodule algebra.
    Norm {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        element: String,
        /// Embedding name; the trivial subgroup when omitted.
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long, value_enum, default_value_t = Choice::First)]
        transversal: Choice,
    },
    /// Mumford norm `det(σ(s))`.
    Mumford {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        element: String,
    },
    /// Basis of the invariant subalgebra, up to a degree bound for polynomial carriers.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        degree_bound: Option<u32>,
    },
    /// `ω`, `λ` and splitting data for a subgroup embedding.
    Lambda {
        file: PathBuf,
        #[arg(long)]
        embedding: String,
    },
    /// Dimensions of `Ext^i(M', M)` for `i ≤ degree`.
    Ext {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// `M',M`
        #[arg(long, value_delimiter = ',', required = true)]
        pair: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = std::io::stdout().lock();
    match dispatch(cli.command, &mut out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// `Ok(false)` when some check failed.
fn dispatch(cmd: Command, out: &mut impl Write) -> Result<bool, CliError> {
    match cmd {
        Command::Validate { file, json } => validate(&file, json, out),
        Command::Run { file, suite, seed, jobs, samples, json } => {
            let ws = Workspace::load(&file)?;
            if !ws.passed() {
                print_findings(&ws.findings, false, out)?;
                return Ok(false);
            }
            let names: Vec<String> = match suite {
                Some(s) => vec![s],
                None if !ws.suites.is_empty() => ws.suites.clone(),
                None => vec!["all".into()],
            };
            let names: Vec<&str> =
                names.iter().flat_map(|n| if n == "all" { SUITES.to_vec() } else { vec![n.as_str()] }).collect();
            if let Some(bad) = names.iter().find(|n| !SUITES.contains(n)) {
                return Err(CliError::Parse(format!("unknown suite `{bad}`; known: {}", SUITES.join(", "))));
            }
            let mut cfg =
                SuiteConfig { seed: seed.unwrap_or(ws.seed), degree: ws.field.degree(), ..Default::default() };
            if let Some(s) = samples.or(ws.samples) {
                cfg.samples = s;
            }
            let lines = if names.len() == 1 { run_suite(names[0], &cfg)? } else { run_suites(&names, &cfg, jobs)? };
            print_lines(&lines, json, out)
        }
        Command::Norm { file, algebra, element, subgroup, transversal } => {
            let ws = Workspace::load(&file)?;
            let a = lookup_algebra(&ws, &algebra)?;
            let s =
                carrier_expr(&a.algebra.carrier, &element).map_err(|source| CliError::Expr { src: element, source })?;
            let e = match subgroup {
                Some(h) => {
                    let e = ws.embeddings.get(&h).ok_or_else(|| CliError::Parse(format!("unknown embedding `{h}`")))?;
                    if **e.amb() != *a.algebra.scheme {
                        return Err(CliError::Parse(format!("`{h}` is not a subgroup of the scheme of `{algebra}`")));
                    }
                    e.clone()
                }
                None => trivial_subgroup(&a.algebra.scheme)?,
            };
            let choice = match transversal {
                Choice::First => Transversal::First,
                Choice::Last => Transversal::Last,
            };
            let report = NormPlan::new(&e, a.ext.as_ref(), choice)?.apply(&a.algebra, &s)?;
            let c = &a.algebra.carrier;
            writeln!(out, "element     {}", c.format(&s))?;
            writeln!(out, "subgroup    {} (index {})", e.sub().name(), e.index())?;
            writeln!(out, "extension   F_{}^{}", report.extension.p(), report.extension.degree())?;
            writeln!(out, "exponent    {}", report.exponent)?;
            writeln!(out, "transversal {}", report.transversal_size())?;
            writeln!(out, "norm        {}", c.format(&report.value))?;
            writeln!(out, "descended   {}", report.descended)?;
            writeln!(out, "invariant   {}", report.invariant)?;
            let mut ok = report.descended && report.invariant;
            if e.sub().order() == 1 {
                let m = mumford_norm(&a.algebra, &s)?;
                let agrees = m == report.value;
                writeln!(out, "mumford     {} ({})", c.format(&m), if agrees { "agrees" } else { "DIFFERS" })?;
                ok &= agrees;
            }
            Ok(ok)
        }
        Command::Mumford { file, algebra, element } => {
            let ws = Workspace::load(&file)?;
            let a = lookup_algebra(&ws, &algebra)?;
            let s =
                carrier_expr(&a.algebra.carrier, &element).map_err(|source| CliError::Expr { src: element, source })?;
            let m = mumford_norm(&a.algebra, &s)?;
            writeln!(out, "{}", a.algebra.carrier.format(&m))?;
            Ok(true)
        }
        Command::Invariants { file, algebra, degree_bound } => {
            let ws = Workspace::load(&file)?;
            let a = lookup_algebra(&ws, &algebra)?;
            let basis = a.algebra.invariants(degree_bound.or(a.degree_bound))?;
            writeln!(out, "dim {}", basis.len())?;
            for b in &basis {
                writeln!(out, "  {}", a.algebra.carrier.format(b))?;
            }
            Ok(true)
        }
        Command::Lambda { file, embedding } => {
            let ws = Workspace::load(&file)?;
            let e = lookup_embedding(&ws, &embedding)?;
            let w = omega(e)?;
            let lambda = lambda_scalar(e)?;
            let split = g_retraction(e)?.is_some();
            let summand = trivial_is_summand(&coinduce(e, &w.inverse_module())?.module)?;
            writeln!(out, "omega trivial                {}", w.trivial)?;
            match lambda {
                Lambda::Zero => writeln!(out, "lambda                       0")?,
                Lambda::NonZero(c) => writeln!(out, "lambda                       {}", ws.field.format(c))?,
            }
            writeln!(out, "t split                      {split}")?;
            writeln!(out, "k summand of coind omega^-1  {summand}")?;
            Ok(lambda.is_nonzero() == split && split == summand)
        }
        Command::Ext { file, degree, pair, cap } => {
            let ws = Workspace::load(&file)?;
            if pair.len() != 2 {
                return Err(CliError::Parse("--pair takes two module names, `M',M`".into()));
            }
            let [mp, m] = [&pair[0], &pair[1]].map(|n| {
                ws.modules.get(n.trim()).ok_or_else(|| CliError::Parse(format!("unknown module `{}`", n.trim())))
            });
            let (mp, m) = (mp?, m?);
            for i in 0..=degree {
                writeln!(out, "Ext^{i}({}, {}) = {}", pair[0].trim(), pair[1].trim(), ext_dim(mp, m, i, cap)?)?;
            }
            Ok(true)
        }
    }
}

fn lookup_algebra<'a>(ws: &'a Workspace, name: &str) -> Result<&'a Algebra, CliError> {
    ws.algebras.get(name).ok_or_else(|| CliError::Parse(format!("unknown algebra `{name}`")))
}

fn lookup_embedding<'a>(ws: &'a Workspace, name: &str) -> Result<&'a SubgroupEmbedding, CliError> {
    ws.embeddings.get(name).ok_or_else(|| CliError::Parse(format!("unknown embedding `{name}`")))
}

fn validate(file: &Path, json: bool, out: &mut impl Write) -> Result<bool, CliError> {
    let ws = Workspace::load(file)?;
    print_findings(&ws.findings, json, out)?;
    Ok(ws.passed())
}

#[derive(Serialize)]
struct FindingJson<'a> {
    object: &'a str,
    check: &'a str,
    pass: bool,
    witness: Option<&'a str>,
}

#[derive(Serialize)]
struct Summary {
    checks: usize,
    failed: usize,
}

fn print_findings(findings: &[Finding], json: bool, out: &mut impl Write) -> Result<(), CliError> {
    let failed = findings.iter().filter(|f| !f.pass).count();
    for f in findings {
        if json {
            let j = FindingJson { object: &f.object, check: &f.check, pass: f.pass, witness: f.witness.as_deref() };
            writeln!(out, "{}", to_json(&j))?;
        } else {
            match (&f.witness, f.pass) {
                (_, true) => writeln!(out, "{:<12} {:<18} pass", f.object, f.check)?,
                (Some(w), false) => writeln!(out, "{:<12} {:<18} FAIL: {w}", f.object, f.check)?,
                (None, false) => writeln!(out, "{:<12} {:<18} FAIL", f.object, f.check)?,
            }
        }
    }
    summary(findings.len(), failed, json, out)
}

fn print_lines(lines: &[CheckLine], json: bool, out: &mut impl Write) -> Result<bool, CliError> {
    let failed = lines.iter().filter(|l| !l.pass).count();
    for l in lines {
        if json {
            writeln!(out, "{}", to_json(l))?;
        } else {
            let tag = if l.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {} :: {} (expected {}, got {})", l.suite, l.name, l.expected, l.got)?;
        }
    }
    summary(lines.len(), failed, json, out)?;
    Ok(failed == 0)
}

fn summary(checks: usize, failed: usize, json: bool, out: &mut impl Write) -> Result<(), CliError> {
    if json {
        writeln!(out, "{}", to_json(&Summary { checks, failed }))?;
    } else {
        writeln!(out, "{checks} checks, {failed} failed")?;
    }
    Ok(())
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}
