//! Command-line driver: argument model, job validation and the three commands.

pub mod record;
pub mod suites;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use qtau::lie::{parse_algebra, Limits, RootSystem};
use qtau::manifold::{tau, Flavor, ManifoldSpec};
use qtau::perturbative::{congruence_report, series_for_spec};
use qtau::{Error, Result};

use record::*;

#[derive(Debug, Parser)]
#[command(name = "qtau", version, about = "Exact quantum invariants of closed 3-manifolds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute tau of a surgery presentation in one or more flavors.
    Invariant,
    /// Run a consistency suite and report pass/fail per case.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Perturbative series c_0..c_N with per-prime residue tables.
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Symmetry1,
    Symmetry2,
    Splitting,
    Integrality,
    Smatrix,
    Kirby,
    GaussVanish,
    Congruence,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Opts {
    /// Lie algebra, e.g. A1, G2, or a bare type letter together with --rank.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    #[arg(long, global = true)]
    pub rank: Option<usize>,
    /// Order of the root of unity xi.
    #[arg(long, global = true)]
    pub r: Option<i64>,
    /// Exponent a choosing zeta = x^a among primitive roots.
    #[arg(long, global = true)]
    pub zeta_exponent: Option<u64>,
    /// Comma-separated flavors (full, projective, center) or "all".
    #[arg(long, global = true)]
    pub flavor: Option<String>,
    /// Manifold spec JSON file.
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    /// Truncation order N of perturbative series.
    #[arg(long, global = true)]
    pub order: Option<usize>,
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<i64>>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_weyl: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_enumeration: Option<u64>,
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_braid: Option<u64>,
    /// Digits after the decimal point in approximations (at most 15).
    #[arg(long, global = true, default_value_t = 12)]
    pub digits: usize,
    /// Omit timing so that identical jobs give byte-identical output.
    #[arg(long, global = true)]
    pub reproducible: bool,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Validated configuration shared by all commands.
pub struct JobConfig {
    pub rs: RootSystem,
    pub r: Option<i64>,
    pub zeta_exponent: Option<u64>,
    pub flavors: Vec<Flavor>,
    pub flavor_given: bool,
    pub spec: Option<ManifoldSpec>,
    pub spec_path: Option<String>,
    pub order: Option<usize>,
    pub primes: Vec<i64>,
    pub limits: Limits,
    pub digits: usize,
}

impl JobConfig {
    pub fn from_opts(o: &Opts) -> Result<Self> {
        let label = o.algebra.as_deref().ok_or_else(|| Error::bad("--algebra is required"))?;
        let (t, rank) = match (label.trim().len(), o.rank) {
            (1, Some(l)) => (label.parse()?, l),
            (1, None) => return Err(Error::bad("--rank is required with a bare type letter")),
            (_, rank) => {
                let (t, l) = parse_algebra(label)?;
                if rank.is_some_and(|x| x != l) {
                    return Err(Error::bad(format!("--rank {} contradicts --algebra {label}", rank.unwrap())));
                }
                (t, l)
            }
        };
        let defaults = Limits::default();
        let limits = Limits {
            max_weyl: o.max_weyl.unwrap_or(defaults.max_weyl),
            max_enumeration: o.max_enumeration.unwrap_or(defaults.max_enumeration),
            max_braid: o.max_braid.unwrap_or(defaults.max_braid),
        };
        let rs = RootSystem::with_limits(t, rank, limits)?;
        if let Some(r) = o.r {
            if r < 2 {
                return Err(Error::bad(format!("--r {r} must be at least 2")));
            }
        }
        if o.digits > 15 {
            return Err(Error::bad("--digits must be at most 15"));
        }
        let flavors = match o.flavor.as_deref() {
            None => vec![Flavor::Projective],
            Some("all") => vec![Flavor::Full, Flavor::Projective, Flavor::Center],
            Some(s) => s.split(',').map(|f| f.trim().parse()).collect::<Result<Vec<Flavor>>>()?,
        };
        let spec = match &o.spec {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| Error::bad(format!("{}: {e}", p.display())))?;
                Some(ManifoldSpec::from_json(&text)?)
            }
            None => None,
        };
        let primes = o.primes.clone().unwrap_or_default();
        if let Some(p) = primes.iter().find(|&&p| !qtau::cyclo::is_prime(p.max(0) as u64)) {
            return Err(Error::bad(format!("{p} in --primes is not prime")));
        }
        Ok(JobConfig {
            rs,
            r: o.r,
            zeta_exponent: o.zeta_exponent,
            flavors,
            flavor_given: o.flavor.is_some(),
            spec,
            spec_path: o.spec.as_ref().map(|p| p.display().to_string()),
            order: o.order,
            primes,
            limits,
            digits: o.digits,
        })
    }

    pub fn job(&self) -> Job {
        Job {
            algebra: self.rs.label(),
            r: self.r,
            zeta_exponent: self.zeta_exponent,
            flavors: self.flavors.iter().map(|f| f.to_string()).collect(),
            spec: self.spec_path.clone(),
            order: self.order,
            primes: self.primes.clone(),
            limits: self.limits,
            digits: self.digits,
        }
    }

    pub fn need_r(&self) -> Result<i64> {
        self.r.ok_or_else(|| Error::bad("--r is required"))
    }

    pub fn need_spec(&self) -> Result<&ManifoldSpec> {
        self.spec.as_ref().ok_or_else(|| Error::bad("--spec is required"))
    }
}

/// Exit code for an error class.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CheckFailed(_) => 1,
        Error::Resource(_) => 3,
        _ => 2,
    }
}

pub struct Outcome {
    pub record: ResultRecord,
    pub code: i32,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Invariant => "invariant",
        Command::Verify { .. } => "verify",
        Command::Series => "series",
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let name = command_name(&cli.command).to_string();
    let mut outcome = match JobConfig::from_opts(&cli.opts).and_then(|cfg| run(&cli.command, &cfg)) {
        Ok((status, job, payload)) => Outcome {
            code: if status == "ok" { 0 } else { 1 },
            record: ResultRecord { command: name, status, job: Some(job), payload: Some(payload), error: None, elapsed_ms: None },
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            record: ResultRecord {
                command: name,
                status: "error".into(),
                job: None,
                payload: None,
                error: Some(ErrorInfo { class: e.class().into(), message: e.to_string() }),
                elapsed_ms: None,
            },
        },
    };
    if !cli.opts.reproducible {
        outcome.record.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    outcome
}

fn run(command: &Command, cfg: &JobConfig) -> Result<(String, Job, Payload)> {
    match command {
        Command::Invariant => {
            let spec = cfg.need_spec()?;
            let r = cfg.need_r()?;
            let a = cfg.zeta_exponent.unwrap_or(1);
            let invariants = cfg
                .flavors
                .iter()
                .map(|&f| tau(spec, &cfg.rs, r, a, f).map(|res| InvariantEntry::new(&res, cfg.digits)))
                .collect::<Result<Vec<_>>>()?;
            let status = if invariants.iter().all(|i| i.defined) { "ok" } else { "undefined" };
            Ok((status.into(), cfg.job(), Payload::Invariant { invariants }))
        }
        Command::Verify { suite } => {
            let cases = suites::run_suite(*suite, cfg)?;
            let passed = cases.iter().filter(|c| c.pass).count();
            let failed = cases.len() - passed;
            let status = if failed == 0 { "ok" } else { "check_failed" };
            let suite = suite.to_possible_value().expect("named suite").get_name().to_string();
            Ok((status.into(), cfg.job(), Payload::Verify { suite, cases, passed, failed }))
        }
        Command::Series => {
            let spec = cfg.need_spec()?;
            let order = cfg.order.unwrap_or(4);
            let series = series_for_spec(&cfg.rs, spec, order)?;
            let residues = cfg
                .primes
                .iter()
                .map(|&p| congruence_report(&series, spec, &cfg.rs, p, order).map(Residues::from))
                .collect::<Result<Vec<_>>>()?;
            let status = if residues.iter().all(|x| x.pass) { "ok" } else { "check_failed" };
            let provenance = serde_json::to_value(series.provenance)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            let coeffs = series.coeffs().iter().map(Rational::of).collect();
            Ok((status.into(), cfg.job(), Payload::Series { series: SeriesResult { provenance, coeffs, residues } }))
        }
    }
}
