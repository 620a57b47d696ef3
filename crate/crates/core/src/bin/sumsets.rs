use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use signed_sumset::harness::{
    formula_row, parse_group_pattern, parse_range, row_checks, run_scan, run_verify, Cache,
    CellRunner, Format, OracleConfig, OracleValue, ReportWriter, ScanParams, Summary, VerifyId,
    VerifyParams,
};
use signed_sumset::{upper_bound_probe, Error, Family, GroupSpec, SearchOptions};

/// Sumsets and signed sumsets over finite abelian groups.
#[derive(Parser)]
#[command(name = "sumsets", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form values for one (group, m, h), optionally with exact oracles.
    Eval {
        group: String,
        m: u64,
        h: u64,
        /// Also run the exhaustive oracles.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run one checker from the registry over its parameter grid.
    Verify {
        id: VerifyId,
        /// Primes, comma separated.
        #[arg(long, value_delimiter = ',')]
        p: Vec<u64>,
        /// Rank r of Z_p^r.
        #[arg(long)]
        r: Option<u32>,
        /// Largest group order.
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest fold count.
        #[arg(long)]
        h_max: Option<u64>,
        /// Restrict m to a..b.
        #[arg(long)]
        m: Option<String>,
        /// Random trials (pairs, or probe samples).
        #[arg(long)]
        trials: Option<u64>,
        /// Groups to use instead of the default grid.
        #[arg(short, long)]
        group: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate every (group, m, h) cell of a grid.
    Scan {
        /// Comma-separated literals, or order:N for every group of order N.
        #[arg(short, long)]
        group: String,
        /// Subset sizes a..b, clipped to the group order (default: all).
        #[arg(long)]
        m: Option<String>,
        /// Fold counts a..b.
        #[arg(long, default_value = "2")]
        h: String,
        #[command(flatten)]
        common: Common,
    },
    /// Randomized upper bound on the minimum signed sumset size.
    Probe {
        group: String,
        m: u64,
        h: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    /// Worker threads for the oracles.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Refuse oracle runs over this many sets.
    #[arg(long, env = "SUMSETS_BUDGET", default_value_t = signed_sumset::DEFAULT_BUDGET)]
    budget: u128,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Append-only oracle result journal.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Family searched by the signed oracle.
    #[arg(long, default_value = "afamily", value_parser = parse_family)]
    family: Family,
    /// Skip the negated half of the asymmetric family.
    #[arg(long)]
    reduce_negation: bool,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

impl Common {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            reduce_negation: self.reduce_negation,
        }
    }

    fn config(&self) -> serde_json::Value {
        json!({
            "budget": self.budget.to_string(),
            "cache": self.cache.as_ref().map(|p| p.display().to_string()),
            "family": self.family.label(),
            "format": self.format.to_string(),
            "reduce_negation": self.reduce_negation,
            "seed": self.seed,
        })
    }
}

enum Failure {
    Usage(String),
    Resource(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) | Error::GroupLiteral { .. } | Error::OrderCap { .. } => {
                Failure::Usage(e.to_string())
            }
            Error::BudgetExceeded { .. }
            | Error::Io { .. }
            | Error::CacheCorrupt { .. }
            | Error::CacheConflict { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn merge(base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    let mut map = base.as_object().cloned().unwrap_or_default();
    if let serde_json::Value::Object(e) = extra {
        map.extend(e);
    }
    serde_json::Value::Object(map)
}

fn run(cli: Cli) -> Result<Summary, Failure> {
    let common = match &cli.command {
        Command::Eval { common, .. }
        | Command::Verify { common, .. }
        | Command::Scan { common, .. }
        | Command::Probe { common, .. } => common,
    };
    if common.jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    // the sink and cache are opened before any computation
    let mut out = ReportWriter::create(common.out.as_deref(), common.format)?;
    let mut cache = common.cache.as_ref().map(Cache::open).transpose()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(common.jobs)
        .build()
        .map_err(|e| Failure::Other(e.to_string()))?;
    let mut config = OracleConfig {
        options: common.options(),
        family: common.family,
        seed: common.seed,
        ..OracleConfig::default()
    };

    let mut eval_skipped = false;
    pool.install(|| -> Result<(), Failure> {
        match &cli.command {
            Command::Eval {
                group,
                m,
                h,
                oracle,
                ..
            } => {
                let g: GroupSpec = group.parse()?;
                out.header(
                    "eval",
                    merge(
                        common.config(),
                        json!({"group": g.to_string(), "m": m, "h": h, "oracle": oracle}),
                    ),
                )?;
                config.rho = *oracle;
                config.rho_pm = *oracle;
                let mut runner = CellRunner::new(config, cache.as_mut());
                let row = runner.evaluate(&g, *m, *h)?;
                eval_skipped = row.rho_oracle == OracleValue::Skipped
                    || row.rho_pm_oracle == OracleValue::Skipped;
                out.row(&row)?;
                for outcome in row_checks(&row, g.is_cyclic()) {
                    out.record(&outcome, Some((&row.group, row.m, row.h)))?;
                }
                Ok(())
            }
            Command::Verify {
                id,
                p,
                r,
                n_max,
                h_max,
                m,
                trials,
                group,
                ..
            } => {
                let params = VerifyParams {
                    primes: p.clone(),
                    rank: *r,
                    n_max: *n_max,
                    h_max: *h_max,
                    m: m.as_deref().map(parse_range).transpose()?,
                    trials: *trials,
                    seed: common.seed,
                    groups: group
                        .as_deref()
                        .map(parse_group_pattern)
                        .transpose()?
                        .unwrap_or_default(),
                };
                out.header(
                    "verify",
                    merge(
                        common.config(),
                        json!({
                            "id": id.label(),
                            "p": p,
                            "r": r,
                            "n_max": n_max,
                            "h_max": h_max,
                            "m": m,
                            "trials": trials,
                            "group": group,
                        }),
                    ),
                )?;
                let mut runner = CellRunner::new(config, cache.as_mut());
                run_verify(*id, &params, &mut runner, &mut out)?;
                Ok(())
            }
            Command::Scan { group, m, h, .. } => {
                let params = ScanParams {
                    groups: parse_group_pattern(group)?,
                    m: m.as_deref().map(parse_range).transpose()?,
                    h: parse_range(h)?,
                };
                out.header(
                    "scan",
                    merge(common.config(), json!({"group": group, "m": m, "h": h})),
                )?;
                let mut runner = CellRunner::new(config, cache.as_mut());
                run_scan(&params, &mut runner, &mut out)?;
                Ok(())
            }
            Command::Probe {
                group,
                m,
                h,
                trials,
                ..
            } => {
                let g: GroupSpec = group.parse()?;
                out.header(
                    "probe",
                    merge(
                        common.config(),
                        json!({"group": g.to_string(), "m": m, "h": h, "trials": trials}),
                    ),
                )?;
                let mut row = formula_row(&g, *m, *h)?;
                let probe = upper_bound_probe(&g, *m as usize, *h as usize, *trials, common.seed)?;
                row.probe_upper_bound = Some(probe.value as u64);
                row.witness = Some(probe.witness.iter().map(|i| g.format_element(i)).collect());
                row.witness_class = Some(signed_sumset::classify_symmetry(&g, &probe.witness)?);
                out.row(&row)?;
                for outcome in row_checks(&row, g.is_cyclic()) {
                    if outcome.check == "probe-lower" {
                        out.record(&outcome, Some((&row.group, row.m, row.h)))?;
                    }
                }
                Ok(())
            }
        }
    })?;
    let summary = out.finish()?;
    if eval_skipped {
        return Err(Failure::Resource(
            "oracle search space exceeds the budget".into(),
        ));
    }
    Ok(summary)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = run(cli);
    eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    match result {
        Ok(summary) if summary.problems() > 0 => ExitCode::from(1),
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
