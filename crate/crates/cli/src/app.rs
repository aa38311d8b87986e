//! Subcommand definitions and their execution.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use threegap_core::engine::{classify_report, gap_report, GapConfig};
use threegap_core::exact::decimal::DEFAULT_DIGITS;
use threegap_core::special::{
    classical_config, nearest_circle_config, nearest_int_gaps, nearest_int_gaps_via_circle, pwl_decompose,
    pwl_gaps, search_remark, NEAREST_INT_BOUND, REMARK_GAPS,
};
use threegap_core::AlphaOracle;

use crate::error::{CliError, Result};
use crate::float_oracle::{compare_with_exact, float_oracle_gaps};
use crate::format::{
    parse_as, parse_config, report_json, value_json, ConfigFile, GapReportJson, LinearJson, PresetJson,
    ValueJson,
};
use crate::random::{random_config, rng, Limits};
use crate::sweep::{run_sweep, to_csv, to_plotdata, SweepSpec};

#[derive(Debug, Parser)]
#[command(
    name = "threegap",
    version,
    about = "Exact gap structures of generalized three-distance configurations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out_json: Option<PathBuf>,
    /// Significant digits of decimal renderings.
    #[arg(long, default_value_t = DEFAULT_DIGITS)]
    pub digits: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a gap configuration or any preset.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Sweep M or α over a base configuration.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_csv: Option<PathBuf>,
        #[arg(long)]
        out_plotdata: Option<PathBuf>,
        #[arg(long)]
        out_json: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_DIGITS)]
        digits: u32,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Nearest-integer distances ‖mα‖ (preset "nearest").
    Nearest {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Classical {mα} (preset "classical").
    Classical {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Piecewise-linear map f(mα) mod P (preset "pwl").
    Pwl {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Search M <= mmax for the four gap sizes of α = 15^(1/3).
    RemarkSearch {
        #[arg(long, default_value_t = 5000)]
        mmax: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Cross-check the exact engine against decimal brute force.
    OracleCheck {
        /// Configuration to check; random configurations if absent.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Working precision of the brute force.
        #[arg(long, default_value_t = 150)]
        digits: u32,
        /// Digits the two gap multisets must agree to; defaults to 2/3 of --digits.
        #[arg(long)]
        agree_digits: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random configurations.
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        out_json: Option<PathBuf>,
    },
}

pub fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Run { config, out } => run(&load(config)?, out),
        Command::Sweep {
            config,
            out_csv,
            out_plotdata,
            out_json,
            digits,
            workers,
        } => {
            let text = read(config)?;
            let spec: SweepSpec = parse_as(&text).map_err(|source| CliError::Parse {
                path: config.clone(),
                source,
            })?;
            let rows = run_sweep(&spec, *workers, *digits)?;
            let csv = to_csv(&rows)?;
            match out_csv {
                Some(path) => write(path, &csv)?,
                None => print!("{}", String::from_utf8_lossy(&csv)),
            }
            if let Some(path) = out_plotdata {
                write(path, to_plotdata(&spec, &rows).as_bytes())?;
            }
            if let Some(path) = out_json {
                write(path, &serde_json::to_vec_pretty(&rows)?)?;
            }
            let failed: Vec<&str> = rows
                .iter()
                .filter(|r| r.internal_error)
                .map(|r| r.param.as_str())
                .collect();
            if !failed.is_empty() {
                return Err(CliError::Violations(format!(
                    "violations at {}",
                    failed.join(", ")
                )));
            }
            Ok(())
        }
        Command::Nearest { config, out } => {
            expect_preset(config, out, |p| matches!(p, PresetJson::Nearest { .. }))
        }
        Command::Classical { config, out } => {
            expect_preset(config, out, |p| matches!(p, PresetJson::Classical { .. }))
        }
        Command::Pwl { config, out } => expect_preset(config, out, |p| matches!(p, PresetJson::Pwl { .. })),
        Command::RemarkSearch { mmax, out } => remark_search(*mmax, out),
        Command::OracleCheck {
            config,
            digits,
            agree_digits,
            seed,
            count,
            out_json,
        } => {
            let configs = match config {
                Some(path) => vec![gap_config_of(&load(path)?)?],
                None => {
                    let limits = Limits {
                        max_total: 300,
                        infinite_lambda: 0.2,
                        ..Limits::default()
                    };
                    let mut r = rng(*seed);
                    (0..*count).map(|_| random_config(&mut r, &limits)).collect()
                }
            };
            oracle_check(
                &configs,
                *digits,
                agree_digits.unwrap_or(digits * 2 / 3),
                out_json.as_deref(),
            )
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn load(path: &Path) -> Result<ConfigFile> {
    parse_config(&read(path)?).map_err(|source| CliError::Parse {
        path: path.into(),
        source,
    })
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<()> {
    let mut json = serde_json::to_vec_pretty(value)?;
    json.push(b'\n');
    match out {
        Some(path) => write(path, &json),
        None => {
            print!("{}", String::from_utf8_lossy(&json));
            Ok(())
        }
    }
}

fn expect_preset(path: &Path, out: &Output, ok: impl Fn(&PresetJson) -> bool) -> Result<()> {
    match load(path)? {
        ConfigFile::Preset(p) if ok(&p) => run(&ConfigFile::Preset(p), out),
        _ => Err(CliError::Usage(format!(
            "{}: wrong preset for this subcommand",
            path.display()
        ))),
    }
}

/// The engine configuration behind any configuration file.
pub fn gap_config_of(cfg: &ConfigFile) -> Result<GapConfig> {
    let alpha = cfg.alpha().oracle()?;
    Ok(match cfg {
        ConfigFile::Gap(g) => g.to_config()?,
        ConfigFile::Preset(PresetJson::Classical { n, .. }) => classical_config(&alpha, *n),
        ConfigFile::Preset(PresetJson::Nearest { m, .. }) => nearest_circle_config(&alpha, *m),
        ConfigFile::Preset(PresetJson::Pwl {
            m, modulus, function, ..
        }) => pwl_decompose(&function.to_function()?, &alpha, *m)?.to_config(&alpha, modulus.0.clone()),
    })
}

#[derive(Serialize)]
struct NearestJson {
    #[serde(rename = "M")]
    m: u64,
    bound: usize,
    distinct_count: usize,
    distinct_gaps: Vec<ValueJson>,
    values: Vec<ValueJson>,
    gaps: Vec<ValueJson>,
    circle: GapReportJson,
}

#[derive(Serialize)]
struct PartJson {
    piece: usize,
    p: i64,
    k: LinearJson,
    n: u64,
    #[serde(rename = "N")]
    big_n: u64,
}

#[derive(Serialize)]
struct PwlJsonReport {
    k_f: u64,
    parts: Vec<PartJson>,
    report: GapReportJson,
}

fn values(xs: &[threegap_core::AlphaLinear], digits: u32, alpha: &AlphaOracle) -> Result<Vec<ValueJson>> {
    Ok(xs
        .iter()
        .map(|x| value_json(x, digits, alpha))
        .collect::<threegap_core::Result<_>>()?)
}

fn run(cfg: &ConfigFile, out: &Output) -> Result<()> {
    let alpha = cfg.alpha().oracle()?;
    let digits = out.digits;
    match cfg {
        ConfigFile::Gap(_) | ConfigFile::Preset(PresetJson::Classical { .. }) => {
            let config = gap_config_of(cfg)?;
            let report = gap_report(&config)?;
            let cls = classify_report(&config, &report)?;
            emit(
                &report_json(&report, Some(cls.rigid_count), digits, &alpha)?,
                out.out_json.as_deref(),
            )?;
            eprintln!(
                "{} points, {} distinct gaps, bound 3c = {}",
                report.total_points(),
                report.distinct_gaps.len(),
                report.bound_data.bound
            );
            if !report.bound_satisfied {
                return Err(CliError::Violations(format!(
                    "{} distinct gaps exceed 3c = {}",
                    report.distinct_gaps.len(),
                    report.bound_data.bound
                )));
            }
            Ok(())
        }
        ConfigFile::Preset(PresetJson::Nearest { m, .. }) => {
            let (via, circle) = nearest_int_gaps_via_circle(&alpha, *m)?;
            if nearest_int_gaps(&alpha, *m)? != via {
                return Err(threegap_core::Error::InvariantViolation(
                    "direct and circle computations differ".into(),
                )
                .into());
            }
            let cls = classify_report(&nearest_circle_config(&alpha, *m), &circle)?;
            emit(
                &NearestJson {
                    m: *m,
                    bound: NEAREST_INT_BOUND,
                    distinct_count: via.distinct.len(),
                    distinct_gaps: values(&via.distinct, digits, &alpha)?,
                    values: values(&via.values, digits, &alpha)?,
                    gaps: values(&via.gaps, digits, &alpha)?,
                    circle: report_json(&circle, Some(cls.rigid_count), digits, &alpha)?,
                },
                out.out_json.as_deref(),
            )?;
            eprintln!(
                "M = {m}, {} distinct gaps, bound {NEAREST_INT_BOUND}",
                via.distinct.len()
            );
            Ok(())
        }
        ConfigFile::Preset(PresetJson::Pwl {
            m, modulus, function, ..
        }) => {
            let pwl = pwl_gaps(&function.to_function()?, &alpha, *m, &modulus.0)?;
            let config = pwl.decomposition.to_config(&alpha, modulus.0.clone());
            let cls = classify_report(&config, &pwl.report)?;
            emit(
                &PwlJsonReport {
                    k_f: pwl.k_f,
                    parts: pwl
                        .decomposition
                        .parts
                        .iter()
                        .map(|p| PartJson {
                            piece: p.piece,
                            p: p.p,
                            k: (&p.k).into(),
                            n: p.n,
                            big_n: p.big_n,
                        })
                        .collect(),
                    report: report_json(&pwl.report, Some(cls.rigid_count), digits, &alpha)?,
                },
                out.out_json.as_deref(),
            )?;
            eprintln!(
                "{} distinct gaps, k_f = {}",
                pwl.report.distinct_gaps.len(),
                pwl.k_f
            );
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct MatchJson {
    #[serde(rename = "M")]
    m: u64,
    convention: &'static str,
    rounded: Vec<String>,
    gaps: Vec<ValueJson>,
}

#[derive(Serialize)]
struct RemarkJson {
    alpha: &'static str,
    mmax: u64,
    target: [&'static str; 4],
    max_distinct_interval: usize,
    max_distinct_wraparound: usize,
    interval_matches: Vec<MatchJson>,
    wraparound_matches: Vec<MatchJson>,
}

fn remark_search(mmax: u64, out: &Output) -> Result<()> {
    let search = search_remark(mmax)?;
    let alpha = threegap_core::special::cube_root_15();
    let convert = |ms: &[threegap_core::special::RemarkMatch]| -> Result<Vec<MatchJson>> {
        ms.iter()
            .map(|m| {
                Ok(MatchJson {
                    m: m.m,
                    convention: m.convention.as_str(),
                    rounded: m.rounded.clone(),
                    gaps: values(&m.gaps, out.digits, &alpha)?,
                })
            })
            .collect()
    };
    emit(
        &RemarkJson {
            alpha: "15^(1/3)",
            mmax,
            target: REMARK_GAPS,
            max_distinct_interval: search.max_distinct_interval,
            max_distinct_wraparound: search.max_distinct_wraparound,
            interval_matches: convert(&search.interval_matches)?,
            wraparound_matches: convert(&search.wraparound_matches)?,
        },
        out.out_json.as_deref(),
    )?;
    match search.first_match() {
        Some(m) => eprintln!(
            "first match at M = {} ({}); {} interval and {} wraparound matches",
            m.m,
            m.convention.as_str(),
            search.interval_matches.len(),
            search.wraparound_matches.len()
        ),
        None => eprintln!("no match for M <= {mmax}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckJson {
    index: usize,
    #[serde(rename = "N_total")]
    n_total: usize,
    distinct_exact: usize,
    distinct_oracle: usize,
    worst_digits: u32,
    agree: bool,
    warnings: Vec<String>,
}

fn oracle_check(configs: &[GapConfig], digits: u32, agree_digits: u32, out: Option<&Path>) -> Result<()> {
    let mut checks = Vec::with_capacity(configs.len());
    for (index, config) in configs.iter().enumerate() {
        let report = gap_report(config)?;
        let result = float_oracle_gaps(config, digits)?;
        let agreement = compare_with_exact(&report, &result, agree_digits, &config.alpha)?;
        checks.push(CheckJson {
            index,
            n_total: report.total_points(),
            distinct_exact: report.distinct_gaps.len(),
            distinct_oracle: result.distinct_count,
            worst_digits: agreement.worst_digits,
            agree: agreement.ok(),
            warnings: result.warnings,
        });
    }
    emit(&checks, out)?;
    let bad: Vec<String> = checks
        .iter()
        .filter(|c| !c.agree)
        .map(|c| c.index.to_string())
        .collect();
    eprintln!(
        "{} of {} configurations agree to {agree_digits} digits",
        checks.len() - bad.len(),
        checks.len()
    );
    if !bad.is_empty() {
        return Err(CliError::OracleMismatch(format!(
            "configurations {}",
            bad.join(", ")
        )));
    }
    Ok(())
}
