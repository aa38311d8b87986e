//! Parameter sweeps with CSV and plot-data output.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use threegap_core::engine::{classify_intervals, classify_report, GapReport};
use threegap_core::exact::decimal::to_significant;
use threegap_core::special::{
    classical_config, nearest_circle_config, nearest_int_gaps_via_circle, pwl_gaps, NEAREST_INT_BOUND,
};
use threegap_core::AlphaLinear;

use crate::error::{is_internal, CliError, Result};
use crate::format::{AlphaJson, ConfigFile, PresetJson};

pub const CSV_HEADER: [&str; 9] = [
    "param",
    "N_total",
    "distinct_gaps",
    "bound_3c",
    "bound_satisfied",
    "max_gap_decimal",
    "min_gap_decimal",
    "rigid_count",
    "error",
];

fn one() -> u64 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MRange {
    pub lo: u64,
    pub hi: u64,
    #[serde(default = "one")]
    pub step: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Parameter {
    #[serde(rename = "M_range")]
    MRange(MRange),
    #[serde(rename = "alpha_pool")]
    AlphaPool(Vec<AlphaJson>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: ConfigFile,
    pub parameter: Parameter,
}

/// One value of the swept parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    M(u64),
    Alpha(usize, AlphaJson),
}

impl ParamValue {
    pub fn label(&self) -> String {
        match self {
            ParamValue::M(m) => m.to_string(),
            ParamValue::Alpha(_, a) => a.kind().to_string(),
        }
    }

    /// Numeric abscissa for plot data: `M`, or the pool index.
    pub fn abscissa(&self) -> String {
        match self {
            ParamValue::M(m) => m.to_string(),
            ParamValue::Alpha(i, _) => i.to_string(),
        }
    }
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        match &self.parameter {
            Parameter::MRange(r) => {
                if r.lo < 1 || r.step < 1 {
                    return Err(CliError::Usage("M_range needs lo >= 1 and step >= 1".into()));
                }
                if r.hi < r.lo {
                    return Err(CliError::Usage(format!(
                        "empty M_range: hi = {} < lo = {}",
                        r.hi, r.lo
                    )));
                }
            }
            Parameter::AlphaPool(pool) if pool.is_empty() => {
                return Err(CliError::Usage("alpha_pool is empty".into()))
            }
            Parameter::AlphaPool(_) => {}
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<ParamValue> {
        match &self.parameter {
            Parameter::MRange(r) => (r.lo..=r.hi)
                .step_by(r.step as usize)
                .map(ParamValue::M)
                .collect(),
            Parameter::AlphaPool(pool) => pool
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, a)| ParamValue::Alpha(i, a))
                .collect(),
        }
    }
}

/// A CSV row. Numeric cells are empty when the row failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub param: String,
    #[serde(rename = "N_total")]
    pub n_total: Option<u64>,
    pub distinct_gaps: Option<usize>,
    pub bound_3c: Option<u64>,
    pub bound_satisfied: Option<bool>,
    pub max_gap_decimal: Option<String>,
    pub min_gap_decimal: Option<String>,
    pub rigid_count: Option<usize>,
    pub error: String,
    #[serde(skip)]
    pub internal_error: bool,
}

/// `base` with the parameter applied. For a full gap configuration `M`
/// becomes every `N_i`.
pub fn instantiate(base: &ConfigFile, value: &ParamValue) -> ConfigFile {
    let mut cfg = base.clone();
    match value {
        ParamValue::Alpha(_, a) => *cfg.alpha_mut() = a.clone(),
        ParamValue::M(m) => match &mut cfg {
            ConfigFile::Gap(g) => g.sequences.iter_mut().for_each(|s| s.big_n = *m),
            ConfigFile::Preset(PresetJson::Classical { n, .. }) => *n = *m,
            ConfigFile::Preset(PresetJson::Nearest { m: mm, .. } | PresetJson::Pwl { m: mm, .. }) => *mm = *m,
        },
    }
    cfg
}

fn engine(report: &GapReport, rigid_count: usize) -> Summary<'_> {
    Summary {
        n_total: report.total_points() as u64,
        distinct: &report.distinct_gaps,
        bound: report.bound_data.bound,
        rigid_count,
    }
}

struct Summary<'a> {
    n_total: u64,
    distinct: &'a [AlphaLinear],
    bound: u64,
    rigid_count: usize,
}

pub fn run_row(base: &ConfigFile, value: &ParamValue, digits: u32) -> SweepRow {
    let mut row = SweepRow {
        param: value.label(),
        ..SweepRow::default()
    };
    if let Err(e) = fill_row(&mut row, &instantiate(base, value), digits) {
        row.internal_error = is_internal(&e);
        row.error = e.to_string();
    }
    row
}

fn fill_row(row: &mut SweepRow, cfg: &ConfigFile, digits: u32) -> threegap_core::Result<()> {
    let alpha = cfg.alpha().oracle()?;
    let mut fill = |s: Summary<'_>| -> threegap_core::Result<()> {
        row.n_total = Some(s.n_total);
        row.distinct_gaps = Some(s.distinct.len());
        row.bound_3c = Some(s.bound);
        row.bound_satisfied = Some(s.distinct.len() as u64 <= s.bound);
        row.max_gap_decimal = s
            .distinct
            .last()
            .map(|g| to_significant(g, digits, &alpha))
            .transpose()?;
        row.min_gap_decimal = s
            .distinct
            .first()
            .map(|g| to_significant(g, digits, &alpha))
            .transpose()?;
        row.rigid_count = Some(s.rigid_count);
        Ok(())
    };
    match cfg {
        ConfigFile::Gap(g) => {
            let (report, cls) = classify_intervals(&g.to_config()?)?;
            fill(engine(&report, cls.rigid_count))
        }
        ConfigFile::Preset(PresetJson::Classical { n, .. }) => {
            let (report, cls) = classify_intervals(&classical_config(&alpha, *n))?;
            fill(engine(&report, cls.rigid_count))
        }
        ConfigFile::Preset(PresetJson::Nearest { m, .. }) => {
            let (nearest, circle) = nearest_int_gaps_via_circle(&alpha, *m)?;
            let cls = classify_report(&nearest_circle_config(&alpha, *m), &circle)?;
            fill(Summary {
                n_total: *m,
                distinct: &nearest.distinct,
                bound: NEAREST_INT_BOUND as u64,
                rigid_count: cls.rigid_count,
            })
        }
        ConfigFile::Preset(PresetJson::Pwl {
            m, modulus, function, ..
        }) => {
            let pwl = pwl_gaps(&function.to_function()?, &alpha, *m, &modulus.0)?;
            let config = pwl.decomposition.to_config(&alpha, modulus.0.clone());
            let cls = classify_report(&config, &pwl.report)?;
            fill(engine(&pwl.report, cls.rigid_count))
        }
    }
}

/// Computes all rows on a pool of `workers` threads, in parameter order.
pub fn run_sweep(spec: &SweepSpec, workers: usize, digits: u32) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let values = spec.values();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        values
            .par_iter()
            .map(|v| run_row(&spec.base, v, digits))
            .collect()
    }))
}

pub fn to_csv(rows: &[SweepRow]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.into_inner().map_err(|e| CliError::Usage(e.to_string()))
}

/// Two whitespace-separated columns `param distinct_gaps`; failed rows are skipped.
pub fn to_plotdata(spec: &SweepSpec, rows: &[SweepRow]) -> String {
    let mut out = String::from("# param distinct_gaps\n");
    let values = spec.values();
    if let Parameter::AlphaPool(pool) = &spec.parameter {
        for (i, a) in pool.iter().enumerate() {
            let _ = writeln!(out, "# {i} = {}", a.kind());
        }
    }
    for (value, row) in values.iter().zip(rows) {
        if let Some(d) = row.distinct_gaps {
            let _ = writeln!(out, "{} {d}", value.abscissa());
        }
    }
    out
}
