//! JSON file formats for configurations, presets and reports.

use std::fmt;

use num_bigint::BigInt;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;
use threegap_core::engine::{BoundData, GapConfig, GapReport, SequenceSpec};
use threegap_core::exact::decimal::to_significant;
use threegap_core::lambda_frac::FracVariant;
use threegap_core::special::{Piece, PwlFunction};
use threegap_core::{AlphaKind, AlphaLinear, AlphaOracle, Rational};

/// A parse failure located in the input text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}line {line}, column {column}: {message}", field_prefix(.field))]
pub struct ConfigParseError {
    pub line: usize,
    pub column: usize,
    /// Dotted path of the offending field, if known.
    pub field: Option<String>,
    pub message: String,
}

fn field_prefix(field: &Option<String>) -> String {
    field
        .as_ref()
        .map(|f| format!("field `{f}`, "))
        .unwrap_or_default()
}

/// `"n/d"` on the wire; bare integers are accepted on input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational \"num/den\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<JsonRational, E> {
                s.parse().map(JsonRational).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v)))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v)))
            }
        }
        d.deserialize_any(V)
    }
}

/// An integer of any size: a JSON number when it fits `i64`, else a string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonBigInt(pub BigInt);

impl Serialize for JsonBigInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonBigInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonBigInt;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<JsonBigInt, E> {
                s.trim()
                    .parse()
                    .map(JsonBigInt)
                    .map_err(|_| E::custom(format!("invalid integer {s:?}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonBigInt, E> {
                Ok(JsonBigInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonBigInt, E> {
                Ok(JsonBigInt(v.into()))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearJson {
    pub u: JsonRational,
    pub v: JsonRational,
}

impl From<&AlphaLinear> for LinearJson {
    fn from(x: &AlphaLinear) -> Self {
        LinearJson {
            u: JsonRational(x.u.clone()),
            v: JsonRational(x.v.clone()),
        }
    }
}

impl From<&LinearJson> for AlphaLinear {
    fn from(x: &LinearJson) -> Self {
        AlphaLinear::new(x.u.0.clone(), x.v.0.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AlphaJson {
    Quadratic {
        a: JsonRational,
        b: JsonRational,
        d: JsonBigInt,
    },
    Nthroot {
        r: JsonRational,
        n: u32,
    },
    Decimal {
        digits: String,
        precision_bits: u32,
    },
}

impl AlphaJson {
    pub fn kind(&self) -> AlphaKind {
        match self {
            AlphaJson::Quadratic { a, b, d } => AlphaKind::Quadratic {
                a: a.0.clone(),
                b: b.0.clone(),
                d: d.0.clone(),
            },
            AlphaJson::Nthroot { r, n } => AlphaKind::NthRoot {
                r: r.0.clone(),
                n: *n,
            },
            AlphaJson::Decimal {
                digits,
                precision_bits,
            } => AlphaKind::Decimal {
                digits: digits.clone(),
                precision_bits: *precision_bits,
            },
        }
    }

    pub fn oracle(&self) -> threegap_core::Result<AlphaOracle> {
        AlphaOracle::new(self.kind())
    }
}

impl From<&AlphaKind> for AlphaJson {
    fn from(kind: &AlphaKind) -> Self {
        match kind {
            AlphaKind::Quadratic { a, b, d } => AlphaJson::Quadratic {
                a: JsonRational(a.clone()),
                b: JsonRational(b.clone()),
                d: JsonBigInt(d.clone()),
            },
            AlphaKind::NthRoot { r, n } => AlphaJson::Nthroot {
                r: JsonRational(r.clone()),
                n: *n,
            },
            AlphaKind::Decimal {
                digits,
                precision_bits,
            } => AlphaJson::Decimal {
                digits: digits.clone(),
                precision_bits: *precision_bits,
            },
        }
    }
}

/// `t` in `λ = t·P·q`, or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaJson {
    Multiple(i64),
    Infinite,
}

impl Serialize for LambdaJson {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            LambdaJson::Multiple(t) => s.serialize_i64(*t),
            LambdaJson::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for LambdaJson {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = LambdaJson;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or \"inf\"")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<LambdaJson, E> {
                match s {
                    "inf" => Ok(LambdaJson::Infinite),
                    _ => Err(E::invalid_value(de::Unexpected::Str(s), &self)),
                }
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<LambdaJson, E> {
                Ok(LambdaJson::Multiple(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<LambdaJson, E> {
                i64::try_from(v)
                    .map(LambdaJson::Multiple)
                    .map_err(|_| E::custom("lambda_multiplier too large"))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VariantJson {
    Prime,
    DoublePrime,
}

impl From<VariantJson> for FracVariant {
    fn from(v: VariantJson) -> Self {
        match v {
            VariantJson::Prime => FracVariant::Prime,
            VariantJson::DoublePrime => FracVariant::DoublePrime,
        }
    }
}

impl From<FracVariant> for VariantJson {
    fn from(v: FracVariant) -> Self {
        match v {
            FracVariant::Prime => VariantJson::Prime,
            FracVariant::DoublePrime => VariantJson::DoublePrime,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceJson {
    pub p: i64,
    pub k: LinearJson,
    pub n: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapConfigJson {
    pub alpha: AlphaJson,
    pub q: u64,
    #[serde(rename = "P")]
    pub modulus: JsonRational,
    pub lambda_multiplier: LambdaJson,
    pub variant: VariantJson,
    pub sequences: Vec<SequenceJson>,
}

impl GapConfigJson {
    /// Builds and validates the engine configuration.
    pub fn to_config(&self) -> threegap_core::Result<GapConfig> {
        let lambda_multiplier = match self.lambda_multiplier {
            LambdaJson::Infinite => None,
            LambdaJson::Multiple(t) => {
                Some(u64::try_from(t).map_err(|_| threegap_core::ConfigError::LambdaNotMultiple)?)
            }
        };
        let config = GapConfig {
            alpha: self.alpha.oracle()?,
            q: self.q,
            sequences: self
                .sequences
                .iter()
                .map(|s| SequenceSpec::new(s.p, (&s.k).into(), s.n, s.big_n))
                .collect(),
            modulus: self.modulus.0.clone(),
            lambda_multiplier,
            variant: self.variant.into(),
        };
        config.validate()?;
        Ok(config)
    }
}

impl From<&GapConfig> for GapConfigJson {
    fn from(c: &GapConfig) -> Self {
        GapConfigJson {
            alpha: c.alpha.kind().into(),
            q: c.q,
            modulus: JsonRational(c.modulus.clone()),
            lambda_multiplier: match c.lambda_multiplier {
                Some(t) => LambdaJson::Multiple(t as i64),
                None => LambdaJson::Infinite,
            },
            variant: c.variant.into(),
            sequences: c
                .sequences
                .iter()
                .map(|s| SequenceJson {
                    p: s.p,
                    k: (&s.k).into(),
                    n: s.n,
                    big_n: s.big_n,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceJson {
    pub p: i64,
    pub k: LinearJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PwlJson {
    pub q: u64,
    pub breakpoints: Vec<JsonRational>,
    pub pieces: Vec<PieceJson>,
}

impl PwlJson {
    pub fn to_function(&self) -> threegap_core::Result<PwlFunction> {
        PwlFunction::new(
            self.q,
            self.breakpoints.iter().map(|b| b.0.clone()).collect(),
            self.pieces
                .iter()
                .map(|p| Piece {
                    p: p.p,
                    k: (&p.k).into(),
                })
                .collect(),
        )
    }
}

impl From<&PwlFunction> for PwlJson {
    fn from(f: &PwlFunction) -> Self {
        PwlJson {
            q: f.q,
            breakpoints: f.breakpoints.iter().cloned().map(JsonRational).collect(),
            pieces: f
                .pieces
                .iter()
                .map(|p| PieceJson {
                    p: p.p,
                    k: (&p.k).into(),
                })
                .collect(),
        }
    }
}

fn one() -> JsonRational {
    JsonRational(Rational::one())
}

/// Any accepted configuration file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "preset", rename_all = "lowercase", deny_unknown_fields)]
pub enum PresetJson {
    /// `{mα}`, `1 <= m <= N`.
    Classical {
        alpha: AlphaJson,
        #[serde(rename = "N")]
        n: u64,
    },
    /// `‖mα‖`, `1 <= m <= M`.
    Nearest {
        alpha: AlphaJson,
        #[serde(rename = "M")]
        m: u64,
    },
    /// `f(mα) mod P`, `1 <= m <= M`.
    Pwl {
        alpha: AlphaJson,
        #[serde(rename = "M")]
        m: u64,
        #[serde(rename = "P", default = "one")]
        modulus: JsonRational,
        function: PwlJson,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ConfigFile {
    Preset(PresetJson),
    Gap(GapConfigJson),
}

/// Dispatches on the `"preset"` key, like [`parse_config`].
impl<'de> Deserialize<'de> for ConfigFile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        if value.get("preset").is_some() {
            PresetJson::deserialize(value)
                .map(ConfigFile::Preset)
                .map_err(de::Error::custom)
        } else {
            GapConfigJson::deserialize(value)
                .map(ConfigFile::Gap)
                .map_err(de::Error::custom)
        }
    }
}

impl ConfigFile {
    pub fn alpha(&self) -> &AlphaJson {
        match self {
            ConfigFile::Gap(g) => &g.alpha,
            ConfigFile::Preset(
                PresetJson::Classical { alpha, .. }
                | PresetJson::Nearest { alpha, .. }
                | PresetJson::Pwl { alpha, .. },
            ) => alpha,
        }
    }

    pub fn alpha_mut(&mut self) -> &mut AlphaJson {
        match self {
            ConfigFile::Gap(g) => &mut g.alpha,
            ConfigFile::Preset(
                PresetJson::Classical { alpha, .. }
                | PresetJson::Nearest { alpha, .. }
                | PresetJson::Pwl { alpha, .. },
            ) => alpha,
        }
    }
}

/// Parses a configuration or preset. Files with a `"preset"` key are
/// presets; anything else is a full gap configuration.
pub fn parse_config(text: &str) -> Result<ConfigFile, ConfigParseError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| located(e, None))?;
    if value.get("preset").is_some() {
        parse_as::<PresetJson>(text).map(ConfigFile::Preset)
    } else {
        parse_as::<GapConfigJson>(text).map(ConfigFile::Gap)
    }
}

/// Deserializes `text` as `T`, reporting the field path of any failure.
pub fn parse_as<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, ConfigParseError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let field = (path != ".").then_some(path);
        located(e.into_inner(), field)
    })?;
    de.end().map_err(|e| located(e, None))?;
    Ok(value)
}

fn located(e: serde_json::Error, field: Option<String>) -> ConfigParseError {
    let message = e.to_string();
    // serde_json appends its own position; it is reported separately
    let message = match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message,
    };
    ConfigParseError {
        line: e.line(),
        column: e.column(),
        field,
        message,
    }
}

/// An exact value with its decimal rendering.
#[derive(Clone, Debug, Serialize)]
pub struct ValueJson {
    pub u: JsonRational,
    pub v: JsonRational,
    pub decimal: String,
}

pub fn value_json(x: &AlphaLinear, digits: u32, alpha: &AlphaOracle) -> threegap_core::Result<ValueJson> {
    Ok(ValueJson {
        u: JsonRational(x.u.clone()),
        v: JsonRational(x.v.clone()),
        decimal: to_significant(x, digits, alpha)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundJson {
    pub ell: u64,
    pub ell0: JsonRational,
    pub c_list: Vec<i64>,
    pub c: u64,
    pub bound: u64,
}

impl From<&BoundData> for BoundJson {
    fn from(b: &BoundData) -> Self {
        BoundJson {
            ell: b.ell,
            ell0: JsonRational(b.ell0.clone()),
            c_list: b.c_list.clone(),
            c: b.c,
            bound: b.bound,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PointJson {
    pub seq: usize,
    pub m: u64,
    pub gamma: ValueJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct GapReportJson {
    pub total_points: usize,
    pub bound: BoundJson,
    pub bound_satisfied: bool,
    pub distinct_count: usize,
    pub distinct_gaps: Vec<ValueJson>,
    /// `gaps[0]` is the wraparound gap.
    pub gaps: Vec<ValueJson>,
    pub points: Vec<PointJson>,
    #[serde(rename = "gap_sum_is_P")]
    pub gap_sum_is_modulus: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rigid_count: Option<usize>,
}

pub fn report_json(
    report: &GapReport,
    rigid_count: Option<usize>,
    digits: u32,
    alpha: &AlphaOracle,
) -> threegap_core::Result<GapReportJson> {
    let values = |xs: &[AlphaLinear]| {
        xs.iter()
            .map(|x| value_json(x, digits, alpha))
            .collect::<threegap_core::Result<Vec<_>>>()
    };
    Ok(GapReportJson {
        total_points: report.total_points(),
        bound: (&report.bound_data).into(),
        bound_satisfied: report.bound_satisfied,
        distinct_count: report.distinct_gaps.len(),
        distinct_gaps: values(&report.distinct_gaps)?,
        gaps: values(&report.gaps)?,
        points: report
            .sorted_points
            .iter()
            .map(|p| {
                Ok(PointJson {
                    seq: p.seq,
                    m: p.m,
                    gamma: value_json(&p.gamma, digits, alpha)?,
                })
            })
            .collect::<threegap_core::Result<Vec<_>>>()?,
        gap_sum_is_modulus: report.gap_sum_is_modulus(),
        rigid_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{
        "alpha": {"kind": "quadratic", "a": "1/2", "b": "1/2", "d": 5},
        "q": 1, "P": "1/1", "lambda_multiplier": 1, "variant": "double_prime",
        "sequences": [
            {"p": 1, "k": {"u": "0/1", "v": "0/1"}, "n": 0, "N": 2},
            {"p": -1, "k": {"u": "1/1", "v": "0/1"}, "n": 0, "N": 2}
        ]
    }"#;

    #[test]
    fn gap_config_round_trip() {
        let ConfigFile::Gap(json) = parse_config(CIRCLE).unwrap() else {
            panic!("not a gap config")
        };
        let config = json.to_config().unwrap();
        let back = GapConfigJson::from(&config);
        assert_eq!(back, json);
        let text = serde_json::to_string(&back).unwrap();
        assert_eq!(parse_as::<GapConfigJson>(&text).unwrap(), json);
        assert!(text.contains(r#""P":"1/1""#));
    }

    #[test]
    fn alpha_round_trip() {
        for text in [
            r#"{"kind":"quadratic","a":"0/1","b":"3/7","d":"123456789012345678901234567"}"#,
            r#"{"kind":"nthroot","r":"15/1","n":3}"#,
            r#"{"kind":"decimal","digits":"1.41421356237309504880","precision_bits":60}"#,
        ] {
            let a: AlphaJson = serde_json::from_str(text).unwrap();
            assert_eq!(serde_json::to_string(&a).unwrap(), text);
            assert_eq!(AlphaJson::from(&a.kind()), a);
        }
    }

    #[test]
    fn presets() {
        let c = parse_config(
            r#"{"preset": "nearest", "alpha": {"kind": "nthroot", "r": "15", "n": 3}, "M": 50}"#,
        )
        .unwrap();
        assert!(matches!(c, ConfigFile::Preset(PresetJson::Nearest { m: 50, .. })));
        let c = parse_config(
            r#"{"preset": "pwl", "alpha": {"kind": "nthroot", "r": "2", "n": 2}, "M": 5,
                "function": {"q": 1, "breakpoints": ["1"], "pieces": [
                    {"p": -1, "k": {"u": "1", "v": "0"}}, {"p": 1, "k": {"u": "-1", "v": "0"}}]}}"#,
        )
        .unwrap();
        let ConfigFile::Preset(PresetJson::Pwl {
            modulus, function, ..
        }) = c
        else {
            panic!()
        };
        assert_eq!(modulus.0, Rational::one());
        assert_eq!(function.to_function().unwrap().pieces.len(), 2);
    }

    #[test]
    fn errors_are_located() {
        let bad = CIRCLE.replace(r#""P": "1/1""#, r#""P": "1/0""#);
        let e = parse_config(&bad).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("P"));
        assert_eq!(e.line, 3);
        let bad = CIRCLE.replace(r#""N": 2}"#, r#""N": -2}"#);
        let e = parse_config(&bad).unwrap_err();
        assert_eq!(e.field.as_deref(), Some("sequences[0].N"));
        let e = parse_config("{\n  \"q\": 1,\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_config(r#"{"preset": "circle", "alpha": {}}"#).unwrap_err();
        assert!(e.message.contains("circle"), "{e}");
    }

    #[test]
    fn validation_errors_named() {
        let ConfigFile::Gap(mut json) = parse_config(CIRCLE).unwrap() else {
            panic!()
        };
        json.sequences[1].p = 0;
        assert!(json.to_config().unwrap_err().to_string().contains("zero slope"));
        json.sequences[1].p = 1;
        json.lambda_multiplier = LambdaJson::Multiple(0);
        assert_eq!(
            json.to_config().unwrap_err().to_string(),
            "λ must be a positive integer multiple of Pq"
        );
        json.lambda_multiplier = LambdaJson::Multiple(1);
        json.sequences[0].n = 3;
        assert!(json.to_config().unwrap_err().to_string().contains("exceeds"));
    }
}
