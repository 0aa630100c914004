//! Shared vocabulary: mentions, share values, adjustment labels, the final
//! distribution table and the five-field solution record with its JSON form.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::arabic::{fold, strip_tatweel, RESIDUE_PHRASE};
use crate::fraction::{Fraction, Percentage};
use crate::taxonomy::HeirCategory;

/// JSON keys of the record, in schema order.
pub const RECORD_KEYS: [&str; 5] = ["heirs", "blocked", "shares", "awl_or_radd", "post_tasil"];

pub const KEY_HEIR: &str = "وريث";
pub const KEY_COUNT: &str = "عدد";
pub const KEY_FRACTION: &str = "كسر";
pub const KEY_PERCENT: &str = "نسبة";

const HEIR_ALIASES: [&str; 3] = [KEY_HEIR, "heir", "category"];
const COUNT_ALIASES: [&str; 2] = [KEY_COUNT, "count"];
const FRACTION_ALIASES: [&str; 4] = [KEY_FRACTION, "fraction", "share", "سهم"];
const PERCENT_ALIASES: [&str; 4] = [KEY_PERCENT, "percentage", "percent", "النسبة"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RelativeMention {
    pub category: HeirCategory,
    pub count: u32,
}

impl RelativeMention {
    pub fn new(category: HeirCategory, count: u32) -> Self {
        debug_assert!(count >= 1);
        RelativeMention { category, count }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShareError {
    ResidueInSum,
    OutOfRange(Fraction),
    Unparseable(String),
}

impl fmt::Display for ShareError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShareError::ResidueInSum => {
                f.write_str("residue marker cannot be summed as a fraction")
            }
            ShareError::OutOfRange(x) => write!(f, "share {x} outside (0, 1]"),
            ShareError::Unparseable(s) => write!(f, "unparseable share {s:?}"),
        }
    }
}

impl core::error::Error for ShareError {}

/// A prescribed fraction of the estate, or the residue designation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ShareValue {
    Fraction(Fraction),
    Residue,
}

impl ShareValue {
    pub fn fraction(f: Fraction) -> Result<Self, ShareError> {
        if f.is_negative() || f.is_zero() || f > Fraction::one() {
            return Err(ShareError::OutOfRange(f));
        }
        Ok(ShareValue::Fraction(f))
    }

    /// Either spelling of the residue phrase, or an `n/d` fraction in (0, 1].
    pub fn parse(text: &str) -> Result<Self, ShareError> {
        let key = fold(text);
        if key.contains("باقي") || key == fold("الباقي") {
            return Ok(ShareValue::Residue);
        }
        let f: Fraction = key
            .parse()
            .map_err(|_| ShareError::Unparseable(text.to_string()))?;
        Self::fraction(f)
    }

    pub fn as_fraction(&self) -> Option<&Fraction> {
        match self {
            ShareValue::Fraction(f) => Some(f),
            ShareValue::Residue => None,
        }
    }

    pub fn is_residue(&self) -> bool {
        matches!(self, ShareValue::Residue)
    }

    pub fn render(&self) -> String {
        match self {
            ShareValue::Fraction(f) => f.to_string(),
            ShareValue::Residue => RESIDUE_PHRASE.to_string(),
        }
    }
}

impl fmt::Display for ShareValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Exact sum of fixed shares. Residue markers are a contract violation.
pub fn sum_shares<'a>(
    shares: impl IntoIterator<Item = &'a ShareValue>,
) -> Result<Fraction, ShareError> {
    shares
        .into_iter()
        .try_fold(Fraction::zero(), |acc, s| match s {
            ShareValue::Fraction(f) => Ok(acc + f),
            ShareValue::Residue => Err(ShareError::ResidueInSum),
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AdjustmentType {
    Awl,
    Radd,
    None,
}

impl AdjustmentType {
    pub const ALL: [AdjustmentType; 3] = [
        AdjustmentType::Awl,
        AdjustmentType::Radd,
        AdjustmentType::None,
    ];

    pub fn label(self) -> &'static str {
        match self {
            AdjustmentType::Awl => "عول",
            AdjustmentType::Radd => "رد",
            AdjustmentType::None => "لا",
        }
    }

    /// Recognises exactly the three valid labels (surrounding whitespace allowed).
    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.label() == s.trim())
    }
}

impl fmt::Display for AdjustmentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One heir line of the final distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Allocation {
    pub heir: String,
    pub count: u32,
    /// Share of each individual in the group.
    pub per_individual: Fraction,
    pub percentage: Percentage,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostTasil {
    pub total_shares: u64,
    pub distribution: Vec<Allocation>,
}

impl PostTasil {
    /// Σ count × per-individual share.
    pub fn allocated(&self) -> Fraction {
        self.distribution
            .iter()
            .map(|a| a.per_individual.scale(a.count))
            .sum()
    }

    pub fn to_table(&self) -> TasilTable {
        let total = num_bigint::BigUint::from(self.total_shares);
        TasilTable {
            total_shares: Some(self.total_shares),
            distribution: self
                .distribution
                .iter()
                .map(|a| DistributionEntry {
                    heir: a.heir.clone(),
                    count: a.count,
                    fraction: a
                        .per_individual
                        .over(&total)
                        .unwrap_or_else(|| a.per_individual.to_string()),
                    percentage: a.percentage.render(),
                })
                .collect(),
        }
    }
}

// ---------------------------------------------------------------------------
// Wire record
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HeirEntry {
    #[serde(rename = "وريث")]
    pub heir: String,
    #[serde(rename = "عدد")]
    pub count: u32,
}

impl HeirEntry {
    pub fn new(heir: impl Into<String>, count: u32) -> Self {
        HeirEntry {
            heir: heir.into(),
            count,
        }
    }
}

impl From<RelativeMention> for HeirEntry {
    fn from(m: RelativeMention) -> Self {
        HeirEntry::new(m.category.label(), m.count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShareEntry {
    #[serde(rename = "وريث")]
    pub heir: String,
    #[serde(rename = "عدد")]
    pub count: u32,
    /// `n/d` text or the residue phrase, as written.
    #[serde(rename = "كسر")]
    pub share: String,
}

impl ShareEntry {
    pub fn value(&self) -> Result<ShareValue, ShareError> {
        ShareValue::parse(&self.share)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionEntry {
    #[serde(rename = "وريث")]
    pub heir: String,
    #[serde(rename = "عدد")]
    pub count: u32,
    /// Per-individual share, usually written over `total_shares`.
    #[serde(rename = "كسر")]
    pub fraction: String,
    #[serde(rename = "نسبة")]
    pub percentage: String,
}

impl DistributionEntry {
    pub fn fraction_value(&self) -> Option<Fraction> {
        self.fraction.parse().ok()
    }

    pub fn percentage_value(&self) -> Option<Percentage> {
        Percentage::parse(&self.percentage)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct TasilTable {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_shares: Option<u64>,
    pub distribution: Vec<DistributionEntry>,
}

/// The five-field answer, as exchanged in JSON. Text fields are kept as
/// written so that model output can be repaired and scored faithfully.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SolutionRecord {
    pub heirs: Vec<HeirEntry>,
    pub blocked: Vec<HeirEntry>,
    pub shares: Vec<ShareEntry>,
    pub awl_or_radd: String,
    pub post_tasil: TasilTable,
    /// Unrecognised top-level keys, preserved on round-trip.
    #[serde(flatten)]
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RecordError {
    NotAnObject,
    MissingKeys(Vec<&'static str>),
    InvalidField { key: String, reason: String },
}

impl fmt::Display for RecordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecordError::NotAnObject => f.write_str("record is not a JSON object"),
            RecordError::MissingKeys(keys) => {
                write!(f, "missing required keys: {}", keys.join(", "))
            }
            RecordError::InvalidField { key, reason } => write!(f, "invalid field {key}: {reason}"),
        }
    }
}

impl core::error::Error for RecordError {}

fn invalid(key: &str, reason: impl Into<String>) -> RecordError {
    RecordError::InvalidField {
        key: key.to_string(),
        reason: reason.into(),
    }
}

fn pick<'a>(obj: &'a Map<String, Value>, aliases: &[&str]) -> Option<&'a Value> {
    aliases.iter().find_map(|k| obj.get(*k)).or_else(|| {
        obj.iter()
            .find(|(k, _)| aliases.iter().any(|a| strip_tatweel(k).trim() == *a))
            .map(|(_, v)| v)
    })
}

fn value_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn value_count(v: &Value) -> Option<u32> {
    match v {
        Value::Number(n) => n.as_u64().and_then(|x| u32::try_from(x).ok()).or_else(|| {
            n.as_f64()
                .filter(|f| f.fract() == 0.0 && *f >= 0.0 && *f <= u32::MAX as f64)
                .map(|f| f as u32)
        }),
        Value::String(s) => {
            let digits: String = s
                .trim()
                .chars()
                .map(|c| match c {
                    '\u{0660}'..='\u{0669}' => char::from(b'0' + (c as u32 - 0x0660) as u8),
                    other => other,
                })
                .collect();
            digits.parse().ok()
        }
        _ => None,
    }
}

fn parse_heir_list(key: &str, v: &Value) -> Result<Vec<HeirEntry>, RecordError> {
    let Value::Array(items) = v else {
        return Err(invalid(key, "expected an array"));
    };
    items
        .iter()
        .map(|item| match item {
            Value::String(s) => Ok(HeirEntry::new(s.clone(), 1)),
            Value::Object(o) => {
                let heir = pick(o, &HEIR_ALIASES)
                    .and_then(value_text)
                    .ok_or_else(|| invalid(key, "entry without heir"))?;
                let count = match pick(o, &COUNT_ALIASES) {
                    Some(c) => value_count(c).ok_or_else(|| invalid(key, "non-integer count"))?,
                    None => 1,
                };
                Ok(HeirEntry { heir, count })
            }
            _ => Err(invalid(key, "entries must be objects")),
        })
        .collect()
}

fn parse_shares(v: &Value) -> Result<Vec<ShareEntry>, RecordError> {
    let Value::Array(items) = v else {
        return Err(invalid("shares", "expected an array"));
    };
    items
        .iter()
        .map(|item| {
            let Value::Object(o) = item else {
                return Err(invalid("shares", "entries must be objects"));
            };
            let heir = pick(o, &HEIR_ALIASES)
                .and_then(value_text)
                .ok_or_else(|| invalid("shares", "entry without heir"))?;
            let count = match pick(o, &COUNT_ALIASES) {
                Some(c) => value_count(c).ok_or_else(|| invalid("shares", "non-integer count"))?,
                None => 1,
            };
            let share = pick(o, &FRACTION_ALIASES)
                .and_then(value_text)
                .unwrap_or_default();
            Ok(ShareEntry { heir, count, share })
        })
        .collect()
}

fn parse_tasil(v: &Value) -> Result<TasilTable, RecordError> {
    let Value::Object(o) = v else {
        return Err(invalid("post_tasil", "expected an object"));
    };
    let total_shares = o.get("total_shares").and_then(value_count).map(u64::from);
    let distribution = match o.get("distribution") {
        None | Some(Value::Null) => Vec::new(),
        Some(Value::Array(items)) => items
            .iter()
            .map(|item| {
                let Value::Object(e) = item else {
                    return Err(invalid(
                        "post_tasil",
                        "distribution entries must be objects",
                    ));
                };
                let heir = pick(e, &HEIR_ALIASES)
                    .and_then(value_text)
                    .ok_or_else(|| invalid("post_tasil", "entry without heir"))?;
                let count = pick(e, &COUNT_ALIASES).and_then(value_count).unwrap_or(1);
                let fraction = pick(e, &FRACTION_ALIASES)
                    .and_then(value_text)
                    .unwrap_or_default();
                let percentage = pick(e, &PERCENT_ALIASES)
                    .and_then(value_text)
                    .unwrap_or_default();
                Ok(DistributionEntry {
                    heir,
                    count,
                    fraction,
                    percentage,
                })
            })
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(invalid("post_tasil", "distribution must be an array")),
    };
    Ok(TasilTable {
        total_shares,
        distribution,
    })
}

impl SolutionRecord {
    /// Read a record from a JSON value, validating the five required keys.
    pub fn from_value(v: &Value) -> Result<Self, RecordError> {
        let Value::Object(obj) = v else {
            return Err(RecordError::NotAnObject);
        };
        let missing: Vec<&'static str> = RECORD_KEYS
            .iter()
            .copied()
            .filter(|k| !obj.contains_key(*k))
            .collect();
        if !missing.is_empty() {
            return Err(RecordError::MissingKeys(missing));
        }
        let awl_or_radd = value_text(&obj["awl_or_radd"])
            .ok_or_else(|| invalid("awl_or_radd", "expected a string"))?;
        let extra = obj
            .iter()
            .filter(|(k, _)| !RECORD_KEYS.contains(&k.as_str()))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        Ok(SolutionRecord {
            heirs: parse_heir_list("heirs", &obj["heirs"])?,
            blocked: parse_heir_list("blocked", &obj["blocked"])?,
            shares: parse_shares(&obj["shares"])?,
            awl_or_radd,
            post_tasil: parse_tasil(&obj["post_tasil"])?,
            extra,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, RecordError> {
        let v: Value = serde_json::from_str(text).map_err(|e| invalid("$", e.to_string()))?;
        Self::from_value(&v)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("record serialises")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serialises")
    }

    pub fn adjustment(&self) -> Option<AdjustmentType> {
        AdjustmentType::from_label(&self.awl_or_radd)
    }

    /// Parsed share values, or the first unparseable entry.
    pub fn share_values(&self) -> Result<Vec<ShareValue>, ShareError> {
        self.shares.iter().map(ShareEntry::value).collect()
    }
}
