//! Repair of model-written answers before scoring.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde_json::Value;

use crate::arabic::{fix_residue_spelling, fold, strip_tatweel};
use crate::fraction::Fraction;
use crate::model::{AdjustmentType, HeirEntry, RecordError, ShareValue, SolutionRecord};
use crate::solver::{compute_tasil, detect_adjustment, ShareLine, TasilOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PipelineVariant {
    Original,
    Basic,
    PostTasil,
}

impl PipelineVariant {
    pub const ALL: [PipelineVariant; 3] = [
        PipelineVariant::Original,
        PipelineVariant::Basic,
        PipelineVariant::PostTasil,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PipelineVariant::Original => "original",
            PipelineVariant::Basic => "basic",
            PipelineVariant::PostTasil => "posttasil",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s
            .trim()
            .to_ascii_lowercase()
            .replace(['_', '-'], "")
            .as_str()
        {
            "original" => Some(PipelineVariant::Original),
            "basic" => Some(PipelineVariant::Basic),
            "posttasil" => Some(PipelineVariant::PostTasil),
            _ => None,
        }
    }
}

impl fmt::Display for PipelineVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractError {
    /// No parseable JSON object in the text.
    NoJson,
    /// A JSON object was found but is not a valid record.
    Schema(RecordError),
}

impl fmt::Display for ExtractError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractError::NoJson => f.write_str("no JSON object found"),
            ExtractError::Schema(e) => write!(f, "schema error: {e}"),
        }
    }
}

impl core::error::Error for ExtractError {}

/// Which repair stages changed the record, plus any warnings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RepairLog {
    pub stages: Vec<&'static str>,
    pub warnings: Vec<String>,
}

impl RepairLog {
    fn fired(&mut self, stage: &'static str) {
        if !self.stages.contains(&stage) {
            self.stages.push(stage);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Repaired {
    pub record: SolutionRecord,
    pub log: RepairLog,
}

fn strip_reasoning(raw: &str) -> &str {
    // Everything up to the last closing tag is reasoning.
    match raw.rfind("</think>") {
        Some(i) => &raw[i + "</think>".len()..],
        None => match raw.find("<think>") {
            Some(i) if !raw[..i].contains('{') => "",
            _ => raw,
        },
    }
}

/// End (exclusive) of the balanced object starting at `start`.
fn object_end(text: &str, start: usize) -> Option<usize> {
    let mut depth = 0usize;
    let mut in_string = false;
    let mut escaped = false;
    for (i, c) in text[start..].char_indices() {
        if in_string {
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
            continue;
        }
        match c {
            '"' => in_string = true,
            '{' | '[' => depth += 1,
            '}' | ']' => {
                depth = depth.checked_sub(1)?;
                if depth == 0 {
                    return Some(start + i + 1);
                }
            }
            _ => {}
        }
    }
    None
}

fn drop_trailing_commas(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut in_string = false;
    let mut escaped = false;
    let chars: Vec<char> = text.chars().collect();
    for (i, &c) in chars.iter().enumerate() {
        if in_string {
            match (escaped, c) {
                (true, _) => escaped = false,
                (false, '\\') => escaped = true,
                (false, '"') => in_string = false,
                _ => {}
            }
        } else if c == '"' {
            in_string = true;
        } else if c == ',' {
            let next = chars[i + 1..].iter().find(|c| !c.is_whitespace());
            if matches!(next, Some('}') | Some(']')) {
                continue;
            }
        }
        out.push(c);
    }
    out
}

fn parse_object(candidate: &str) -> Option<Value> {
    serde_json::from_str::<Value>(candidate)
        .ok()
        .or_else(|| serde_json::from_str::<Value>(&drop_trailing_commas(candidate)).ok())
        .filter(Value::is_object)
}

/// Pull the first valid record out of free-form model output.
pub fn extract_record(raw: &str) -> Result<SolutionRecord, ExtractError> {
    let text = strip_reasoning(raw);
    let mut first_schema_error = None;
    let mut pos = 0;
    while let Some(off) = text[pos..].find('{') {
        let start = pos + off;
        let Some(end) = object_end(text, start) else {
            break;
        };
        match parse_object(&text[start..end]) {
            Some(value) => match SolutionRecord::from_value(&value) {
                Ok(record) => return Ok(record),
                Err(e) => {
                    first_schema_error.get_or_insert(e);
                    pos = end;
                }
            },
            None => pos = start + 1,
        }
    }
    Err(first_schema_error.map_or(ExtractError::NoJson, ExtractError::Schema))
}

fn clean(s: &str) -> String {
    fix_residue_spelling(&strip_tatweel(s))
}

/// Strip tatweel and fix the residue spelling in labels, shares and the
/// adjustment label.
pub fn normalize_typography(record: &SolutionRecord, log: &mut RepairLog) -> SolutionRecord {
    let mut out = record.clone();
    for e in out.heirs.iter_mut().chain(out.blocked.iter_mut()) {
        e.heir = clean(&e.heir);
    }
    for s in &mut out.shares {
        s.heir = clean(&s.heir);
        s.share = clean(&s.share);
    }
    for d in &mut out.post_tasil.distribution {
        d.heir = clean(&d.heir);
    }
    out.awl_or_radd = strip_tatweel(&out.awl_or_radd);
    if out != *record {
        log.fired("typography");
    }
    out
}

fn merge_duplicates(list: &[HeirEntry]) -> Vec<HeirEntry> {
    let mut out: Vec<HeirEntry> = Vec::with_capacity(list.len());
    for e in list {
        match out.iter_mut().find(|o| fold(&o.heir) == fold(&e.heir)) {
            Some(o) => o.count += e.count,
            None => out.push(e.clone()),
        }
    }
    out
}

/// Drop from `blocked` anything listed as an heir, and merge repeated
/// labels within each list.
pub fn dedupe_blocked(record: &SolutionRecord, log: &mut RepairLog) -> SolutionRecord {
    let mut out = record.clone();
    out.heirs = merge_duplicates(&record.heirs);
    let heirs: Vec<String> = out.heirs.iter().map(|h| fold(&h.heir)).collect();
    out.blocked = merge_duplicates(&record.blocked)
        .into_iter()
        .filter(|b| !heirs.contains(&fold(&b.heir)))
        .collect();
    if out != *record {
        log.fired("dedupe");
    }
    out
}

/// Replace an unrecognised adjustment label with one inferred from the
/// record's own shares. Valid labels are never touched.
pub fn normalize_adjustment_label(record: &SolutionRecord, log: &mut RepairLog) -> SolutionRecord {
    if record.adjustment().is_some() {
        return record.clone();
    }
    let mut out = record.clone();
    out.awl_or_radd = match record.share_values() {
        Ok(shares) => detect_adjustment(&shares).label().to_string(),
        Err(e) => {
            log.warnings
                .push(alloc::format!("adjustment label defaulted: {e}"));
            AdjustmentType::None.label().to_string()
        }
    };
    log.fired("adjustment_label");
    out
}

/// True when every fixed share reappears unadjusted in the distribution.
fn copies_raw_shares(record: &SolutionRecord) -> bool {
    let mut any = false;
    for s in &record.shares {
        let Ok(ShareValue::Fraction(share)) = s.value() else {
            continue;
        };
        let Some(row) = record
            .post_tasil
            .distribution
            .iter()
            .find(|d| fold(&d.heir) == fold(&s.heir))
        else {
            return false;
        };
        let Some(f) = row.fraction_value() else {
            return false;
        };
        let collective = &f * &Fraction::from_integer(row.count.max(1));
        if f != share && collective != share {
            return false;
        }
        any = true;
    }
    any
}

/// Recompute the distribution of an عول/رد record whose table merely copies
/// the unadjusted shares.
pub fn recalc_post_tasil(
    record: &SolutionRecord,
    opts: TasilOptions,
    log: &mut RepairLog,
) -> SolutionRecord {
    let Some(adjustment @ (AdjustmentType::Awl | AdjustmentType::Radd)) = record.adjustment()
    else {
        return record.clone();
    };
    if !copies_raw_shares(record) {
        return record.clone();
    }
    let lines: Result<Vec<ShareLine>, _> = record
        .shares
        .iter()
        .map(|s| {
            s.value()
                .map(|v| ShareLine::from_label(&s.heir, s.count, v))
        })
        .collect();
    let result = lines
        .map_err(|e| e.to_string())
        .and_then(|l| compute_tasil(&l, adjustment, opts).map_err(|e| e.to_string()));
    match result {
        Ok(table) => {
            let mut out = record.clone();
            out.post_tasil = table.to_table();
            log.fired("recalc_post_tasil");
            out
        }
        Err(e) => {
            log.warnings
                .push(alloc::format!("distribution not recomputed: {e}"));
            record.clone()
        }
    }
}

/// Apply a repair variant to an already-extracted record.
pub fn repair(record: &SolutionRecord, variant: PipelineVariant, opts: TasilOptions) -> Repaired {
    let mut log = RepairLog::default();
    let mut rec = record.clone();
    if variant != PipelineVariant::Original {
        rec = normalize_typography(&rec, &mut log);
        rec = dedupe_blocked(&rec, &mut log);
        rec = normalize_adjustment_label(&rec, &mut log);
    }
    if variant == PipelineVariant::PostTasil {
        rec = recalc_post_tasil(&rec, opts, &mut log);
    }
    Repaired { record: rec, log }
}

/// Extract then repair raw model output.
pub fn run_pipeline(raw: &str, variant: PipelineVariant) -> Result<Repaired, ExtractError> {
    Ok(repair(
        &extract_record(raw)?,
        variant,
        TasilOptions::default(),
    ))
}
