//! Per-case result rows and report rendering.

use std::time::{SystemTime, UNIX_EPOCH};

use mawarith_core::{
    AdjustmentType, AnalysisReport, CaseResult, ErrorCategory, Fraction, MireComponents,
    MireConfig, ResidueUsage,
};
use serde_json::{json, Map, Value};

pub fn result_to_json(r: &CaseResult, status: &str) -> Value {
    let c = &r.components;
    let [s_h, s_s, s_a, s_f, mire] = c.as_f64();
    json!({
        "id": r.case_id,
        "status": status,
        "mire": mire,
        "s_h": s_h,
        "s_s": s_s,
        "s_a": s_a,
        "s_f": s_f,
        "exact": {
            "s_h": c.s_h.to_string(),
            "s_s": c.s_s.to_string(),
            "s_a": c.s_a.to_string(),
            "s_f": c.s_f.to_string(),
            "mire": c.mire.to_string(),
        },
        "gold_adjustment": r.gold_adjustment.label(),
        "error": r.error.name(),
        "residue": r.residue.name(),
        "mentioned": r.mentioned,
    })
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, String> {
    obj.get(key)
        .ok_or_else(|| format!("missing field \"{key}\""))
}

fn text<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str, String> {
    field(obj, key)?
        .as_str()
        .ok_or_else(|| format!("field \"{key}\" is not a string"))
}

pub fn result_from_json(id: &str, obj: &Map<String, Value>) -> Result<CaseResult, String> {
    let exact = field(obj, "exact")?
        .as_object()
        .ok_or("field \"exact\" is not an object")?;
    let score = |k: &str| -> Result<Fraction, String> {
        text(exact, k)?
            .parse::<Fraction>()
            .map_err(|e| format!("exact.{k}: {e}"))
    };
    let components = MireComponents {
        s_h: score("s_h")?,
        s_s: score("s_s")?,
        s_a: score("s_a")?,
        s_f: score("s_f")?,
        mire: score("mire")?,
    };
    let adj = text(obj, "gold_adjustment")?;
    let err = text(obj, "error")?;
    let res = text(obj, "residue")?;
    let mentioned = field(obj, "mentioned")?
        .as_u64()
        .ok_or("field \"mentioned\" is not a count")?;
    Ok(CaseResult {
        case_id: id.into(),
        components,
        gold_adjustment: AdjustmentType::from_label(adj)
            .ok_or_else(|| format!("unknown adjustment {adj:?}"))?,
        error: ErrorCategory::parse(err)
            .ok_or_else(|| format!("unknown error category {err:?}"))?,
        residue: ResidueUsage::parse(res)
            .ok_or_else(|| format!("unknown residue usage {res:?}"))?,
        mentioned: u32::try_from(mentioned).map_err(|_| "field \"mentioned\" out of range")?,
    })
}

pub fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Text report. The first line carries the timestamp when one is given.
pub fn render(report: &AnalysisReport, header: &[String], stamp: Option<u64>) -> String {
    let mut out = String::new();
    if let Some(t) = stamp {
        out.push_str(&format!("# generated_at_unix {t}\n"));
    }
    for h in header {
        out.push_str(&format!("# {h}\n"));
    }
    out.push_str(&report.render_text());
    if !out.ends_with('\n') {
        out.push('\n');
    }
    out
}

pub fn config_summary(cfg: &MireConfig) -> Value {
    let w = &cfg.weights;
    json!({
        "weights": {
            "alpha_h": w.alpha_h.to_string(),
            "alpha_s": w.alpha_s.to_string(),
            "alpha_a": w.alpha_a.to_string(),
            "alpha_f": w.alpha_f.to_string(),
        },
        "tolerance_pp": cfg.tolerance.to_string(),
        "residue_credit": cfg.residue_credit.to_string(),
    })
}
