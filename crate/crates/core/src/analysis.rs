//! Batch aggregation of scored cases into report tables.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use serde::Serialize;

use crate::fraction::Fraction;
use crate::mire::{
    categorize_error, gold_class, mire, residue_usage, ErrorCategory, MireComponents, MireConfig,
    ResidueUsage,
};
use crate::model::{AdjustmentType, SolutionRecord};

/// Scored case with the facts needed for the report tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseResult {
    pub case_id: String,
    pub components: MireComponents,
    pub gold_adjustment: AdjustmentType,
    pub error: ErrorCategory,
    pub residue: ResidueUsage,
    /// Number of relatives named in the gold answer.
    pub mentioned: u32,
}

pub fn evaluate_case(
    case_id: &str,
    pred: &SolutionRecord,
    gold: &SolutionRecord,
    cfg: &MireConfig,
) -> CaseResult {
    let components = mire(pred, gold, cfg);
    CaseResult {
        case_id: case_id.into(),
        error: categorize_error(pred, gold, &components),
        residue: residue_usage(pred, gold),
        gold_adjustment: gold_class(gold),
        mentioned: gold
            .heirs
            .iter()
            .chain(&gold.blocked)
            .map(|e| e.count)
            .sum(),
        components,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmptyBatch;

impl fmt::Display for EmptyBatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("cannot aggregate an empty batch")
    }
}

impl core::error::Error for EmptyBatch {}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Means {
    pub mire: f64,
    pub s_h: f64,
    pub s_s: f64,
    pub s_a: f64,
    pub s_f: f64,
}

fn means<'a>(cs: impl IntoIterator<Item = &'a MireComponents>) -> Option<Means> {
    let mut sums = [
        Fraction::zero(),
        Fraction::zero(),
        Fraction::zero(),
        Fraction::zero(),
        Fraction::zero(),
    ];
    let mut n = 0u64;
    for c in cs {
        for (s, v) in sums
            .iter_mut()
            .zip([&c.mire, &c.s_h, &c.s_s, &c.s_a, &c.s_f])
        {
            *s = &*s + v;
        }
        n += 1;
    }
    if n == 0 {
        return None;
    }
    let m = |s: &Fraction| (s / &Fraction::from_integer(n)).to_f64();
    Some(Means {
        mire: m(&sums[0]),
        s_h: m(&sums[1]),
        s_s: m(&sums[2]),
        s_a: m(&sums[3]),
        s_f: m(&sums[4]),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CategoryRow {
    pub category: String,
    pub n: usize,
    pub means: Option<Means>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineRates {
    pub heirs: f64,
    pub heirs_shares: f64,
    pub heirs_shares_adjustment: f64,
    pub all: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidueTable {
    pub required: usize,
    pub provided: usize,
    pub avoided: usize,
    pub avoided_correct: usize,
    pub avoided_wrong: usize,
    pub recall: f64,
    /// Mean shares score with the label minus without it.
    pub shares_gap: f64,
    /// Estimated loss of overall score, in percentage points.
    pub cost_pp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRow {
    pub category: String,
    pub cases: usize,
    pub rate: f64,
    pub impact_pp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComplexityRow {
    pub bucket: String,
    pub n: usize,
    pub mire: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub overall: Means,
    pub by_adjustment: Vec<CategoryRow>,
    pub pipeline: PipelineRates,
    pub residue: ResidueTable,
    pub errors: Vec<ErrorRow>,
    pub complexity: Vec<ComplexityRow>,
}

fn rate(k: usize, n: usize) -> f64 {
    if n == 0 {
        0.0
    } else {
        k as f64 / n as f64
    }
}

pub fn aggregate(results: &[CaseResult], cfg: &MireConfig) -> Result<AnalysisReport, EmptyBatch> {
    let n = results.len();
    let overall = means(results.iter().map(|r| &r.components)).ok_or(EmptyBatch)?;
    let by_adjustment = AdjustmentType::ALL
        .iter()
        .rev()
        .map(|&a| {
            let rows: Vec<&CaseResult> =
                results.iter().filter(|r| r.gold_adjustment == a).collect();
            CategoryRow {
                category: a.label().into(),
                n: rows.len(),
                means: means(rows.iter().map(|r| &r.components)),
            }
        })
        .collect();

    let one = Fraction::one();
    let count =
        |f: &dyn Fn(&MireComponents) -> bool| results.iter().filter(|r| f(&r.components)).count();
    let pipeline = PipelineRates {
        heirs: rate(count(&|c| c.s_h == one), n),
        heirs_shares: rate(count(&|c| c.s_h == one && c.s_s == one), n),
        heirs_shares_adjustment: rate(count(&|c| c.s_h == one && c.s_s == one && c.s_a == one), n),
        all: rate(count(&|c| c.is_perfect()), n),
    };

    let usage = |u: ResidueUsage| results.iter().filter(|r| r.residue == u).count();
    let (provided, correct, wrong) = (
        usage(ResidueUsage::Provided),
        usage(ResidueUsage::AvoidedCorrect),
        usage(ResidueUsage::AvoidedWrong),
    );
    let mean_ss = |pred: &dyn Fn(ResidueUsage) -> bool| {
        let v: Vec<f64> = results
            .iter()
            .filter(|r| pred(r.residue))
            .map(|r| r.components.s_s.to_f64())
            .collect();
        (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
    };
    let with_label = mean_ss(&|u| u == ResidueUsage::Provided).unwrap_or(1.0);
    let without =
        mean_ss(&|u| matches!(u, ResidueUsage::AvoidedCorrect | ResidueUsage::AvoidedWrong));
    let shares_gap = without.map_or(0.0, |w| with_label - w);
    let avoided = correct + wrong;
    let residue = ResidueTable {
        required: provided + avoided,
        provided,
        avoided,
        avoided_correct: correct,
        avoided_wrong: wrong,
        recall: rate(provided, provided + avoided),
        shares_gap,
        cost_pp: 0.0 - rate(avoided, n) * shares_gap * cfg.weights.alpha_s.to_f64() * 100.0,
    };

    let errors = ErrorCategory::ALL
        .iter()
        .filter(|&&c| c != ErrorCategory::None)
        .map(|&c| {
            let rows: Vec<&CaseResult> = results.iter().filter(|r| r.error == c).collect();
            let lost: f64 = rows.iter().map(|r| 1.0 - r.components.mire.to_f64()).sum();
            ErrorRow {
                category: c.name().into(),
                cases: rows.len(),
                rate: rate(rows.len(), n),
                impact_pp: 0.0 - lost / n as f64 * 100.0,
            }
        })
        .collect();

    let complexity = [("2-4", 0u32, 4u32), ("5-7", 5, 7), (">=8", 8, u32::MAX)]
        .iter()
        .map(|&(bucket, lo, hi)| {
            let rows: Vec<&CaseResult> = results
                .iter()
                .filter(|r| r.mentioned >= lo && r.mentioned <= hi)
                .collect();
            ComplexityRow {
                bucket: bucket.into(),
                n: rows.len(),
                mire: means(rows.iter().map(|r| &r.components)).map(|m| m.mire),
            }
        })
        .collect();

    Ok(AnalysisReport {
        n,
        overall,
        by_adjustment,
        pipeline,
        residue,
        errors,
        complexity,
    })
}

fn pct(x: f64) -> String {
    format!("{:.1}%", x * 100.0)
}

impl AnalysisReport {
    /// Plain-text tables.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let o = &self.overall;
        let _ = writeln!(out, "Cases: {}", self.n);
        let _ = writeln!(out, "\nComponent scores");
        for (name, v) in [
            ("MIR-E overall", o.mire),
            ("Heirs & blocking", o.s_h),
            ("Share assignment", o.s_s),
            ("Awl/radd detection", o.s_a),
            ("Final distribution", o.s_f),
        ] {
            let _ = writeln!(out, "  {name:<22}{:>8}", pct(v));
        }
        let _ = writeln!(out, "\nBy adjustment type");
        let _ = writeln!(
            out,
            "  {:<8}{:>6}{:>9}{:>9}{:>9}{:>9}{:>9}",
            "type", "N", "MIR-E", "S_h", "S_s", "S_a", "S_f"
        );
        for row in &self.by_adjustment {
            match &row.means {
                Some(m) => {
                    let _ = writeln!(
                        out,
                        "  {:<8}{:>6}{:>9}{:>9}{:>9}{:>9}{:>9}",
                        row.category,
                        row.n,
                        pct(m.mire),
                        pct(m.s_h),
                        pct(m.s_s),
                        pct(m.s_a),
                        pct(m.s_f)
                    );
                }
                None => {
                    let _ = writeln!(out, "  {:<8}{:>6}{:>9}", row.category, 0, "-");
                }
            }
        }
        let p = &self.pipeline;
        let _ = writeln!(out, "\nPipeline success");
        for (name, v) in [
            ("Heirs correct", p.heirs),
            ("+ Shares correct", p.heirs_shares),
            ("+ Adjustment correct", p.heirs_shares_adjustment),
            ("All stages correct", p.all),
        ] {
            let _ = writeln!(out, "  {name:<24}{:>8}", pct(v));
        }
        let r = &self.residue;
        let _ = writeln!(out, "\nResidue label");
        let _ = writeln!(out, "  {:<24}{:>6}", "Required", r.required);
        let _ = writeln!(
            out,
            "  {:<24}{:>6}{:>8}",
            "Provided",
            r.provided,
            pct(r.recall)
        );
        let _ = writeln!(
            out,
            "  {:<24}{:>6}{:>8}",
            "Avoided",
            r.avoided,
            pct(rate(r.avoided, r.required))
        );
        let _ = writeln!(
            out,
            "  {:<24}{:>6}{:>8}",
            "  correct fraction",
            r.avoided_correct,
            pct(rate(r.avoided_correct, r.avoided))
        );
        let _ = writeln!(
            out,
            "  {:<24}{:>6}{:>8}",
            "  wrong fraction",
            r.avoided_wrong,
            pct(rate(r.avoided_wrong, r.avoided))
        );
        let _ = writeln!(out, "  {:<24}{:>+8.2}pp", "Cost", r.cost_pp);
        let _ = writeln!(out, "\nErrors");
        for e in &self.errors {
            let _ = writeln!(
                out,
                "  {:<26}{:>6}{:>8}{:>+9.2}pp",
                e.category,
                e.cases,
                pct(e.rate),
                e.impact_pp
            );
        }
        let _ = writeln!(out, "\nBy number of relatives");
        for c in &self.complexity {
            let _ = writeln!(
                out,
                "  {:<6}{:>6}{:>9}",
                c.bucket,
                c.n,
                c.mire.map_or_else(|| "-".into(), pct)
            );
        }
        out
    }
}
