//! MIR-E scoring: heirs, shares, adjustment and final distribution.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arabic::fold;
use crate::fraction::{Fraction, Percentage};
use crate::model::{AdjustmentType, HeirEntry, ShareValue, SolutionRecord};
use crate::solver::ShareLine;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightError {
    Negative,
    Unparseable(String),
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::Negative => f.write_str("weights must be non-negative"),
            WeightError::Unparseable(s) => write!(f, "cannot read weights from {s:?}"),
        }
    }
}

impl core::error::Error for WeightError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MireWeights {
    pub alpha_h: Fraction,
    pub alpha_s: Fraction,
    pub alpha_a: Fraction,
    pub alpha_f: Fraction,
}

impl Default for MireWeights {
    fn default() -> Self {
        let w = |n| Fraction::new(n, 10).unwrap();
        MireWeights {
            alpha_h: w(3),
            alpha_s: w(3),
            alpha_a: w(1),
            alpha_f: w(3),
        }
    }
}

impl MireWeights {
    pub fn new(
        alpha_h: Fraction,
        alpha_s: Fraction,
        alpha_a: Fraction,
        alpha_f: Fraction,
    ) -> Result<Self, WeightError> {
        if [&alpha_h, &alpha_s, &alpha_a, &alpha_f]
            .iter()
            .any(|w| w.is_negative())
        {
            return Err(WeightError::Negative);
        }
        Ok(MireWeights {
            alpha_h,
            alpha_s,
            alpha_a,
            alpha_f,
        })
    }

    /// Four comma-separated decimals in h, s, a, f order.
    pub fn parse(text: &str) -> Result<Self, WeightError> {
        let bad = || WeightError::Unparseable(text.into());
        let parts: Vec<Fraction> = text
            .split(',')
            .map(|p| parse_decimal(p).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        let [h, s, a, f] = <[Fraction; 4]>::try_from(parts).map_err(|_| bad())?;
        Self::new(h, s, a, f)
    }

    pub fn total(&self) -> Fraction {
        &(&self.alpha_h + &self.alpha_s) + &(&self.alpha_a + &self.alpha_f)
    }

    /// Rescaled to sum to one (unchanged when all weights are zero).
    pub fn normalized(&self) -> Self {
        let t = self.total();
        if t.is_zero() {
            return self.clone();
        }
        MireWeights {
            alpha_h: &self.alpha_h / &t,
            alpha_s: &self.alpha_s / &t,
            alpha_a: &self.alpha_a / &t,
            alpha_f: &self.alpha_f / &t,
        }
    }
}

/// Exact value of a decimal such as `0.3`, `-1`, or `0.05%`.
pub fn parse_decimal(text: &str) -> Option<Fraction> {
    let t = text.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let v = Percentage::parse(body)?.value().clone();
    Some(if neg { -v } else { v })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MireConfig {
    pub weights: MireWeights,
    /// Allowed gap between percentages, in percentage points.
    pub tolerance: Fraction,
    /// Credit for an explicit fraction equal to the residue it replaces.
    pub residue_credit: Fraction,
}

impl Default for MireConfig {
    fn default() -> Self {
        MireConfig {
            weights: MireWeights::default(),
            tolerance: Fraction::new(5, 100).unwrap(),
            residue_credit: Fraction::new(955, 1000).unwrap(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MireComponents {
    pub s_h: Fraction,
    pub s_s: Fraction,
    pub s_a: Fraction,
    pub s_f: Fraction,
    pub mire: Fraction,
}

impl MireComponents {
    /// Weighted score of the given component values.
    pub fn from_parts(
        s_h: Fraction,
        s_s: Fraction,
        s_a: Fraction,
        s_f: Fraction,
        w: &MireWeights,
    ) -> Self {
        let mire = &(&(&w.alpha_h * &s_h) + &(&w.alpha_s * &s_s))
            + &(&(&w.alpha_a * &s_a) + &(&w.alpha_f * &s_f));
        MireComponents {
            s_h,
            s_s,
            s_a,
            s_f,
            mire,
        }
    }

    pub fn as_f64(&self) -> [f64; 5] {
        [
            self.s_h.to_f64(),
            self.s_s.to_f64(),
            self.s_a.to_f64(),
            self.s_f.to_f64(),
            self.mire.to_f64(),
        ]
    }

    pub fn is_perfect(&self) -> bool {
        [&self.s_h, &self.s_s, &self.s_a, &self.s_f]
            .iter()
            .all(|c| **c == Fraction::one())
    }
}

fn key(label: &str) -> String {
    fold(label)
}

fn merged(list: &[HeirEntry]) -> Vec<(String, u32)> {
    let mut out: Vec<(String, u32)> = Vec::new();
    for e in list {
        let k = key(&e.heir);
        match out.iter_mut().find(|(l, _)| *l == k) {
            Some((_, n)) => *n += e.count,
            None => out.push((k, e.count)),
        }
    }
    out
}

/// F1 over (role, label) decisions times the share of matched decisions
/// whose counts agree.
pub fn score_heirs(pred: &SolutionRecord, gold: &SolutionRecord) -> Fraction {
    let decisions = |r: &SolutionRecord| {
        let mut v: Vec<(u8, String, u32)> = merged(&r.heirs)
            .into_iter()
            .map(|(l, n)| (0, l, n))
            .collect();
        v.extend(merged(&r.blocked).into_iter().map(|(l, n)| (1, l, n)));
        v
    };
    let (p, g) = (decisions(pred), decisions(gold));
    if p.is_empty() && g.is_empty() {
        return Fraction::one();
    }
    let matched: Vec<bool> = p
        .iter()
        .filter_map(|(role, label, n)| {
            g.iter()
                .find(|(r, l, _)| r == role && l == label)
                .map(|(_, _, m)| m == n)
        })
        .collect();
    let tp = matched.len() as u64;
    if tp == 0 {
        return Fraction::zero();
    }
    let f1 = Fraction::new(2 * tp, (p.len() + g.len()) as u64).unwrap();
    let counts_ok = matched.iter().filter(|ok| **ok).count() as u64;
    f1 * Fraction::new(counts_ok, tp).unwrap()
}

/// Collective residue owed to each residuary category of the gold answer.
fn gold_residues(gold: &SolutionRecord) -> Vec<(String, Fraction)> {
    let Ok(values) = gold.share_values() else {
        return Vec::new();
    };
    let lines: Vec<ShareLine> = gold
        .shares
        .iter()
        .zip(values)
        .map(|(s, v)| ShareLine::from_label(&s.heir, s.count, v))
        .collect();
    let fixed: Fraction = lines
        .iter()
        .filter_map(|l| l.share.as_fraction())
        .cloned()
        .sum();
    let residue = Fraction::one() - fixed;
    let weight: u32 = lines
        .iter()
        .filter(|l| l.share.is_residue())
        .map(|l| l.weight * l.count)
        .sum();
    if residue.is_negative() || residue.is_zero() || weight == 0 {
        return Vec::new();
    }
    lines
        .iter()
        .filter(|l| l.share.is_residue())
        .map(|l| {
            (
                key(&l.heir),
                &residue * &Fraction::new(l.weight * l.count, weight).unwrap(),
            )
        })
        .collect()
}

/// Outcome of one gold share entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ShareMatch {
    Exact,
    ResidueAsFraction,
    ResidueAsWrongFraction,
    Wrong,
}

fn share_matches(pred: &SolutionRecord, gold: &SolutionRecord) -> Vec<(bool, ShareMatch)> {
    let residues = gold_residues(gold);
    gold.shares
        .iter()
        .map(|g| {
            let gold_value = g.value().ok();
            let is_residue = gold_value.as_ref().is_some_and(ShareValue::is_residue);
            let pred_value = pred
                .shares
                .iter()
                .find(|p| key(&p.heir) == key(&g.heir))
                .and_then(|p| p.value().ok());
            let outcome = match (&gold_value, &pred_value) {
                (Some(a), Some(b)) if a == b => ShareMatch::Exact,
                (Some(ShareValue::Residue), Some(ShareValue::Fraction(f))) => {
                    match residues.iter().find(|(l, _)| *l == key(&g.heir)) {
                        Some((_, r)) if r == f => ShareMatch::ResidueAsFraction,
                        _ => ShareMatch::ResidueAsWrongFraction,
                    }
                }
                _ => ShareMatch::Wrong,
            };
            (is_residue, outcome)
        })
        .collect()
}

/// Mean over gold share entries: exact matches score 1, a correct explicit
/// fraction in place of the residue scores the configured credit.
pub fn score_shares(pred: &SolutionRecord, gold: &SolutionRecord, cfg: &MireConfig) -> Fraction {
    let matches = share_matches(pred, gold);
    if matches.is_empty() {
        return if pred.shares.is_empty() {
            Fraction::one()
        } else {
            Fraction::zero()
        };
    }
    let total: Fraction = matches
        .iter()
        .map(|(_, m)| match m {
            ShareMatch::Exact => Fraction::one(),
            ShareMatch::ResidueAsFraction => cfg.residue_credit.clone(),
            _ => Fraction::zero(),
        })
        .sum();
    total / Fraction::from_integer(matches.len() as u64)
}

/// 1 only when heirs and shares are perfect and the labels agree.
pub fn score_adjustment(
    pred: &SolutionRecord,
    gold: &SolutionRecord,
    s_h: &Fraction,
    s_s: &Fraction,
) -> Fraction {
    let same = match (pred.adjustment(), gold.adjustment()) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    };
    if *s_h == Fraction::one() && *s_s == Fraction::one() && same {
        Fraction::one()
    } else {
        Fraction::zero()
    }
}

fn gold_percentage(e: &crate::model::DistributionEntry) -> Option<Fraction> {
    e.percentage_value()
        .map(|p| p.value().clone())
        .or_else(|| e.fraction_value().map(|f| f * Fraction::from_integer(100)))
}

/// Share of gold distribution rows whose predicted percentage is within
/// tolerance.
pub fn score_final(pred: &SolutionRecord, gold: &SolutionRecord, cfg: &MireConfig) -> Fraction {
    let rows = &gold.post_tasil.distribution;
    if rows.is_empty() {
        return if pred.post_tasil.distribution.is_empty() {
            Fraction::one()
        } else {
            Fraction::zero()
        };
    }
    let hits = rows
        .iter()
        .filter(|g| {
            let Some(want) = gold_percentage(g) else {
                return false;
            };
            pred.post_tasil
                .distribution
                .iter()
                .find(|p| key(&p.heir) == key(&g.heir))
                .and_then(|p| p.percentage_value())
                .is_some_and(|got| (got.value() - &want).abs() <= cfg.tolerance)
        })
        .count();
    Fraction::new(hits as u64, rows.len() as u64).unwrap()
}

pub fn mire(pred: &SolutionRecord, gold: &SolutionRecord, cfg: &MireConfig) -> MireComponents {
    let s_h = score_heirs(pred, gold);
    let s_s = score_shares(pred, gold, cfg);
    let s_a = score_adjustment(pred, gold, &s_h, &s_s);
    let s_f = score_final(pred, gold, cfg);
    MireComponents::from_parts(s_h, s_s, s_a, s_f, &cfg.weights)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorCategory {
    Calculation,
    HeirIdentification,
    RaddDetection,
    ShareAssignment,
    ResidueLabelAvoidance,
    None,
}

impl ErrorCategory {
    pub const ALL: [ErrorCategory; 6] = [
        ErrorCategory::Calculation,
        ErrorCategory::ResidueLabelAvoidance,
        ErrorCategory::HeirIdentification,
        ErrorCategory::RaddDetection,
        ErrorCategory::ShareAssignment,
        ErrorCategory::None,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorCategory::Calculation => "calculation",
            ErrorCategory::HeirIdentification => "heir_identification",
            ErrorCategory::RaddDetection => "radd_detection",
            ErrorCategory::ShareAssignment => "share_assignment",
            ErrorCategory::ResidueLabelAvoidance => "residue_label_avoidance",
            ErrorCategory::None => "none",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s.trim())
    }
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How a prediction treats the residue designation where gold uses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueUsage {
    NotRequired,
    Provided,
    AvoidedCorrect,
    AvoidedWrong,
}

impl ResidueUsage {
    pub fn name(self) -> &'static str {
        match self {
            ResidueUsage::NotRequired => "not_required",
            ResidueUsage::Provided => "provided",
            ResidueUsage::AvoidedCorrect => "avoided_correct",
            ResidueUsage::AvoidedWrong => "avoided_wrong",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            ResidueUsage::NotRequired,
            ResidueUsage::Provided,
            ResidueUsage::AvoidedCorrect,
            ResidueUsage::AvoidedWrong,
        ]
        .into_iter()
        .find(|u| u.name() == s.trim())
    }
}

pub fn residue_usage(pred: &SolutionRecord, gold: &SolutionRecord) -> ResidueUsage {
    let residue_rows: Vec<ShareMatch> = share_matches(pred, gold)
        .into_iter()
        .filter(|(r, _)| *r)
        .map(|(_, m)| m)
        .collect();
    if residue_rows.is_empty() {
        ResidueUsage::NotRequired
    } else if residue_rows.contains(&ShareMatch::Exact) {
        ResidueUsage::Provided
    } else if residue_rows
        .iter()
        .all(|m| *m == ShareMatch::ResidueAsFraction)
    {
        ResidueUsage::AvoidedCorrect
    } else {
        ResidueUsage::AvoidedWrong
    }
}

/// Dominant error of a scored prediction, checked in a fixed order.
pub fn categorize_error(
    pred: &SolutionRecord,
    gold: &SolutionRecord,
    c: &MireComponents,
) -> ErrorCategory {
    let one = Fraction::one();
    if c.s_h == one && c.s_s == one && c.s_a == one {
        return if c.s_f < one {
            ErrorCategory::Calculation
        } else {
            ErrorCategory::None
        };
    }
    let adjustment_wrong = match (gold.adjustment(), pred.adjustment()) {
        (Some(g), p) => Some(g) != p,
        (None, _) => false,
    };
    if adjustment_wrong && c.s_h == one && c.s_s == one {
        return ErrorCategory::RaddDetection;
    }
    if c.s_h < one && c.s_s == one {
        return ErrorCategory::HeirIdentification;
    }
    if c.s_s < one {
        let only_residue = share_matches(pred, gold).iter().all(|(is_residue, m)| {
            *m == ShareMatch::Exact || (*is_residue && *m != ShareMatch::Wrong)
        });
        return if only_residue {
            ErrorCategory::ResidueLabelAvoidance
        } else {
            ErrorCategory::ShareAssignment
        };
    }
    if adjustment_wrong {
        return ErrorCategory::RaddDetection;
    }
    ErrorCategory::None
}

/// Adjustment class of a gold answer, treating unknown labels as none.
pub fn gold_class(gold: &SolutionRecord) -> AdjustmentType {
    gold.adjustment().unwrap_or(AdjustmentType::None)
}
