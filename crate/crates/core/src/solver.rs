//! Blocking, share assignment, adjustment and final distribution.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::fraction::{Fraction, Percentage};
use crate::model::{
    AdjustmentType, Allocation, HeirEntry, PostTasil, RelativeMention, ShareEntry, ShareValue,
    SolutionRecord,
};
use crate::parser::CaseScenario;
use crate::rules::{HeirFacts, RuleSet, ShareExpr};
use crate::taxonomy::{taxonomy, HeirCategory};

const GRANDFATHERS: [&str; 2] = ["أب الأب", "أب أب الأب"];
const AGNATIC_SIBLINGS: [&str; 4] = ["أخ شقيق", "أخت شقيقة", "أخ لأب", "أخت لأب"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// No share rule applies to an effective heir.
    RuleCoverage(String),
    /// `grandfather_share` called without a grandfather among the heirs.
    NoGrandfather,
    /// Radd requested while a residuary is present.
    RaddWithResidue,
    /// The requested adjustment disagrees with the shares.
    AdjustmentMismatch {
        requested: AdjustmentType,
        expected: AdjustmentType,
    },
    /// The common denominator does not fit in 64 bits.
    Overflow,
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::RuleCoverage(l) => write!(f, "no share rule applies to {l}"),
            SolveError::NoGrandfather => {
                f.write_str("grandfather share requested without a grandfather")
            }
            SolveError::RaddWithResidue => {
                f.write_str("radd requested while a residuary is present")
            }
            SolveError::AdjustmentMismatch {
                requested,
                expected,
            } => {
                write!(
                    f,
                    "adjustment {requested} requested but shares imply {expected}"
                )
            }
            SolveError::Overflow => f.write_str("total shares exceed 64 bits"),
        }
    }
}

impl core::error::Error for SolveError {}

/// Collective share of one category of heirs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareLine {
    pub heir: String,
    pub count: u32,
    pub share: ShareValue,
    /// Per-head weight when splitting the residue (male 2, female 1).
    pub weight: u32,
    pub spouse: bool,
}

impl ShareLine {
    pub fn new(mention: RelativeMention, share: ShareValue) -> Self {
        ShareLine {
            heir: mention.category.label().to_string(),
            count: mention.count,
            share,
            weight: mention.category.residue_weight(),
            spouse: mention.category.is_spouse(),
        }
    }

    /// Build from free text, looking the label up in the taxonomy for the
    /// residue weight and spouse flag (unknown labels weigh 1).
    pub fn from_label(heir: &str, count: u32, share: ShareValue) -> Self {
        let cat = taxonomy().get(heir);
        ShareLine {
            heir: heir.to_string(),
            count: count.max(1),
            share,
            weight: cat.map_or(1, |c| c.residue_weight()),
            spouse: cat.is_some_and(|c| c.is_spouse()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TasilOptions {
    /// Keep spouses out of the radd surplus (majority view).
    pub exclude_spouse_from_radd: bool,
}

impl Default for TasilOptions {
    fn default() -> Self {
        TasilOptions {
            exclude_spouse_from_radd: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub heirs: Vec<RelativeMention>,
    pub blocked: Vec<RelativeMention>,
    pub shares: Vec<ShareLine>,
    pub adjustment: AdjustmentType,
    pub post_tasil: PostTasil,
}

impl Solution {
    pub fn to_record(&self) -> SolutionRecord {
        SolutionRecord {
            heirs: self.heirs.iter().map(|&m| HeirEntry::from(m)).collect(),
            blocked: self.blocked.iter().map(|&m| HeirEntry::from(m)).collect(),
            shares: self
                .shares
                .iter()
                .map(|l| ShareEntry {
                    heir: l.heir.clone(),
                    count: l.count,
                    share: l.share.render(),
                })
                .collect(),
            awl_or_radd: self.adjustment.label().to_string(),
            post_tasil: self.post_tasil.to_table(),
            extra: Default::default(),
        }
    }
}

pub fn determine_blocking(
    rules: &RuleSet,
    scenario: &CaseScenario,
) -> (Vec<RelativeMention>, Vec<RelativeMention>) {
    rules.partition(&scenario.mentions)
}

fn heads(heirs: &[RelativeMention], labels: &[&str]) -> u32 {
    heirs
        .iter()
        .filter(|m| labels.contains(&m.category.label()))
        .map(|m| m.count)
        .sum()
}

/// Best of sharing with the siblings, a third of the remainder, or a sixth.
pub fn grandfather_share(
    heirs: &[RelativeMention],
    fixed_total: &Fraction,
) -> Result<ShareValue, SolveError> {
    if heads(heirs, &GRANDFATHERS) == 0 {
        return Err(SolveError::NoGrandfather);
    }
    let sibling_weight: u32 = heirs
        .iter()
        .filter(|m| AGNATIC_SIBLINGS.contains(&m.category.label()))
        .map(|m| m.count * m.category.residue_weight())
        .sum();
    let remainder = Fraction::one() - fixed_total;
    let sixth = Fraction::new(1, 6).unwrap();
    let sharing = &remainder * &Fraction::new(2, 2 + sibling_weight).unwrap();
    let third = &remainder * &Fraction::new(1, 3).unwrap();
    let best = if sharing >= third { sharing } else { third };
    // Equal values render as the sixth.
    let best = if best > sixth { best } else { sixth };
    ShareValue::fraction(best).map_err(|_| SolveError::Overflow)
}

/// Collective share of every effective heir, in heir order.
pub fn assign_shares(
    rules: &RuleSet,
    heirs: &[RelativeMention],
    mentions: &[RelativeMention],
) -> Result<Vec<ShareLine>, SolveError> {
    let mut facts = HeirFacts { heirs, mentions };
    let mut exprs = Vec::with_capacity(heirs.len());
    for m in heirs {
        let rule = rules
            .select_share(m.category, &mut facts)
            .ok_or_else(|| SolveError::RuleCoverage(m.category.label().into()))?;
        exprs.push(rule.share.clone());
    }
    let mut resolved: Vec<Option<ShareValue>> = alloc::vec![None; heirs.len()];
    let pool_heads = |pool: &[HeirCategory]| -> u32 {
        heirs
            .iter()
            .filter(|h| pool.contains(&h.category))
            .map(|h| h.count)
            .sum()
    };
    for (i, (m, e)) in heirs.iter().zip(&exprs).enumerate() {
        resolved[i] = match e {
            ShareExpr::Fixed(f) => Some(ShareValue::Fraction(f.clone())),
            ShareExpr::Pooled { share, pool } => {
                let total = pool_heads(pool).max(m.count);
                Some(ShareValue::Fraction(
                    share * &Fraction::new(m.count, total).unwrap(),
                ))
            }
            ShareExpr::Residue => Some(ShareValue::Residue),
            _ => None,
        };
    }
    let fixed_sum = |resolved: &[Option<ShareValue>]| -> Fraction {
        resolved
            .iter()
            .flatten()
            .filter_map(|s| s.as_fraction())
            .cloned()
            .sum()
    };
    for (i, e) in exprs.iter().enumerate() {
        if let ShareExpr::ThirdOfRemainder = e {
            let spouses: Fraction = heirs
                .iter()
                .zip(&resolved)
                .filter(|(h, _)| h.category.is_spouse())
                .filter_map(|(_, s)| s.as_ref().and_then(|s| s.as_fraction()).cloned())
                .sum();
            let share = (Fraction::one() - spouses) * Fraction::new(1, 3).unwrap();
            resolved[i] = Some(ShareValue::Fraction(share));
        }
    }
    for (i, e) in exprs.iter().enumerate() {
        if let ShareExpr::GrandfatherWithSiblings = e {
            resolved[i] = Some(grandfather_share(heirs, &fixed_sum(&resolved))?);
        }
    }
    for (i, e) in exprs.iter().enumerate() {
        if let ShareExpr::SixthOrResidue = e {
            let sixth = Fraction::new(1, 6).unwrap();
            resolved[i] = Some(if fixed_sum(&resolved) + &sixth >= Fraction::one() {
                ShareValue::Fraction(sixth)
            } else {
                ShareValue::Residue
            });
        }
    }
    Ok(heirs
        .iter()
        .zip(resolved)
        .map(|(&m, s)| ShareLine::new(m, s.expect("every expression resolved")))
        .collect())
}

/// عول when fixed shares exceed the estate, رد when they fall short with no
/// residuary, لا otherwise.
pub fn detect_adjustment<'a>(shares: impl IntoIterator<Item = &'a ShareValue>) -> AdjustmentType {
    let mut total = Fraction::zero();
    let mut residue = false;
    let mut any = false;
    for s in shares {
        any = true;
        match s {
            ShareValue::Fraction(f) => total = total + f,
            ShareValue::Residue => residue = true,
        }
    }
    if total > Fraction::one() {
        AdjustmentType::Awl
    } else if any && !residue && total < Fraction::one() {
        AdjustmentType::Radd
    } else {
        AdjustmentType::None
    }
}

/// Final per-individual distribution over a common integer denominator.
pub fn compute_tasil(
    lines: &[ShareLine],
    adjustment: AdjustmentType,
    opts: TasilOptions,
) -> Result<PostTasil, SolveError> {
    let expected = detect_adjustment(lines.iter().map(|l| &l.share));
    if adjustment == AdjustmentType::Radd && lines.iter().any(|l| l.share.is_residue()) {
        return Err(SolveError::RaddWithResidue);
    }
    if adjustment != expected {
        return Err(SolveError::AdjustmentMismatch {
            requested: adjustment,
            expected,
        });
    }
    let fixed: Vec<Fraction> = lines
        .iter()
        .filter_map(|l| l.share.as_fraction())
        .cloned()
        .collect();
    let fixed_total: Fraction = fixed.iter().cloned().sum();
    let asl = crate::fraction::lcm_of_denominators(fixed.iter());

    // Final collective fraction of each line.
    let group: Vec<Fraction> = match adjustment {
        AdjustmentType::Awl => lines
            .iter()
            .map(|l| {
                l.share
                    .as_fraction()
                    .map_or_else(Fraction::zero, |f| f / &fixed_total)
            })
            .collect(),
        AdjustmentType::Radd => {
            let takes = |l: &ShareLine| !(opts.exclude_spouse_from_radd && l.spouse);
            let participants: Fraction = lines
                .iter()
                .filter(|l| takes(l))
                .filter_map(|l| l.share.as_fraction())
                .cloned()
                .sum();
            let keep: Fraction = &fixed_total - &participants;
            if participants.is_zero() {
                // Only spouses: the surplus goes to them.
                lines
                    .iter()
                    .map(|l| l.share.as_fraction().unwrap() / &fixed_total)
                    .collect()
            } else {
                let factor = (Fraction::one() - keep) / participants;
                lines
                    .iter()
                    .map(|l| {
                        let f = l.share.as_fraction().unwrap();
                        if takes(l) {
                            f * &factor
                        } else {
                            f.clone()
                        }
                    })
                    .collect()
            }
        }
        AdjustmentType::None => {
            let residue = Fraction::one() - &fixed_total;
            let weight: u32 = lines
                .iter()
                .filter(|l| l.share.is_residue())
                .map(|l| l.weight * l.count)
                .sum();
            lines
                .iter()
                .map(|l| match &l.share {
                    ShareValue::Fraction(f) => f.clone(),
                    ShareValue::Residue => {
                        &residue * &Fraction::new(l.weight * l.count, weight).unwrap()
                    }
                })
                .collect()
        }
    };

    let base: BigInt = match adjustment {
        AdjustmentType::Awl => (&fixed_total * &Fraction::from_integer(asl.clone()))
            .to_integer()
            .expect("aṣl clears every denominator"),
        AdjustmentType::Radd => crate::fraction::lcm_of_denominators(group.iter()),
        AdjustmentType::None => asl,
    };
    let per_individual: Vec<Fraction> = lines
        .iter()
        .zip(&group)
        .map(|(l, g)| g / &Fraction::from_integer(l.count))
        .collect();
    let total = per_individual
        .iter()
        .fold(base, |acc, f| acc.lcm(f.denom()));
    let total_shares = total.to_u64().ok_or(SolveError::Overflow)?;
    let distribution = lines
        .iter()
        .zip(per_individual)
        .map(|(l, f)| Allocation {
            heir: l.heir.clone(),
            count: l.count,
            percentage: Percentage::from_share(&f),
            per_individual: f,
        })
        .collect();
    debug_assert!(total_shares >= 1 || lines.is_empty());
    Ok(PostTasil {
        total_shares,
        distribution,
    })
}

/// Full pipeline with explicit rules and options.
pub fn solve_with(
    rules: &RuleSet,
    scenario: &CaseScenario,
    opts: TasilOptions,
) -> Result<Solution, SolveError> {
    let (heirs, blocked) = determine_blocking(rules, scenario);
    let shares = assign_shares(rules, &heirs, &scenario.mentions)?;
    let adjustment = detect_adjustment(shares.iter().map(|l| &l.share));
    let post_tasil = compute_tasil(&shares, adjustment, opts)?;
    Ok(Solution {
        heirs,
        blocked,
        shares,
        adjustment,
        post_tasil,
    })
}

/// Solve with the built-in rule table and default options.
pub fn solve_case(scenario: &CaseScenario) -> Result<SolutionRecord, SolveError> {
    solve_with(RuleSet::standard(), scenario, TasilOptions::default()).map(|s| s.to_record())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_case;
    use crate::taxonomy::{category, Gender};
    use alloc::vec;
    use alloc::vec::Vec;

    fn m(label: &str, n: u32) -> RelativeMention {
        RelativeMention::new(category(label).unwrap(), n)
    }

    fn solve(mentions: Vec<RelativeMention>) -> Solution {
        solve_with(
            RuleSet::standard(),
            &CaseScenario::new(mentions, Gender::Male),
            TasilOptions::default(),
        )
        .unwrap()
    }

    fn share_of<'a>(s: &'a Solution, label: &str) -> &'a ShareValue {
        &s.shares.iter().find(|l| l.heir == label).unwrap().share
    }

    fn pct(s: &Solution, label: &str) -> String {
        s.post_tasil
            .distribution
            .iter()
            .find(|a| a.heir == label)
            .unwrap()
            .percentage
            .render()
    }

    fn frac(s: &str) -> ShareValue {
        ShareValue::Fraction(s.parse().unwrap())
    }

    const AWL_CASE: &str = "مات وترك: عم لأب و ابن أخ لأب و أربع بنات ابن و أم الأم و أب الأب و زوجة و خمسة أبناء ابن أخ لأب. ما هو نصيب كل وريث؟";

    #[test]
    fn awl_case_full_record() {
        let scenario = parse_case(AWL_CASE).unwrap();
        let s = solve_with(RuleSet::standard(), &scenario, TasilOptions::default()).unwrap();
        let heirs: Vec<_> = s
            .heirs
            .iter()
            .map(|m| (m.category.label(), m.count))
            .collect();
        assert_eq!(
            heirs,
            [("بنت ابن", 4), ("أم الأم", 1), ("أب الأب", 1), ("زوجة", 1)]
        );
        let blocked: Vec<_> = s
            .blocked
            .iter()
            .map(|m| (m.category.label(), m.count))
            .collect();
        assert_eq!(
            blocked,
            [("عم لأب", 1), ("ابن أخ لأب", 1), ("ابن ابن أخ لأب", 5)]
        );
        assert_eq!(share_of(&s, "بنت ابن"), &frac("2/3"));
        assert_eq!(share_of(&s, "أم الأم"), &frac("1/6"));
        assert_eq!(share_of(&s, "أب الأب"), &frac("1/6"));
        assert_eq!(share_of(&s, "زوجة"), &frac("1/8"));
        assert_eq!(s.adjustment, AdjustmentType::Awl);
        assert_eq!(s.post_tasil.total_shares, 27);
        assert_eq!(pct(&s, "زوجة"), "11.11%");
        assert_eq!(pct(&s, "بنت ابن"), "14.81%");
        let table = s.post_tasil.to_table();
        let row = |l: &str| {
            table
                .distribution
                .iter()
                .find(|d| d.heir == l)
                .unwrap()
                .fraction
                .clone()
        };
        assert_eq!(row("زوجة"), "3/27");
        assert_eq!(row("أب الأب"), "4/27");
        assert_eq!(row("أم الأم"), "4/27");
        assert_eq!(row("بنت ابن"), "4/27");
        assert_eq!(s.post_tasil.allocated(), Fraction::one());
    }

    #[test]
    fn father_and_grandmother() {
        let q =
            "مات وترك: أب أب الأب و أخوين لأب و أم الأم و أب و عمي الأب لأب و أم أم الأب و أم أب الأب.";
        let s = solve_with(
            RuleSet::standard(),
            &parse_case(q).unwrap(),
            TasilOptions::default(),
        )
        .unwrap();
        let heirs: Vec<_> = s.heirs.iter().map(|m| m.category.label()).collect();
        assert_eq!(heirs, ["أم الأم", "أب"]);
        assert_eq!(s.blocked.len(), 5);
        assert_eq!(share_of(&s, "أب"), &ShareValue::Residue);
        assert_eq!(s.adjustment, AdjustmentType::None);
        assert_eq!(pct(&s, "أم الأم"), "16.67%");
        assert_eq!(pct(&s, "أب"), "83.33%");
    }

    #[test]
    fn radd_with_sisters() {
        let q = "ماتت وتركت: ثلاث أخوات شقيقات و أم أب الأب.";
        let s = solve_with(
            RuleSet::standard(),
            &parse_case(q).unwrap(),
            TasilOptions::default(),
        )
        .unwrap();
        assert_eq!(s.adjustment, AdjustmentType::Radd);
        assert_eq!(pct(&s, "أم أب الأب"), "20.00%");
        assert_eq!(pct(&s, "أخت شقيقة"), "26.67%");
        assert_eq!(s.post_tasil.total_shares, 15);
    }

    #[test]
    fn grandfather_with_half_brothers() {
        let q = "مات وترك: أب الأب و أربعة أبناء عم شقيق و خمسة أبناء ابن عم شقيق و أربعة إخوة لأب و أم و أخ لأم و أم الأب و ابن عم لأب و أم الأم و أربعة أعمام الأب.";
        let s = solve_with(
            RuleSet::standard(),
            &parse_case(q).unwrap(),
            TasilOptions::default(),
        )
        .unwrap();
        let mut heirs: Vec<_> = s
            .heirs
            .iter()
            .map(|m| (m.category.label(), m.count))
            .collect();
        heirs.sort();
        let mut want = vec![("أب الأب", 1), ("أخ لأب", 4), ("أم", 1)];
        want.sort();
        assert_eq!(heirs, want);
        assert_eq!(share_of(&s, "أم"), &frac("1/6"));
        assert_eq!(share_of(&s, "أب الأب"), &frac("5/18"));
        assert_eq!(share_of(&s, "أخ لأب"), &ShareValue::Residue);
        assert_eq!(s.post_tasil.total_shares, 36);
        assert_eq!(pct(&s, "أم"), "16.67%");
        assert_eq!(pct(&s, "أب الأب"), "27.78%");
        assert_eq!(pct(&s, "أخ لأب"), "13.89%");
    }

    #[test]
    fn wife_and_son() {
        let s = solve(vec![m("زوجة", 1), m("ابن", 1)]);
        assert_eq!(share_of(&s, "زوجة"), &frac("1/8"));
        assert_eq!(s.adjustment, AdjustmentType::None);
        assert_eq!(pct(&s, "زوجة"), "12.50%");
        assert_eq!(pct(&s, "ابن"), "87.50%");
        let only = solve(vec![m("ابن", 1)]);
        assert!(only.blocked.is_empty());
        assert_eq!(pct(&only, "ابن"), "100.00%");
    }

    #[test]
    fn grandfather_options() {
        let one_brother = [m("أب الأب", 1), m("أخ شقيق", 1)];
        assert_eq!(
            grandfather_share(&one_brother, &Fraction::zero()).unwrap(),
            frac("1/2")
        );
        let with_mother = [m("أم", 1), m("أب الأب", 1), m("أخ لأب", 4)];
        assert_eq!(
            grandfather_share(&with_mother, &"1/6".parse().unwrap()).unwrap(),
            frac("5/18")
        );
        assert_eq!(
            grandfather_share(&[m("أخ شقيق", 1)], &Fraction::zero()),
            Err(SolveError::NoGrandfather)
        );
        // Large fixed shares leave the sixth.
        assert_eq!(
            grandfather_share(&one_brother, &"3/4".parse().unwrap()).unwrap(),
            frac("1/6")
        );
    }

    #[test]
    fn grandfather_without_siblings_substitutes_father() {
        let s = solve(vec![m("أب الأب", 1), m("بنت", 1)]);
        assert_eq!(share_of(&s, "أب الأب"), &ShareValue::Residue);
        assert_eq!(pct(&s, "أب الأب"), "50.00%");
        let s = solve(vec![m("أب الأب", 1), m("ابن", 1)]);
        assert_eq!(share_of(&s, "أب الأب"), &frac("1/6"));
    }

    #[test]
    fn umariyyatan() {
        let s = solve(vec![m("زوج", 1), m("أم", 1), m("أب", 1)]);
        assert_eq!(share_of(&s, "أم"), &frac("1/6"));
        assert_eq!(pct(&s, "أب"), "33.33%");
        let s = solve(vec![m("زوجة", 1), m("أم", 1), m("أب", 1)]);
        assert_eq!(share_of(&s, "أم"), &frac("1/4"));
        assert_eq!(pct(&s, "أب"), "50.00%");
    }

    #[test]
    fn detect_adjustment_examples() {
        let awl = ["1/6", "1/8", "1/6", "2/3"].map(frac);
        assert_eq!(detect_adjustment(&awl), AdjustmentType::Awl);
        assert_eq!(
            detect_adjustment(&[frac("1/6"), frac("2/3")]),
            AdjustmentType::Radd
        );
        assert_eq!(
            detect_adjustment(&[frac("1/6"), ShareValue::Residue]),
            AdjustmentType::None
        );
        assert_eq!(
            detect_adjustment(&[frac("1/2"), frac("1/2")]),
            AdjustmentType::None
        );
    }

    #[test]
    fn tasil_contract_violations() {
        let lines = [
            ShareLine::new(m("أم", 1), frac("1/6")),
            ShareLine::new(m("ابن", 1), ShareValue::Residue),
        ];
        assert_eq!(
            compute_tasil(&lines, AdjustmentType::Radd, TasilOptions::default()),
            Err(SolveError::RaddWithResidue)
        );
        assert!(matches!(
            compute_tasil(&lines, AdjustmentType::Awl, TasilOptions::default()),
            Err(SolveError::AdjustmentMismatch { .. })
        ));
    }

    #[test]
    fn radd_spouse_handling() {
        let lines = [
            ShareLine::new(m("زوجة", 1), frac("1/4")),
            ShareLine::new(m("بنت", 1), frac("1/2")),
        ];
        let t = compute_tasil(&lines, AdjustmentType::Radd, TasilOptions::default()).unwrap();
        assert_eq!(t.distribution[0].per_individual, "1/4".parse().unwrap());
        assert_eq!(t.distribution[1].per_individual, "3/4".parse().unwrap());
        let t = compute_tasil(
            &lines,
            AdjustmentType::Radd,
            TasilOptions {
                exclude_spouse_from_radd: false,
            },
        )
        .unwrap();
        assert_eq!(t.distribution[0].per_individual, "1/3".parse().unwrap());
        let alone = solve(vec![m("زوج", 1)]);
        assert_eq!(alone.adjustment, AdjustmentType::Radd);
        assert_eq!(pct(&alone, "زوج"), "100.00%");
    }

    #[test]
    fn residue_splits_two_to_one() {
        let s = solve(vec![m("ابن", 1), m("بنت", 2), m("زوج", 1)]);
        let a = |l: &str| {
            s.post_tasil
                .distribution
                .iter()
                .find(|a| a.heir == l)
                .unwrap()
                .per_individual
                .clone()
        };
        assert_eq!(a("ابن"), "3/8".parse().unwrap());
        assert_eq!(a("بنت"), "3/16".parse().unwrap());
        assert_eq!(s.post_tasil.total_shares, 16);
    }

    #[test]
    fn record_round_trips_through_json() {
        let rec = solve_case(&parse_case(AWL_CASE).unwrap()).unwrap();
        let back = SolutionRecord::from_json(&rec.to_json()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(rec.awl_or_radd, "عول");
        assert_eq!(rec.post_tasil.total_shares, Some(27));
    }
}
