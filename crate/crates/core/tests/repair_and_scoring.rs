mod support;

use mawarith_core::{
    mire, repair, solve_case, Fraction, HeirEntry, MireComponents, MireConfig, MireWeights,
    PipelineVariant, SolutionRecord, TasilOptions,
};
use proptest::prelude::*;
use support::family;

fn gold() -> impl Strategy<Value = SolutionRecord> {
    family().prop_map(|f| solve_case(&f.scenario()).unwrap())
}

#[derive(Debug, Clone)]
enum Edit {
    Tatweel(usize),
    DuplicateIntoBlocked(usize),
    DropHeir(usize),
    Share(usize, &'static str),
    Label(&'static str),
    Percent(usize, &'static str),
    Count(usize, u32),
    CopyShares,
}

fn edit() -> impl Strategy<Value = Edit> {
    prop_oneof![
        (0usize..8).prop_map(Edit::Tatweel),
        (0usize..8).prop_map(Edit::DuplicateIntoBlocked),
        (0usize..8).prop_map(Edit::DropHeir),
        (
            (0usize..8),
            prop::sample::select(vec!["1/6", "1/3", "2/4", "باقى التركة", "7/12", "junk"])
        )
            .prop_map(|(i, s)| Edit::Share(i, s)),
        prop::sample::select(vec!["عول", "رد", "لا", "none", "عـول", ""]).prop_map(Edit::Label),
        (
            (0usize..8),
            prop::sample::select(vec!["0%", "12.5", "33.33%", "100"])
        )
            .prop_map(|(i, p)| Edit::Percent(i, p)),
        ((0usize..8), 1u32..5).prop_map(|(i, n)| Edit::Count(i, n)),
        Just(Edit::CopyShares),
    ]
}

fn apply(mut r: SolutionRecord, edits: &[Edit]) -> SolutionRecord {
    for e in edits {
        match *e {
            Edit::Tatweel(i) => {
                if let Some(h) = r.heirs.get_mut(i) {
                    let mut chars: Vec<char> = h.heir.chars().collect();
                    chars.insert(1.min(chars.len()), '\u{0640}');
                    h.heir = chars.into_iter().collect();
                }
            }
            Edit::DuplicateIntoBlocked(i) => {
                if let Some(h) = r.heirs.get(i).cloned() {
                    r.blocked.push(h);
                }
            }
            Edit::DropHeir(i) => {
                if i < r.heirs.len() {
                    r.heirs.remove(i);
                }
            }
            Edit::Share(i, s) => {
                if let Some(x) = r.shares.get_mut(i) {
                    x.share = s.into();
                }
            }
            Edit::Label(l) => r.awl_or_radd = l.into(),
            Edit::Percent(i, p) => {
                if let Some(x) = r.post_tasil.distribution.get_mut(i) {
                    x.percentage = p.into();
                }
            }
            Edit::Count(i, n) => {
                if let Some(h) = r.heirs.get_mut(i) {
                    h.count = n;
                }
            }
            Edit::CopyShares => {
                for d in r.post_tasil.distribution.iter_mut() {
                    if let Some(s) = r.shares.iter().find(|s| s.heir == d.heir) {
                        if s.value().is_ok_and(|v| !v.is_residue()) {
                            d.fraction = s.share.clone();
                        }
                    }
                }
            }
        }
    }
    r
}

fn in_unit(f: &Fraction) -> bool {
    !f.is_negative() && *f <= Fraction::one()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1_500, ..ProptestConfig::default() })]

    #[test]
    fn repair_invariants(g in gold(), edits in prop::collection::vec(edit(), 0..5)) {
        let raw = apply(g, &edits);
        let opts = TasilOptions::default();
        for v in [PipelineVariant::Original, PipelineVariant::Basic, PipelineVariant::PostTasil] {
            let once = repair(&raw, v, opts).record;
            prop_assert_eq!(&repair(&once, v, opts).record, &once);
        }
        let basic = repair(&raw, PipelineVariant::Basic, opts);
        let post = repair(&raw, PipelineVariant::PostTasil, opts);
        prop_assert_eq!(repair(&raw, PipelineVariant::Original, opts).record, raw.clone());

        // Basic never rewrites a parseable share or a valid label.
        for (a, b) in raw.shares.iter().zip(&basic.record.shares) {
            if let Ok(v) = a.value() {
                prop_assert_eq!(b.value().unwrap(), v);
            }
        }
        if raw.adjustment().is_some() {
            prop_assert_eq!(&basic.record.awl_or_radd, &raw.awl_or_radd);
        }

        // PostTasil only touches the table, and only when the recalculation fired.
        let fired = post.log.stages.contains(&"recalc_post_tasil");
        let mut masked = post.record.clone();
        masked.post_tasil = basic.record.post_tasil.clone();
        prop_assert_eq!(&masked, &basic.record);
        if !fired {
            prop_assert_eq!(&post.record, &basic.record);
        } else {
            let total: Fraction = post
                .record
                .post_tasil
                .distribution
                .iter()
                .map(|d| d.fraction_value().unwrap() * Fraction::from_integer(d.count))
                .sum();
            prop_assert_eq!(total, Fraction::one());
        }
    }

    #[test]
    fn scoring_invariants(g in gold(), edits in prop::collection::vec(edit(), 0..5)) {
        let cfg = MireConfig::default();
        let p = apply(g.clone(), &edits);
        let c = mire(&p, &g, &cfg);
        for x in [&c.s_h, &c.s_s, &c.s_a, &c.s_f, &c.mire] {
            prop_assert!(in_unit(x));
        }
        if c.s_h < Fraction::one() || c.s_s < Fraction::one() {
            prop_assert!(c.s_a.is_zero());
        }
        prop_assert_eq!(mire(&g, &g, &cfg).mire, Fraction::one());
        if c.mire == Fraction::one() {
            prop_assert!(c.is_perfect());
        }

        let w = cfg.weights.clone();
        let two = Fraction::from_integer(2);
        let doubled = MireWeights::new(&w.alpha_h * &two, &w.alpha_s * &two, &w.alpha_a * &two, &w.alpha_f * &two).unwrap();
        let again = MireComponents::from_parts(c.s_h.clone(), c.s_s.clone(), c.s_a.clone(), c.s_f.clone(), &doubled);
        prop_assert_eq!(again.mire, &c.mire * &two);
    }
}

#[test]
fn heir_blocked_overlap_repair_raises_heir_score() {
    let gold =
        solve_case(&mawarith_core::parse_case("مات وترك: زوجة و ابن و عم شقيق.").unwrap()).unwrap();
    let mut pred = gold.clone();
    pred.blocked.push(HeirEntry::new("ابن", 1));
    let cfg = MireConfig::default();
    let before = mire(&pred, &gold, &cfg).s_h;
    let fixed = repair(&pred, PipelineVariant::Basic, TasilOptions::default()).record;
    assert!(mire(&fixed, &gold, &cfg).s_h > before);
}
