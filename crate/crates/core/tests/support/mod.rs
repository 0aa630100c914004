//! Brute-force reference solver for a small family (spouse, parents,
//! children, full siblings), written directly from the classical share
//! table with `num-rational` and no code shared with the library.

#![allow(dead_code)]

use mawarith_core::{category, CaseScenario, Fraction, Gender, RelativeMention};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_q(f: &Fraction) -> Q {
    Q::new(f.numer().clone(), f.denom().clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub female_deceased: bool,
    pub spouses: u32,
    pub father: bool,
    pub mother: bool,
    pub sons: u32,
    pub daughters: u32,
    pub brothers: u32,
    pub sisters: u32,
}

impl Family {
    pub fn spouse_label(&self) -> &'static str {
        if self.female_deceased {
            "زوج"
        } else {
            "زوجة"
        }
    }

    pub fn scenario(&self) -> CaseScenario {
        let mut v = Vec::new();
        let mut push = |label: &str, n: u32| {
            if n > 0 {
                v.push(RelativeMention::new(category(label).unwrap(), n));
            }
        };
        push(self.spouse_label(), self.spouses);
        push("أب", self.father as u32);
        push("أم", self.mother as u32);
        push("ابن", self.sons);
        push("بنت", self.daughters);
        push("أخ شقيق", self.brothers);
        push("أخت شقيقة", self.sisters);
        CaseScenario::new(
            v,
            if self.female_deceased {
                Gender::Female
            } else {
                Gender::Male
            },
        )
    }
}

pub fn family() -> impl Strategy<Value = Family> {
    (
        any::<bool>(),
        0u32..=4,
        any::<bool>(),
        any::<bool>(),
        0u32..=3,
        0u32..=4,
        0u32..=3,
        0u32..=3,
    )
        .prop_map(
            |(female, spouses, father, mother, sons, daughters, brothers, sisters)| Family {
                female_deceased: female,
                spouses: if female { spouses.min(1) } else { spouses },
                father,
                mother,
                sons,
                daughters,
                brothers,
                sisters,
            },
        )
        .prop_filter("someone must be named", |f| {
            f.spouses
                + f.father as u32
                + f.mother as u32
                + f.sons
                + f.daughters
                + f.brothers
                + f.sisters
                > 0
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adj {
    Awl,
    Radd,
    None,
}

#[derive(Debug, Clone)]
pub struct Expected {
    /// (label, count, per-individual final share)
    pub allocations: Vec<(&'static str, u32, Q)>,
    pub blocked: Vec<&'static str>,
    pub adjustment: Adj,
}

struct Row {
    label: &'static str,
    count: u32,
    fixed: Q,
    residuary: bool,
    weight: u32,
    spouse: bool,
}

pub fn oracle(f: &Family) -> Expected {
    let children = f.sons + f.daughters > 0;
    let siblings_blocked = f.father || f.sons > 0;
    let mut rows: Vec<Row> = Vec::new();
    let mut blocked = Vec::new();
    let zero = q(0, 1);

    if f.spouses > 0 {
        let share = match (f.female_deceased, children) {
            (true, true) => q(1, 4),
            (true, false) => q(1, 2),
            (false, true) => q(1, 8),
            (false, false) => q(1, 4),
        };
        rows.push(Row {
            label: f.spouse_label(),
            count: f.spouses,
            fixed: share,
            residuary: false,
            weight: 1,
            spouse: true,
        });
    }
    let spouse_share = rows
        .first()
        .map(|r| r.fixed.clone())
        .unwrap_or_else(|| zero.clone());
    if f.father {
        let (fixed, residuary) = if f.sons > 0 {
            (q(1, 6), false)
        } else if f.daughters > 0 {
            (q(1, 6), true)
        } else {
            (zero.clone(), true)
        };
        rows.push(Row {
            label: "أب",
            count: 1,
            fixed,
            residuary,
            weight: 2,
            spouse: false,
        });
    }
    if f.mother {
        let fixed = if children || f.brothers + f.sisters >= 2 {
            q(1, 6)
        } else if f.father && f.spouses > 0 {
            (q(1, 1) - &spouse_share) / q(3, 1)
        } else {
            q(1, 3)
        };
        rows.push(Row {
            label: "أم",
            count: 1,
            fixed,
            residuary: false,
            weight: 1,
            spouse: false,
        });
    }
    if f.sons > 0 {
        rows.push(Row {
            label: "ابن",
            count: f.sons,
            fixed: zero.clone(),
            residuary: true,
            weight: 2,
            spouse: false,
        });
    }
    if f.daughters > 0 {
        let (fixed, residuary) = match (f.sons > 0, f.daughters) {
            (true, _) => (zero.clone(), true),
            (false, 1) => (q(1, 2), false),
            (false, _) => (q(2, 3), false),
        };
        rows.push(Row {
            label: "بنت",
            count: f.daughters,
            fixed,
            residuary,
            weight: 1,
            spouse: false,
        });
    }
    if f.brothers > 0 {
        if siblings_blocked {
            blocked.push("أخ شقيق");
        } else {
            rows.push(Row {
                label: "أخ شقيق",
                count: f.brothers,
                fixed: zero.clone(),
                residuary: true,
                weight: 2,
                spouse: false,
            });
        }
    }
    if f.sisters > 0 {
        if siblings_blocked {
            blocked.push("أخت شقيقة");
        } else {
            let (fixed, residuary) = if f.brothers > 0 || f.daughters > 0 {
                (zero.clone(), true)
            } else if f.sisters == 1 {
                (q(1, 2), false)
            } else {
                (q(2, 3), false)
            };
            rows.push(Row {
                label: "أخت شقيقة",
                count: f.sisters,
                fixed,
                residuary,
                weight: 1,
                spouse: false,
            });
        }
    }

    let total: Q = rows.iter().fold(zero.clone(), |a, r| a + &r.fixed);
    let has_residuary = rows.iter().any(|r| r.residuary);
    let one = q(1, 1);
    let adjustment = if total > one {
        Adj::Awl
    } else if total < one && !has_residuary {
        Adj::Radd
    } else {
        Adj::None
    };
    let groups: Vec<Q> = match adjustment {
        Adj::Awl => rows.iter().map(|r| &r.fixed / &total).collect(),
        Adj::Radd => {
            let others: Q = rows
                .iter()
                .filter(|r| !r.spouse)
                .fold(zero.clone(), |a, r| a + &r.fixed);
            if others == zero {
                rows.iter().map(|r| &r.fixed / &total).collect()
            } else {
                let factor = (&one - &spouse_share) / &others;
                rows.iter()
                    .map(|r| {
                        if r.spouse {
                            r.fixed.clone()
                        } else {
                            &r.fixed * &factor
                        }
                    })
                    .collect()
            }
        }
        Adj::None => {
            let rest = &one - &total;
            let w: u32 = rows
                .iter()
                .filter(|r| r.residuary)
                .map(|r| r.weight * r.count)
                .sum();
            rows.iter()
                .map(|r| {
                    if r.residuary {
                        &r.fixed + &rest * q((r.weight * r.count) as i64, w as i64)
                    } else {
                        r.fixed.clone()
                    }
                })
                .collect()
        }
    };
    let allocations = rows
        .iter()
        .zip(groups)
        .map(|(r, g)| (r.label, r.count, g / q(r.count as i64, 1)))
        .collect();
    Expected {
        allocations,
        blocked,
        adjustment,
    }
}
