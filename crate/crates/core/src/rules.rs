//! Declarative blocking and share rules.
//!
//! Rules live in a line-oriented text file (see `data/jumhur.rules` for the
//! grammar). Blocking is evaluated on demand: a relative's status is decided
//! by the effective presence of the relatives its rules mention, which are
//! themselves resolved first. The dependency graph is checked for cycles
//! when the table is loaded, so this always terminates.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::fraction::Fraction;
use crate::model::RelativeMention;
use crate::taxonomy::{taxonomy, HeirCategory};

const STANDARD_RULES: &str = include_str!("../data/jumhur.rules");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for RuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rules line {}: {}", self.line, self.message)
    }
}

impl core::error::Error for RuleError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    /// Unblocked heirs.
    Effective,
    /// Everyone named in the case.
    Mentioned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cmp {
    Ge,
    Le,
    Gt,
    Lt,
    Eq,
}

impl Cmp {
    fn holds(self, lhs: u32, rhs: u32) -> bool {
        match self {
            Cmp::Ge => lhs >= rhs,
            Cmp::Le => lhs <= rhs,
            Cmp::Gt => lhs > rhs,
            Cmp::Lt => lhs < rhs,
            Cmp::Eq => lhs == rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Condition {
    Always,
    Not(Box<Condition>),
    And(Vec<Condition>),
    Or(Vec<Condition>),
    Count {
        scope: Scope,
        categories: Vec<HeirCategory>,
        cmp: Cmp,
        value: u32,
    },
}

impl Condition {
    pub fn eval(&self, facts: &mut dyn Facts) -> bool {
        match self {
            Condition::Always => true,
            Condition::Not(c) => !c.eval(facts),
            Condition::And(cs) => cs.iter().all(|c| c.eval(facts)),
            Condition::Or(cs) => cs.iter().any(|c| c.eval(facts)),
            Condition::Count {
                scope,
                categories,
                cmp,
                value,
            } => {
                let total = categories.iter().map(|&c| facts.count(c, *scope)).sum();
                cmp.holds(total, *value)
            }
        }
    }

    /// Categories whose effective status this condition reads.
    fn effective_refs(&self, out: &mut BTreeSet<HeirCategory>) {
        match self {
            Condition::Always => {}
            Condition::Not(c) => c.effective_refs(out),
            Condition::And(cs) | Condition::Or(cs) => cs.iter().for_each(|c| c.effective_refs(out)),
            Condition::Count {
                scope: Scope::Effective,
                categories,
                ..
            } => out.extend(categories.iter().copied()),
            Condition::Count { .. } => {}
        }
    }

    /// Categories whose presence makes the condition true (not under negation).
    fn positive_refs(&self, negated: bool, out: &mut BTreeSet<HeirCategory>) {
        match self {
            Condition::Always => {}
            Condition::Not(c) => c.positive_refs(!negated, out),
            Condition::And(cs) | Condition::Or(cs) => {
                cs.iter().for_each(|c| c.positive_refs(negated, out))
            }
            Condition::Count {
                scope: Scope::Effective,
                categories,
                cmp,
                ..
            } => {
                if !negated && matches!(cmp, Cmp::Ge | Cmp::Gt | Cmp::Eq) {
                    out.extend(categories.iter().copied());
                }
            }
            Condition::Count { .. } => {}
        }
    }
}

/// Source of head counts for condition evaluation.
pub trait Facts {
    fn count(&mut self, category: HeirCategory, scope: Scope) -> u32;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShareExpr {
    /// Collective share of the category.
    Fixed(Fraction),
    /// A share split per head across every effective member of the pool.
    Pooled {
        share: Fraction,
        pool: Vec<HeirCategory>,
    },
    Residue,
    SixthOrResidue,
    ThirdOfRemainder,
    GrandfatherWithSiblings,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRule {
    pub blocked: HeirCategory,
    pub condition: Condition,
    pub note: String,
    pub line: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShareRule {
    pub category: HeirCategory,
    pub condition: Condition,
    pub share: ShareExpr,
    pub note: String,
    pub line: usize,
}

/// A (blocker, blocked) pair implied by the block rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BlockingRule {
    pub blocker: HeirCategory,
    pub blocked: HeirCategory,
}

#[derive(Debug, Clone)]
pub struct RuleSet {
    pub version: u32,
    pub block_rules: Vec<BlockRule>,
    pub share_rules: Vec<ShareRule>,
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

struct CondParser<'a> {
    src: &'a str,
    pos: usize,
    groups: &'a BTreeMap<String, Vec<HeirCategory>>,
}

impl<'a> CondParser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        let rest = self.rest();
        if !rest.starts_with(token) {
            return false;
        }
        let is_word = token.chars().all(|c| c.is_ascii_alphabetic());
        let boundary = rest[token.len()..]
            .chars()
            .next()
            .is_none_or(|c| !(c.is_ascii_alphanumeric() || c == '_'));
        if is_word && !boundary {
            return false;
        }
        self.pos += token.len();
        true
    }

    fn disjunction(&mut self) -> Result<Condition, String> {
        let mut parts = vec![self.conjunction()?];
        while self.eat("or") {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Condition::Or(parts)
        })
    }

    fn conjunction(&mut self) -> Result<Condition, String> {
        let mut parts = vec![self.unary()?];
        while self.eat("and") {
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Condition::And(parts)
        })
    }

    fn unary(&mut self) -> Result<Condition, String> {
        if self.eat("not") {
            return Ok(Condition::Not(Box::new(self.unary()?)));
        }
        if self.eat("(") {
            let inner = self.disjunction()?;
            if !self.eat(")") {
                return Err("expected ')'".into());
            }
            return Ok(inner);
        }
        if self.eat("always") {
            return Ok(Condition::Always);
        }
        let (scope, bare_cmp) = if self.eat("has") {
            (Scope::Effective, false)
        } else if self.eat("count") {
            (Scope::Effective, true)
        } else if self.eat("mentioned") {
            (Scope::Mentioned, true)
        } else {
            return Err(format!("unexpected input {:?}", self.rest()));
        };
        if !self.eat("(") {
            return Err("expected '(' after test name".into());
        }
        let close = self.rest().find(')').ok_or("unclosed argument list")?;
        let args = &self.rest()[..close];
        self.pos += close + 1;
        let mut categories = Vec::new();
        for arg in args.split(',').map(str::trim) {
            categories.extend(resolve_ref(arg, self.groups)?);
        }
        let cmp = if bare_cmp { self.comparison() } else { None };
        let (cmp, value) = match cmp {
            Some(cmp) => {
                self.skip_ws();
                let digits: &str = &self.rest()[..self
                    .rest()
                    .find(|c: char| !c.is_ascii_digit())
                    .unwrap_or(self.rest().len())];
                let value = digits
                    .parse::<u32>()
                    .map_err(|_| "expected an integer after comparison")?;
                self.pos += digits.len();
                (cmp, value)
            }
            None => (Cmp::Ge, 1),
        };
        Ok(Condition::Count {
            scope,
            categories,
            cmp,
            value,
        })
    }

    fn comparison(&mut self) -> Option<Cmp> {
        for (tok, cmp) in [
            (">=", Cmp::Ge),
            ("<=", Cmp::Le),
            (">", Cmp::Gt),
            ("<", Cmp::Lt),
            ("=", Cmp::Eq),
        ] {
            if self.eat(tok) {
                return Some(cmp);
            }
        }
        None
    }
}

fn resolve_ref(
    arg: &str,
    groups: &BTreeMap<String, Vec<HeirCategory>>,
) -> Result<Vec<HeirCategory>, String> {
    if let Some(name) = arg.strip_prefix('@') {
        return groups
            .get(name)
            .cloned()
            .ok_or_else(|| format!("unknown group @{name}"));
    }
    taxonomy()
        .get(arg)
        .map(|c| vec![c])
        .ok_or_else(|| format!("unknown category {arg:?}"))
}

fn parse_condition(
    src: &str,
    groups: &BTreeMap<String, Vec<HeirCategory>>,
) -> Result<Condition, String> {
    let mut p = CondParser {
        src,
        pos: 0,
        groups,
    };
    let cond = p.disjunction()?;
    p.skip_ws();
    if !p.rest().is_empty() {
        return Err(format!("trailing input {:?}", p.rest()));
    }
    Ok(cond)
}

fn parse_expr(
    src: &str,
    groups: &BTreeMap<String, Vec<HeirCategory>>,
) -> Result<ShareExpr, String> {
    let src = src.trim();
    Ok(match src {
        "residue" => ShareExpr::Residue,
        "sixth_or_residue" => ShareExpr::SixthOrResidue,
        "third_of_remainder" => ShareExpr::ThirdOfRemainder,
        "grandfather_with_siblings" => ShareExpr::GrandfatherWithSiblings,
        _ => {
            let (frac, pool) = match src.split_once(" among ") {
                Some((f, g)) => (f, Some(resolve_ref(g.trim(), groups)?)),
                None => (src, None),
            };
            let share: Fraction = frac.trim().parse().map_err(|e| format!("{e}"))?;
            if share.is_negative() || share.is_zero() || share > Fraction::one() {
                return Err(format!("share {share} outside (0, 1]"));
            }
            match pool {
                Some(pool) => ShareExpr::Pooled { share, pool },
                None => ShareExpr::Fixed(share),
            }
        }
    })
}

fn category_of(label: &str) -> Result<HeirCategory, String> {
    taxonomy()
        .get(label.trim())
        .ok_or_else(|| format!("unknown category {:?}", label.trim()))
}

impl RuleSet {
    pub fn parse(text: &str) -> Result<Self, RuleError> {
        let mut version = None;
        let mut groups: BTreeMap<String, Vec<HeirCategory>> = BTreeMap::new();
        let mut block_rules = Vec::new();
        let mut share_rules = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| RuleError {
                line: line_no,
                message,
            };
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (body, note) = match line.split_once('|') {
                Some((b, n)) => (b.trim(), n.trim().to_string()),
                None => (line, String::new()),
            };
            let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
            match keyword {
                "version" => {
                    version = Some(
                        rest.trim()
                            .parse::<u32>()
                            .map_err(|_| err("bad version".into()))?,
                    )
                }
                "group" => {
                    let (name, members) = rest
                        .split_once('=')
                        .ok_or_else(|| err("expected '='".into()))?;
                    let name = name
                        .trim()
                        .strip_prefix('@')
                        .ok_or_else(|| err("group names start with @".into()))?;
                    let mut cats = Vec::new();
                    for m in members.split(',') {
                        cats.extend(resolve_ref(m.trim(), &groups).map_err(err)?);
                    }
                    groups.insert(name.to_string(), cats);
                }
                "block" => {
                    let (label, cond) = rest
                        .split_once(" if ")
                        .ok_or_else(|| err("expected 'if'".into()))?;
                    let blocked = category_of(label).map_err(err)?;
                    let condition = parse_condition(cond, &groups).map_err(err)?;
                    block_rules.push(BlockRule {
                        blocked,
                        condition,
                        note,
                        line: line_no,
                    });
                }
                "share" => {
                    let (label, rhs) = rest
                        .split_once('=')
                        .ok_or_else(|| err("expected '='".into()))?;
                    let category = category_of(label).map_err(err)?;
                    let (expr, cond) = match rhs.split_once(" if ") {
                        Some((e, c)) => (e, Some(c)),
                        None => (rhs, None),
                    };
                    let share = parse_expr(expr, &groups).map_err(err)?;
                    let condition = match cond {
                        Some(c) => parse_condition(c, &groups).map_err(err)?,
                        None => Condition::Always,
                    };
                    share_rules.push(ShareRule {
                        category,
                        condition,
                        share,
                        note,
                        line: line_no,
                    });
                }
                other => return Err(err(format!("unknown statement {other:?}"))),
            }
        }
        let version = version.ok_or(RuleError {
            line: 0,
            message: "missing version statement".into(),
        })?;
        let rules = RuleSet {
            version,
            block_rules,
            share_rules,
        };
        rules.check_acyclic()?;
        Ok(rules)
    }

    /// The built-in majority-doctrine table.
    pub fn standard() -> &'static RuleSet {
        static CELL: OnceBox<RuleSet> = OnceBox::new();
        CELL.get_or_init(|| {
            Box::new(RuleSet::parse(STANDARD_RULES).expect("built-in rule table is well formed"))
        })
    }

    fn dependencies(&self) -> BTreeMap<HeirCategory, BTreeSet<HeirCategory>> {
        let mut deps: BTreeMap<HeirCategory, BTreeSet<HeirCategory>> = BTreeMap::new();
        for r in &self.block_rules {
            r.condition
                .effective_refs(deps.entry(r.blocked).or_default());
        }
        deps
    }

    fn check_acyclic(&self) -> Result<(), RuleError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Active,
            Done,
        }
        fn visit(
            c: HeirCategory,
            deps: &BTreeMap<HeirCategory, BTreeSet<HeirCategory>>,
            marks: &mut BTreeMap<HeirCategory, Mark>,
        ) -> Result<(), HeirCategory> {
            match marks.get(&c) {
                Some(Mark::Done) => return Ok(()),
                Some(Mark::Active) => return Err(c),
                None => {}
            }
            marks.insert(c, Mark::Active);
            for &d in deps.get(&c).into_iter().flatten() {
                visit(d, deps, marks)?;
            }
            marks.insert(c, Mark::Done);
            Ok(())
        }
        let deps = self.dependencies();
        let mut marks = BTreeMap::new();
        for &c in deps.keys() {
            visit(c, &deps, &mut marks).map_err(|at| RuleError {
                line: 0,
                message: format!("blocking rules are cyclic through {at}"),
            })?;
        }
        Ok(())
    }

    /// Blocker/blocked pairs implied by the block rules.
    pub fn blocking_pairs(&self) -> Vec<BlockingRule> {
        let mut pairs = BTreeSet::new();
        for r in &self.block_rules {
            let mut refs = BTreeSet::new();
            r.condition.positive_refs(false, &mut refs);
            for blocker in refs {
                pairs.insert(BlockingRule {
                    blocker,
                    blocked: r.blocked,
                });
            }
        }
        pairs.into_iter().collect()
    }

    /// Taxonomy categories with no unconditional fallback share rule.
    pub fn coverage_gaps(&self) -> Vec<HeirCategory> {
        taxonomy()
            .categories()
            .iter()
            .copied()
            .filter(|&c| {
                !self
                    .share_rules
                    .iter()
                    .any(|r| r.category == c && r.condition == Condition::Always)
            })
            .collect()
    }

    /// Split mentions into effective heirs and blocked relatives, each in
    /// mention order.
    pub fn partition(
        &self,
        mentions: &[RelativeMention],
    ) -> (Vec<RelativeMention>, Vec<RelativeMention>) {
        let mut eval = BlockingEval {
            rules: self,
            mentions,
            status: BTreeMap::new(),
        };
        let (mut heirs, mut blocked) = (Vec::new(), Vec::new());
        for &m in mentions {
            if eval.effective(m.category) {
                heirs.push(m);
            } else {
                blocked.push(m);
            }
        }
        (heirs, blocked)
    }

    /// First share rule of `category` whose condition holds.
    pub fn select_share(
        &self,
        category: HeirCategory,
        facts: &mut dyn Facts,
    ) -> Option<&ShareRule> {
        self.share_rules
            .iter()
            .filter(|r| r.category == category)
            .find(|r| r.condition.eval(facts))
    }
}

struct BlockingEval<'a> {
    rules: &'a RuleSet,
    mentions: &'a [RelativeMention],
    status: BTreeMap<HeirCategory, bool>,
}

impl BlockingEval<'_> {
    fn mentioned(&self, c: HeirCategory) -> u32 {
        self.mentions
            .iter()
            .filter(|m| m.category == c)
            .map(|m| m.count)
            .sum()
    }

    fn effective(&mut self, c: HeirCategory) -> bool {
        if let Some(&s) = self.status.get(&c) {
            return s;
        }
        let present = self.mentioned(c) > 0;
        let rules = self.rules;
        let effective = present
            && !rules
                .block_rules
                .iter()
                .filter(|r| r.blocked == c)
                .any(|r| r.condition.eval(self));
        self.status.insert(c, effective);
        effective
    }
}

impl Facts for BlockingEval<'_> {
    fn count(&mut self, category: HeirCategory, scope: Scope) -> u32 {
        match scope {
            Scope::Mentioned => self.mentioned(category),
            Scope::Effective => {
                if self.effective(category) {
                    self.mentioned(category)
                } else {
                    0
                }
            }
        }
    }
}

/// Counts over a fixed effective-heir set.
pub struct HeirFacts<'a> {
    pub heirs: &'a [RelativeMention],
    pub mentions: &'a [RelativeMention],
}

impl Facts for HeirFacts<'_> {
    fn count(&mut self, category: HeirCategory, scope: Scope) -> u32 {
        let list = match scope {
            Scope::Effective => self.heirs,
            Scope::Mentioned => self.mentions,
        };
        list.iter()
            .filter(|m| m.category == category)
            .map(|m| m.count)
            .sum()
    }
}
