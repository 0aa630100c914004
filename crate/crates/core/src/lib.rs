//! Exact-arithmetic toolkit for Arabic inheritance cases: scenario parsing,
//! a declarative rule engine, repair of model-written answers and MIR-E
//! scoring.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod arabic;
pub mod fraction;
pub mod mire;
pub mod model;
pub mod parser;
pub mod postprocessor;
pub mod rules;
pub mod solver;
pub mod taxonomy;

pub use analysis::{aggregate, evaluate_case, AnalysisReport, CaseResult, EmptyBatch};
pub use fraction::{Fraction, FractionError, Percentage};
pub use mire::{
    categorize_error, mire, parse_decimal, residue_usage, score_adjustment, score_final,
    score_heirs, score_shares, ErrorCategory, MireComponents, MireConfig, MireWeights,
    ResidueUsage, WeightError,
};
pub use model::{
    sum_shares, AdjustmentType, Allocation, DistributionEntry, HeirEntry, PostTasil, RecordError,
    RelativeMention, ShareEntry, ShareError, ShareValue, SolutionRecord, TasilTable,
};
pub use parser::{normalize_label, parse_case, parse_count, CaseScenario, ParseError};
pub use postprocessor::{
    dedupe_blocked, extract_record, normalize_adjustment_label, normalize_typography,
    recalc_post_tasil, repair, run_pipeline, ExtractError, PipelineVariant, RepairLog, Repaired,
};
pub use rules::{BlockingRule, RuleError, RuleSet, ShareExpr, ShareRule};
pub use solver::{
    assign_shares, compute_tasil, detect_adjustment, determine_blocking, grandfather_share,
    solve_case, solve_with, ShareLine, Solution, SolveError, TasilOptions,
};
pub use taxonomy::{category, taxonomy, Gender, HeirCategory, KinshipClass, Taxonomy};
