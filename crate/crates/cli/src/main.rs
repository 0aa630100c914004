mod io;
mod report;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use mawarith_core::{
    aggregate, evaluate_case, parse_case, parse_decimal, repair, run_pipeline, solve_with,
    MireConfig, MireWeights, PipelineVariant, RuleSet, SolutionRecord, TasilOptions,
};
use serde_json::{json, Value};

use io::{load_dataset, write_file, write_jsonl, Dataset, FieldMap, LineError};

#[derive(Parser)]
#[command(
    name = "mawarith",
    version,
    about = "Solve, repair and score Arabic inheritance cases"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Fields {
    /// Field holding the case id.
    #[arg(long, default_value = "id")]
    id_field: String,
    /// Field holding the question text.
    #[arg(long, default_value = "question")]
    question_field: String,
    /// Field holding a reference record.
    #[arg(long, default_value = "output")]
    output_field: String,
    /// Field holding a model prediction (text or object).
    #[arg(long, default_value = "prediction")]
    prediction_field: String,
}

impl From<&Fields> for FieldMap {
    fn from(f: &Fields) -> Self {
        FieldMap {
            id: f.id_field.clone(),
            question: f.question_field.clone(),
            output: f.output_field.clone(),
            prediction: f.prediction_field.clone(),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve every question in a dataset.
    Solve {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Alternative rule table.
        #[arg(long)]
        rules: Option<PathBuf>,
        /// Let spouses share in the radd surplus.
        #[arg(long)]
        radd_includes_spouse: bool,
        #[command(flatten)]
        fields: Fields,
    },
    /// Extract and repair raw predictions.
    Postprocess {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "basic", value_parser = parse_variant)]
        variant: PipelineVariant,
        #[command(flatten)]
        fields: Fields,
    },
    /// Score predictions against gold records.
    Eval {
        gold: PathBuf,
        pred: PathBuf,
        #[arg(long, default_value = "original", value_parser = parse_variant)]
        variant: PipelineVariant,
        /// Component weights as "h,s,a,f".
        #[arg(long)]
        weights: Option<String>,
        /// Percentage tolerance in points.
        #[arg(long)]
        tolerance: Option<String>,
        /// Per-case results (JSONL).
        #[arg(long)]
        results: Option<PathBuf>,
        /// Aggregate report (JSON).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Rendered tables (text). Printed to stdout when absent.
        #[arg(long)]
        text: Option<PathBuf>,
        #[arg(long)]
        no_timestamp: bool,
        #[command(flatten)]
        fields: Fields,
    },
    /// Render tables from a results file.
    Report {
        results: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        weights: Option<String>,
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Show how a question is read.
    Parse {
        /// Question text; read from stdin when absent.
        question: Option<String>,
    },
}

fn parse_variant(s: &str) -> Result<PipelineVariant, String> {
    PipelineVariant::parse(s)
        .ok_or_else(|| format!("unknown variant {s:?} (original, basic, posttasil)"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    CaseFailures,
}

impl Status {
    fn from_failures(n: usize) -> Self {
        if n == 0 {
            Status::Ok
        } else {
            Status::CaseFailures
        }
    }
}

fn report_line_errors(path: &Path, errors: &[LineError]) {
    for e in errors {
        eprintln!("{}: {e}", path.display());
    }
}

fn require_rows(path: &Path, d: &Dataset) -> anyhow::Result<()> {
    report_line_errors(path, &d.errors);
    if d.rows.is_empty() {
        bail!("{}: no valid records", path.display());
    }
    Ok(())
}

fn mire_config(weights: Option<&str>, tolerance: Option<&str>) -> anyhow::Result<MireConfig> {
    let mut cfg = MireConfig::default();
    if let Some(w) = weights {
        cfg.weights = MireWeights::parse(w).map_err(|e| anyhow::anyhow!("--weights: {e}"))?;
    }
    if let Some(t) = tolerance {
        let t = parse_decimal(t)
            .filter(|t| !t.is_negative())
            .context("--tolerance must be a non-negative decimal")?;
        cfg.tolerance = t;
    }
    Ok(cfg)
}

fn cmd_solve(
    input: &Path,
    output: &Path,
    rules: Option<&Path>,
    include_spouse: bool,
    fields: &FieldMap,
) -> anyhow::Result<Status> {
    let owned;
    let rules = match rules {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            owned = RuleSet::parse(&text).map_err(|e| anyhow::anyhow!("{}: {e}", p.display()))?;
            &owned
        }
        None => RuleSet::standard(),
    };
    let opts = TasilOptions {
        exclude_spouse_from_radd: !include_spouse,
    };
    let data = load_dataset(input, fields)?;
    require_rows(input, &data)?;
    let mut failures = data.errors.len();
    let mut out = Vec::new();
    for row in &data.rows {
        let Some(question) = row.get(&fields.question).and_then(Value::as_str) else {
            eprintln!("{}: missing question", row.id);
            failures += 1;
            continue;
        };
        let solved = parse_case(question)
            .map_err(|e| e.to_string())
            .and_then(|s| solve_with(rules, &s, opts).map_err(|e| e.to_string()));
        match solved {
            Ok(sol) => out.push(json!({
                fields.id.as_str(): row.id,
                fields.question.as_str(): question,
                fields.output.as_str(): sol.to_record().to_value(),
            })),
            Err(e) => {
                eprintln!("{}: {e}", row.id);
                failures += 1;
            }
        }
    }
    write_jsonl(output, &out)?;
    Ok(Status::from_failures(failures))
}

fn cmd_postprocess(
    input: &Path,
    output: &Path,
    variant: PipelineVariant,
    fields: &FieldMap,
) -> anyhow::Result<Status> {
    let data = load_dataset(input, fields)?;
    require_rows(input, &data)?;
    let mut failures = data.errors.len();
    let mut out = Vec::new();
    for row in &data.rows {
        let raw = row.text_or_json(&fields.prediction).unwrap_or_default();
        match run_pipeline(&raw, variant) {
            Ok(r) => {
                for w in &r.log.warnings {
                    eprintln!("{}: {w}", row.id);
                }
                out.push(json!({
                    fields.id.as_str(): row.id,
                    fields.prediction.as_str(): r.record.to_value(),
                    "repairs": r.log.stages,
                    "warnings": r.log.warnings,
                }));
            }
            Err(e) => {
                eprintln!("{}: {e}", row.id);
                failures += 1;
                out.push(json!({ fields.id.as_str(): row.id, fields.prediction.as_str(): Value::Null, "error": e.to_string() }));
            }
        }
    }
    write_jsonl(output, &out)?;
    Ok(Status::from_failures(failures))
}

struct EvalArgs<'a> {
    gold: &'a Path,
    pred: &'a Path,
    variant: PipelineVariant,
    cfg: MireConfig,
    results: Option<&'a Path>,
    report: Option<&'a Path>,
    text: Option<&'a Path>,
    stamp: Option<u64>,
    fields: FieldMap,
}

fn cmd_eval(a: EvalArgs<'_>) -> anyhow::Result<Status> {
    let fields = &a.fields;
    let gold_data = load_dataset(a.gold, fields)?;
    require_rows(a.gold, &gold_data)?;
    let pred_data = load_dataset(a.pred, fields)?;
    require_rows(a.pred, &pred_data)?;

    let mut gold = Vec::new();
    let mut bad_gold = Vec::new();
    for row in &gold_data.rows {
        match row.get(&fields.output).map(SolutionRecord::from_value) {
            Some(Ok(r)) => gold.push((row, r)),
            Some(Err(e)) => bad_gold.push(format!("{}: line {}: {e}", row.id, row.line)),
            None => bad_gold.push(format!(
                "{}: line {}: missing \"{}\"",
                row.id, row.line, fields.output
            )),
        }
    }
    if !bad_gold.is_empty() {
        bail!("unusable gold records:\n  {}", bad_gold.join("\n  "));
    }

    let preds: HashMap<&str, _> = pred_data.rows.iter().map(|r| (r.id.as_str(), r)).collect();
    let missing: Vec<&str> = gold
        .iter()
        .map(|(r, _)| r.id.as_str())
        .filter(|id| !preds.contains_key(id))
        .collect();
    let gold_ids: std::collections::HashSet<&str> =
        gold.iter().map(|(r, _)| r.id.as_str()).collect();
    let unknown: Vec<&str> = pred_data
        .rows
        .iter()
        .map(|r| r.id.as_str())
        .filter(|id| !gold_ids.contains(id))
        .collect();
    if !missing.is_empty() || !unknown.is_empty() {
        bail!(
            "case ids do not pair up\n  gold without prediction: [{}]\n  prediction without gold: [{}]",
            missing.join(", "),
            unknown.join(", ")
        );
    }

    let opts = TasilOptions::default();
    let mut failures = gold_data.errors.len() + pred_data.errors.len();
    let mut results = Vec::new();
    let mut rows = Vec::new();
    for (grow, g) in &gold {
        let prow = preds[grow.id.as_str()];
        let raw = prow.text_or_json(&fields.prediction).unwrap_or_default();
        // Unrecoverable output is scored as an empty answer.
        let (record, status) = match mawarith_core::extract_record(&raw) {
            Ok(r) => (repair(&r, a.variant, opts).record, "ok"),
            Err(e) => {
                eprintln!("{}: {e}", grow.id);
                failures += 1;
                (SolutionRecord::default(), "unparseable")
            }
        };
        let r = evaluate_case(&grow.id, &record, g, &a.cfg);
        rows.push(report::result_to_json(&r, status));
        results.push(r);
    }

    let analysis = aggregate(&results, &a.cfg).map_err(|e| anyhow::anyhow!("{e}"))?;
    if let Some(p) = a.results {
        write_jsonl(p, &rows)?;
    }
    if let Some(p) = a.report {
        let mut doc = json!({
            "variant": a.variant.name(),
            "config": report::config_summary(&a.cfg),
            "unparseable": rows.iter().filter(|r| r["status"] == "unparseable").count(),
            "analysis": analysis,
        });
        if let Some(t) = a.stamp {
            doc["generated_at_unix"] = json!(t);
        }
        write_file(
            p,
            format!("{}\n", serde_json::to_string_pretty(&doc)?).as_bytes(),
        )?;
    }
    let header = [format!("variant {}", a.variant.name())];
    let text = report::render(&analysis, &header, a.stamp);
    match a.text {
        Some(p) => write_file(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(Status::from_failures(failures))
}

fn cmd_report(
    path: &Path,
    output: Option<&Path>,
    as_json: bool,
    cfg: &MireConfig,
    stamp: Option<u64>,
) -> anyhow::Result<Status> {
    let data = load_dataset(path, &FieldMap::default())?;
    let mut problems: Vec<String> = data.errors.iter().map(ToString::to_string).collect();
    let mut results = Vec::new();
    for row in &data.rows {
        match report::result_from_json(&row.id, &row.fields) {
            Ok(r) => results.push(r),
            Err(e) => problems.push(format!("line {}: {e}", row.line)),
        }
    }
    if !problems.is_empty() {
        bail!(
            "{}: schema errors\n  {}",
            path.display(),
            problems.join("\n  ")
        );
    }
    let analysis =
        aggregate(&results, cfg).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    let body = if as_json {
        let mut doc = json!({ "config": report::config_summary(cfg), "analysis": analysis });
        if let Some(t) = stamp {
            doc["generated_at_unix"] = json!(t);
        }
        format!("{}\n", serde_json::to_string_pretty(&doc)?)
    } else {
        report::render(&analysis, &[], stamp)
    };
    match output {
        Some(p) => write_file(p, body.as_bytes())?,
        None => print!("{body}"),
    }
    Ok(Status::Ok)
}

fn cmd_parse(question: Option<String>) -> anyhow::Result<Status> {
    let text = match question {
        Some(q) => q,
        None => std::io::read_to_string(std::io::stdin())?,
    };
    let scenario = parse_case(text.trim()).map_err(|e| anyhow::anyhow!("{e}"))?;
    let (heirs, blocked) = RuleSet::standard().partition(&scenario.mentions);
    let doc = json!({ "scenario": scenario, "heirs": heirs, "blocked": blocked });
    println!("{}", serde_json::to_string_pretty(&doc)?);
    Ok(Status::Ok)
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    let stamp = |off: bool| (!off).then(report::timestamp);
    match cli.command {
        Command::Solve {
            input,
            output,
            rules,
            radd_includes_spouse,
            fields,
        } => cmd_solve(
            &input,
            &output,
            rules.as_deref(),
            radd_includes_spouse,
            &(&fields).into(),
        ),
        Command::Postprocess {
            input,
            output,
            variant,
            fields,
        } => cmd_postprocess(&input, &output, variant, &(&fields).into()),
        Command::Eval {
            gold,
            pred,
            variant,
            weights,
            tolerance,
            results,
            report,
            text,
            no_timestamp,
            fields,
        } => cmd_eval(EvalArgs {
            gold: &gold,
            pred: &pred,
            variant,
            cfg: mire_config(weights.as_deref(), tolerance.as_deref())?,
            results: results.as_deref(),
            report: report.as_deref(),
            text: text.as_deref(),
            stamp: stamp(no_timestamp),
            fields: (&fields).into(),
        }),
        Command::Report {
            results,
            output,
            json,
            weights,
            no_timestamp,
        } => {
            let cfg = mire_config(weights.as_deref(), None)?;
            cmd_report(&results, output.as_deref(), json, &cfg, stamp(no_timestamp))
        }
        Command::Parse { question } => cmd_parse(question),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::CaseFailures) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
