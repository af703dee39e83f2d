//! `folkman`: invariants, extremal classification, edge arrowing and
//! exhaustive verification from the command line. Every run writes one JSON
//! document to stdout (or `--out`); diagnostics go to stderr.

mod source;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use folkman_core::arrowing::{
    arrows, export_cnf, extremal_arrowing_test, lin_consistency, normalize_targets, ramsey,
    record_folkman_lower_bound, ArrowingError, ArrowingInstance, BranchOutcome, Budget,
    EdgeColoring, Ledger, SearchOptions, DEFAULT_MAX_NODES,
};
use folkman_core::invariants::report;
use folkman_core::structure::{classify_extremal, StructureError};
use folkman_core::verify::{
    scan_stream, verify_builtin, verify_file, Check, Predicate, VerificationReport, VerifyError,
};
use folkman_core::{emit_graph6, Graph};
use serde_json::{json, Map, Value};

use source::GraphSource;

const BUDGET_ENV: &str = "FOLKMAN_BUDGET_NODES";

#[derive(Parser, Debug)]
#[command(
    name = "folkman",
    version,
    about = "Chromatic gaps, extremal joins and edge arrowing"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// Ledger of Ramsey values and Folkman bounds.
    #[arg(long, global = true, default_value = "folkman-ledger.json")]
    ledger: PathBuf,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Search node cap (default: $FOLKMAN_BUDGET_NODES, else 10^9).
    #[arg(long, global = true)]
    budget_nodes: Option<u64>,
    /// Search wall-clock cap in seconds; 0 disables it.
    #[arg(long, global = true, default_value_t = 600)]
    budget_secs: u64,
    /// Worker threads for searches and scans.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// One summary line on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// n, ω, χ, α, f and criticality of a graph.
    Invariants(GraphArgs),
    /// Build a graph and print its graph6 encoding.
    Construct(GraphArgs),
    /// Is the graph K_m+Q, K_m+C5+C5+C5, or not extremal?
    Classify(GraphArgs),
    /// Decide G -> (a_1, ..., a_r).
    Arrows(ArrowsArgs),
    /// Least n with K_n -> targets.
    Ramsey(RamseyArgs),
    /// Exhaustive check over built-in graphs or a graph6 file.
    Verify(VerifyArgs),
    /// Filter a graph6 stream by an invariant predicate.
    Scan(ScanArgs),
    /// Write the good-colouring CNF of an arrowing instance (DIMACS).
    ExportCnf(ExportArgs),
    /// Inspect and extend the ledger.
    #[command(subcommand)]
    Ledger(LedgerCommand),
}

#[derive(Args, Debug)]
struct GraphArgs {
    #[command(flatten)]
    source: GraphSource,
}

#[derive(Args, Debug)]
struct ArrowsArgs {
    #[command(flatten)]
    source: GraphSource,
    /// Clique sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    targets: Vec<usize>,
}

#[derive(Args, Debug)]
struct RamseyArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    targets: Vec<usize>,
    /// Store the computed value and its witness in the ledger.
    #[arg(long)]
    record: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// dirac, gap2 or gap3.
    check: Check,
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    #[arg(long, default_value_t = 7)]
    max_n: usize,
    /// graph6 stream to check instead of the built-in enumeration.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long)]
    file: PathBuf,
    /// e.g. "f >= 2 and n <= 10".
    #[arg(long)]
    predicate: String,
}

#[derive(Args, Debug)]
struct ExportArgs {
    #[command(flatten)]
    source: GraphSource,
    #[arg(long, value_delimiter = ',', required = true)]
    targets: Vec<usize>,
    /// Output DIMACS file.
    #[arg(long)]
    cnf: PathBuf,
}

#[derive(Subcommand, Debug)]
enum LedgerCommand {
    /// Print the ledger (the seeded one if the file does not exist).
    Show,
    /// Write the cited constants to the ledger file.
    Seed {
        /// Replace an existing file.
        #[arg(long)]
        force: bool,
    },
    /// Record the lower bound F_e(targets; R-2) >= R+6.
    Bound {
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<usize>,
    },
    /// Run the two extremal joins against the targets at q = R-2.
    Extremal {
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<usize>,
    },
    /// Re-check every computed Ramsey entry.
    Verify,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Failure(_) => 1,
            CliError::Usage(_) | CliError::Input(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Input(m) => write!(f, "input: {m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

fn arrowing_error(e: ArrowingError) -> CliError {
    match e {
        ArrowingError::ChromaticBoundViolated { .. } | ArrowingError::Internal(_) => {
            CliError::Failure(e.to_string())
        }
        _ => CliError::Input(e.to_string()),
    }
}

fn verify_error(e: VerifyError) -> CliError {
    match e {
        VerifyError::Pool(m) => CliError::Failure(m),
        other => CliError::Input(other.to_string()),
    }
}

/// A finished run: the document and the exit status that goes with it.
struct Outcome {
    doc: Value,
    code: u8,
    summary: String,
}

impl Outcome {
    fn ok(doc: Value, summary: String) -> Self {
        Self {
            doc,
            code: 0,
            summary,
        }
    }
}

fn status(code: u8) -> &'static str {
    match code {
        0 => "ok",
        3 => "budget_exceeded",
        _ => "failed",
    }
}

impl GlobalOpts {
    fn search_options(&self) -> Result<SearchOptions, CliError> {
        let max_nodes = match self.budget_nodes {
            Some(n) => n,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{BUDGET_ENV}={v:?} is not a count")))?,
                Err(_) => DEFAULT_MAX_NODES,
            },
        };
        let max_time = (self.budget_secs > 0).then(|| Duration::from_secs(self.budget_secs));
        Ok(SearchOptions {
            budget: Budget {
                max_nodes,
                max_time,
            },
            jobs: self.jobs.max(1),
        })
    }

    fn load_ledger(&self) -> Result<Ledger, CliError> {
        Ledger::load_or_seed(&self.ledger).map_err(arrowing_error)
    }

    fn save_ledger(&self, ledger: &Ledger) -> Result<(), CliError> {
        ledger.save(&self.ledger).map_err(arrowing_error)
    }
}

fn budget_doc(reason: String, nodes: u64, elapsed_ms: u64) -> Value {
    json!({ "reason": reason, "nodes": nodes, "elapsed_ms": elapsed_ms })
}

fn witness_doc(g: &Graph, r: usize, w: &Option<EdgeColoring>) -> Result<(Value, Value), CliError> {
    match w {
        None => Ok((Value::Null, Value::Null)),
        Some(w) => {
            let classes = w
                .to_class_graph6(g.n(), r)
                .map_err(|e| CliError::Failure(e.to_string()))?;
            Ok((
                serde_json::to_value(w).expect("colourings serialize"),
                json!(classes),
            ))
        }
    }
}

fn cmd_invariants(a: &GraphArgs) -> Result<Outcome, CliError> {
    let l = a.source.load()?;
    let r = report(&l.graph);
    let mut doc = json!({ "graph": l.name, "graph6": emit_graph6(&l.graph) });
    merge(
        &mut doc,
        serde_json::to_value(r).expect("reports serialize"),
    );
    let summary = format!("n={} omega={} chi={} f={}", r.n, r.omega, r.chi, r.f);
    Ok(Outcome::ok(doc, summary))
}

fn cmd_construct(a: &GraphArgs) -> Result<Outcome, CliError> {
    let l = a.source.load()?;
    let g6 = emit_graph6(&l.graph);
    let doc = json!({
        "graph": l.name,
        "graph6": g6,
        "n": l.graph.n(),
        "edges": l.graph.edge_count(),
        "closure_changed": l.closure_changed,
    });
    Ok(Outcome::ok(doc, g6))
}

fn cmd_classify(a: &GraphArgs) -> Result<Outcome, CliError> {
    let l = a.source.load()?;
    let g6 = emit_graph6(&l.graph);
    match classify_extremal(&l.graph) {
        Ok(c) => {
            let doc = json!({
                "graph": l.name,
                "graph6": g6,
                "kind": c.kind,
                "m": c.m,
                "chi": c.chi,
                "family": c.family_expr(),
                "violation": null,
            });
            Ok(Outcome::ok(doc, format!("{:?}", c.kind)))
        }
        Err(StructureError::TheoremViolation { detail, .. }) => {
            let doc = json!({
                "graph": l.name,
                "graph6": g6,
                "kind": null,
                "m": null,
                "chi": null,
                "family": null,
                "violation": detail,
            });
            Ok(Outcome {
                doc,
                code: 1,
                summary: format!("extremal pattern violated: {detail}"),
            })
        }
        Err(e) => Err(CliError::Input(e.to_string())),
    }
}

fn cmd_arrows(a: &ArrowsArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let l = a.source.load()?;
    let opts = g.search_options()?;
    let inst = ArrowingInstance::new(l.graph.clone(), a.targets.clone()).map_err(arrowing_error)?;
    let mut doc = json!({
        "graph": l.name,
        "graph6": emit_graph6(&l.graph),
        "targets": a.targets,
    });
    let v = match arrows(&inst, &opts) {
        Ok(v) => v,
        Err(ArrowingError::BudgetExceeded {
            reason,
            nodes,
            elapsed_ms,
        }) => {
            let summary = format!("budget exceeded ({reason}) after {nodes} nodes");
            merge(
                &mut doc,
                json!({ "arrows": null, "budget": budget_doc(reason, nodes, elapsed_ms) }),
            );
            return Ok(Outcome {
                doc,
                code: 3,
                summary,
            });
        }
        Err(e) => return Err(arrowing_error(e)),
    };
    let (witness, classes) = witness_doc(&l.graph, a.targets.len(), &v.witness)?;
    let mut code = 0;
    let mut lin = Value::Null;
    if v.arrows {
        let ledger = g.load_ledger()?;
        if let Some(r) = ledger.ramsey_value(&a.targets) {
            let chi = folkman_core::invariants::chromatic_number(&l.graph);
            let holds = match lin_consistency(&l.graph, &a.targets, &ledger) {
                Ok(h) => h,
                Err(ArrowingError::ChromaticBoundViolated { .. }) => false,
                Err(e) => return Err(arrowing_error(e)),
            };
            if !holds {
                code = 1;
            }
            lin = json!({ "ramsey": r, "chi": chi, "holds": holds });
        }
    }
    merge(
        &mut doc,
        json!({
            "arrows": v.arrows,
            "witness": witness,
            "witness_graph6": classes,
            "stats": v.stats,
            "chromatic_check": lin,
        }),
    );
    let summary = format!("arrows={} nodes={}", v.arrows, v.stats.nodes);
    Ok(Outcome { doc, code, summary })
}

fn cmd_ramsey(a: &RamseyArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let opts = g.search_options()?;
    let r = match ramsey(&a.targets, &opts) {
        Ok(r) => r,
        Err(ArrowingError::BudgetExceeded {
            reason,
            nodes,
            elapsed_ms,
        }) => {
            let summary = format!("budget exceeded ({reason}) after {nodes} nodes");
            let doc = json!({
                "targets": a.targets,
                "value": null,
                "budget": budget_doc(reason, nodes, elapsed_ms),
            });
            return Ok(Outcome {
                doc,
                code: 3,
                summary,
            });
        }
        Err(e) => return Err(arrowing_error(e)),
    };
    let entry = r.ledger_entry().map_err(arrowing_error)?;
    if a.record {
        let mut ledger = g.load_ledger()?;
        ledger
            .record_ramsey(entry.clone())
            .map_err(|e| CliError::Failure(e.to_string()))?;
        g.save_ledger(&ledger)?;
    }
    let doc = json!({
        "targets": r.targets,
        "value": r.value,
        "witness_graph6": entry.witness_graph6,
        "stats": r.stats,
        "recorded": a.record,
    });
    Ok(Outcome::ok(doc, format!("R{:?} = {}", r.targets, r.value)))
}

fn report_outcome(r: VerificationReport) -> Outcome {
    let code = if r.violation_count > 0 {
        1
    } else if !r.parse_errors.is_empty() {
        2
    } else {
        0
    };
    let summary = format!(
        "{}: {} graphs, {} violations, {} equality cases, {} matches",
        r.theorem, r.graph_count, r.violation_count, r.equality_count, r.match_count
    );
    Outcome {
        doc: serde_json::to_value(r).expect("reports serialize"),
        code,
        summary,
    }
}

fn cmd_verify(a: &VerifyArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let r = match &a.file {
        Some(path) => verify_file(a.check, path, g.jobs),
        None => verify_builtin(a.check, a.min_n, a.max_n, g.jobs),
    }
    .map_err(verify_error)?;
    Ok(report_outcome(r))
}

fn cmd_scan(a: &ScanArgs, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let p: Predicate = a
        .predicate
        .parse()
        .map_err(|e: VerifyError| CliError::Usage(e.to_string()))?;
    let r = scan_stream(&a.file, &p, g.jobs).map_err(verify_error)?;
    Ok(report_outcome(r))
}

fn cmd_export(a: &ExportArgs) -> Result<Outcome, CliError> {
    let l = a.source.load()?;
    let inst = ArrowingInstance::new(l.graph.clone(), a.targets.clone()).map_err(arrowing_error)?;
    let s = export_cnf(&inst, &a.cnf).map_err(arrowing_error)?;
    let mut doc = json!({
        "graph": l.name,
        "graph6": emit_graph6(&l.graph),
        "targets": a.targets,
        "path": a.cnf.display().to_string(),
    });
    merge(
        &mut doc,
        serde_json::to_value(s).expect("summaries serialize"),
    );
    let summary = format!("p cnf {} {}", s.variables, s.clauses);
    Ok(Outcome::ok(doc, summary))
}

fn cmd_ledger(c: &LedgerCommand, g: &GlobalOpts) -> Result<Outcome, CliError> {
    let path = g.ledger.display().to_string();
    match c {
        LedgerCommand::Show => {
            let exists = g.ledger.exists();
            let ledger = g.load_ledger()?;
            let doc = json!({ "action": "show", "path": path, "exists": exists, "ledger": ledger });
            Ok(Outcome::ok(
                doc,
                format!(
                    "{} Ramsey, {} Folkman entries",
                    ledger.ramsey.len(),
                    ledger.folkman.len()
                ),
            ))
        }
        LedgerCommand::Seed { force } => {
            if g.ledger.exists() && !force {
                return Err(CliError::Usage(format!(
                    "{path} exists; pass --force to replace it"
                )));
            }
            let ledger = Ledger::seeded();
            g.save_ledger(&ledger)?;
            let doc = json!({ "action": "seed", "path": path, "ledger": ledger });
            Ok(Outcome::ok(doc, format!("seeded {path}")))
        }
        LedgerCommand::Bound { targets } => {
            let mut ledger = g.load_ledger()?;
            let entry = record_folkman_lower_bound(&mut ledger, targets).map_err(arrowing_error)?;
            g.save_ledger(&ledger)?;
            let (lower, upper) = ledger.folkman_bounds(targets, entry.q);
            let doc = json!({
                "action": "bound",
                "path": path,
                "entry": entry,
                "best_lower": lower,
                "best_upper": upper,
            });
            let summary = format!(
                "F_e{:?};{} >= {}",
                normalize_targets(targets),
                entry.q,
                entry.lower.unwrap_or(0)
            );
            Ok(Outcome::ok(doc, summary))
        }
        LedgerCommand::Extremal { targets } => {
            let ledger = g.load_ledger()?;
            let r = ledger.ramsey_value(targets).ok_or_else(|| {
                CliError::Input(format!("no Ramsey value for {targets:?} in {path}"))
            })?;
            let rep =
                extremal_arrowing_test(targets, r, &g.search_options()?).map_err(arrowing_error)?;
            let undecided = rep.folkman_value.is_none()
                && [&rep.q_branch, &rep.triple_c5_branch]
                    .iter()
                    .any(|b| matches!(b.outcome, BranchOutcome::BudgetExceeded { .. }));
            let summary = rep.note.clone();
            let mut doc = json!({ "action": "extremal", "path": path });
            merge(
                &mut doc,
                serde_json::to_value(rep).expect("reports serialize"),
            );
            Ok(Outcome {
                doc,
                code: if undecided { 3 } else { 0 },
                summary,
            })
        }
        LedgerCommand::Verify => {
            let ledger = g.load_ledger()?;
            let opts = g.search_options()?;
            let (checked, error) = match ledger.verify_computed(&opts) {
                Ok(n) => (Some(n), None),
                Err(ArrowingError::BudgetExceeded { reason, nodes, .. }) => {
                    let doc = json!({ "action": "verify", "path": path, "checked": null, "error": reason });
                    return Ok(Outcome {
                        doc,
                        code: 3,
                        summary: format!("budget exceeded after {nodes} nodes"),
                    });
                }
                Err(e) => (None, Some(e.to_string())),
            };
            let code = if error.is_some() { 1 } else { 0 };
            let summary = match (&checked, &error) {
                (Some(n), _) => format!("{n} computed entries re-checked"),
                (_, Some(e)) => e.clone(),
                _ => unreachable!(),
            };
            let doc =
                json!({ "action": "verify", "path": path, "checked": checked, "error": error });
            Ok(Outcome { doc, code, summary })
        }
    }
}

/// Copies the fields of `extra` (an object) into `doc`.
fn merge(doc: &mut Value, extra: Value) {
    if let (Value::Object(d), Value::Object(e)) = (doc, extra) {
        d.extend(e);
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Invariants(_) => "invariants",
        Command::Construct(_) => "construct",
        Command::Classify(_) => "classify",
        Command::Arrows(_) => "arrows",
        Command::Ramsey(_) => "ramsey",
        Command::Verify(_) => "verify",
        Command::Scan(_) => "scan",
        Command::ExportCnf(_) => "export-cnf",
        Command::Ledger(_) => "ledger",
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Invariants(a) => cmd_invariants(a),
        Command::Construct(a) => cmd_construct(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Arrows(a) => cmd_arrows(a, g),
        Command::Ramsey(a) => cmd_ramsey(a, g),
        Command::Verify(a) => cmd_verify(a, g),
        Command::Scan(a) => cmd_scan(a, g),
        Command::ExportCnf(a) => cmd_export(a),
        Command::Ledger(c) => cmd_ledger(c, g),
    }
}

fn emit(doc: &Value, out: Option<&PathBuf>) -> io::Result<()> {
    let text = serde_json::to_string_pretty(doc).expect("documents serialize") + "\n";
    match out {
        Some(path) => fs::write(path, text),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let name = command_name(&cli.command);
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("folkman {name}: {e}");
            return ExitCode::from(e.code());
        }
    };
    let mut doc = Map::new();
    doc.insert("command".into(), json!(name));
    doc.insert("status".into(), json!(status(outcome.code)));
    if let Value::Object(rest) = outcome.doc {
        doc.extend(rest);
    }
    if let Err(e) = emit(&Value::Object(doc), cli.global.out.as_ref()) {
        eprintln!("folkman {name}: writing output: {e}");
        return ExitCode::from(2);
    }
    if cli.global.verbose || outcome.code != 0 {
        eprintln!(
            "folkman {name}: {} ({} ms)",
            outcome.summary,
            started.elapsed().as_millis()
        );
    }
    ExitCode::from(outcome.code)
}
