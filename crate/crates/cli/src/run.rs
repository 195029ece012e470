use std::fmt::Write as _;
use std::path::PathBuf;

use dagiso::oracle::{IsomorphismOracle, MAX_BRUTEFORCE_NODES};
use dagiso::{
    close_semigraphoid, decide_with, ClosureConfig, DecideOptions, Decision, DependencyModel,
    FailureDetail, Graph, ModelError, Pdag, Phase2Mode, TraceEvent, Universe, VarId, VarSet,
};
use serde::Serialize;
use thiserror::Error;

use crate::parse::{parse_input, InputError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Emit {
    #[default]
    Json,
    Dot,
    Text,
}

#[derive(Clone, Debug, Default)]
pub struct RunConfig {
    /// `None` reads standard input.
    pub input: Option<PathBuf>,
    pub basis_mode: bool,
    pub phase2_mode: Phase2Mode,
    pub emit: Emit,
    pub trace: bool,
    pub check_oracle: bool,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot close basis: {0}")]
    Closure(ModelError),
    #[error("--check-oracle supports at most {limit} variables, input has {n}")]
    OracleTooLarge { n: usize, limit: usize },
}

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Witness = 0,
    NotIsomorphic = 1,
    InputError = 2,
    OracleDisagrees = 3,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug)]
pub struct Output {
    pub status: Status,
    pub artifact: String,
}

#[derive(Serialize)]
struct Report {
    decision: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness_edges: Option<Vec<[String; 2]>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<FailureJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<EventJson>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleJson>,
}

#[derive(Serialize)]
struct FailureJson {
    phase: u8,
    reason: &'static str,
    detail: Option<DetailJson>,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum DetailJson {
    Triple { left: String, center: String, right: String },
    Statement(String),
}

#[derive(Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
enum EventJson {
    EdgeRemoved { pair: [String; 2], separator: Vec<String> },
    VeeOriented { left: String, center: String, right: String },
    RuleFired { rule: u8, tail: String, head: String },
    ChoicePushed { tail: String, head: String, depth: usize },
    FramePopped { tail: String, head: String, depth: usize },
    PhaseVerdict { phase: u8, passed: bool },
}

#[derive(Serialize)]
struct OracleJson {
    dag_isomorphic: bool,
    agrees: bool,
}

/// Reads the configured input and runs it.
pub fn run(config: &RunConfig) -> Result<Output, RunError> {
    let text = match &config.input {
        Some(path) => std::fs::read_to_string(path)?,
        None => std::io::read_to_string(std::io::stdin())?,
    };
    run_text(config, &text)
}

/// Runs the pipeline on file contents; `config.input` is ignored.
pub fn run_text(config: &RunConfig, text: &str) -> Result<Output, RunError> {
    let input = parse_input(text)?;
    let n = input.universe.len();
    if config.check_oracle && n > MAX_BRUTEFORCE_NODES {
        return Err(RunError::OracleTooLarge {
            n,
            limit: MAX_BRUTEFORCE_NODES,
        });
    }
    let model = if config.basis_mode {
        close_semigraphoid(input.statements, n, ClosureConfig::default()).map_err(RunError::Closure)?
    } else {
        DependencyModel::explicit(n, input.statements).expect("parsed statements fit the universe")
    };
    let decision = decide_with(
        &model,
        DecideOptions {
            mode: config.phase2_mode,
            trace: config.trace,
        },
    );

    let oracle = if config.check_oracle {
        let found = IsomorphismOracle::new(n)
            .and_then(|o| o.find(&model).map(|d| d.is_some()))
            .expect("universe checked against the oracle limit");
        Some(OracleJson {
            dag_isomorphic: found,
            agrees: found == decision.is_witness(),
        })
    } else {
        None
    };

    let status = match (&oracle, decision.is_witness()) {
        (Some(o), _) if !o.agrees => Status::OracleDisagrees,
        (_, true) => Status::Witness,
        (_, false) => Status::NotIsomorphic,
    };
    let u = &input.universe;
    let artifact = match config.emit {
        Emit::Json => json(u, &decision, config.trace, oracle),
        Emit::Dot => dot(u, &decision, config.trace),
        Emit::Text => text_report(u, &decision, config.trace, oracle.as_ref()),
    };
    Ok(Output { status, artifact })
}

fn names(u: &Universe, set: VarSet) -> Vec<String> {
    set.iter().map(|v| u.name(v).to_string()).collect()
}

fn edge_names(u: &Universe, edges: &[(VarId, VarId)]) -> Vec<[String; 2]> {
    edges
        .iter()
        .map(|&(t, h)| [u.name(t).to_string(), u.name(h).to_string()])
        .collect()
}

fn event_json(u: &Universe, e: &TraceEvent) -> EventJson {
    let n = |v: VarId| u.name(v).to_string();
    match *e {
        TraceEvent::EdgeRemoved { link, separator } => EventJson::EdgeRemoved {
            pair: [n(link.lo), n(link.hi)],
            separator: names(u, separator),
        },
        TraceEvent::VeeOriented { left, center, right } => EventJson::VeeOriented {
            left: n(left),
            center: n(center),
            right: n(right),
        },
        TraceEvent::RuleFired { rule, tail, head } => EventJson::RuleFired {
            rule,
            tail: n(tail),
            head: n(head),
        },
        TraceEvent::ChoicePushed { tail, head, depth } => EventJson::ChoicePushed {
            tail: n(tail),
            head: n(head),
            depth,
        },
        TraceEvent::FramePopped { tail, head, depth } => EventJson::FramePopped {
            tail: n(tail),
            head: n(head),
            depth,
        },
        TraceEvent::PhaseVerdict { phase, passed } => EventJson::PhaseVerdict {
            phase: phase.number(),
            passed,
        },
    }
}

fn json(u: &Universe, decision: &Decision, trace: bool, oracle: Option<OracleJson>) -> String {
    let failure = decision.failure().map(|f| FailureJson {
        phase: f.phase.number(),
        reason: f.reason.as_str(),
        detail: match f.detail {
            FailureDetail::None => None,
            FailureDetail::Triple { left, center, right } => Some(DetailJson::Triple {
                left: u.name(left).to_string(),
                center: u.name(center).to_string(),
                right: u.name(right).to_string(),
            }),
            FailureDetail::Statement(s) => Some(DetailJson::Statement(s.display(u).to_string())),
        },
    });
    let report = Report {
        decision: if decision.is_witness() {
            "witness"
        } else {
            "not_dag_isomorphic"
        },
        witness_edges: decision.witness().map(|d| edge_names(u, &d.directed_edges())),
        failure,
        trace: trace.then(|| decision.trace.iter().map(|e| event_json(u, e)).collect()),
        oracle,
    };
    let mut out = serde_json::to_string_pretty(&report).expect("report serializes");
    out.push('\n');
    out
}

fn dot_graph(out: &mut String, name: &str, u: &Universe, g: &Pdag) {
    writeln!(out, "digraph {name} {{").unwrap();
    for v in u.ids() {
        writeln!(out, "  \"{}\";", u.name(v)).unwrap();
    }
    for (t, h) in g.directed_edges() {
        writeln!(out, "  \"{}\" -> \"{}\";", u.name(t), u.name(h)).unwrap();
    }
    for l in g.undirected_edges() {
        writeln!(out, "  \"{}\" -> \"{}\" [dir=none];", u.name(l.lo), u.name(l.hi)).unwrap();
    }
    out.push_str("}\n");
}

/// The witness as a digraph; with `trace`, the phase-1 pattern precedes it
/// as a second graph whose undirected edges have no arrowheads.
fn dot(u: &Universe, decision: &Decision, trace: bool) -> String {
    let mut out = String::new();
    if trace {
        if let Some(p) = &decision.pattern {
            dot_graph(&mut out, "pattern", u, p);
        }
    }
    match (decision.witness(), decision.failure()) {
        (Some(d), _) => dot_graph(&mut out, "witness", u, &Pdag::from(d)),
        (None, Some(f)) => {
            writeln!(out, "digraph failure {{\n  label=\"not dag-isomorphic: {f}\";").unwrap();
            for v in u.ids() {
                writeln!(out, "  \"{}\";", u.name(v)).unwrap();
            }
            out.push_str("}\n");
        }
        (None, None) => unreachable!("a decision is a witness or a failure"),
    }
    out
}

fn text_report(u: &Universe, decision: &Decision, trace: bool, oracle: Option<&OracleJson>) -> String {
    let mut out = String::new();
    if trace {
        for e in &decision.trace {
            let line = match *e {
                TraceEvent::EdgeRemoved { link, separator } => format!(
                    "remove {} - {} given {{{}}}",
                    u.name(link.lo),
                    u.name(link.hi),
                    u.format_set(separator)
                ),
                TraceEvent::VeeOriented { left, center, right } => {
                    format!("vee {} -> {} <- {}", u.name(left), u.name(center), u.name(right))
                }
                TraceEvent::RuleFired { rule, tail, head } => {
                    format!("rule {rule}: {} -> {}", u.name(tail), u.name(head))
                }
                TraceEvent::ChoicePushed { tail, head, depth } => {
                    format!("choose {} -> {} (depth {depth})", u.name(tail), u.name(head))
                }
                TraceEvent::FramePopped { tail, head, depth } => {
                    format!("revoke {} -> {} (depth {depth})", u.name(tail), u.name(head))
                }
                TraceEvent::PhaseVerdict { phase, passed } => format!(
                    "phase {} {}",
                    phase.number(),
                    if passed { "passed" } else { "failed" }
                ),
            };
            writeln!(out, "{line}").unwrap();
        }
    }
    match (decision.witness(), decision.failure()) {
        (Some(d), _) => {
            let edges: Vec<String> = d
                .directed_edges()
                .iter()
                .map(|&(t, h)| format!("{} -> {}", u.name(t), u.name(h)))
                .collect();
            writeln!(out, "witness: {}", edges.join(", ")).unwrap();
        }
        (None, Some(f)) => {
            write!(out, "not dag-isomorphic: {f}").unwrap();
            match f.detail {
                FailureDetail::None => {}
                FailureDetail::Triple { left, center, right } => {
                    write!(out, " at {} - {} - {}", u.name(left), u.name(center), u.name(right)).unwrap()
                }
                FailureDetail::Statement(s) => write!(out, " on {}", s.display(u)).unwrap(),
            }
            out.push('\n');
        }
        (None, None) => unreachable!("a decision is a witness or a failure"),
    }
    if let Some(o) = oracle {
        writeln!(
            out,
            "oracle: {} ({})",
            if o.dag_isomorphic { "dag-isomorphic" } else { "not dag-isomorphic" },
            if o.agrees { "agrees" } else { "DISAGREES" }
        )
        .unwrap();
    }
    out
}
