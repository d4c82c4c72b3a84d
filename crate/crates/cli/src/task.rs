//! Task files, command dispatch and reports.

use std::panic::{catch_unwind, AssertUnwindSafe};

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use qrank_core::arith::rat_int;
use qrank_core::classify::{
    degree_ratio, exact_root_at_exponent, fixed_field_rank, rationality_exponent, CorrespondenceDegrees,
    FixedFieldQuery,
};
use qrank_core::config::Budget;
use qrank_core::groups::{
    degree_ratio_rank_bound, prolong, qacfa_rank, rank_in_reduct, subgroup_degree_spectrum, validate, Rank,
    RankReport, RankWitness,
};
use qrank_core::hereditary::{
    hereditary_factorization, oracle_factor_counts, replay_certificate, HereditaryCertificate,
    HereditaryFactorization,
};
use qrank_core::numfield::NumberField;
use qrank_core::{par, Error, Result};

use crate::codec::{
    elem_json, field, field_json, kpoly_json, object, parse_error, parse_field, parse_i64, parse_kpoly,
    parse_presentation, parse_rat, parse_u64, parse_usize, presentation_json, rat_json,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Rank,
    ReductRank,
    Hereditary,
    Validate,
    Prolong,
    DegreeBound,
    FixedField,
    Oracle,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Rank,
        Command::ReductRank,
        Command::Hereditary,
        Command::Validate,
        Command::Prolong,
        Command::DegreeBound,
        Command::FixedField,
        Command::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Rank => "rank",
            Command::ReductRank => "reduct-rank",
            Command::Hereditary => "hereditary",
            Command::Validate => "validate",
            Command::Prolong => "prolong",
            Command::DegreeBound => "degree-bound",
            Command::FixedField => "fixed-field",
            Command::Oracle => "oracle",
        }
    }

    pub fn from_name(s: &str) -> Option<Command> {
        Command::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InternalError,
    ValidationFailed,
    BudgetExceeded,
    ParseError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InternalError => 1,
            Status::ValidationFailed => 2,
            Status::BudgetExceeded => 3,
            Status::ParseError => 4,
        }
    }

    fn of_error(e: &Error) -> Status {
        match e {
            Error::Parse(_) => Status::ParseError,
            Error::BudgetExceeded(_) => Status::BudgetExceeded,
            Error::Internal(_) => Status::InternalError,
            _ => Status::ValidationFailed,
        }
    }
}

/// A parsed task: a command and its payload.
#[derive(Clone, Debug, PartialEq)]
pub struct Task {
    pub command: Command,
    pub payload: Value,
}

impl Task {
    /// Reads {"command": ..., "payload": ...}.
    pub fn from_json(v: &Value) -> Result<Task> {
        let m = object(v, "task", &["command", "payload"])?;
        let name = field(m, "command", "task")?
            .as_str()
            .ok_or_else(|| parse_error("command must be a string"))?;
        let command = Command::from_name(name).ok_or_else(|| parse_error(format!("unknown command {name:?}")))?;
        Ok(Task { command, payload: field(m, "payload", "task")?.clone() })
    }
}

/// The outcome of one command.
struct Outcome {
    result: Value,
    certificates: Vec<Value>,
}

impl Outcome {
    fn plain(result: Value) -> Self {
        Outcome { result, certificates: Vec::new() }
    }
}

fn rank_json(r: &Rank) -> Value {
    match r {
        Rank::Finite(k) => json!(k),
        Rank::AtMost(k) => json!({ "at_most": k }),
        Rank::Infinite => json!("infinite"),
        Rank::Undefined => json!("undefined"),
    }
}

fn certificate_json(k: &NumberField, c: &HereditaryCertificate, role: &str) -> Value {
    json!({
        "role": role,
        "factor": kpoly_json(k, &c.factor),
        "acc": c.acc,
        "verdict": serde_json::to_value(&c.verdict).expect("verdict serializes"),
        "analysis": serde_json::to_value(&c.analysis).expect("analysis serializes"),
        "split": c.split.iter().map(|f| kpoly_json(k, f)).collect::<Vec<_>>(),
    })
}

/// Replays every certificate independently of the search that produced it.
fn replay_all(hf: &HereditaryFactorization, budget: &Budget) -> Result<bool> {
    let all: Vec<&HereditaryCertificate> = hf.certificates.iter().chain(&hf.splits).collect();
    let ok = par::map(&all, |c| replay_certificate(&hf.field, c, budget));
    ok.into_iter().try_fold(true, |acc, r| Ok(acc && r?))
}

fn hereditary_outcome(hf: &HereditaryFactorization, budget: &Budget, mut result: Map<String, Value>) -> Result<Outcome> {
    let k = &hf.field;
    result.insert("field".into(), field_json(k));
    result.insert("input".into(), kpoly_json(k, &hf.input));
    result.insert("n".into(), json!(hf.n));
    result.insert("unit".into(), elem_json(k, &hf.unit));
    result.insert("factors".into(), Value::Array(hf.factors.iter().map(|f| kpoly_json(k, f)).collect()));
    result.insert("certificates_replayed".into(), json!(replay_all(hf, budget)?));
    let certificates = hf
        .certificates
        .iter()
        .map(|c| certificate_json(k, c, "terminal"))
        .chain(hf.splits.iter().map(|c| certificate_json(k, c, "split")))
        .collect();
    Ok(Outcome { result: Value::Object(result), certificates })
}

fn degree_bound_json(report: Option<RankReport>) -> Value {
    match report {
        Some(RankReport { rank, witness: RankWitness::DegreeRatio { ratio, .. }, .. }) => {
            json!({ "ratio": rat_json(&ratio), "rank": rank_json(&rank) })
        }
        _ => Value::Null,
    }
}

fn run_rank(payload: &Value, budget: &Budget) -> Result<Outcome> {
    let g = parse_presentation(payload, &[])?;
    let report = qacfa_rank(&g, budget)?;
    let RankWitness::Hereditary(hf) = &report.witness else {
        return Err(Error::Internal("rank report without a hereditary witness".into()));
    };
    let mut result = Map::new();
    result.insert("rank".into(), rank_json(&report.rank));
    result.insert("method".into(), serde_json::to_value(report.method).expect("method serializes"));
    result.insert("degree_ratio_bound".into(), degree_bound_json(degree_ratio_rank_bound(&g)?));
    hereditary_outcome(hf, budget, result)
}

fn run_hereditary(payload: &Value, budget: &Budget) -> Result<Outcome> {
    let m = object(payload, "hereditary payload", &["field", "poly"])?;
    let k = parse_field(field(m, "field", "hereditary payload")?)?;
    let p = parse_kpoly(&k, field(m, "poly", "hereditary payload")?)?;
    let hf = hereditary_factorization(&k, &p, budget)?;
    hereditary_outcome(&hf, budget, Map::new())
}

fn run_reduct_rank(payload: &Value, budget: &Budget) -> Result<Outcome> {
    let g = parse_presentation(payload, &["n"])?;
    let n = parse_usize(field(payload.as_object().unwrap(), "n", "reduct-rank payload")?, "n")?;
    let rank = rank_in_reduct(&g, n, budget)?;
    let spectrum = subgroup_degree_spectrum(&g, n, budget)?;
    Ok(Outcome::plain(json!({ "n": n, "rank": rank, "degree_spectrum": spectrum })))
}

fn run_validate(payload: &Value) -> Result<Outcome> {
    let g = parse_presentation(payload, &[])?;
    let v = validate(&g)?;
    let mut result = serde_json::to_value(v).expect("validation report serializes");
    result["passes"] = json!(v.passes());
    Ok(Outcome::plain(result))
}

fn run_prolong(payload: &Value, budget: &Budget) -> Result<Outcome> {
    let g = parse_presentation(payload, &["n"])?;
    let n = parse_usize(field(payload.as_object().unwrap(), "n", "prolong payload")?, "n")?;
    budget.check_degree(g.size().saturating_mul(n))?;
    let long = prolong(&g, n)?;
    Ok(Outcome::plain(json!({ "n": n, "presentation": presentation_json(&long) })))
}

fn run_degree_bound(payload: &Value) -> Result<Outcome> {
    let m = object(payload, "degree-bound payload", &["ratio", "deg_pi", "deg_rho", "presentation"])?;
    let ratio = if let Some(r) = m.get("ratio") {
        parse_rat(r)?
    } else if let Some(g) = m.get("presentation") {
        parse_presentation(g, &[])?
            .degree_ratio()
            .ok_or_else(|| Error::ValidationFailed("presentation is not integral over Q".into()))?
    } else {
        degree_ratio(CorrespondenceDegrees {
            deg_pi: parse_u64(field(m, "deg_pi", "degree-bound payload")?, "deg_pi")?,
            deg_rho: parse_u64(field(m, "deg_rho", "degree-bound payload")?, "deg_rho")?,
        })?
    };
    if ratio <= rat_int(0) {
        return Err(Error::NonPositive(qrank_core::arith::format_rational(&ratio)));
    }
    let result = if ratio == rat_int(1) {
        json!({ "ratio": rat_json(&ratio), "rationality_exponent": null, "rank_bound": null, "root": null })
    } else {
        let s = rationality_exponent(&ratio)?;
        json!({
            "ratio": rat_json(&ratio),
            "rationality_exponent": s,
            "rank_bound": { "at_most": s },
            "root": rat_json(&exact_root_at_exponent(&ratio)?),
        })
    };
    Ok(Outcome::plain(result))
}

fn run_fixed_field(payload: &Value) -> Result<Outcome> {
    let m = object(payload, "fixed-field payload", &["q0", "m", "characteristic"])?;
    let query = FixedFieldQuery::new(
        parse_rat(field(m, "q0", "fixed-field payload")?)?,
        parse_i64(field(m, "m", "fixed-field payload")?, "m")?,
        parse_u64(field(m, "characteristic", "fixed-field payload")?, "characteristic")?,
    )?;
    let r = fixed_field_rank(&query)?;
    Ok(Outcome::plain(json!({
        "rank": rank_json(&r.rank),
        "method": serde_json::to_value(r.method).expect("method serializes"),
        "q0": rat_json(&query.q0),
        "m": query.m,
        "characteristic": query.characteristic,
    })))
}

fn run_oracle(payload: &Value, budget: &Budget) -> Result<Outcome> {
    let m = object(payload, "oracle payload", &["field", "poly", "ns"])?;
    let k = parse_field(field(m, "field", "oracle payload")?)?;
    let p = parse_kpoly(&k, field(m, "poly", "oracle payload")?)?;
    let ns: Vec<u64> = field(m, "ns", "oracle payload")?
        .as_array()
        .ok_or_else(|| parse_error("ns must be an array"))?
        .iter()
        .map(|n| parse_u64(n, "ns entry"))
        .collect::<Result<_>>()?;
    let counts = oracle_factor_counts(&k, &p, &ns, budget)?;
    let rows: Vec<Value> = ns.iter().zip(&counts).map(|(n, c)| json!({ "n": n, "factors": c })).collect();
    Ok(Outcome::plain(json!({ "counts": rows })))
}

fn dispatch(task: &Task, budget: &Budget) -> Result<Outcome> {
    let p = &task.payload;
    match task.command {
        Command::Rank => run_rank(p, budget),
        Command::ReductRank => run_reduct_rank(p, budget),
        Command::Hereditary => run_hereditary(p, budget),
        Command::Validate => run_validate(p),
        Command::Prolong => run_prolong(p, budget),
        Command::DegreeBound => run_degree_bound(p),
        Command::FixedField => run_fixed_field(p),
        Command::Oracle => run_oracle(p, budget),
    }
}

fn config_json(budget: &Budget) -> Value {
    json!({ "max_degree": budget.max_degree, "max_prime": budget.max_prime })
}

fn report(command: Value, input: Value, budget: &Budget, outcome: Result<Outcome>) -> (Value, Status) {
    let (status, result, certificates, error) = match outcome {
        Ok(o) => (Status::Ok, o.result, o.certificates, Value::Null),
        Err(e) => {
            let status = Status::of_error(&e);
            (status, Value::Null, Vec::new(), json!(e.to_string()))
        }
    };
    let mut m = Map::new();
    m.insert("status".into(), serde_json::to_value(status).expect("status serializes"));
    m.insert("command".into(), command);
    m.insert("engine_version".into(), json!(ENGINE_VERSION));
    m.insert("config".into(), config_json(budget));
    m.insert("input".into(), input);
    m.insert("result".into(), result);
    m.insert("certificates".into(), Value::Array(certificates));
    if !error.is_null() {
        m.insert("error".into(), error);
    }
    (Value::Object(m), status)
}

/// Runs one task, converting every failure (including a panic) into a
/// report with the matching status.
pub fn run_task(task: &Task, budget: &Budget) -> (Value, Status) {
    let outcome = catch_unwind(AssertUnwindSafe(|| dispatch(task, budget)))
        .unwrap_or_else(|_| Err(Error::Internal("engine panicked".into())));
    report(json!(task.command.name()), task.payload.clone(), budget, outcome)
}

/// Report for input that could not be read as a task.
pub fn parse_failure(input: Value, command: Option<Command>, e: Error, budget: &Budget) -> (Value, Status) {
    report(command.map_or(Value::Null, |c| json!(c.name())), input, budget, Err(e))
}

/// Runs a task file: a single task object or an array of tasks. Batches run
/// in parallel; reports keep input order and the exit status is the largest
/// status code among them.
pub fn run_document(doc: &Value, budget: &Budget) -> (Value, Status) {
    let one = |v: &Value| match Task::from_json(v) {
        Ok(t) => run_task(&t, budget),
        Err(e) => parse_failure(v.clone(), None, e, budget),
    };
    match doc {
        Value::Array(items) => {
            let results = par::map(items, one);
            let status = results.iter().map(|(_, s)| *s).max_by_key(|s| s.exit_code()).unwrap_or(Status::Ok);
            (Value::Array(results.into_iter().map(|(r, _)| r).collect()), status)
        }
        _ => one(doc),
    }
}

/// Runs `command` on a payload; a full task object is accepted too when its
/// command matches.
pub fn run_command(command: Command, doc: &Value, budget: &Budget) -> (Value, Status) {
    if let Some(name) = doc.get("command") {
        return match Task::from_json(doc) {
            Ok(t) if t.command == command => run_task(&t, budget),
            Ok(_) => parse_failure(
                doc.clone(),
                Some(command),
                parse_error(format!("task command {name} does not match {:?}", command.name())),
                budget,
            ),
            Err(e) => parse_failure(doc.clone(), Some(command), e, budget),
        };
    }
    run_task(&Task { command, payload: doc.clone() }, budget)
}
