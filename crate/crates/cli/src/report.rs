use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use uea_core::uea::{Outcome, ProductEntry};
use uea_core::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
    /// Wall time, printed in text mode only so JSON stays byte-stable.
    #[serde(skip)]
    pub seconds: f64,
    #[serde(skip)]
    pub error_code: i32,
}

/// What a single check concluded.
pub enum Verdict {
    Pass(Option<Value>),
    Fail {
        counterexample: Option<Value>,
        details: Option<Value>,
    },
}

impl Verdict {
    pub fn from_outcome(o: Outcome) -> Self {
        match o {
            Ok(()) => Verdict::Pass(None),
            Err(ce) => Verdict::Fail {
                counterexample: Some(json(&ce)),
                details: None,
            },
        }
    }

    /// Pass iff `ok`, with the same details either way.
    pub fn expect(ok: bool, details: Value) -> Self {
        if ok {
            Verdict::Pass(Some(details))
        } else {
            Verdict::Fail {
                counterexample: None,
                details: Some(details),
            }
        }
    }

    pub fn from_message(m: Option<String>) -> Self {
        match m {
            None => Verdict::Pass(None),
            Some(s) => Verdict::Fail {
                counterexample: Some(Value::String(s)),
                details: None,
            },
        }
    }
}

pub fn json<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

/// Exit code for an error raised while running a check.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Internal(_) | Error::NotAComplex(_) | Error::NilpotencyBudget { .. } => 3,
        _ => 2,
    }
}

pub fn run(name: impl Into<String>, f: impl FnOnce() -> uea_core::Result<Verdict>) -> CheckRecord {
    let start = Instant::now();
    let result = f();
    let seconds = start.elapsed().as_secs_f64();
    let mut rec = CheckRecord {
        name: name.into(),
        status: Status::Pass,
        counterexample: None,
        details: None,
        seconds,
        error_code: 0,
    };
    match result {
        Ok(Verdict::Pass(details)) => rec.details = details,
        Ok(Verdict::Fail {
            counterexample,
            details,
        }) => {
            rec.status = Status::Fail;
            rec.counterexample = counterexample;
            rec.details = details;
        }
        Err(e) => {
            rec.status = Status::Error;
            rec.error_code = error_code(&e);
            rec.details = Some(Value::String(e.to_string()));
        }
    }
    rec
}

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    pub arity_cap: usize,
    pub weight_cap: usize,
    pub n_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_even: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim_odd: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Config,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<Vec<ProductEntry>>>,
    pub exit_status: i32,
}

impl Report {
    pub fn new(command: &str, config: Config, checks: Vec<CheckRecord>) -> Self {
        let exit_status = exit_status(&checks);
        Report {
            command: command.into(),
            config,
            checks,
            products: None,
            exit_status,
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            out.push_str(&format!("  {status:<5} {} ({:.3}s)\n", c.name, c.seconds));
            if let Some(ce) = &c.counterexample {
                out.push_str(&format!("        counterexample: {ce}\n"));
            }
            if c.status != Status::Pass {
                if let Some(d) = &c.details {
                    out.push_str(&format!("        details: {d}\n"));
                }
            }
        }
        if let Some(tables) = &self.products {
            for t in tables {
                for e in t {
                    let inputs: Vec<String> = e.inputs.iter().map(|m| render(m)).collect();
                    let terms: Vec<String> = e
                        .output
                        .iter()
                        .map(|o| format!("{}·{}", o.coeff, render(&o.monomial)))
                        .collect();
                    out.push_str(&format!(
                        "  m_{}({}) = {}\n",
                        e.arity,
                        inputs.join(", "),
                        terms.join(" + ")
                    ));
                }
            }
        }
        out.push_str(&format!("exit status {}\n", self.exit_status));
        out
    }
}

fn render(m: &[String]) -> String {
    if m.is_empty() {
        "1".into()
    } else {
        m.join("")
    }
}

/// 0 iff every check passed; an error outranks a failure.
pub fn exit_status(checks: &[CheckRecord]) -> i32 {
    let err = checks.iter().map(|c| c.error_code).max().unwrap_or(0);
    if err > 0 {
        err
    } else if checks.iter().any(|c| c.status == Status::Fail) {
        1
    } else {
        0
    }
}
