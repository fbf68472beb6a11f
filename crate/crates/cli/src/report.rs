use std::fmt::Write as _;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{Map, Value};

use crate::failure::Failure;

/// Marker for records that are not tied to a result of the underlying mathematics.
pub const PLUMBING: &str = "plumbing";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    fn tag(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Fail => "FAIL",
        }
    }
}

/// Whether the mathematical property a check asks about holds. A property that does not
/// hold is still a successful check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Finding {
    Holds,
    DoesNotHold,
}

impl From<bool> for Finding {
    fn from(b: bool) -> Finding {
        if b {
            Finding::Holds
        } else {
            Finding::DoesNotHold
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finding: Option<Finding>,
    pub computed: Value,
    pub expected: Value,
    pub provenance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Record {
    /// A computed record without a reference value.
    pub fn computed(name: &str, computed: Value) -> Record {
        Record {
            name: name.into(),
            anchor: PLUMBING.into(),
            status: Status::Pass,
            finding: None,
            computed,
            expected: Value::Null,
            provenance: "computed".into(),
            wall_clock_ms: None,
            error: None,
        }
    }

    pub fn with_finding(mut self, holds: bool) -> Record {
        self.finding = Some(holds.into());
        self
    }

    pub fn with_status(mut self, status: Status) -> Record {
        self.status = status;
        self
    }
}

/// Runs `f`, stamping the record with the elapsed wall-clock time when `clock` is set.
pub fn timed(clock: bool, f: impl FnOnce() -> Result<Record, Failure>) -> Result<Record, Failure> {
    let start = Instant::now();
    let mut r = f()?;
    if clock {
        r.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub group: Option<String>,
    pub modulus: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated_at_unix: Option<u64>,
    pub status: Status,
    pub records: Vec<Record>,
}

impl ReportDocument {
    pub fn new(command: &str, group: Option<String>, modulus: Option<u64>, records: Vec<Record>, clock: bool) -> Self {
        let status = records.iter().map(|r| r.status).max().unwrap_or(Status::Pass);
        let generated_at_unix = clock.then(|| SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs()));
        ReportDocument {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            group,
            modulus,
            generated_at_unix,
            status,
            records,
        }
    }

    /// 0 when every record passes, 1 when one fails, 3 when the worst is a capped computation.
    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => {
                if self.records.iter().any(|r| r.error.is_some()) {
                    3
                } else {
                    0
                }
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}: {}", self.tool, self.version, self.command);
        if let Some(g) = &self.group {
            let _ = write!(out, "  group={g}");
        }
        if let Some(p) = self.modulus {
            let _ = write!(out, "  mod={p}");
        }
        out.push('\n');
        for r in &self.records {
            let _ = write!(out, "\n{} {}", r.status.tag(), r.name);
            if r.anchor != PLUMBING {
                let _ = write!(out, " ({})", r.anchor);
            }
            match r.finding {
                Some(Finding::Holds) => out.push_str("  [holds]"),
                Some(Finding::DoesNotHold) => out.push_str("  [does not hold]"),
                None => {}
            }
            if let Some(ms) = r.wall_clock_ms {
                let _ = write!(out, "  {ms} ms");
            }
            out.push('\n');
            if let Some(e) = &r.error {
                let _ = writeln!(out, "  error: {e}");
            }
            write_value(&mut out, &r.computed, 1);
            if r.status == Status::Fail && !r.expected.is_null() {
                out.push_str("  expected:\n");
                write_value(&mut out, &r.expected, 2);
            }
        }
        let _ = writeln!(out, "\noverall: {}", status_word(self.status));
        out
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Inconclusive => "inconclusive",
        Status::Fail => "fail",
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => write_object(out, m, depth),
        Value::Array(a) => match scalar(v) {
            Some(s) => {
                let _ = writeln!(out, "{pad}{s}");
            }
            None => {
                for x in a {
                    match scalar(x) {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}-");
                            write_value(out, x, depth + 1);
                        }
                    }
                }
            }
        },
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

fn write_object(out: &mut String, m: &Map<String, Value>, depth: usize) {
    let pad = "  ".repeat(depth);
    for (k, v) in m {
        match scalar(v) {
            Some(s) => {
                let _ = writeln!(out, "{pad}{k}: {s}");
            }
            None => {
                let _ = writeln!(out, "{pad}{k}:");
                write_value(out, v, depth + 1);
            }
        }
    }
}

/// True when every key of `expected` is present in `computed` with an equal value.
/// Non-object values are compared whole.
pub fn matches(computed: &Value, expected: &Value) -> bool {
    match (computed, expected) {
        (Value::Object(c), Value::Object(e)) => e.iter().all(|(k, v)| c.get(k).is_some_and(|x| x == v)),
        (c, e) => c == e,
    }
}
