//! Versioned JSON reports produced by the verification suites.

use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::suites::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A mathematical check returned the wrong value.
    Fail,
    /// The check could not be evaluated (precision exhausted, bad input).
    Error,
}

/// One named check. Sampled checks aggregate all their samples into a
/// single record and keep the first few counterexamples.
#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub name: String,
    pub inputs: Value,
    pub expected: String,
    pub got: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification_depth: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<Value>,
}

impl Record {
    pub fn new(name: impl Into<String>, inputs: Value, expected: impl ToString, got: impl ToString, ok: bool) -> Self {
        Record {
            name: name.into(),
            inputs,
            expected: expected.to_string(),
            got: got.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            certification_depth: None,
            precision: None,
            counterexamples: Vec::new(),
        }
    }

    pub fn error(name: impl Into<String>, inputs: Value, expected: impl ToString, err: impl ToString) -> Self {
        Record { status: Status::Error, ..Record::new(name, inputs, expected, err, false) }
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.certification_depth = Some(depth);
        self
    }

    pub fn with_precision(mut self, n: u32) -> Self {
        self.precision = Some(n);
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub config: RunConfig,
    pub records: Vec<Record>,
    pub passed: bool,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn new(config: RunConfig, mut records: Vec<Record>, elapsed: Duration) -> Self {
        records.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = records.iter().all(Record::passed);
        Report {
            schema: SCHEMA_VERSION,
            suite: config.suite.clone(),
            config,
            records,
            passed,
            wall_time_ms: elapsed.as_millis() as u64,
        }
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    /// 0 when every record passes, 1 when a check failed, 2 when checks
    /// could only error out.
    pub fn exit_code(&self) -> i32 {
        if self.records.iter().any(|r| r.status == Status::Fail) {
            1
        } else if self.records.iter().any(|r| r.status == Status::Error) {
            2
        } else {
            0
        }
    }

    /// The report without its timing field, for reproducibility checks.
    pub fn body(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("wall_time_ms");
        }
        v
    }

    /// One line per record, for standard error.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "ok  ",
                Status::Fail => "FAIL",
                Status::Error => "ERR ",
            };
            out.push_str(&format!("{tag} {}: {}\n", r.name, r.got));
        }
        let n_pass = self.records.iter().filter(|r| r.passed()).count();
        out.push_str(&format!(
            "{}: {n_pass}/{} checks passed in {} ms\n",
            self.suite,
            self.records.len(),
            self.wall_time_ms
        ));
        out
    }
}
