//! Deterministic verification suites.
//!
//! Every sampled check draws sample `i` from an independent stream of the
//! configured seed, evaluates it at the configured precision and retries at
//! doubled precision when digits run out. Results therefore do not depend
//! on scheduling, and a report is reproducible from its config.

mod cocycle;
mod cohom;
mod quat;
mod symbols;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::metaplectic::Group;
use crate::padic::{escalate, max_precision, modarith::is_prime, Qp, QpExt, DEFAULT_PRECISION, MIN_PRECISION};
use crate::report::{Record, Report, Status};

pub const SUITES: [&str; 10] = [
    "lemma-b",
    "prop-a",
    "cocycle-identity",
    "symbol-backends",
    "lemma-f",
    "torus-splitting",
    "prop-h",
    "lemma-l",
    "hilbert90",
    "bockstein",
];

/// Samples above this count are rejected as a configuration error.
pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub suite: String,
    /// Restrict p-adic suites to one prime.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    /// Restrict extension-field suites to `Q_p(sqrt d)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ext_d: Option<i64>,
    /// Restrict cohomology suites to one prime power.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    /// Restrict the cocycle-identity suite to one group.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Group>,
    pub precision: u32,
    pub seed: u64,
    /// Override of every sampled check's default count.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

impl RunConfig {
    pub fn new(suite: impl Into<String>) -> Self {
        RunConfig {
            suite: suite.into(),
            p: None,
            ext_d: None,
            q: None,
            group: None,
            precision: DEFAULT_PRECISION,
            seed: 1,
            samples: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.suite != "all" && !SUITES.contains(&self.suite.as_str()) {
            return Err(Error::UnknownSuite(self.suite.clone()));
        }
        let bad = |m: String| Err(Error::ConfigOutOfRange(m));
        if let Some(p) = self.p {
            if !is_prime(p as u64) || max_precision(p) < MIN_PRECISION {
                return bad(format!("p = {p} is not a supported prime"));
            }
        }
        if self.ext_d.is_some() && self.p.is_none() {
            return bad("--ext needs --p".into());
        }
        if let (Some(p), Some(d)) = (self.p, self.ext_d) {
            QpExt::new(Qp::new(p, self.precision.max(MIN_PRECISION))?, d)
                .map_err(|e| Error::ConfigOutOfRange(e.to_string()))?;
        }
        if self.precision < MIN_PRECISION {
            return bad(format!("precision {} is below the minimum {MIN_PRECISION}", self.precision));
        }
        for p in self.p.map(|p| vec![p]).unwrap_or_else(|| vec![2, 3, 5, 7]) {
            if self.precision > max_precision(p) {
                return bad(format!("precision {} exceeds the maximum {} for p = {p}", self.precision, max_precision(p)));
            }
        }
        if let Some(q) = self.q {
            if q % 2 == 0 || crate::padic::modarith::prime_power(q).is_none() || q > 1000 {
                return bad(format!("q = {q} is not a supported odd prime power"));
            }
        }
        if matches!(self.samples, Some(n) if n == 0 || n > MAX_SAMPLES) {
            return bad(format!("samples must be in 1..={MAX_SAMPLES}"));
        }
        Ok(())
    }

    pub(crate) fn count(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// The configured prime, or the defaults.
    pub(crate) fn primes(&self, defaults: &[u32]) -> Vec<u32> {
        match self.p {
            Some(p) => vec![p],
            None => defaults.to_vec(),
        }
    }

    pub(crate) fn qs(&self, defaults: &[u64]) -> Vec<u64> {
        match self.q {
            Some(q) => vec![q],
            None => defaults.to_vec(),
        }
    }

    pub(crate) fn base(&self, p: u32) -> Result<Qp> {
        Qp::new(p, self.precision)
    }

    /// Every quadratic extension of Q_p, or only the configured one.
    pub(crate) fn extensions(&self, p: u32) -> Result<Vec<QpExt>> {
        let f = self.base(p)?;
        match self.ext_d {
            Some(d) if self.p == Some(p) => Ok(vec![QpExt::new(f, d)?]),
            _ => f.square_class_reps().into_iter().skip(1).map(|d| QpExt::new(f, d)).collect(),
        }
    }

    /// Seed of the streams used by the check `label`.
    pub(crate) fn seed_for(&self, label: &str) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^ self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
    }
}

/// Result of one sample.
pub(crate) struct Outcome {
    pub ok: bool,
    pub depth: u32,
    pub detail: Value,
}

impl Outcome {
    pub fn new(ok: bool, depth: u32, detail: Value) -> Self {
        Outcome { ok, depth, detail }
    }
}

const MAX_COUNTEREXAMPLES: usize = 5;

/// Runs `check(i, precision)` on `count` samples in parallel (with
/// precision escalation) and folds the outcomes into one record.
pub(crate) fn sampled<F>(name: String, inputs: Value, expected: &str, count: usize, p: u32, start: u32, check: F) -> Record
where
    F: Fn(u64, u32) -> Result<Outcome> + Sync,
{
    let results: Vec<Result<(Outcome, u32)>> =
        (0..count as u64).into_par_iter().map(|i| escalate(p, start, |n| check(i, n))).collect();
    let mut passed = 0;
    let mut fails = Vec::new();
    let mut n_fail = 0;
    let mut errors = Vec::new();
    let mut depth = 0;
    let mut prec = start;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok((o, n)) => {
                depth = depth.max(o.depth);
                prec = prec.max(n);
                if o.ok {
                    passed += 1;
                } else {
                    n_fail += 1;
                    if fails.len() < MAX_COUNTEREXAMPLES {
                        fails.push(json!({ "sample": i, "detail": o.detail }));
                    }
                }
            }
            Err(e) => errors.push(format!("sample {i}: {e}")),
        }
    }
    let mut got = format!("{passed}/{count}");
    if !errors.is_empty() {
        got.push_str(&format!(", {} errors (first: {})", errors.len(), errors[0]));
    }
    let mut rec = Record::new(name, inputs, format!("{count}/{count}: {expected}"), got, n_fail == 0 && errors.is_empty());
    if n_fail == 0 && !errors.is_empty() {
        rec.status = Status::Error;
    }
    rec.counterexamples = fails;
    rec.with_depth(depth).with_precision(prec)
}

/// Wraps a one-shot check, turning an error into an error record.
pub(crate) fn single(name: String, inputs: Value, expected: impl ToString, f: impl FnOnce() -> Result<(bool, String)>) -> Record {
    match f() {
        Ok((ok, got)) => Record::new(name, inputs, expected, got, ok),
        Err(e) => Record::error(name, inputs, expected, e),
    }
}

pub(crate) fn records_for(config: &RunConfig, suite: &str) -> Result<Vec<Record>> {
    match suite {
        "lemma-b" => symbols::lemma_b(config),
        "symbol-backends" => symbols::symbol_backends(config),
        "lemma-f" => symbols::lemma_f(config),
        "prop-a" => cocycle::prop_a(config),
        "cocycle-identity" => cocycle::cocycle_identity(config),
        "torus-splitting" => quat::torus_splitting(config),
        "prop-h" => cohom::prop_h(config),
        "lemma-l" => cohom::lemma_l(config),
        "hilbert90" => cohom::hilbert90(config),
        "bockstein" => cohom::bockstein(config),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

/// Suites meaningful for the configured prime (`lemma-f` needs p = 2).
pub fn suites_for(config: &RunConfig) -> Vec<&'static str> {
    SUITES.iter().copied().filter(|s| *s != "lemma-f" || matches!(config.p, None | Some(2))).collect()
}

pub fn run_suite(config: &RunConfig) -> Result<Report> {
    config.validate()?;
    let start = Instant::now();
    let records = if config.suite == "all" {
        let mut all = Vec::new();
        for s in suites_for(config) {
            all.extend(records_for(config, s)?);
        }
        all
    } else {
        records_for(config, &config.suite)?
    };
    Ok(Report::new(config.clone(), records, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(RunConfig::new("nope").validate(), Err(Error::UnknownSuite(_))));
        let mut c = RunConfig::new("lemma-b");
        c.precision = 4;
        assert!(matches!(c.validate(), Err(Error::ConfigOutOfRange(_))));
        let mut c = RunConfig::new("lemma-b");
        c.p = Some(7);
        c.precision = 50;
        assert!(c.validate().is_err());
        let mut c = RunConfig::new("lemma-b");
        c.p = Some(3);
        c.ext_d = Some(4);
        assert!(c.validate().is_err());
        let mut c = RunConfig::new("prop-h");
        c.q = Some(6);
        assert!(c.validate().is_err());
    }

    #[test]
    fn lemma_f_only_at_two() {
        let mut c = RunConfig::new("all");
        c.p = Some(3);
        assert!(!suites_for(&c).contains(&"lemma-f"));
        c.p = Some(2);
        assert!(suites_for(&c).contains(&"lemma-f"));
    }

    #[test]
    fn seeds_differ_by_label() {
        let c = RunConfig::new("lemma-b");
        assert_ne!(c.seed_for("a"), c.seed_for("b"));
    }
}
