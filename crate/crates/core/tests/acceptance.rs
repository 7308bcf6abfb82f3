//! Acceptance criteria 1-9, run against the default configuration
//! (precision 24, seed 1). Prints one line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use metasplit::report::{Record, Report};
use metasplit::suites::{run_suite, RunConfig};

struct Criterion {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    elapsed: Duration,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion { id, title, failures: Vec::new(), elapsed: Duration::ZERO }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    /// Every record whose name starts with `prefix`: at least `min_records`
    /// of them, all passing, each sampled check covering `samples` samples.
    fn require(&mut self, report: &Report, prefix: &str, min_records: usize, samples: Option<usize>) {
        let recs: Vec<&Record> = report.records.iter().filter(|r| r.name.starts_with(prefix)).collect();
        self.check(prefix, recs, min_records, samples);
    }

    fn require_exact(&mut self, report: &Report, name: &str, samples: Option<usize>) {
        let recs: Vec<&Record> = report.record(name).into_iter().collect();
        self.check(name, recs, 1, samples);
    }

    fn check(&mut self, prefix: &str, recs: Vec<&Record>, min_records: usize, samples: Option<usize>) {
        if recs.len() < min_records {
            self.fail(format!("{prefix}: {} records, expected at least {min_records}", recs.len()));
        }
        for r in recs {
            if !r.passed() {
                self.fail(format!("{}: expected {}, got {}", r.name, r.expected, r.got));
            } else if let Some(n) = samples {
                let want = format!("{n}/{n}");
                if !r.got.starts_with(&want) {
                    self.fail(format!("{}: got {}, expected {want}", r.name, r.got));
                }
            }
        }
    }

    fn within(&mut self, bound: Duration) {
        if self.elapsed > bound {
            self.fail(format!("runtime {:.1?} exceeds {:?}", self.elapsed, bound));
        }
    }

    fn print(&self) -> bool {
        let ok = self.failures.is_empty();
        println!(
            "criterion {}: {} ({}, {:.2?})",
            self.id,
            if ok { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed
        );
        for f in &self.failures {
            println!("    {f}");
        }
        ok
    }
}

fn run(suite: &str) -> (Report, Duration) {
    let start = Instant::now();
    let report = run_suite(&RunConfig::new(suite)).unwrap_or_else(|e| panic!("suite {suite}: {e}"));
    (report, start.elapsed())
}

fn main() -> ExitCode {
    let mut results = Vec::new();

    let (lemma_b, t) = run("lemma-b");
    let mut c = Criterion::new(1, "(a, b)_E = +1 for a, b in F^x, 13 extensions x 500 pairs");
    c.elapsed = t;
    c.require(&lemma_b, "lemma-b/Q_2", 7, Some(500));
    c.require(&lemma_b, "lemma-b/Q_3", 3, Some(500));
    c.require(&lemma_b, "lemma-b/Q_5", 3, Some(500));
    c.within(Duration::from_secs(30));
    results.push(c);

    let mut c = Criterion::new(2, "projection formula, 500 pairs per extension");
    c.elapsed = t;
    c.require(&lemma_b, "projection/", 13, Some(500));
    results.push(c);

    let (backends, t) = run("symbol-backends");
    let mut c = Criterion::new(3, "tame and Q_2 formulas agree with the conic oracle; Steinberg relation");
    c.elapsed = t;
    for p in [3, 5, 7] {
        c.require_exact(&backends, &format!("tame-vs-conic/Q_{p}"), Some(200));
    }
    c.require_exact(&backends, "q2-vs-conic/Q_2", None);
    c.require(&backends, "steinberg/", 4 + 13, Some(500));
    results.push(c);

    let (prop_a, t) = run("prop-a");
    let mut c = Criterion::new(4, "beta = +1 on GL2(F) and the trivial section is multiplicative");
    c.elapsed = t;
    c.require(&prop_a, "prop-a/", 13, Some(1000));
    results.push(c);

    let (cocycle, t) = run("cocycle-identity");
    let mut c = Criterion::new(5, "cocycle identity, SL2 restriction, split torus");
    c.elapsed = t;
    c.require(&cocycle, "cocycle-identity/sl2/", 13, Some(500));
    c.require(&cocycle, "cocycle-identity/gl2/", 13, Some(500));
    c.require(&cocycle, "restriction/", 13, Some(200));
    c.require(&cocycle, "split-torus/", 13, Some(200));
    results.push(c);

    let mut c = Criterion::new(6, "torus law, 300 pairs per field");
    c.elapsed = t;
    c.require(&cocycle, "torus-law/", 13, Some(300));
    results.push(c);

    let (lemma_f, t) = run("lemma-f");
    let mut c = Criterion::new(7, "square classes, norm groups and witnesses over Q_2");
    c.elapsed = t;
    c.require(&lemma_f, "lemma-f/square-classes", 1, None);
    c.require(&lemma_f, "lemma-f/norm-groups", 1, None);
    c.require(&lemma_f, "lemma-f/witnesses", 1, None);
    c.require(&lemma_f, "lemma-f/norm-realization", 1, Some(50));
    if let Some(r) = lemma_f.record("lemma-f/witnesses") {
        if r.got != "36/36" {
            c.fail(format!("witnesses: {}", r.got));
        }
    }
    results.push(c);

    let (quat, t) = run("torus-splitting");
    let mut c = Criterion::new(8, "quaternion embeddings, conjugators and L^x certificates");
    c.elapsed = t;
    c.require(&quat, "quaternion/division/", 3, None);
    c.require(&quat, "quaternion/det-nrd/", 3, Some(500));
    c.require(&quat, "quaternion/homomorphism/", 3, Some(500));
    c.require(&quat, "quaternion/conjugator/", 7 + 3 + 3, None);
    c.require(&quat, "quaternion/split-torus/", 7 + 3 + 3, Some(100));
    c.within(Duration::from_secs(120));
    results.push(c);

    let mut c = Criterion::new(9, "cohomology of G' and its checks");
    let start = Instant::now();
    for (suite, prefixes) in [
        ("prop-h", &["prop-h/h2-z2/", "prop-j/kunneth/", "brute-vs-cyclic/"][..]),
        ("lemma-l", &["lemma-l/"][..]),
        ("hilbert90", &["hilbert90/"][..]),
        ("bockstein", &["bockstein/"][..]),
    ] {
        let (report, _) = run(suite);
        for prefix in prefixes {
            c.require(&report, prefix, 1, None);
        }
        if suite == "prop-h" {
            c.require(&report, "prop-h/h2-z2/", 4, None);
            c.require(&report, "prop-j/kunneth/", 2, None);
            c.require(&report, "brute-vs-cyclic/", 17, None);
        }
    }
    c.elapsed = start.elapsed();
    c.within(Duration::from_secs(60));
    results.push(c);

    let mut all = true;
    for c in &results {
        all &= c.print();
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
