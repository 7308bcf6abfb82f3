use serde_json::{json, Value};

use metasplit::cohomology::{
    assemble_h2_gprime, brute_force_h2, dual_module, frobenius_module, h1_gprime_qz, lemma_l_check, parse_group_spec,
    restrict_h1, CohResult, Coeffs,
};
use metasplit::hilbert::{hilbert_conic_oracle, hilbert_eval, SymbolEval};
use metasplit::metaplectic::{cocycle_gl2_eval, cocycle_sl2_eval, Group, Mat2E};
use metasplit::padic::literal::{parse_base, parse_ext, split_top};
use metasplit::padic::{escalate, LocalField};
use metasplit::quaternion::{certified_conjugator, embed_l, splitting_over_lx, QuatAlg, Route};
use metasplit::suites::{run_suite, RunConfig};
use metasplit::{Error, Qp, QpExt, Result};

use crate::{
    BackendChoice, Cli, CocycleArgs, CoeffChoice, CohomologyCommand, Command, GroupChoice, HilbertArgs, QuaternionAction,
    QuaternionArgs, RouteChoice, VerifyArgs,
};

pub struct Output {
    pub json: Value,
    pub summary: String,
    pub code: u8,
}

impl Output {
    fn ok(json: Value, summary: impl Into<String>) -> Self {
        Output { json, summary: summary.into(), code: 0 }
    }
}

/// A failed command, echoing the module and the inputs it was given.
pub struct CliError {
    pub module: &'static str,
    pub inputs: Value,
    pub error: Error,
}

impl CliError {
    pub fn to_json(&self) -> Value {
        json!({ "error": { "module": self.module, "message": self.error.to_string(), "inputs": self.inputs } })
    }

    /// A failed certificate is a mathematical failure; anything else is a
    /// configuration or precision problem.
    pub fn exit_code(&self) -> u8 {
        match self.error {
            Error::CertificationFailed { .. } => 1,
            _ => 2,
        }
    }
}

type CmdResult = std::result::Result<Output, CliError>;

fn wrap<T>(module: &'static str, inputs: &Value, r: Result<T>) -> std::result::Result<T, CliError> {
    r.map_err(|error| CliError { module, inputs: inputs.clone(), error })
}

pub fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Hilbert(a) => hilbert(cli.precision, a),
        Command::Cocycle(a) => cocycle(cli.precision, a),
        Command::Verify(a) => verify(cli.precision, a),
        Command::Quaternion(a) => quaternion(cli.precision, a),
        Command::Cohomology(c) => cohomology(c),
    }
}

fn symbol_json<K: LocalField>(k: &K, ev: SymbolEval, n: u32) -> Value {
    json!({
        "field": k.desc().to_string(),
        "backend": ev.backend,
        "sign": ev.sign,
        "certification_depth": ev.depth,
        "precision": n,
    })
}

fn hilbert(precision: u32, a: &HilbertArgs) -> CmdResult {
    let inputs = json!({ "p": a.p, "ext": a.ext, "x": a.x, "y": a.y });
    let conic = matches!(a.backend, BackendChoice::Conic);
    let (out, _) = wrap(
        "hilbert-symbol",
        &inputs,
        escalate(a.p, precision, |n| {
            let f = Qp::new(a.p, n)?;
            match a.ext {
                None => {
                    let (x, y) = (parse_base(&f, &a.x)?, parse_base(&f, &a.y)?);
                    let ev = if conic { conic_eval(&f, &x, &y)? } else { hilbert_eval(&f, &x, &y)? };
                    Ok(symbol_json(&f, ev, n))
                }
                Some(d) => {
                    let e = QpExt::new(f, d)?;
                    let (x, y) = (parse_ext(&e, &a.x)?, parse_ext(&e, &a.y)?);
                    let ev = if conic { conic_eval(&e, &x, &y)? } else { hilbert_eval(&e, &x, &y)? };
                    Ok(symbol_json(&e, ev, n))
                }
            }
        }),
    )?;
    let summary = format!("({}, {}) = {:+}", a.x, a.y, out["sign"].as_i64().unwrap_or(0));
    let mut json = json!({ "inputs": inputs });
    merge(&mut json, out);
    Ok(Output::ok(json, summary))
}

fn conic_eval<K: LocalField>(k: &K, x: &K::Elem, y: &K::Elem) -> Result<SymbolEval> {
    let o = hilbert_conic_oracle(k, x, y)?;
    Ok(SymbolEval { sign: o.sign, backend: metasplit::hilbert::Backend::Conic, depth: o.depth })
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        t.extend(e);
    }
}

fn parse_matrix(e: &QpExt, s: &str) -> Result<Mat2E> {
    let rows = split_top(s, ';');
    let entries: Vec<&str> = rows.iter().flat_map(|r| split_top(r, ',')).collect();
    if rows.len() != 2 || entries.len() != 4 {
        return Err(Error::Parse(format!("matrix `{s}` is not of the form `a,b;c,d`")));
    }
    let v = entries.iter().map(|t| parse_ext(e, t)).collect::<Result<Vec<_>>>()?;
    Mat2E::new(v[0], v[1], v[2], v[3])
}

fn cocycle(precision: u32, a: &CocycleArgs) -> CmdResult {
    let inputs = json!({ "p": a.p, "ext": a.ext, "g1": a.g1, "g2": a.g2 });
    let ((group, ev, n), _) = wrap(
        "metaplectic-cocycle",
        &inputs,
        escalate(a.p, precision, |n| {
            let e = QpExt::new(Qp::new(a.p, n)?, a.ext)?;
            let (g1, g2) = (parse_matrix(&e, &a.g1)?, parse_matrix(&e, &a.g2)?);
            let one = e.elem(1);
            let group = match a.group {
                Some(GroupChoice::Sl2) => Group::Sl2,
                Some(GroupChoice::Gl2) => Group::Gl2,
                None if g1.det() == one && g2.det() == one => Group::Sl2,
                None => Group::Gl2,
            };
            let ev = match group {
                Group::Sl2 => cocycle_sl2_eval(&e, &g1, &g2)?,
                Group::Gl2 => cocycle_gl2_eval(&e, &g1, &g2)?,
            };
            Ok((group, ev, n))
        }),
    )?;
    let json = json!({
        "inputs": inputs,
        "field": format!("Q_{}(sqrt {})", a.p, a.ext),
        "group": group,
        "value": ev.sign,
        "certification_depth": ev.depth,
        "precision": n,
    });
    Ok(Output::ok(json, format!("beta(g1, g2) = {}", ev.sign)))
}

fn verify(precision: u32, a: &VerifyArgs) -> CmdResult {
    let mut cfg = RunConfig::new(a.suite.clone());
    cfg.p = a.p;
    cfg.ext_d = a.ext;
    cfg.q = a.q;
    cfg.group = a.group.map(|g| match g {
        GroupChoice::Sl2 => Group::Sl2,
        GroupChoice::Gl2 => Group::Gl2,
    });
    cfg.samples = a.samples;
    cfg.seed = a.seed;
    cfg.precision = precision;
    let inputs = serde_json::to_value(&cfg).expect("config serializes");
    let report = wrap("cli", &inputs, run_suite(&cfg))?;
    Ok(Output {
        json: serde_json::to_value(&report).expect("report serializes"),
        summary: report.summary(),
        code: report.exit_code() as u8,
    })
}

fn algebra(precision: u32, a: &QuaternionArgs) -> Result<QuatAlg> {
    let f = Qp::new(a.p, precision)?;
    match a.constants.as_deref() {
        None => QuatAlg::standard(f),
        Some(&[x, y]) => QuatAlg::division(f, x, y),
        Some(_) => Err(Error::Parse("--constants takes two integers a,b".into())),
    }
}

fn quaternion(precision: u32, a: &QuaternionArgs) -> CmdResult {
    let mut inputs = json!({ "p": a.p, "constants": a.constants });
    match &a.action {
        QuaternionAction::Embed { d, route } => {
            inputs["d"] = json!(d);
            let route = match route {
                RouteChoice::ViaD => Route::ViaD,
                RouteChoice::ViaM2f => Route::ViaM2F,
            };
            let (json, _) = wrap(
                "quaternion-embed",
                &inputs,
                escalate(a.p, precision, |n| {
                    let alg = algebra(n, a)?;
                    let e = QpExt::new(alg.field(), alg.a)?;
                    let desc = embed_l(&alg, *d, route)?;
                    let m = desc.to_m2e(&alg, &e)?;
                    Ok(json!({
                        "algebra": alg,
                        "embedding": desc,
                        "matrix_over_e": m,
                        "e": e.desc().to_string(),
                        "precision": n,
                    }))
                }),
            )?;
            Ok(Output::ok(json, format!("embedded Q_{}(sqrt {d})", a.p)))
        }
        QuaternionAction::Conjugator { d } => {
            inputs["d"] = json!(d);
            let (cert, _) = wrap(
                "quaternion-embed",
                &inputs,
                escalate(a.p, precision, |n| {
                    let alg = algebra(n, a)?;
                    certified_conjugator(&alg, &QpExt::new(alg.field(), alg.a)?, *d)
                }),
            )?;
            let code = if cert.stable { 0 } else { 1 };
            let summary = format!("conjugator verified at {}, stable at {}: {}", cert.precision, cert.reverified_at, cert.stable);
            Ok(Output { json: json!(cert), summary, code })
        }
        QuaternionAction::SplitTorus { d, samples, seed, full } => {
            inputs["d"] = json!(d);
            inputs["samples"] = json!(samples);
            inputs["seed"] = json!(seed);
            let (cert, n) = wrap(
                "quaternion-embed",
                &inputs,
                escalate(a.p, precision, |n| {
                    let alg = algebra(n, a)?;
                    splitting_over_lx(&alg, &QpExt::new(alg.field(), alg.a)?, *d, *samples, *seed)
                }),
            )?;
            let passed = cert.pairs.iter().filter(|c| c.beta == c.mu_product).count();
            let mut json = json!({
                "d": d,
                "conjugator": cert.conjugator,
                "sampled_pairs": cert.pairs.len(),
                "all_passed": cert.all_passed,
                "precision": n,
            });
            if *full {
                json["certificate"] = json!(cert);
            }
            let code = if cert.all_passed { 0 } else { 1 };
            Ok(Output { json, summary: format!("{passed}/{} pairs certified", cert.pairs.len()), code })
        }
    }
}

fn coh_json(c: &CohResult) -> Value {
    json!({ "group": c.to_string(), "invariant_factors": c.factors, "divisible": c.divisible, "order": c.order() })
}

fn cohomology(c: &CohomologyCommand) -> CmdResult {
    match c {
        CohomologyCommand::Gprime { q, coeffs } => {
            let inputs = json!({ "q": q });
            let coeffs = match coeffs {
                CoeffChoice::Z2 => Coeffs::Z2,
                CoeffChoice::Qz => Coeffs::Qz,
            };
            let h2 = wrap("group-cohomology", &inputs, assemble_h2_gprime(*q, coeffs))?;
            let mut json = json!({ "q": q, "coefficients": coeffs, "h2": coh_json(&h2) });
            if coeffs == Coeffs::Qz {
                json["h1"] = coh_json(&wrap("group-cohomology", &inputs, h1_gprime_qz(*q))?);
            }
            Ok(Output::ok(json, format!("H^2(G', {coeffs:?}) = {h2}")))
        }
        CohomologyCommand::LemmaL { q } => {
            let inputs = json!({ "q": q });
            let r = wrap(
                "group-cohomology",
                &inputs,
                frobenius_module(*q).and_then(|m| dual_module(&m)).and_then(|m| restrict_h1(&m, 2)),
            )?;
            let holds = wrap("group-cohomology", &inputs, lemma_l_check(*q))?;
            let json = json!({ "q": q, "restriction": r, "holds": holds });
            let code = if holds { 0 } else { 1 };
            Ok(Output { json, summary: format!("restriction {} -> {}: bijective on 2-torsion = {holds}", r.source, r.target), code })
        }
        CohomologyCommand::Brute { group, generators } => {
            let inputs = json!({ "group": group });
            let g = wrap("group-cohomology", &inputs, parse_group_spec(group))?;
            let h = wrap("group-cohomology", &inputs, brute_force_h2(&g, *generators))?;
            let summary = format!("H^2({}, Z/2) = {}", h.group, h.result);
            Ok(Output::ok(json!(h), summary))
        }
    }
}
