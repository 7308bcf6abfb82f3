use serde_json::json;

use super::{sampled, single, Outcome, RunConfig};
use crate::error::Result;
use crate::hilbert::hilbert_eval;
use crate::metaplectic::{
    cocycle_gl2_eval, cocycle_sl2_eval, meta_mul, splitting_gl2f, CocycleEval, Group, Mat2E, MetaElem,
};
use crate::padic::{LocalField, QpExt};
use crate::report::Record;
use crate::sampling::{self, stream};
use crate::sign::Sign;

fn eval(e: &QpExt, group: Group, g1: &Mat2E, g2: &Mat2E) -> Result<CocycleEval> {
    match group {
        Group::Sl2 => cocycle_sl2_eval(e, g1, g2),
        Group::Gl2 => cocycle_gl2_eval(e, g1, g2),
    }
}

/// Both sides of the 2-cocycle identity, with the deepest certification used.
fn identity_sides(e: &QpExt, group: Group, a: &Mat2E, b: &Mat2E, c: &Mat2E) -> Result<(Sign, Sign, u32)> {
    let evs = [eval(e, group, a, b)?, eval(e, group, &a.mul(b), c)?, eval(e, group, a, &b.mul(c))?, eval(e, group, b, c)?];
    let depth = evs.iter().map(|v| v.depth).max().unwrap_or(0);
    Ok((evs[0].sign * evs[1].sign, evs[2].sign * evs[3].sign, depth))
}

fn fields(cfg: &RunConfig) -> Result<Vec<QpExt>> {
    let mut out = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        out.extend(cfg.extensions(p)?);
    }
    Ok(out)
}

pub(super) fn prop_a(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for e in fields(cfg)? {
        let desc = e.desc().to_string();
        let n = cfg.count(1000);
        let name = format!("prop-a/{desc}");
        let seed = cfg.seed_for(&name);
        out.push(sampled(
            name,
            json!({ "field": desc, "samples": n, "seed": cfg.seed }),
            "beta(g, h) = +1 and s(g) s(h) = s(gh) on GL2(F)",
            n,
            e.prime(),
            cfg.precision,
            |i, prec| {
                let e = e.with_precision(prec)?;
                let mut rng = stream(seed, i);
                let (g, h) = (sampling::gl2_base(&mut rng, &e), sampling::gl2_base(&mut rng, &e));
                let beta = cocycle_gl2_eval(&e, &g, &h)?;
                let prod = meta_mul(&e, &splitting_gl2f(&g)?, &splitting_gl2f(&h)?)?;
                let ok = beta.sign.is_plus() && prod == splitting_gl2f(&g.mul(&h))?;
                Ok(Outcome::new(ok, beta.depth, json!({ "g": g, "h": h, "beta": beta.sign })))
            },
        ));
    }
    Ok(out)
}

pub(super) fn cocycle_identity(cfg: &RunConfig) -> Result<Vec<Record>> {
    let groups = match cfg.group {
        Some(g) => vec![g],
        None => vec![Group::Sl2, Group::Gl2],
    };
    let mut out = Vec::new();
    for e in fields(cfg)? {
        let desc = e.desc().to_string();
        let p = e.prime();
        let inputs = |n: usize| json!({ "field": desc, "samples": n, "seed": cfg.seed });
        for &group in &groups {
            let n = cfg.count(500);
            let tag = match group {
                Group::Sl2 => "sl2",
                Group::Gl2 => "gl2",
            };
            let name = format!("cocycle-identity/{tag}/{desc}");
            let seed = cfg.seed_for(&name);
            out.push(sampled(
                name,
                inputs(n),
                "b(g1, g2) b(g1 g2, g3) = b(g1, g2 g3) b(g2, g3)",
                n,
                p,
                cfg.precision,
                |i, prec| {
                    let e = e.with_precision(prec)?;
                    let mut rng = stream(seed, i);
                    let draw = |rng: &mut _| match group {
                        Group::Sl2 => sampling::sl2(rng, &e),
                        Group::Gl2 => sampling::gl2(rng, &e),
                    };
                    let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
                    let (lhs, rhs, depth) = identity_sides(&e, group, &a, &b, &c)?;
                    let mut ok = lhs == rhs;
                    if group == Group::Gl2 {
                        let m = |g: Mat2E, s: bool| MetaElem::new(g, if s { Sign::Minus } else { Sign::Plus });
                        let (ma, mb, mc) = (m(a, i % 2 == 1), m(b, i % 3 == 1), m(c, false));
                        let left = meta_mul(&e, &meta_mul(&e, &ma, &mb)?, &mc)?;
                        let right = meta_mul(&e, &ma, &meta_mul(&e, &mb, &mc)?)?;
                        ok &= left.zeta == right.zeta;
                    }
                    Ok(Outcome::new(ok, depth, json!({ "g1": a, "g2": b, "g3": c, "lhs": lhs, "rhs": rhs })))
                },
            ));
        }

        let n = cfg.count(200);
        let name = format!("restriction/{desc}");
        let seed = cfg.seed_for(&name);
        out.push(sampled(
            name,
            inputs(n),
            "GL2 cocycle restricts to the SL2 cocycle",
            n,
            p,
            cfg.precision,
            |i, prec| {
                let e = e.with_precision(prec)?;
                let mut rng = stream(seed, i);
                let (a, b) = (sampling::sl2(&mut rng, &e), sampling::sl2(&mut rng, &e));
                let sl = cocycle_sl2_eval(&e, &a, &b)?;
                let gl = cocycle_gl2_eval(&e, &a, &b)?;
                Ok(Outcome::new(sl.sign == gl.sign, sl.depth.max(gl.depth), json!({ "g1": a, "g2": b })))
            },
        ));

        let name = format!("split-torus/{desc}");
        let seed = cfg.seed_for(&name);
        out.push(sampled(
            name,
            inputs(n),
            "beta(diag(x, 1), diag(y, 1)) = +1",
            n,
            p,
            cfg.precision,
            |i, prec| {
                let e = e.with_precision(prec)?;
                let mut rng = stream(seed, i);
                let one = e.elem(1);
                let x = sampling::nonzero_ext(&mut rng, &e);
                let y = sampling::nonzero_ext(&mut rng, &e);
                let ev = cocycle_gl2_eval(&e, &Mat2E::diag(&e, x, one)?, &Mat2E::diag(&e, y, one)?)?;
                Ok(Outcome::new(ev.sign.is_plus(), ev.depth, json!({ "x": x, "y": y })))
            },
        ));

        let n = cfg.count(300);
        let name = format!("torus-law/{desc}");
        let seed = cfg.seed_for(&name);
        out.push(sampled(
            name,
            inputs(n),
            "beta(t(a), t(b)) = (a, b)_E",
            n,
            p,
            cfg.precision,
            |i, prec| {
                let e = e.with_precision(prec)?;
                let mut rng = stream(seed, i);
                let a = sampling::nonzero_ext(&mut rng, &e);
                let b = sampling::nonzero_ext(&mut rng, &e);
                let beta = cocycle_sl2_eval(&e, &Mat2E::torus(&e, a)?, &Mat2E::torus(&e, b)?)?;
                let sym = hilbert_eval(&e, &a, &b)?;
                Ok(Outcome::new(
                    beta.sign == sym.sign,
                    beta.depth.max(sym.depth),
                    json!({ "a": a, "b": b, "beta": beta.sign, "symbol": sym.sign }),
                ))
            },
        ));

        let name = format!("normalization/{desc}");
        let seed = cfg.seed_for(&name);
        let start = cfg.precision;
        out.push(single(name, json!({ "field": desc, "samples": 50 }), "50/50", || {
            let mut good = 0;
            for i in 0..50 {
                let (ok, _) = crate::padic::escalate(p, start, |n| {
                    let e = e.with_precision(n)?;
                    let g = sampling::gl2(&mut stream(seed, i), &e);
                    let one = Mat2E::identity(&e);
                    let gi = g.inv()?;
                    let inv = meta_mul(&e, &MetaElem::new(g, Sign::Plus), &MetaElem::new(gi, Sign::Plus))?;
                    Ok(cocycle_gl2_eval(&e, &one, &g)?.sign.is_plus()
                        && cocycle_gl2_eval(&e, &g, &one)?.sign.is_plus()
                        && inv.g.is_identity()
                        && inv.zeta == cocycle_gl2_eval(&e, &g, &gi)?.sign)
                })?;
                good += usize::from(ok);
            }
            Ok((good == 50, format!("{good}/50")))
        }));
    }
    Ok(out)
}
