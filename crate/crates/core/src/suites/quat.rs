use serde_json::json;

use super::{sampled, single, Outcome, RunConfig};
use crate::error::Result;
use crate::padic::{escalate, QpExt};
use crate::quaternion::{certified_conjugator, embed_m2e, sample_sl1, splitting_over_lx, Quat, QuatAlg};
use crate::report::Record;
use crate::sampling::{self, stream};

fn random_quat<R: rand::Rng>(rng: &mut R, alg: &QuatAlg) -> Quat {
    let f = alg.field();
    alg.elem(sampling::element(rng, &f), sampling::element(rng, &f), sampling::element(rng, &f), sampling::element(rng, &f))
}

fn at(alg: &QuatAlg, e: &QpExt, n: u32) -> Result<(QuatAlg, QpExt)> {
    Ok((alg.with_precision(n)?, e.with_precision(n)?))
}

pub(super) fn torus_splitting(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        let f = cfg.base(p)?;
        let alg = QuatAlg::standard(f)?;
        let e = QpExt::new(f, alg.a)?;
        let label = format!("D_{p}=({},{})", alg.a, alg.b);
        out.push(single(
            format!("quaternion/division/{label}"),
            json!({ "p": p, "a": alg.a, "b": alg.b }),
            "(a, b)_F = -1",
            || {
                let div = alg.is_division()?;
                Ok((div, if div { "-1" } else { "+1" }.to_string()))
            },
        ));

        let n = cfg.count(500);
        let name = format!("quaternion/det-nrd/{label}");
        let seed = cfg.seed_for(&name);
        out.push(sampled(
            name,
            json!({ "p": p, "samples": n, "seed": cfg.seed }),
            "det(embed(q)) = Nrd(q), and Nrd(q) = 0 only for q = 0",
            n,
            p,
            cfg.precision,
            |i, prec| {
                let (alg, e) = at(&alg, &e, prec)?;
                let q = random_quat(&mut stream(seed, i), &alg);
                let nrd = alg.nrd(&q);
                let det = embed_m2e(&alg, &q, &e)?.det();
                let ok = det == e.embed(nrd) && (nrd.is_zero() == q.is_zero());
                Ok(Outcome::new(ok, 0, json!({ "q": q, "nrd": nrd, "det": det })))
            },
        ));

        let name = format!("quaternion/homomorphism/{label}");
        let seed = cfg.seed_for(&name);
        out.push(sampled(
            name,
            json!({ "p": p, "samples": n, "seed": cfg.seed }),
            "embed is additive, multiplicative and unital",
            n,
            p,
            cfg.precision,
            |i, prec| {
                let (alg, e) = at(&alg, &e, prec)?;
                let mut rng = stream(seed, i);
                let (q1, q2) = (random_quat(&mut rng, &alg), random_quat(&mut rng, &alg));
                let (m1, m2) = (embed_m2e(&alg, &q1, &e)?, embed_m2e(&alg, &q2, &e)?);
                let ok = embed_m2e(&alg, &alg.mul(&q1, &q2), &e)? == m1.mul(&m2)
                    && embed_m2e(&alg, &alg.add(&q1, &q2), &e)? == m1.add(&m2)
                    && embed_m2e(&alg, &alg.one(), &e)?.is_identity();
                Ok(Outcome::new(ok, 0, json!({ "q1": q1, "q2": q2 })))
            },
        ));

        let sl1 = cfg.count(50);
        let name = format!("quaternion/sl1/{label}");
        let seed = cfg.seed_for(&name);
        let start = cfg.precision;
        out.push(single(name, json!({ "p": p, "samples": sl1, "seed": cfg.seed }), format!("{sl1}/{sl1}"), || {
            let (good, _) = escalate(p, start, |n| {
                let (alg, e) = at(&alg, &e, n)?;
                let qs = sample_sl1(&mut stream(seed, 0), &alg, sl1)?;
                let one = e.elem(1);
                let mut good = 0;
                for q in &qs {
                    good += usize::from(alg.nrd(q) == alg.field().one() && embed_m2e(&alg, q, &e)?.det() == one);
                }
                Ok(good)
            })?;
            Ok((good == sl1, format!("{good}/{sl1}")))
        }));

        let pairs = cfg.count(100);
        for d in f.square_class_reps().into_iter().skip(1) {
            out.push(single(
                format!("quaternion/conjugator/{label}/d={d}"),
                json!({ "p": p, "d": d, "precision": cfg.precision }),
                "g e1 g^-1 = e2, stable at doubled precision",
                || {
                    let (cert, n) = escalate(p, start, |n| certified_conjugator(&alg.with_precision(n)?, &e.with_precision(n)?, d))?;
                    Ok((cert.stable, format!("verified at {n}, re-verified at {} (stable = {})", cert.reverified_at, cert.stable)))
                },
            ));
            let name = format!("quaternion/split-torus/{label}/d={d}");
            let seed = cfg.seed_for(&name);
            out.push(single(
                name,
                json!({ "p": p, "d": d, "pairs": pairs, "seed": cfg.seed }),
                format!("{pairs}/{pairs} pairs certified"),
                || {
                    let (cert, n) =
                        escalate(p, start, |n| splitting_over_lx(&alg.with_precision(n)?, &e.with_precision(n)?, d, pairs, seed))?;
                    let good = cert.pairs.iter().filter(|c| c.beta == c.mu_product).count();
                    let ok = cert.all_passed && good == pairs;
                    Ok((ok, format!("{good}/{pairs} pairs certified at precision {n}")))
                },
            ));
        }
    }
    Ok(out)
}
