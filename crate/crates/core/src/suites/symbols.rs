use rand::Rng;
use serde_json::json;

use super::{sampled, single, Outcome, RunConfig};
use crate::error::Result;
use crate::hilbert::{
    base_symbol_table, ext_symbols, hilbert, hilbert_conic_oracle, hilbert_eval, hilbert_q2, hilbert_tame, lemma_f_witness,
    norm_group, SymbolTable,
};
use crate::padic::{ExtSquareClasses, LocalField, Qp, QpExt};
use crate::report::Record;
use crate::sampling::{self, stream};
use crate::sign::Sign;

pub(super) fn lemma_b(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for p in cfg.primes(&[2, 3, 5]) {
        for e in cfg.extensions(p)? {
            let desc = e.desc().to_string();
            let n = cfg.count(500);
            let seed = cfg.seed_for(&format!("lemma-b/{desc}"));
            out.push(sampled(
                format!("lemma-b/{desc}"),
                json!({ "field": desc, "samples": n, "seed": cfg.seed }),
                "(a, b)_E = +1 for a, b in F^x",
                n,
                p,
                cfg.precision,
                |i, prec| {
                    let e = e.with_precision(prec)?;
                    let f = e.base();
                    let mut rng = stream(seed, i);
                    let (a, b) = (sampling::nonzero(&mut rng, &f), sampling::nonzero(&mut rng, &f));
                    let ev = hilbert_eval(&e, &e.embed(a), &e.embed(b))?;
                    Ok(Outcome::new(ev.sign.is_plus(), ev.depth, json!({ "a": a, "b": b, "sign": ev.sign })))
                },
            ));
            let seed = cfg.seed_for(&format!("projection/{desc}"));
            out.push(sampled(
                format!("projection/{desc}"),
                json!({ "field": desc, "samples": n, "seed": cfg.seed }),
                "(a, b)_E = (a, N b)_F",
                n,
                p,
                cfg.precision,
                |i, prec| {
                    let e = e.with_precision(prec)?;
                    let f = e.base();
                    let mut rng = stream(seed, i);
                    let a = sampling::nonzero(&mut rng, &f);
                    let b = sampling::nonzero_ext(&mut rng, &e);
                    let lhs = hilbert_eval(&e, &e.embed(a), &b)?;
                    let rhs = hilbert_eval(&f, &a, &b.norm())?;
                    Ok(Outcome::new(
                        lhs.sign == rhs.sign,
                        lhs.depth.max(rhs.depth),
                        json!({ "a": a, "b": b, "lhs": lhs.sign, "rhs": rhs.sign }),
                    ))
                },
            ));
        }
    }
    Ok(out)
}

/// Symbol table of `K^x/K^x^2` with the index of `-c` for each class `c`.
fn field_table(k: &FieldRef) -> Result<(SymbolTable, Vec<usize>)> {
    match k {
        FieldRef::Base(f) => {
            let t = base_symbol_table(f)?;
            let neg = f.square_classes().iter().map(|r| f.class_index(&-*r)).collect::<Result<Vec<_>>>()?;
            Ok((t, neg))
        }
        FieldRef::Ext(e) if e.prime() == 2 => {
            let s = ext_symbols(e)?;
            Ok((s.table.clone(), s.negation_map()?))
        }
        FieldRef::Ext(e) => {
            let classes = ExtSquareClasses::compute(e)?;
            let reps = classes.reps().to_vec();
            let t = SymbolTable::from_fn(e.desc(), reps.len(), |i, j| hilbert_eval(e, &reps[i], &reps[j]))?;
            let neg = reps.iter().map(|r| classes.index_of(&-*r)).collect::<Result<Vec<_>>>()?;
            Ok((t, neg))
        }
    }
}

enum FieldRef {
    Base(Qp),
    Ext(QpExt),
}

impl FieldRef {
    fn desc(&self) -> String {
        match self {
            FieldRef::Base(f) => f.desc().to_string(),
            FieldRef::Ext(e) => e.desc().to_string(),
        }
    }

    fn prime(&self) -> u32 {
        match self {
            FieldRef::Base(f) => f.prime(),
            FieldRef::Ext(e) => e.prime(),
        }
    }
}

/// Sampled checks run identically over F and E.
fn generic_checks<K>(cfg: &RunConfig, k: K, out: &mut Vec<Record>) -> Result<()>
where
    K: LocalField + crate::hilbert::SymbolField + Sampler + WithPrecision,
{
    let desc = k.desc().to_string();
    let p = k.prime();
    let n = cfg.count(500);
    let seed = cfg.seed_for(&format!("steinberg/{desc}"));
    out.push(sampled(
        format!("steinberg/{desc}"),
        json!({ "field": desc, "samples": n, "seed": cfg.seed }),
        "(x, 1 - x) = +1",
        n,
        p,
        cfg.precision,
        |i, prec| {
            let k = k.at(prec)?;
            let x = k.steinberg_arg(&mut stream(seed, i));
            let ev = hilbert_eval(&k, &x, &(k.elem(1) - x))?;
            Ok(Outcome::new(ev.sign.is_plus(), ev.depth, json!({ "x": x.to_string(), "sign": ev.sign })))
        },
    ));
    let n = cfg.count(200);
    let seed = cfg.seed_for(&format!("bilinear/{desc}"));
    out.push(sampled(
        format!("bilinear/{desc}"),
        json!({ "field": desc, "samples": n, "seed": cfg.seed }),
        "(x, y) = (y, x) and (x, y)(x, z) = (x, yz)",
        n,
        p,
        cfg.precision,
        |i, prec| {
            let k = k.at(prec)?;
            let mut rng = stream(seed, i);
            let (x, y, z) = (k.nonzero(&mut rng), k.nonzero(&mut rng), k.nonzero(&mut rng));
            let xy = hilbert_eval(&k, &x, &y)?;
            let yx = hilbert(&k, &y, &x)?;
            let xz = hilbert(&k, &x, &z)?;
            let xyz = hilbert(&k, &x, &(y * z))?;
            let ok = xy.sign == yx && xy.sign * xz == xyz;
            Ok(Outcome::new(ok, xy.depth, json!({ "x": x.to_string(), "y": y.to_string(), "z": z.to_string() })))
        },
    ));
    Ok(())
}

/// Field-generic sampling and precision change, used by the suites.
pub(crate) trait Sampler: LocalField {
    fn nonzero<R: Rng>(&self, rng: &mut R) -> Self::Elem;
    fn steinberg_arg<R: Rng>(&self, rng: &mut R) -> Self::Elem;
}

pub(crate) trait WithPrecision: Sized {
    fn at(&self, n: u32) -> Result<Self>;
}

impl Sampler for Qp {
    fn nonzero<R: Rng>(&self, rng: &mut R) -> Self::Elem {
        sampling::nonzero(rng, self)
    }
    fn steinberg_arg<R: Rng>(&self, rng: &mut R) -> Self::Elem {
        sampling::steinberg_arg(rng, self)
    }
}

impl Sampler for QpExt {
    fn nonzero<R: Rng>(&self, rng: &mut R) -> Self::Elem {
        sampling::nonzero_ext(rng, self)
    }
    fn steinberg_arg<R: Rng>(&self, rng: &mut R) -> Self::Elem {
        sampling::steinberg_arg_ext(rng, self)
    }
}

impl WithPrecision for Qp {
    fn at(&self, n: u32) -> Result<Self> {
        self.with_precision(n)
    }
}

impl WithPrecision for QpExt {
    fn at(&self, n: u32) -> Result<Self> {
        self.with_precision(n)
    }
}

fn conic_agreement<K>(cfg: &RunConfig, k: K, label: &str, n: usize, out: &mut Vec<Record>)
where
    K: LocalField + crate::hilbert::SymbolField + Sampler + WithPrecision,
{
    let desc = k.desc().to_string();
    let name = format!("{label}/{desc}");
    let seed = cfg.seed_for(&name);
    out.push(sampled(
        name,
        json!({ "field": desc, "samples": n, "seed": cfg.seed }),
        "closed form = conic oracle",
        n,
        k.prime(),
        cfg.precision,
        |i, prec| {
            let k = k.at(prec)?;
            let mut rng = stream(seed, i);
            let (x, y) = (k.nonzero(&mut rng), k.nonzero(&mut rng));
            let fast = hilbert_eval(&k, &x, &y)?;
            let conic = hilbert_conic_oracle(&k, &x, &y)?;
            Ok(Outcome::new(
                fast.sign == conic.sign,
                conic.depth,
                json!({ "x": x.to_string(), "y": y.to_string(), "closed_form": fast.sign, "conic": conic.sign }),
            ))
        },
    ));
}

pub(super) fn symbol_backends(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for p in cfg.primes(&[3, 5, 7]).into_iter().filter(|&p| p != 2) {
        let f = cfg.base(p)?;
        let n = cfg.count(200);
        let name = format!("tame-vs-conic/{}", f.desc());
        let seed = cfg.seed_for(&name);
        out.push(sampled(
            name,
            json!({ "field": f.desc().to_string(), "samples": n, "seed": cfg.seed }),
            "tame formula = conic oracle",
            n,
            p,
            cfg.precision,
            |i, prec| {
                let f = f.with_precision(prec)?;
                let mut rng = stream(seed, i);
                let (x, y) = (sampling::nonzero(&mut rng, &f), sampling::nonzero(&mut rng, &f));
                let tame = hilbert_tame(&f, &x, &y)?;
                let conic = hilbert_conic_oracle(&f, &x, &y)?;
                Ok(Outcome::new(tame == conic.sign, conic.depth, json!({ "x": x, "y": y, "tame": tame, "conic": conic.sign })))
            },
        ));
    }
    if cfg.primes(&[2]).contains(&2) {
        let f = cfg.base(2)?;
        out.push(single(
            "q2-vs-conic/Q_2".into(),
            json!({ "pairs": "all 64 square-class pairs" }),
            "64/64",
            || {
                let reps = f.square_classes();
                let mut agree = 0;
                let mut depth = 0;
                for x in &reps {
                    for y in &reps {
                        let c = hilbert_conic_oracle(&f, x, y)?;
                        depth = depth.max(c.depth);
                        agree += usize::from(hilbert_q2(x, y)? == c.sign);
                    }
                }
                Ok((agree == 64, format!("{agree}/64 (conic depth <= {depth})")))
            },
        ));
    }
    for p in cfg.primes(&[2, 3, 5, 7]) {
        let f = cfg.base(p)?;
        generic_checks(cfg, f, &mut out)?;
        out.push(table_record(&FieldRef::Base(f)));
    }
    for p in cfg.primes(&[2, 3, 5]) {
        for e in cfg.extensions(p)? {
            generic_checks(cfg, e, &mut out)?;
            out.push(table_record(&FieldRef::Ext(e)));
            let label = if p == 2 { "table-vs-conic" } else { "tame-vs-conic" };
            conic_agreement(cfg, e, label, cfg.count(if p == 2 { 30 } else { 50 }), &mut out);
        }
    }
    Ok(out)
}

fn table_record(k: &FieldRef) -> Record {
    let desc = k.desc();
    let expected_size = match k {
        FieldRef::Base(_) if k.prime() == 2 => 8,
        FieldRef::Ext(_) if k.prime() == 2 => 16,
        _ => 4,
    };
    single(
        format!("square-class-table/{desc}"),
        json!({ "field": desc }),
        format!("{expected_size} classes; symmetric, bimultiplicative, nondegenerate, (c, -c) = +1"),
        || {
            let (t, neg) = field_table(k)?;
            let checks = [
                t.size == expected_size,
                t.is_symmetric(),
                t.is_bimultiplicative(),
                t.is_nondegenerate(),
                t.neg_pairing_trivial(&neg),
            ];
            let ok = checks.iter().all(|&c| c);
            Ok((ok, format!("{} classes; properties {:?}", t.size, checks)))
        },
    )
}

pub(super) fn lemma_f(cfg: &RunConfig) -> Result<Vec<Record>> {
    if !cfg.primes(&[2]).contains(&2) {
        return Ok(Vec::new());
    }
    let f = cfg.base(2)?;
    let reps = f.square_classes();
    let mut out = Vec::new();
    out.push(single(
        "lemma-f/square-classes".into(),
        json!({ "field": "Q_2" }),
        "8 classes, pairwise ratios non-squares, F_2-dimension 3 >= 3",
        || {
            let mut distinct = true;
            for (i, x) in reps.iter().enumerate() {
                for y in &reps[i + 1..] {
                    distinct &= !x.div(y)?.is_square()?;
                }
            }
            let dim = reps.len().trailing_zeros();
            Ok((reps.len() == 8 && distinct && dim >= 3, format!("{} classes, distinct = {distinct}, dimension {dim}", reps.len())))
        },
    ));
    let table = base_symbol_table(&f)?;
    out.push(single(
        "lemma-f/norm-groups".into(),
        json!({ "field": "Q_2" }),
        "each of the 7 norm groups has index 2",
        || {
            let mut good = 0;
            for d in f.square_class_reps().into_iter().skip(1) {
                good += usize::from(norm_group(&f, d)?.index() == 2);
            }
            Ok((good == 7, format!("{good}/7")))
        },
    ));
    out.push(single(
        "lemma-f/witnesses".into(),
        json!({ "pairs": "all 36 unordered pairs of square classes" }),
        "36/36",
        || {
            let mut good = 0;
            let mut total = 0;
            for i in 0..reps.len() {
                for j in i..reps.len() {
                    total += 1;
                    let d = lemma_f_witness(&f, &reps[i], &reps[j])?;
                    let dc = f.class_index(&f.elem(d))?;
                    let ok = dc != 0 && table.get(dc, i) == Sign::Plus && table.get(dc, j) == Sign::Plus;
                    good += usize::from(ok);
                }
            }
            Ok((good == 36 && total == 36, format!("{good}/{total}")))
        },
    ));
    let n = cfg.count(50);
    let seed = cfg.seed_for("lemma-f/norm-realization");
    let ds = f.square_class_reps()[1..].to_vec();
    out.push(sampled(
        "lemma-f/norm-realization".into(),
        json!({ "samples": n, "seed": cfg.seed }),
        "class of N(x) lies in the norm group",
        n,
        2,
        cfg.precision,
        |i, prec| {
            let f = f.with_precision(prec)?;
            let mut rng = stream(seed, i);
            let d = ds[rng.gen_range(0..ds.len())];
            let e = QpExt::new(f, d)?;
            let x = sampling::nonzero_ext(&mut rng, &e);
            let c = f.class_index(&x.norm())?;
            let g = norm_group(&f, d)?;
            Ok(Outcome::new(g.contains(c), 3, json!({ "d": d, "x": x, "class": c })))
        },
    ));
    Ok(out)
}
