use serde_json::json;

use super::{single, RunConfig};
use crate::cohomology::{
    assemble_h2_gprime, bockstein_check, bockstein_direct_product, brute_force_h2, cyclic_cohomology, dual_module,
    frobenius_module, h1_gprime_qz, hilbert90 as hilbert90_check, kunneth_h2_mx, kunneth_truncation_check, lemma_l_check,
    pairing_is_invariant, restrict_h1, CohResult, Coeffs, FiniteGroup, ModAut,
};
use crate::error::Result;
use crate::report::Record;

fn describe(c: &CohResult) -> String {
    match c.order() {
        Some(n) => format!("{c} (order {n})"),
        None => format!("{c} (infinite)"),
    }
}

fn coh_record(name: String, inputs: serde_json::Value, expected: CohResult, f: impl FnOnce() -> Result<CohResult>) -> Record {
    let exp = describe(&expected);
    single(name, inputs, exp, || {
        let got = f()?;
        Ok((got == expected, describe(&got)))
    })
}

/// `dim_F2 H^2` of a cyclic group with trivial Z/2 coefficients.
fn cyclic_h2_dim(n: u64) -> Result<usize> {
    Ok(cyclic_cohomology(n, &ModAut::trivial(vec![2])?, 2)?.factors.len())
}

pub(super) fn prop_h(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for q in cfg.qs(&[3, 5, 7, 9]) {
        out.push(coh_record(
            format!("prop-h/h2-z2/q={q}"),
            json!({ "q": q, "coefficients": "Z/2" }),
            CohResult::elementary_2(2),
            || assemble_h2_gprime(q, Coeffs::Z2),
        ));
        out.push(coh_record(
            format!("prop-h/h2-qz/q={q}"),
            json!({ "q": q, "coefficients": "Q/Z" }),
            CohResult::cyclic(q - 1),
            || assemble_h2_gprime(q, Coeffs::Qz),
        ));
        out.push(coh_record(
            format!("prop-h/h1-qz/q={q}"),
            json!({ "q": q, "coefficients": "Q/Z" }),
            CohResult { divisible: 1, ..CohResult::cyclic(q - 1) },
            || h1_gprime_qz(q),
        ));
    }
    for q in cfg.qs(&[3, 5]) {
        out.push(coh_record(
            format!("prop-j/kunneth/q={q}"),
            json!({ "q": q, "group": "F_{q^2}^x x Z", "coefficients": "Z/2" }),
            CohResult::elementary_2(2),
            || kunneth_h2_mx(q),
        ));
    }
    if matches!(cfg.q, None | Some(3)) {
        out.push(single(
            "prop-j/truncation/q=3,m=4".into(),
            json!({ "q": 3, "m": 4 }),
            "brute force minus H^2(Z/m) = Kunneth",
            || {
                let t = kunneth_truncation_check(3, 4)?;
                Ok((t.agrees(), format!("{} - {} vs {}", t.brute_dim, t.correction, t.kunneth_dim)))
            },
        ));
    }
    for n in 1..=16u64 {
        out.push(single(
            format!("brute-vs-cyclic/Z{n}"),
            json!({ "group": format!("Z/{n}") }),
            "dim H^2(Z/n, Z/2) from the cyclic formula",
            || {
                let brute = brute_force_h2(&FiniteGroup::cyclic(n as usize)?, false)?.result.factors.len();
                let formula = cyclic_h2_dim(n)?;
                Ok((brute == formula, format!("brute {brute}, formula {formula}")))
            },
        ));
    }
    out.push(single(
        "brute-vs-cyclic/Z2xZ2".into(),
        json!({ "group": "Z/2 x Z/2" }),
        "dim 3 = H^2 + H^1 (x) H^1 + H^2",
        || {
            let z2 = FiniteGroup::cyclic(2)?;
            let brute = brute_force_h2(&FiniteGroup::product(&z2, &z2)?, false)?.result.factors.len();
            let a = ModAut::trivial(vec![2])?;
            let h1 = cyclic_cohomology(2, &a, 1)?.factors.len();
            let formula = 2 * cyclic_h2_dim(2)? + h1 * h1;
            Ok((brute == formula && brute == 3, format!("brute {brute}, kunneth {formula}")))
        },
    ));
    Ok(out)
}

pub(super) fn lemma_l(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for q in cfg.qs(&[3, 5, 7]) {
        out.push(single(
            format!("lemma-l/q={q}"),
            json!({ "q": q }),
            "restriction to 2Z is bijective on 2-torsion",
            || Ok((lemma_l_check(q)?, lemma_l_check(q)?.to_string())),
        ));
        out.push(single(
            format!("lemma-l/pairing/q={q}"),
            json!({ "q": q }),
            "<sigma x, sigma chi> = <x, chi>",
            || {
                let m = frobenius_module(q)?;
                let ok = pairing_is_invariant(&m, &dual_module(&m)?);
                Ok((ok, ok.to_string()))
            },
        ));
        out.push(single(
            format!("lemma-l/restriction-k1/q={q}"),
            json!({ "q": q }),
            "restriction to Z itself is the identity",
            || {
                let m = dual_module(&frobenius_module(q)?)?;
                let r = restrict_h1(&m, 1)?;
                let ok = r.kernel.is_zero()
                    && r.source == r.target
                    && (0..m.order()).all(|x| r.apply(x) == r.source_rep(x));
                Ok((ok, format!("{} -> {}", r.source, r.target)))
            },
        ));
    }
    Ok(out)
}

pub(super) fn hilbert90(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for q in cfg.qs(&[3, 5, 7, 9]) {
        out.push(single(
            format!("hilbert90/q={q}"),
            json!({ "q": q }),
            "H^1 = 0 and ker N = im(sigma - 1)",
            || {
                let h = hilbert90_check(q)?;
                Ok((h.holds(), format!("H^1 = {}, |ker N| = {}, |im| = {}", h.h1, h.kernel_of_norm, h.image_of_sigma_minus_one)))
            },
        ));
        out.push(single(
            format!("hilbert90/herbrand/q={q}"),
            json!({ "q": q }),
            "|ker(sigma - 1)| = |coker(sigma - 1)|",
            || {
                let m = frobenius_module(q)?;
                let f = m.sigma_power_minus_one(1);
                let ker = m.kernel(&f).iter().filter(|&&b| b).count();
                let img = m.image(&f).iter().filter(|&&b| b).count();
                let coker = m.order() / img;
                Ok((ker == coker, format!("{ker} vs {coker}")))
            },
        ));
    }
    Ok(out)
}

pub(super) fn bockstein(cfg: &RunConfig) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for q in cfg.qs(&[3, 5, 7]) {
        out.push(single(format!("bockstein/q={q}"), json!({ "q": q }), "4 = 2 * 2", || {
            let b = bockstein_check(q)?;
            Ok((b.holds() && b.h2_z2 == 4, format!("{} = {} * {}", b.h2_z2, b.h1_qz_mod_2, b.h2_qz_2_torsion)))
        }));
        out.push(single(format!("bockstein/direct-product/q={q}"), json!({ "q": q }), "4 = 2 * 2", || {
            let b = bockstein_direct_product(q)?;
            Ok((b.holds() && b.h2_z2 == 4, format!("{} = {} * {}", b.h2_z2, b.h1_qz_mod_2, b.h2_qz_2_torsion)))
        }));
    }
    Ok(out)
}
