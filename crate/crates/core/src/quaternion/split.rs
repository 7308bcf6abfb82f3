use rand::Rng;

use super::conjugator::certified_conjugator;
use super::embed::{embed_l, Route};
use super::{Quat, QuatAlg};
use crate::error::{Error, Result};
use crate::metaplectic::{conjugation_transport, CochainCert, Mat2E};
use crate::padic::{PadicF, QpExt};
use crate::sampling;

/// Random `x + y sqrt d` in `L^x`; central (`y = 0`) with probability 1/8.
fn sample_l<R: Rng>(rng: &mut R, alg: &QuatAlg, d: i64) -> (PadicF, PadicF) {
    let f = alg.field();
    let df = f.elem(d);
    loop {
        let (x, y) = if rng.gen_ratio(1, 8) {
            (sampling::nonzero(rng, &f), f.zero())
        } else {
            (sampling::element(rng, &f), sampling::nonzero(rng, &f))
        };
        if !(x * x - df * y * y).is_zero() {
            return (x, y);
        }
    }
}

/// Certifies that the cocycle restricted to the image of `L^x = F(sqrt d)^x`
/// under `D^x -> GL2(E)` is a coboundary on `pairs` sampled pairs.
///
/// The image is conjugate, by a Skolem-Noether element `t`, to the
/// companion copy of `L^x` inside GL2(F), where the section `h -> (h, +1)`
/// is a homomorphism; the certificate transports it along `t`.
pub fn splitting_over_lx(alg: &QuatAlg, e: &QpExt, d: i64, pairs: usize, seed: u64) -> Result<CochainCert> {
    let cert = certified_conjugator(alg, e, d)?;
    let t = cert.conjugator;
    let via_d = embed_l(alg, d, Route::ViaD)?;
    let via_f = embed_l(alg, d, Route::ViaM2F)?;
    let mut hs: Vec<Mat2E> = Vec::with_capacity(2 * pairs);
    let mut gs: Vec<Mat2E> = Vec::with_capacity(2 * pairs);
    for i in 0..2 * pairs {
        let mut rng = sampling::stream(seed, i as u64);
        let (x, y) = sample_l(&mut rng, alg, d);
        hs.push(via_f.element(alg, e, x, y)?);
        gs.push(via_d.element(alg, e, x, y)?);
    }
    let index: Vec<(usize, usize)> = (0..pairs).map(|k| (2 * k, 2 * k + 1)).collect();
    conjugation_transport(e, &t, &hs, Some(&gs), &index)
}

/// `n` elements of reduced norm 1, obtained by scaling random integral
/// quaternions whose reduced norm is a square.
pub fn sample_sl1<R: Rng>(rng: &mut R, alg: &QuatAlg, n: usize) -> Result<Vec<Quat>> {
    let f = alg.field();
    let budget = 64 * n.max(1);
    let mut out = Vec::with_capacity(n);
    for _ in 0..budget {
        if out.len() == n {
            break;
        }
        let coord = |rng: &mut R| {
            if rng.gen_ratio(1, 4) {
                f.zero()
            } else {
                sampling::unit(rng, &f).shift(rng.gen_range(0..=2))
            }
        };
        let q = alg.elem(coord(rng), coord(rng), coord(rng), coord(rng));
        if q.is_zero() {
            continue;
        }
        let Ok(Some(s)) = alg.nrd(&q).sqrt() else { continue };
        let u = alg.scale(&q, s.inv()?);
        if alg.nrd(&u) == f.one() {
            out.push(u);
        }
    }
    if out.len() < n {
        return Err(Error::SamplingBudgetExceeded(budget));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{escalate, Qp};
    use crate::quaternion::embed_m2e;

    #[test]
    fn sl1_samples_have_unit_determinant() {
        for p in [2, 3, 5] {
            let alg = QuatAlg::standard(Qp::new(p, 24).unwrap()).unwrap();
            let e = QpExt::new(alg.field(), alg.a).unwrap();
            let qs = sample_sl1(&mut sampling::stream(1, 0), &alg, 20).unwrap();
            assert_eq!(qs.len(), 20);
            for q in &qs {
                assert!(alg.nrd(q) == alg.field().one());
                assert!(embed_m2e(&alg, q, &e).unwrap().det() == e.elem(1));
            }
        }
    }

    #[test]
    fn torus_splittings_certify() {
        for p in [2, 3] {
            let f = Qp::new(p, 24).unwrap();
            let alg = QuatAlg::standard(f).unwrap();
            for d in f.square_class_reps().into_iter().skip(1) {
                let (cert, _) = escalate(p, 24, |n| {
                    let alg = alg.with_precision(n)?;
                    let e = QpExt::new(alg.field(), alg.a)?;
                    splitting_over_lx(&alg, &e, d, 10, 3)
                })
                .unwrap();
                assert!(cert.all_passed && cert.pairs.len() == 10, "p = {p}, d = {d}");
            }
        }
    }
}
