use rayon::prelude::*;
use serde::Serialize;

use super::{cocycle_gl2, Mat2E};
use crate::error::{Error, Result};
use crate::padic::QpExt;
use crate::sign::Sign;

/// One verified trivialization `b(g1, g2) = mu(g1) mu(g2) mu(g1 g2)`.
#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub i: usize,
    pub j: usize,
    pub beta: Sign,
    pub mu_product: Sign,
}

/// Finite-sample witness that the cocycle is a coboundary on a conjugated
/// subgroup `t H t^-1`.
#[derive(Clone, Debug, Serialize)]
pub struct CochainCert {
    pub conjugator: Mat2E,
    pub domain: Vec<Mat2E>,
    pub mu: Vec<Sign>,
    pub pairs: Vec<PairCheck>,
    pub all_passed: bool,
}

/// Pulls the trivial splitting on `H` back along conjugation by `t`:
/// `mu(t h t^-1) = b(t, h) b(t h, t^-1) b(t, t^-1)`.
fn mu(e: &QpExt, t: &Mat2E, tinv: &Mat2E, btt: Sign, h: &Mat2E) -> Result<Sign> {
    let th = t.mul(h);
    Ok(cocycle_gl2(e, t, h)? * cocycle_gl2(e, &th, tinv)? * btt)
}

/// Transports the section `h -> (h, +1)` on the sampled `hs` (on which the
/// cocycle must be trivial) to `g = t h t^-1`, then checks the
/// trivialization on every listed pair. The cocycle on the left is evaluated
/// on the given `gs` when supplied, and on `t h t^-1` otherwise.
pub fn conjugation_transport(
    e: &QpExt,
    t: &Mat2E,
    hs: &[Mat2E],
    gs: Option<&[Mat2E]>,
    pairs: &[(usize, usize)],
) -> Result<CochainCert> {
    let tinv = t.inv()?;
    let btt = cocycle_gl2(e, t, &tinv)?;
    let domain: Vec<Mat2E> = match gs {
        Some(gs) => {
            for (k, (g, h)) in gs.iter().zip(hs).enumerate() {
                if *g != t.mul(h).mul(&tinv) {
                    return Err(Error::CertificationFailed {
                        index: k,
                        detail: "sample is not the conjugate of its preimage".into(),
                    });
                }
            }
            gs.to_vec()
        }
        None => hs.iter().map(|h| t.mul(h).mul(&tinv)).collect(),
    };
    let mus = hs.par_iter().map(|h| mu(e, t, &tinv, btt, h)).collect::<Result<Vec<_>>>()?;
    let checks = pairs
        .par_iter()
        .map(|&(i, j)| {
            let beta = cocycle_gl2(e, &domain[i], &domain[j])?;
            let m12 = mu(e, t, &tinv, btt, &hs[i].mul(&hs[j]))?;
            Ok(PairCheck { i, j, beta, mu_product: mus[i] * mus[j] * m12 })
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some((k, c)) = checks.iter().enumerate().find(|(_, c)| c.beta != c.mu_product) {
        return Err(Error::CertificationFailed {
            index: k,
            detail: format!("pair ({}, {}): beta = {}, coboundary = {}", c.i, c.j, c.beta, c.mu_product),
        });
    }
    Ok(CochainCert { conjugator: *t, domain, mu: mus, pairs: checks, all_passed: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{escalate, Qp};
    use crate::sampling;

    #[test]
    fn identity_conjugator_gives_trivial_cochain() {
        let e = QpExt::new(Qp::new(2, 24).unwrap(), 5).unwrap();
        let hs: Vec<Mat2E> = (0..6).map(|i| sampling::gl2_base(&mut sampling::stream(4, i), &e)).collect();
        let pairs: Vec<_> = (0..6).flat_map(|i| (0..6).map(move |j| (i, j))).collect();
        let cert = conjugation_transport(&e, &Mat2E::identity(&e), &hs, None, &pairs).unwrap();
        assert!(cert.mu.iter().all(|s| s.is_plus()));
        assert!(cert.all_passed);
    }

    #[test]
    fn base_field_conjugator_gives_trivial_cochain() {
        let e = QpExt::new(Qp::new(3, 24).unwrap(), 6).unwrap();
        let t = sampling::gl2_base(&mut sampling::stream(8, 100), &e);
        let hs: Vec<Mat2E> = (0..6).map(|i| sampling::gl2_base(&mut sampling::stream(8, i), &e)).collect();
        let pairs: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        let cert = conjugation_transport(&e, &t, &hs, None, &pairs).unwrap();
        assert!(cert.mu.iter().all(|s| s.is_plus()));
    }

    #[test]
    fn extension_conjugator_certifies() {
        let (cert, _) = escalate(2, 24, |n| {
            let e = QpExt::new(Qp::new(2, n)?, -1)?;
            let t = sampling::gl2(&mut sampling::stream(6, 100), &e);
            let hs: Vec<Mat2E> = (0..8).map(|i| sampling::gl2_base(&mut sampling::stream(6, i), &e)).collect();
            let pairs: Vec<_> = (0..8).flat_map(|i| (0..8).map(move |j| (i, j))).collect();
            conjugation_transport(&e, &t, &hs, None, &pairs)
        })
        .unwrap();
        assert!(cert.all_passed);
    }
}
