use serde::Serialize;

use super::embed::{embed_l, Route};
use super::QuatAlg;
use crate::error::{Error, Result};
use crate::metaplectic::Mat2E;
use crate::padic::{max_precision, PadicE, QpExt};

/// Basis of the kernel of a square system over E, by Gauss-Jordan
/// elimination with pivots of least valuation.
fn nullspace(e: &QpExt, mut rows: Vec<[PadicE; 4]>) -> Result<Vec<[PadicE; 4]>> {
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut used_rows = vec![false; rows.len()];
    loop {
        let mut best: Option<(usize, usize, i64)> = None;
        for (r, row) in rows.iter().enumerate().filter(|(r, _)| !used_rows[*r]) {
            for (c, x) in row.iter().enumerate() {
                if pivots.iter().any(|&(_, pc)| pc == c) {
                    continue;
                }
                if let Some(v) = e.valuation(x) {
                    if best.is_none_or(|(_, _, bv)| v < bv) {
                        best = Some((r, c, v));
                    }
                }
            }
        }
        let Some((r, c, _)) = best else { break };
        let inv = rows[r][c].inv()?;
        for x in rows[r].iter_mut() {
            *x = *x * inv;
        }
        let pivot_row = rows[r];
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && !row[c].is_zero() {
                let factor = row[c];
                for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                    *x = *x - factor * *y;
                }
            }
        }
        used_rows[r] = true;
        pivots.push((r, c));
    }
    let free: Vec<usize> = (0..4).filter(|c| pivots.iter().all(|&(_, pc)| pc != *c)).collect();
    Ok(free
        .iter()
        .map(|&fc| {
            let mut v = [e.elem(0); 4];
            v[fc] = e.elem(1);
            for &(r, pc) in &pivots {
                v[pc] = -rows[r][fc];
            }
            v
        })
        .collect())
}

fn as_matrix(v: &[PadicE; 4]) -> Mat2E {
    Mat2E { a: v[0], b: v[1], c: v[2], d: v[3] }
}

/// Invertible `g` with `g m1 g^-1 = m2`, chosen among the kernel basis of
/// `g m1 = m2 g` (and small combinations of it) to minimize `v(det g)`.
pub fn skolem_noether_conjugator(e: &QpExt, m1: &Mat2E, m2: &Mat2E) -> Result<Mat2E> {
    let [p, q, r, s] = m1.entries();
    let [pp, qq, rr, ss] = m2.entries();
    let z = e.elem(0);
    let rows = vec![
        [p - pp, r, -qq, z],
        [q, s - pp, z, -qq],
        [-rr, z, p - ss, r],
        [z, -rr, q, s - ss],
    ];
    let basis = nullspace(e, rows)?;
    if basis.is_empty() {
        return Err(Error::SystemInconsistent);
    }
    let mut candidates: Vec<Mat2E> = basis.iter().map(as_matrix).collect();
    if basis.len() >= 2 {
        let (u, v) = (as_matrix(&basis[0]), as_matrix(&basis[1]));
        for coef in [e.elem(1), e.elem(-1), e.sqrt_d(), e.elem(1) + e.sqrt_d()] {
            candidates.push(u.add(&v.scale(coef)));
        }
    }
    let best = candidates
        .into_iter()
        .filter_map(|g| e.valuation(&g.det()).map(|v| (v, g)))
        .min_by_key(|(v, _)| *v)
        .map(|(_, g)| g)
        .ok_or(Error::NoInvertibleSolution)?;
    if best.mul(m1) != m2.mul(&best) {
        return Err(Error::SystemInconsistent);
    }
    Ok(best)
}

/// A conjugator from the companion embedding of `F(sqrt d)` to the one
/// through the division algebra, checked at two precisions.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugatorCert {
    pub d: i64,
    pub conjugator: Mat2E,
    pub precision: u32,
    pub reverified_at: u32,
    /// The two computations agree on the digits they share.
    pub stable: bool,
}

fn conjugator_at(alg: &QuatAlg, e: &QpExt, d: i64, n: u32) -> Result<Mat2E> {
    let alg = alg.with_precision(n)?;
    let e = e.with_precision(n)?;
    let m1 = embed_l(&alg, d, Route::ViaM2F)?.to_m2e(&alg, &e)?;
    let m2 = embed_l(&alg, d, Route::ViaD)?.to_m2e(&alg, &e)?;
    let t = skolem_noether_conjugator(&e, &m1, &m2)?;
    if t.mul(&m1).mul(&t.inv()?) != m2 {
        return Err(Error::CertificationFailed { index: 0, detail: format!("conjugation fails at precision {n}") });
    }
    Ok(t)
}

pub fn certified_conjugator(alg: &QuatAlg, e: &QpExt, d: i64) -> Result<ConjugatorCert> {
    let n = e.precision();
    let hi = (2 * n).min(max_precision(e.prime()));
    let t = conjugator_at(alg, e, d, n)?;
    let t_hi = conjugator_at(alg, e, d, hi)?;
    Ok(ConjugatorCert { d, conjugator: t, precision: n, reverified_at: hi, stable: t == t_hi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Qp;

    #[test]
    fn equal_embeddings_give_centralizer_element() {
        let f = Qp::new(3, 24).unwrap();
        let alg = QuatAlg::standard(f).unwrap();
        let e = QpExt::new(f, alg.a).unwrap();
        let m = embed_l(&alg, 3, Route::ViaD).unwrap().to_m2e(&alg, &e).unwrap();
        let g = skolem_noether_conjugator(&e, &m, &m).unwrap();
        assert!(g.mul(&m) == m.mul(&g));
    }

    #[test]
    fn conjugators_for_all_embeddable_fields() {
        for p in [2, 3, 5] {
            let f = Qp::new(p, 24).unwrap();
            let alg = QuatAlg::standard(f).unwrap();
            let e = QpExt::new(f, alg.a).unwrap();
            for d in f.square_class_reps().into_iter().skip(1) {
                let cert = certified_conjugator(&alg, &e, d).unwrap();
                assert!(cert.stable, "p = {p}, d = {d}");
                assert_eq!(cert.reverified_at, 48);
            }
        }
    }
}
