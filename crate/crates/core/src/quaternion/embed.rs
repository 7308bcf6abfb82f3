use serde::Serialize;

use super::{Quat, QuatAlg};
use crate::error::{Error, Result};
use crate::metaplectic::Mat2E;
use crate::padic::{PadicE, PadicF, Qp, QpExt};

/// `sqrt a` as an element of `E`, provided `E = F(sqrt a)`.
pub fn sqrt_a_in(alg: &QuatAlg, e: &QpExt) -> Result<PadicE> {
    let f = e.base();
    if e.d() == alg.a {
        return Ok(e.sqrt_d());
    }
    let ratio = f.elem(alg.a).div(&f.elem(e.d()))?;
    match ratio.sqrt()? {
        Some(s) => Ok(e.sqrt_d().scale(s)),
        None => Err(Error::ExtensionMismatch { ext: e.d(), a: alg.a }),
    }
}

/// `x + y i + z j + w ij -> [[x + y sa, z + w sa], [b (z - w sa), x - y sa]]`
/// with `sa = sqrt a` in `E`.
pub fn embed_m2e(alg: &QuatAlg, q: &Quat, e: &QpExt) -> Result<Mat2E> {
    let sa = sqrt_a_in(alg, e)?;
    let b = e.elem(alg.b);
    let (x, y, z, w) = (e.embed(q.x), e.embed(q.y), e.embed(q.z), e.embed(q.w));
    let m = Mat2E { a: x + y * sa, b: z + w * sa, c: b * (z - w * sa), d: x - y * sa };
    Ok(m)
}

/// `[[0, d], [1, 0]]`, a matrix with square `d`.
pub fn companion(f: &Qp, d: i64) -> [PadicF; 4] {
    [f.zero(), f.elem(d), f.one(), f.zero()]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Through the division algebra: a pure quaternion with square `d`.
    ViaD,
    /// Through M2(F): the companion matrix.
    ViaM2F,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(tag = "target", rename_all = "snake_case")]
pub enum EmbeddingImage {
    M2F { matrix: [PadicF; 4] },
    D { quaternion: Quat },
}

/// Image of `sqrt d` under an embedding of `L = F(sqrt d)`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EmbeddingDesc {
    pub d: i64,
    pub route: Route,
    pub image: EmbeddingImage,
}

impl EmbeddingDesc {
    /// The image of `sqrt d` inside M2(E).
    pub fn to_m2e(&self, alg: &QuatAlg, e: &QpExt) -> Result<Mat2E> {
        match &self.image {
            EmbeddingImage::M2F { matrix: [a, b, c, d] } => {
                Ok(Mat2E { a: e.embed(*a), b: e.embed(*b), c: e.embed(*c), d: e.embed(*d) })
            }
            EmbeddingImage::D { quaternion } => embed_m2e(alg, quaternion, e),
        }
    }

    /// The image of `x + y sqrt d` inside M2(E).
    pub fn element(&self, alg: &QuatAlg, e: &QpExt, x: PadicF, y: PadicF) -> Result<Mat2E> {
        let s = self.to_m2e(alg, e)?;
        Ok(Mat2E::identity(e).scale(e.embed(x)).add(&s.scale(e.embed(y))))
    }
}

/// Small coordinates tried when representing `d` by the pure-quaternion form.
fn trial_values(f: &Qp) -> Vec<PadicF> {
    let p = f.prime() as i64;
    let mut out = vec![f.zero()];
    for n in 1..=(2 * p).max(6) {
        out.push(f.elem(n));
        out.push(f.elem(-n));
    }
    for n in 1..p {
        if let Ok(x) = f.ratio(n, p) {
            out.push(x);
        }
    }
    out
}

/// A pure quaternion `y i + z j + w ij` with square `d`, found by fixing two
/// coordinates and solving for the third.
fn pure_quaternion_root(alg: &QuatAlg, d: i64) -> Result<Option<Quat>> {
    let f = alg.field();
    let (a, b) = (f.elem(alg.a), f.elem(alg.b));
    let ab = a * b;
    let target = f.elem(d);
    let vals = trial_values(&f);
    // square of y i + z j + w ij is a y^2 + b z^2 - ab w^2
    for u in &vals {
        for v in &vals {
            let attempts: [(PadicF, PadicF, usize); 3] = [
                (target - b * *u * *u + ab * *v * *v, a, 0),
                (target - a * *u * *u + ab * *v * *v, b, 1),
                (a * *u * *u + b * *v * *v - target, ab, 2),
            ];
            for (rhs, coef, slot) in attempts {
                let sq = rhs.div(&coef)?;
                let Some(root) = sq.sqrt()? else { continue };
                let o = f.zero();
                let q = match slot {
                    0 => Quat { x: o, y: root, z: *u, w: *v },
                    1 => Quat { x: o, y: *u, z: root, w: *v },
                    _ => Quat { x: o, y: *u, z: *v, w: root },
                };
                if alg.mul(&q, &q) == alg.scalar(target) {
                    return Ok(Some(q));
                }
            }
        }
    }
    Ok(None)
}

pub fn embed_l(alg: &QuatAlg, d: i64, route: Route) -> Result<EmbeddingDesc> {
    let f = alg.field();
    if f.elem(d).is_square()? {
        return Err(Error::NoEmbedding(d));
    }
    let image = match route {
        Route::ViaM2F => EmbeddingImage::M2F { matrix: companion(&f, d) },
        Route::ViaD if d == alg.a => EmbeddingImage::D { quaternion: alg.i() },
        Route::ViaD => match pure_quaternion_root(alg, d)? {
            Some(q) => EmbeddingImage::D { quaternion: q },
            None => return Err(Error::NoEmbedding(d)),
        },
    };
    Ok(EmbeddingDesc { d, route, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn setup(p: u32) -> (QuatAlg, QpExt) {
        let f = Qp::new(p, 24).unwrap();
        let alg = QuatAlg::standard(f).unwrap();
        (alg, QpExt::new(f, alg.a).unwrap())
    }

    #[test]
    fn one_maps_to_identity() {
        let (alg, e) = setup(5);
        assert!(embed_m2e(&alg, &alg.one(), &e).unwrap().is_identity());
    }

    #[test]
    fn determinant_is_reduced_norm() {
        for p in [2, 3, 5] {
            let (alg, e) = setup(p);
            let f = alg.field();
            for i in 0..30 {
                let mut rng = sampling::stream(4, i);
                let q = alg.elem(
                    sampling::element(&mut rng, &f),
                    sampling::element(&mut rng, &f),
                    sampling::element(&mut rng, &f),
                    sampling::element(&mut rng, &f),
                );
                assert!(embed_m2e(&alg, &q, &e).unwrap().det() == e.embed(alg.nrd(&q)));
            }
        }
    }

    #[test]
    fn mismatched_extension_is_rejected() {
        let (alg, _) = setup(3);
        let e = QpExt::new(alg.field(), 3).unwrap();
        assert!(matches!(embed_m2e(&alg, &alg.one(), &e), Err(Error::ExtensionMismatch { .. })));
    }

    #[test]
    fn equivalent_parameter_is_accepted() {
        // 8 = 2 * 2^2 lies in the class of 2 over Q_3
        let f = Qp::new(3, 24).unwrap();
        let alg = QuatAlg::new(f, 8, 3).unwrap();
        let e = QpExt::new(f, 2).unwrap();
        let i = embed_m2e(&alg, &alg.i(), &e).unwrap();
        assert!(i.mul(&i) == Mat2E::identity(&e).scale(e.elem(8)));
    }

    #[test]
    fn every_nonsquare_embeds_through_d() {
        for p in [2, 3, 5, 7] {
            let (alg, e) = setup(p);
            for d in alg.field().square_class_reps().into_iter().skip(1) {
                let emb = embed_l(&alg, d, Route::ViaD).unwrap();
                let m = emb.to_m2e(&alg, &e).unwrap();
                assert!(m.mul(&m) == Mat2E::identity(&e).scale(e.elem(d)), "p = {p}, d = {d}");
                let c = embed_l(&alg, d, Route::ViaM2F).unwrap().to_m2e(&alg, &e).unwrap();
                assert!(c.mul(&c) == Mat2E::identity(&e).scale(e.elem(d)));
            }
            assert!(matches!(embed_l(&alg, 4, Route::ViaD), Err(Error::NoEmbedding(4))));
        }
    }

    #[test]
    fn parameter_a_gives_i() {
        let (alg, _) = setup(2);
        match embed_l(&alg, alg.a, Route::ViaD).unwrap().image {
            EmbeddingImage::D { quaternion } => assert!(quaternion == alg.i()),
            _ => panic!("wrong target"),
        }
    }
}
