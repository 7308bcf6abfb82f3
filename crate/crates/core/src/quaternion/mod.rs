//! Quaternion algebras `(a, b)_F` over Q_p and their embeddings into M2(E).

mod conjugator;
mod embed;
mod split;

use std::fmt;

use serde::{Serialize, Serializer};

pub use conjugator::{certified_conjugator, skolem_noether_conjugator, ConjugatorCert};
pub use embed::{companion, embed_l, embed_m2e, sqrt_a_in, EmbeddingDesc, EmbeddingImage, Route};
pub use split::{sample_sl1, splitting_over_lx};

use crate::error::{Error, Result};
use crate::hilbert::hilbert;
use crate::padic::{PadicF, Qp};

/// `x + y i + z j + w ij`.
#[derive(Clone, Copy, Debug)]
pub struct Quat {
    pub x: PadicF,
    pub y: PadicF,
    pub z: PadicF,
    pub w: PadicF,
}

impl Quat {
    pub fn coords(&self) -> [PadicF; 4] {
        [self.x, self.y, self.z, self.w]
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(PadicF::is_zero)
    }
}

impl PartialEq for Quat {
    fn eq(&self, o: &Quat) -> bool {
        self.x == o.x && self.y == o.y && self.z == o.z && self.w == o.w
    }
}

impl fmt::Display for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})*i + ({})*j + ({})*k", self.x, self.y, self.z, self.w)
    }
}

impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The algebra with `i^2 = a`, `j^2 = b`, `ji = -ij`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuatAlg {
    #[serde(skip)]
    f: Qp,
    pub p: u32,
    pub a: i64,
    pub b: i64,
}

impl QuatAlg {
    pub fn new(f: Qp, a: i64, b: i64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidField("structure constants must be nonzero".into()));
        }
        Ok(QuatAlg { f, p: f.prime(), a, b })
    }

    /// Like [`QuatAlg::new`], but fails unless `(a, b)_F = -1`.
    pub fn division(f: Qp, a: i64, b: i64) -> Result<Self> {
        let alg = Self::new(f, a, b)?;
        if !alg.is_division()? {
            return Err(Error::InvalidField(format!("({a}, {b}) splits over Q_{}", f.prime())));
        }
        Ok(alg)
    }

    /// `(u, p)` with `u` the least unit non-residue for odd p, `(-1, -1)`
    /// over Q_2.
    pub fn standard(f: Qp) -> Result<Self> {
        if f.prime() == 2 {
            Self::division(f, -1, -1)
        } else {
            Self::division(f, f.unit_nonresidue(), f.prime() as i64)
        }
    }

    pub fn field(&self) -> Qp {
        self.f
    }

    pub fn with_precision(&self, n: u32) -> Result<Self> {
        Ok(QuatAlg { f: self.f.with_precision(n)?, ..*self })
    }

    pub fn is_division(&self) -> Result<bool> {
        Ok(hilbert(&self.f, &self.f.elem(self.a), &self.f.elem(self.b))?.is_minus())
    }

    pub fn elem(&self, x: PadicF, y: PadicF, z: PadicF, w: PadicF) -> Quat {
        Quat { x, y, z, w }
    }

    pub fn scalar(&self, x: PadicF) -> Quat {
        let o = self.f.zero();
        Quat { x, y: o, z: o, w: o }
    }

    pub fn one(&self) -> Quat {
        self.scalar(self.f.one())
    }

    pub fn i(&self) -> Quat {
        let (o, l) = (self.f.zero(), self.f.one());
        Quat { x: o, y: l, z: o, w: o }
    }

    pub fn j(&self) -> Quat {
        let (o, l) = (self.f.zero(), self.f.one());
        Quat { x: o, y: o, z: l, w: o }
    }

    pub fn k(&self) -> Quat {
        let (o, l) = (self.f.zero(), self.f.one());
        Quat { x: o, y: o, z: o, w: l }
    }

    pub fn add(&self, p: &Quat, q: &Quat) -> Quat {
        Quat { x: p.x + q.x, y: p.y + q.y, z: p.z + q.z, w: p.w + q.w }
    }

    pub fn scale(&self, q: &Quat, s: PadicF) -> Quat {
        Quat { x: q.x * s, y: q.y * s, z: q.z * s, w: q.w * s }
    }

    pub fn mul(&self, p: &Quat, q: &Quat) -> Quat {
        let a = self.f.elem(self.a);
        let b = self.f.elem(self.b);
        let ab = a * b;
        Quat {
            x: p.x * q.x + a * p.y * q.y + b * p.z * q.z - ab * p.w * q.w,
            y: p.x * q.y + p.y * q.x - b * p.z * q.w + b * p.w * q.z,
            z: p.x * q.z + p.z * q.x + a * p.y * q.w - a * p.w * q.y,
            w: p.x * q.w + p.w * q.x + p.y * q.z - p.z * q.y,
        }
    }

    pub fn conj(&self, q: &Quat) -> Quat {
        Quat { x: q.x, y: -q.y, z: -q.z, w: -q.w }
    }

    /// Reduced norm `x^2 - a y^2 - b z^2 + ab w^2`.
    pub fn nrd(&self, q: &Quat) -> PadicF {
        let a = self.f.elem(self.a);
        let b = self.f.elem(self.b);
        q.x * q.x - a * q.y * q.y - b * q.z * q.z + a * b * q.w * q.w
    }

    pub fn inv(&self, q: &Quat) -> Result<Quat> {
        let n = self.nrd(q);
        if n.is_zero() {
            return Err(Error::NotInvertible);
        }
        Ok(self.scale(&self.conj(q), n.inv()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling;

    fn q2() -> QuatAlg {
        QuatAlg::standard(Qp::new(2, 24).unwrap()).unwrap()
    }

    #[test]
    fn structure_constants() {
        let h = q2();
        let ij = h.mul(&h.i(), &h.j());
        assert!(ij == h.k());
        assert!(h.mul(&h.j(), &h.i()) == h.scale(&h.k(), h.field().elem(-1)));
        assert!(h.mul(&h.i(), &h.i()) == h.scalar(h.field().elem(h.a)));
        assert!(h.mul(&h.j(), &h.j()) == h.scalar(h.field().elem(h.b)));
        assert!(h.mul(&h.k(), &h.k()) == h.scalar(h.field().elem(-h.a * h.b)));
    }

    #[test]
    fn standard_algebras_are_division() {
        for p in [2, 3, 5, 7] {
            let alg = QuatAlg::standard(Qp::new(p, 24).unwrap()).unwrap();
            assert!(alg.is_division().unwrap());
        }
        assert!(QuatAlg::division(Qp::new(3, 24).unwrap(), 1, 3).is_err());
    }

    #[test]
    fn conjugate_and_inverse() {
        let h = QuatAlg::standard(Qp::new(3, 24).unwrap()).unwrap();
        let f = h.field();
        for i in 0..20 {
            let mut rng = sampling::stream(21, i);
            let q = h.elem(
                sampling::nonzero(&mut rng, &f),
                sampling::nonzero(&mut rng, &f),
                sampling::nonzero(&mut rng, &f),
                sampling::nonzero(&mut rng, &f),
            );
            assert!(h.mul(&q, &h.conj(&q)) == h.scalar(h.nrd(&q)));
            assert!(h.mul(&q, &h.inv(&q).unwrap()) == h.one());
        }
        assert!(matches!(h.inv(&h.scalar(f.zero())), Err(Error::NotInvertible)));
    }
}
