use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::padic::{PadicE, PadicF, QpExt};

/// Invertible 2x2 matrix `[[a, b], [c, d]]` over a quadratic extension.
#[derive(Clone, Copy, Debug)]
pub struct Mat2E {
    pub a: PadicE,
    pub b: PadicE,
    pub c: PadicE,
    pub d: PadicE,
}

impl Mat2E {
    pub fn new(a: PadicE, b: PadicE, c: PadicE, d: PadicE) -> Result<Self> {
        let m = Mat2E { a, b, c, d };
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    pub fn from_base(e: &QpExt, a: PadicF, b: PadicF, c: PadicF, d: PadicF) -> Result<Self> {
        Self::new(e.embed(a), e.embed(b), e.embed(c), e.embed(d))
    }

    pub fn identity(e: &QpExt) -> Self {
        Mat2E { a: e.elem(1), b: e.elem(0), c: e.elem(0), d: e.elem(1) }
    }

    pub fn diag(e: &QpExt, x: PadicE, y: PadicE) -> Result<Self> {
        Self::new(x, e.elem(0), e.elem(0), y)
    }

    /// `diag(t, 1/t)`.
    pub fn torus(e: &QpExt, t: PadicE) -> Result<Self> {
        Self::diag(e, t, t.inv()?)
    }

    /// `[[1, s], [0, 1]]`.
    pub fn unipotent(e: &QpExt, s: PadicE) -> Self {
        Mat2E { a: e.elem(1), b: s, c: e.elem(0), d: e.elem(1) }
    }

    /// `[[0, 1], [-1, 0]]`.
    pub fn weyl(e: &QpExt) -> Self {
        Mat2E { a: e.elem(0), b: e.elem(1), c: e.elem(-1), d: e.elem(0) }
    }

    pub fn entries(&self) -> [PadicE; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> PadicE {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Mat2E) -> Mat2E {
        Mat2E {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn add(&self, o: &Mat2E) -> Mat2E {
        Mat2E { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c, d: self.d + o.d }
    }

    pub fn scale(&self, s: PadicE) -> Mat2E {
        Mat2E { a: self.a * s, b: self.b * s, c: self.c * s, d: self.d * s }
    }

    pub fn inv(&self) -> Result<Mat2E> {
        let di = self.det().inv().map_err(|_| Error::SingularMatrix)?;
        Ok(Mat2E { a: self.d * di, b: -self.b * di, c: -self.c * di, d: self.a * di })
    }

    pub fn in_base_field(&self) -> bool {
        self.entries().iter().all(PadicE::in_base_field)
    }

    pub fn is_identity(&self) -> bool {
        let one = PadicE::from_base(self.a.d(), PadicF::from_i64(self.a.prime(), 1, 1));
        self.a == one && self.d == one && self.b.is_zero() && self.c.is_zero()
    }

    /// Smallest relative precision among nonzero entries.
    pub fn precision(&self) -> u32 {
        self.entries().iter().filter(|x| !x.is_zero()).map(PadicE::precision).min().unwrap_or(0)
    }
}

impl PartialEq for Mat2E {
    fn eq(&self, o: &Mat2E) -> bool {
        self.a == o.a && self.b == o.b && self.c == o.c && self.d == o.d
    }
}

/// Rows separated by `;`, entries by `,`.
impl fmt::Display for Mat2E {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, {}; {}, {}", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for Mat2E {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Qp;

    fn ext() -> QpExt {
        QpExt::new(Qp::new(5, 24).unwrap(), 2).unwrap()
    }

    #[test]
    fn weyl_squares_to_minus_identity() {
        let e = ext();
        let w = Mat2E::weyl(&e);
        let w2 = w.mul(&w);
        assert!(w2.a == e.elem(-1) && w2.d == e.elem(-1) && w2.b.is_zero() && w2.c.is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let e = ext();
        let g = Mat2E::new(e.sqrt_d(), e.elem(3), e.elem(5), e.elem(1) + e.sqrt_d()).unwrap();
        assert!(g.mul(&g.inv().unwrap()).is_identity());
        assert!(g.inv().unwrap().mul(&g).is_identity());
    }

    #[test]
    fn singular_is_rejected() {
        let e = ext();
        assert!(matches!(Mat2E::new(e.elem(1), e.elem(2), e.elem(2), e.elem(4)), Err(Error::SingularMatrix)));
    }

    #[test]
    fn display_uses_row_syntax() {
        let e = ext();
        assert_eq!(Mat2E::identity(&e).to_string(), "5^0 * 1, 0; 0, 5^0 * 1");
    }
}
