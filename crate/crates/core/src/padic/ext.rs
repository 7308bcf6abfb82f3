//! Quadratic extensions E = Q_p(sqrt d) and their elements `a + b sqrt d`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::base::{PadicF, Qp};
use super::residue::Residue;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct PadicE {
    d: i64,
    a: PadicF,
    b: PadicF,
}

impl PadicE {
    pub fn new(d: i64, a: PadicF, b: PadicF) -> Self {
        assert_eq!(a.prime(), b.prime(), "coordinates from different fields");
        PadicE { d, a, b }
    }

    pub fn from_base(d: i64, a: PadicF) -> Self {
        PadicE { d, a, b: PadicF::zero(a.prime()) }
    }

    pub fn prime(&self) -> u32 {
        self.a.prime()
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// Rational coordinate.
    pub fn re(&self) -> PadicF {
        self.a
    }

    /// Coefficient of sqrt d.
    pub fn im(&self) -> PadicF {
        self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn in_base_field(&self) -> bool {
        self.b.is_zero()
    }

    pub fn conj(&self) -> Self {
        PadicE { b: -self.b, ..*self }
    }

    /// N_{E/F}(a + b sqrt d) = a^2 - d b^2.
    pub fn norm(&self) -> PadicF {
        let d = PadicF::from_i64(self.prime(), self.d, self.a.precision().max(self.b.precision()).max(1));
        self.a * self.a - d * self.b * self.b
    }

    pub fn trace(&self) -> PadicF {
        self.a + self.a
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.inv()?;
        Ok(PadicE { d: self.d, a: self.a * ninv, b: -(self.b * ninv) })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    pub fn scale(&self, s: PadicF) -> Self {
        PadicE { d: self.d, a: self.a * s, b: self.b * s }
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { *self };
        let prec = self.a.precision().max(self.b.precision()).max(1);
        let mut acc = PadicE::from_base(self.d, PadicF::from_i64(self.prime(), 1, prec));
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Smallest relative precision among nonzero coordinates.
    pub fn precision(&self) -> u32 {
        [self.a, self.b]
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| x.precision())
            .min()
            .unwrap_or(0)
    }
}

impl Add for PadicE {
    type Output = PadicE;
    fn add(self, rhs: PadicE) -> PadicE {
        assert_eq!(self.d, rhs.d, "operands from different extensions");
        PadicE { d: self.d, a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Neg for PadicE {
    type Output = PadicE;
    fn neg(self) -> PadicE {
        PadicE { d: self.d, a: -self.a, b: -self.b }
    }
}

impl Sub for PadicE {
    type Output = PadicE;
    fn sub(self, rhs: PadicE) -> PadicE {
        self + (-rhs)
    }
}

impl Mul for PadicE {
    type Output = PadicE;
    fn mul(self, rhs: PadicE) -> PadicE {
        assert_eq!(self.d, rhs.d, "operands from different extensions");
        let p = self.prime();
        let bb = self.b * rhs.b;
        let dbb = if bb.is_zero() { bb } else { PadicF::from_i64(p, self.d, bb.precision()) * bb };
        PadicE {
            d: self.d,
            a: self.a * rhs.a + dbb,
            b: self.a * rhs.b + self.b * rhs.a,
        }
    }
}

impl PartialEq for PadicE {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && (*self - *other).is_zero()
    }
}

/// Serialized in the textual literal format.
impl Serialize for PadicE {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for PadicE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + ({}) * sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// The quadratic extension Q_p(sqrt d) at a fixed working precision.
///
/// `d` must be a non-square with `v_p(d)` in {0, 1}. The ring of integers
/// is `Z_p[theta]` with `theta = (1 + sqrt d)/2` when p = 2 and d = 1 mod 4,
/// and `theta = sqrt d` otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QpExt {
    base: Qp,
    d: i64,
}

impl QpExt {
    pub fn new(base: Qp, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidField("d = 0".into()));
        }
        let dd = base.elem(d);
        let v = dd.valuation().unwrap_or(0);
        if v > 1 {
            return Err(Error::InvalidField(format!(
                "d = {d} has p-adic valuation {v}; use a representative with valuation 0 or 1"
            )));
        }
        if dd.is_square()? {
            return Err(Error::InvalidField(format!("d = {d} is a square in Q_{}", base.prime())));
        }
        Ok(QpExt { base, d })
    }

    pub fn base(&self) -> Qp {
        self.base
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn prime(&self) -> u32 {
        self.base.prime()
    }

    pub fn precision(&self) -> u32 {
        self.base.precision()
    }

    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        QpExt::new(self.base.with_precision(precision)?, self.d)
    }

    fn d_valuation(&self) -> i64 {
        self.base.elem(self.d).valuation().unwrap_or(0)
    }

    fn theta_is_half_integral(&self) -> bool {
        self.prime() == 2 && self.d.rem_euclid(4) == 1
    }

    pub fn is_ramified(&self) -> bool {
        self.d_valuation() == 1 || (self.prime() == 2 && self.d.rem_euclid(4) == 3)
    }

    pub fn ramification_index(&self) -> i64 {
        if self.is_ramified() {
            2
        } else {
            1
        }
    }

    pub fn residue_degree(&self) -> u32 {
        if self.is_ramified() {
            1
        } else {
            2
        }
    }

    pub fn elem(&self, n: i64) -> PadicE {
        PadicE::from_base(self.d, self.base.elem(n))
    }

    pub fn embed(&self, x: PadicF) -> PadicE {
        PadicE::from_base(self.d, x)
    }

    pub fn from_coords(&self, a: PadicF, b: PadicF) -> PadicE {
        PadicE::new(self.d, a, b)
    }

    pub fn sqrt_d(&self) -> PadicE {
        PadicE::new(self.d, self.base.zero(), self.base.one())
    }

    /// Generator of the ring of integers over Z_p.
    pub fn theta(&self) -> PadicE {
        if self.theta_is_half_integral() {
            let half = self.base.ratio(1, 2).expect("2 invertible");
            PadicE::new(self.d, half, half)
        } else {
            self.sqrt_d()
        }
    }

    pub fn uniformizer(&self) -> PadicE {
        if !self.is_ramified() {
            self.elem(self.prime() as i64)
        } else if self.d_valuation() == 1 {
            self.sqrt_d()
        } else {
            self.elem(1) + self.sqrt_d()
        }
    }

    /// Normalized valuation (a uniformizer has valuation 1), read off the norm.
    pub fn valuation(&self, x: &PadicE) -> Option<i64> {
        let vn = x.norm().valuation()?;
        Some(if self.is_ramified() { vn } else { vn / 2 })
    }

    /// Coordinates of `x` in the integral basis `{1, theta}`.
    pub fn integral_coords(&self, x: &PadicE) -> (PadicF, PadicF) {
        if self.theta_is_half_integral() {
            // sqrt d = 2 theta - 1
            (x.re() - x.im(), x.im() + x.im())
        } else {
            (x.re(), x.im())
        }
    }

    pub fn residue_image(&self, x: &PadicE) -> Result<Residue> {
        match self.valuation(x) {
            None => return Err(Error::NotAUnit(i64::MAX)),
            Some(0) => {}
            Some(v) => return Err(Error::NotAUnit(v)),
        }
        let p = self.prime() as u64;
        let (s, t) = self.integral_coords(x);
        let digit = |c: &PadicF| -> Result<u64> {
            match c.valuation() {
                None => Ok(0),
                Some(v) if v > 0 => Ok(0),
                Some(0) => Ok(c.unit_mod(1)? as u64),
                Some(v) => Err(Error::NotAUnit(v)),
            }
        };
        let (s, t) = (digit(&s)?, digit(&t)?);
        if self.is_ramified() {
            // theta = sqrt d reduces to 0 when v(d) = 1 and to 1 when p = 2, d = 3 mod 4
            let r = if self.d_valuation() == 1 { s } else { (s + t) % p };
            Ok(Residue::prime_field(p, r))
        } else if self.theta_is_half_integral() {
            // theta^2 = (d - 1)/4 + theta
            Ok(Residue::quadratic(p, ((self.d - 1) / 4).rem_euclid(2) as u64, 1, s, t))
        } else {
            Ok(Residue::quadratic(p, self.d.rem_euclid(p as i64) as u64, 0, s, t))
        }
    }

    /// Residue-field representatives inside the ring of integers.
    pub fn residue_reps(&self) -> Vec<PadicE> {
        let p = self.prime() as i64;
        if self.is_ramified() {
            (0..p).map(|s| self.elem(s)).collect()
        } else {
            let th = self.theta();
            let mut out = Vec::with_capacity((p * p) as usize);
            for t in 0..p {
                for s in 0..p {
                    out.push(self.elem(s) + th * self.elem(t));
                }
            }
            out
        }
    }

    /// Squareness in E, reduced to squareness in F: for `b != 0`,
    /// `a + b sqrt d` is a square iff its norm is a square `m^2` in F and
    /// `(a + m)/2` is a nonzero square for one of the two roots `m`.
    /// For `b = 0` the test is `a in F^2 or a in d F^2`.
    pub fn is_square(&self, x: &PadicE) -> Result<bool> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let a = x.re();
        if x.in_base_field() {
            if a.is_square()? {
                return Ok(true);
            }
            return a.div(&self.base.elem(self.d))?.is_square();
        }
        let n = x.norm();
        let m = match n.sqrt()? {
            Some(m) => m,
            None => return Ok(false),
        };
        let half = self.base.ratio(1, 2)?;
        let mut pending = None;
        for c in [(a + m) * half, (a - m) * half] {
            if c.is_zero() {
                pending = Some(Error::InsufficientPrecision { needed: 1, available: 0 });
                continue;
            }
            match c.is_square() {
                Ok(true) => return Ok(true),
                Ok(false) => {}
                Err(e) => pending = Some(e),
            }
        }
        match pending {
            Some(e) => Err(e),
            None => Ok(false),
        }
    }
}
