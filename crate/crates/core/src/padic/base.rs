//! Truncated elements of Q_p.
//!
//! An element is stored as `p^val * unit` with `unit` known modulo
//! `p^prec` (its relative precision). A relative precision of zero encodes
//! the distinguished zero element: either an exact zero or a value whose
//! digits all cancelled at the available precision.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::modarith::{
    inv_mod_pk, is_prime, least_nonresidue, legendre, max_precision, mul_mod, pow_u128, split_p,
    sqrt_mod_p,
};
use crate::error::{Error, Result};

/// Smallest working precision accepted by field constructors.
pub const MIN_PRECISION: u32 = 8;
/// Working precision used when none is configured.
pub const DEFAULT_PRECISION: u32 = 24;

#[derive(Clone, Copy, Debug)]
pub struct PadicF {
    p: u32,
    val: i64,
    unit: u128,
    prec: u32,
}

impl PadicF {
    pub fn zero(p: u32) -> Self {
        PadicF { p, val: 0, unit: 0, prec: 0 }
    }

    pub fn from_i64(p: u32, n: i64, prec: u32) -> Self {
        Self::from_i128(p, n as i128, prec)
    }

    pub fn from_i128(p: u32, n: i128, prec: u32) -> Self {
        if n == 0 || prec == 0 {
            return Self::zero(p);
        }
        let (v, rest) = split_p(n.unsigned_abs(), p);
        let m = pow_u128(p as u128, prec);
        let mut unit = rest % m;
        if n < 0 {
            unit = (m - unit) % m;
        }
        PadicF { p, val: v as i64, unit, prec }
    }

    /// `num / den` as an element of Q_p.
    pub fn from_ratio(p: u32, num: i128, den: i128, prec: u32) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let n = Self::from_i128(p, num, prec);
        let d = Self::from_i128(p, den, prec);
        Ok(n * d.inv()?)
    }

    /// `p^val * unit` where `unit` is reduced modulo `p^prec`; any factors of
    /// p in `unit` are moved into the valuation.
    pub fn from_parts(p: u32, val: i64, unit: u128, prec: u32) -> Self {
        if prec == 0 {
            return Self::zero(p);
        }
        let m = pow_u128(p as u128, prec);
        let unit = unit % m;
        if unit == 0 {
            return Self::zero(p);
        }
        let (k, rest) = split_p(unit, p);
        PadicF { p, val: val + k as i64, unit: rest, prec: prec - k }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.prec == 0
    }

    /// `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Unit part as an integer in `[0, p^prec)`.
    pub fn unit(&self) -> u128 {
        self.unit
    }

    /// Number of significant p-adic digits.
    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn abs_precision(&self) -> Option<i64> {
        self.valuation().map(|v| v + self.prec as i64)
    }

    pub fn is_integral(&self) -> bool {
        self.is_zero() || self.val >= 0
    }

    fn modulus(&self) -> u128 {
        pow_u128(self.p as u128, self.prec)
    }

    /// Unit part modulo `p^k`; fails when fewer than `k` digits are known.
    pub fn unit_mod(&self, k: u32) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.prec < k {
            return Err(Error::InsufficientPrecision { needed: k, available: self.prec });
        }
        Ok(self.unit % pow_u128(self.p as u128, k))
    }

    /// Image of a unit in the residue field F_p.
    pub fn residue(&self) -> Result<u64> {
        match self.valuation() {
            None => Err(Error::NotAUnit(i64::MAX)),
            Some(0) => Ok((self.unit % self.p as u128) as u64),
            Some(v) => Err(Error::NotAUnit(v)),
        }
    }

    /// Representative of the unit part in `(-p^prec/2, p^prec/2]`.
    pub fn balanced_unit(&self) -> i128 {
        if self.is_zero() {
            return 0;
        }
        let m = self.modulus();
        if self.unit > m / 2 {
            -((m - self.unit) as i128)
        } else {
            self.unit as i128
        }
    }

    /// Drops digits beyond relative precision `prec`.
    pub fn truncate(&self, prec: u32) -> Self {
        if self.is_zero() || prec >= self.prec {
            return *self;
        }
        Self::from_parts(self.p, self.val, self.unit, prec)
    }

    /// Multiplies by `p^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut r = *self;
        if !r.is_zero() {
            r.val += k;
        }
        r
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(PadicF {
            p: self.p,
            val: -self.val,
            unit: inv_mod_pk(self.unit, self.p, self.prec),
            prec: self.prec,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(*self * rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { *self };
        let mut e = e.unsigned_abs();
        let mut acc = PadicF::from_i64(self.p, 1, self.prec.max(1));
        if self.is_zero() {
            return if e == 0 { Ok(acc) } else { Ok(*self) };
        }
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Digits of the unit part needed to decide squareness.
    fn square_depth(&self) -> u32 {
        if self.p == 2 {
            3
        } else {
            1
        }
    }

    /// Decides whether the element is a square in Q_p: even valuation and
    /// a unit part that is a square modulo `p` (odd p) or modulo 8 (p = 2).
    pub fn is_square(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let u = self.unit_mod(self.square_depth())?;
        if self.val.rem_euclid(2) != 0 {
            return Ok(false);
        }
        Ok(if self.p == 2 { u == 1 } else { legendre(u, self.p) == 1 })
    }

    /// Square root by Hensel lifting, `None` for non-squares. For p = 2 the
    /// root is known to one digit less than the input.
    pub fn sqrt(&self) -> Result<Option<Self>> {
        if self.is_zero() {
            return Ok(Some(*self));
        }
        if !self.is_square()? {
            return Ok(None);
        }
        let p = self.p;
        let r = self.prec;
        let root = if p == 2 {
            let mut s: u128 = 1;
            // invariant: s^2 = u mod 2^k
            for k in 3..r {
                let mk1 = 1u128 << (k + 1);
                if mul_mod(s, s, mk1) != self.unit % mk1 {
                    s += 1u128 << (k - 1);
                }
            }
            let out_prec = r - 1;
            PadicF::from_parts(p, self.val / 2, s, out_prec)
        } else {
            let p128 = p as u128;
            let mut s = sqrt_mod_p(self.unit % p128, p).expect("residue checked");
            let mut known = 1u32;
            while known < r {
                known = (known * 2).min(r);
                let mk = pow_u128(p128, known);
                // s <- s - (s^2 - u) / (2 s)
                let f = (mul_mod(s, s, mk) + mk - self.unit % mk) % mk;
                let inv2s = inv_mod_pk(mul_mod(2, s, mk), p, known);
                s = (s + mk - mul_mod(f, inv2s, mk)) % mk;
            }
            PadicF::from_parts(p, self.val / 2, s, r)
        };
        Ok(Some(root))
    }
}

impl Add for PadicF {
    type Output = PadicF;
    fn add(self, rhs: PadicF) -> PadicF {
        assert_eq!(self.p, rhs.p, "operands from different fields");
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let v = self.val.min(rhs.val);
        let abs = (self.val + self.prec as i64).min(rhs.val + rhs.prec as i64);
        let width = (abs - v) as u32;
        let m = pow_u128(self.p as u128, width);
        let term = |x: &PadicF| -> u128 {
            let shift = (x.val - v) as u32;
            if shift >= width {
                0
            } else {
                mul_mod(x.unit % m, pow_u128(x.p as u128, shift), m)
            }
        };
        let s = (term(&self) + term(&rhs)) % m;
        PadicF::from_parts(self.p, v, s, width)
    }
}

impl Neg for PadicF {
    type Output = PadicF;
    fn neg(self) -> PadicF {
        if self.is_zero() {
            return self;
        }
        let m = self.modulus();
        PadicF { unit: (m - self.unit) % m, ..self }
    }
}

impl Sub for PadicF {
    type Output = PadicF;
    fn sub(self, rhs: PadicF) -> PadicF {
        self + (-rhs)
    }
}

impl Mul for PadicF {
    type Output = PadicF;
    fn mul(self, rhs: PadicF) -> PadicF {
        assert_eq!(self.p, rhs.p, "operands from different fields");
        if self.is_zero() || rhs.is_zero() {
            return PadicF::zero(self.p);
        }
        let prec = self.prec.min(rhs.prec);
        let m = pow_u128(self.p as u128, prec);
        PadicF {
            p: self.p,
            val: self.val + rhs.val,
            unit: mul_mod(self.unit % m, rhs.unit % m, m),
            prec,
        }
    }
}

/// Agreement to the precision both sides carry: the difference is zero.
impl PartialEq for PadicF {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && (*self - *other).is_zero()
    }
}

/// Serialized in the textual literal format.
impl Serialize for PadicF {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for PadicF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}^{} * {}", self.p, self.val, self.balanced_unit())
        }
    }
}

/// The field Q_p at a fixed working precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Qp {
    p: u32,
    precision: u32,
}

impl Qp {
    pub fn new(p: u32, precision: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let max = max_precision(p);
        if precision < MIN_PRECISION || precision > max {
            return Err(Error::InvalidField(format!(
                "precision {precision} outside [{MIN_PRECISION}, {max}] for p = {p}"
            )));
        }
        Ok(Qp { p, precision })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Qp::new(self.p, precision)
    }

    pub fn elem(&self, n: i64) -> PadicF {
        PadicF::from_i64(self.p, n, self.precision)
    }

    pub fn ratio(&self, num: i64, den: i64) -> Result<PadicF> {
        PadicF::from_ratio(self.p, num as i128, den as i128, self.precision)
    }

    pub fn zero(&self) -> PadicF {
        PadicF::zero(self.p)
    }

    pub fn one(&self) -> PadicF {
        self.elem(1)
    }

    /// `p^val * unit` at full working precision.
    pub fn from_val_unit(&self, val: i64, unit: u128) -> PadicF {
        PadicF::from_parts(self.p, val, unit, self.precision)
    }

    /// Smallest positive integer that is a unit non-square (odd p only).
    pub fn unit_nonresidue(&self) -> i64 {
        debug_assert!(self.p != 2);
        least_nonresidue(self.p) as i64
    }

    /// Integer representatives of F^x / F^x^2, indexed so that bit
    /// patterns of the index are coordinates over F_2: for odd p the
    /// basis is (u, p), for p = 2 it is (-1, 5, 2).
    pub fn square_class_reps(&self) -> Vec<i64> {
        if self.p == 2 {
            vec![1, -1, 5, -5, 2, -2, 10, -10]
        } else {
            let u = self.unit_nonresidue();
            let p = self.p as i64;
            vec![1, u, p, u * p]
        }
    }

    pub fn square_classes(&self) -> Vec<PadicF> {
        self.square_class_reps().into_iter().map(|n| self.elem(n)).collect()
    }

    /// Index into [`Qp::square_class_reps`] of the class of `x`.
    pub fn class_index(&self, x: &PadicF) -> Result<usize> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let odd_val = x.val.rem_euclid(2) as usize;
        if self.p == 2 {
            let u = x.unit_mod(3)?;
            let (neg, five) = match u {
                1 => (0, 0),
                7 => (1, 0),
                5 => (0, 1),
                3 => (1, 1),
                _ => unreachable!("odd unit"),
            };
            Ok(neg + 2 * five + 4 * odd_val)
        } else {
            let u = x.unit_mod(1)?;
            let nonres = usize::from(legendre(u, self.p) == -1);
            Ok(nonres + 2 * odd_val)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u32) -> Qp {
        Qp::new(p, 24).unwrap()
    }

    #[test]
    fn eight_times_inverse_of_two() {
        let f = Qp::new(2, 8).unwrap();
        let x = f.elem(8) * f.elem(2).inv().unwrap();
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.unit(), 1);
    }

    #[test]
    fn additive_inverse_is_zero() {
        let f = q(3);
        let x = f.ratio(17, 81).unwrap();
        assert!((x + (-x)).is_zero());
        assert_eq!((x + (-x)).valuation(), None);
    }

    #[test]
    fn cancellation_loses_precision() {
        let f = q(5);
        let x = f.elem(1) + f.from_val_unit(5, 1);
        let y = x - f.elem(1);
        assert_eq!(y.valuation(), Some(5));
        assert_eq!(y.precision(), 19);
    }

    #[test]
    fn squares() {
        assert!(q(2).elem(4).is_square().unwrap());
        assert!(!q(2).elem(5).is_square().unwrap());
        assert!(q(2).elem(17).is_square().unwrap());
        assert!(q(7).elem(2).is_square().unwrap());
        assert!(!q(7).elem(3).is_square().unwrap());
        assert!(!q(3).elem(3).is_square().unwrap());
    }

    #[test]
    fn five_is_not_a_square_mod_32() {
        // exhaustive oracle: 5 is not among u^2 mod 32
        assert!((0u32..32).all(|u| u * u % 32 != 5));
        assert!(!q(2).elem(5).is_square().unwrap());
    }

    #[test]
    fn sqrt_of_two_in_q7_squares_back() {
        let f = q(7);
        let r = f.elem(2).sqrt().unwrap().unwrap();
        assert_eq!(r.residue().unwrap() * r.residue().unwrap() % 7, 2);
        assert_eq!(r * r, f.elem(2));
        assert_eq!(r.precision(), 24);
    }

    #[test]
    fn two_adic_sqrt() {
        let f = q(2);
        let x = f.elem(-7 * 4);
        let r = x.sqrt().unwrap().unwrap();
        assert_eq!(r.valuation(), Some(1));
        assert_eq!(r * r, x);
        assert!(f.elem(3).sqrt().unwrap().is_none());
    }

    #[test]
    fn insufficient_precision_reported() {
        let x = PadicF::from_i64(2, 5, 2);
        assert_eq!(
            x.is_square(),
            Err(Error::InsufficientPrecision { needed: 3, available: 2 })
        );
    }

    #[test]
    fn residue_requires_unit() {
        let f = q(3);
        assert_eq!(f.elem(7).residue().unwrap(), 1);
        assert_eq!(f.elem(6).residue(), Err(Error::NotAUnit(1)));
    }

    #[test]
    fn class_indices_match_reps() {
        for p in [2u32, 3, 5, 7] {
            let f = q(p);
            for (i, x) in f.square_classes().iter().enumerate() {
                assert_eq!(f.class_index(x).unwrap(), i);
            }
        }
    }

    #[test]
    fn display_format() {
        let f = q(3);
        assert_eq!(f.elem(-18).to_string(), "3^2 * -2");
        assert_eq!(f.zero().to_string(), "0");
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(Qp::new(4, 24).is_err());
        assert!(Qp::new(7, 60).is_err());
        assert!(Qp::new(3, 2).is_err());
    }
}
