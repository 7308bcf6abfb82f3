use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::base::{PadicF, Qp};
use super::ext::{PadicE, QpExt};
use super::residue::Residue;
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FieldKind {
    Base,
    Quadratic { d: i64 },
}

/// Serializable description of F = Q_p or E = Q_p(sqrt d).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub kind: FieldKind,
    pub precision: u32,
}

impl FieldDesc {
    pub fn base(&self) -> Result<Qp> {
        Qp::new(self.p, self.precision)
    }

    /// The extension, or `None` for a base-field descriptor.
    pub fn ext(&self) -> Result<Option<QpExt>> {
        match self.kind {
            FieldKind::Base => Ok(None),
            FieldKind::Quadratic { d } => Ok(Some(QpExt::new(self.base()?, d)?)),
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Base => write!(f, "Q_{}", self.p),
            FieldKind::Quadratic { d } => write!(f, "Q_{}(sqrt {})", self.p, d),
        }
    }
}

/// Common interface of Q_p and Q_p(sqrt d) used by the generic symbol
/// algorithms.
pub trait LocalField: Copy + fmt::Debug + Send + Sync {
    type Elem: Copy
        + fmt::Debug
        + fmt::Display
        + PartialEq
        + Send
        + Sync
        + Add<Output = Self::Elem>
        + Sub<Output = Self::Elem>
        + Mul<Output = Self::Elem>
        + Neg<Output = Self::Elem>;

    fn desc(&self) -> FieldDesc;
    fn prime(&self) -> u32;
    fn precision(&self) -> u32;
    fn elem(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn valuation(&self, x: &Self::Elem) -> Option<i64>;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn uniformizer(&self) -> Self::Elem;
    /// Normalized valuation of 2.
    fn two_valuation(&self) -> i64;
    fn residue_reps(&self) -> Vec<Self::Elem>;
    fn residue_image(&self, x: &Self::Elem) -> Result<Residue>;
    fn is_square(&self, x: &Self::Elem) -> Result<bool>;

    fn pow(&self, x: &Self::Elem, e: i64) -> Result<Self::Elem> {
        let base = if e < 0 { self.inv(x)? } else { *x };
        let mut acc = self.elem(1);
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

    fn div(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        Ok(*x * self.inv(y)?)
    }
}

impl LocalField for Qp {
    type Elem = PadicF;

    fn desc(&self) -> FieldDesc {
        FieldDesc { p: self.prime(), kind: FieldKind::Base, precision: Qp::precision(self) }
    }
    fn prime(&self) -> u32 {
        Qp::prime(self)
    }
    fn precision(&self) -> u32 {
        Qp::precision(self)
    }
    fn elem(&self, n: i64) -> PadicF {
        Qp::elem(self, n)
    }
    fn is_zero(&self, x: &PadicF) -> bool {
        x.is_zero()
    }
    fn valuation(&self, x: &PadicF) -> Option<i64> {
        x.valuation()
    }
    fn inv(&self, x: &PadicF) -> Result<PadicF> {
        x.inv()
    }
    fn uniformizer(&self) -> PadicF {
        Qp::elem(self, self.prime() as i64)
    }
    fn two_valuation(&self) -> i64 {
        i64::from(self.prime() == 2)
    }
    fn residue_reps(&self) -> Vec<PadicF> {
        (0..self.prime() as i64).map(|s| Qp::elem(self, s)).collect()
    }
    fn residue_image(&self, x: &PadicF) -> Result<Residue> {
        Ok(Residue::prime_field(self.prime() as u64, x.residue()?))
    }
    fn is_square(&self, x: &PadicF) -> Result<bool> {
        x.is_square()
    }
}

impl LocalField for QpExt {
    type Elem = PadicE;

    fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.prime(),
            kind: FieldKind::Quadratic { d: self.d() },
            precision: QpExt::precision(self),
        }
    }
    fn prime(&self) -> u32 {
        QpExt::prime(self)
    }
    fn precision(&self) -> u32 {
        QpExt::precision(self)
    }
    fn elem(&self, n: i64) -> PadicE {
        QpExt::elem(self, n)
    }
    fn is_zero(&self, x: &PadicE) -> bool {
        x.is_zero()
    }
    fn valuation(&self, x: &PadicE) -> Option<i64> {
        QpExt::valuation(self, x)
    }
    fn inv(&self, x: &PadicE) -> Result<PadicE> {
        x.inv()
    }
    fn uniformizer(&self) -> PadicE {
        QpExt::uniformizer(self)
    }
    fn two_valuation(&self) -> i64 {
        if self.prime() == 2 {
            self.ramification_index()
        } else {
            0
        }
    }
    fn residue_reps(&self) -> Vec<PadicE> {
        QpExt::residue_reps(self)
    }
    fn residue_image(&self, x: &PadicE) -> Result<Residue> {
        QpExt::residue_image(self, x)
    }
    fn is_square(&self, x: &PadicE) -> Result<bool> {
        QpExt::is_square(self, x)
    }
}
