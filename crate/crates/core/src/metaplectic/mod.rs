//! The Kubota cocycle on SL2(E), its extension to GL2(E), and splittings.
//!
//! With `x(g)` the lower-left entry of `g` when nonzero and the lower-right
//! entry otherwise, the cocycles are
//!
//! ```text
//! beta_SL(g1, g2) = ( x(g1 g2)/x(g1), x(g1 g2)/x(g2) )_E
//! beta_GL(g1, g2) = ( x(g1 g2)/x(g1), x(g1 g2)/(x(g2) det g1) )_E
//! ```
//!
//! The GL2 form is the cocycle of `SL2(E)~ x| E^x` with `E^x` embedded as
//! `diag(e, 1)`, on which it is identically trivial.

mod matrix;
mod transport;

use serde::Serialize;

pub use matrix::Mat2E;
pub use transport::{conjugation_transport, CochainCert, PairCheck};

use crate::error::{Error, Result};
use crate::hilbert::hilbert_eval;
use crate::padic::{PadicE, QpExt};
use crate::sign::Sign;

/// Which cover a cocycle value refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Sl2,
    Gl2,
}

/// A cocycle value with the symbol certification depth behind it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleEval {
    pub sign: Sign,
    pub depth: u32,
}

pub fn kubota_x(g: &Mat2E) -> Result<PadicE> {
    let x = if g.c.is_zero() { g.d } else { g.c };
    if x.is_zero() {
        return Err(Error::SingularMatrix);
    }
    Ok(x)
}

fn symbol(e: &QpExt, x: &PadicE, y: &PadicE) -> Result<CocycleEval> {
    let ev = hilbert_eval(e, x, y)?;
    Ok(CocycleEval { sign: ev.sign, depth: ev.depth })
}

pub fn cocycle_sl2_eval(e: &QpExt, g1: &Mat2E, g2: &Mat2E) -> Result<CocycleEval> {
    let one = e.elem(1);
    for det in [g1.det(), g2.det()] {
        // a determinant lost to cancellation says nothing about membership
        if det.is_zero() {
            return Err(Error::InsufficientPrecision { needed: 1, available: 0 });
        }
        if det != one {
            return Err(Error::NotSpecialLinear);
        }
    }
    let x12 = kubota_x(&g1.mul(g2))?;
    symbol(e, &x12.div(&kubota_x(g1)?)?, &x12.div(&kubota_x(g2)?)?)
}

pub fn cocycle_gl2_eval(e: &QpExt, g1: &Mat2E, g2: &Mat2E) -> Result<CocycleEval> {
    let x12 = kubota_x(&g1.mul(g2))?;
    let second = x12.div(&(kubota_x(g2)? * g1.det()))?;
    symbol(e, &x12.div(&kubota_x(g1)?)?, &second)
}

pub fn cocycle_sl2(e: &QpExt, g1: &Mat2E, g2: &Mat2E) -> Result<Sign> {
    Ok(cocycle_sl2_eval(e, g1, g2)?.sign)
}

pub fn cocycle_gl2(e: &QpExt, g1: &Mat2E, g2: &Mat2E) -> Result<Sign> {
    Ok(cocycle_gl2_eval(e, g1, g2)?.sign)
}

pub fn cocycle(e: &QpExt, group: Group, g1: &Mat2E, g2: &Mat2E) -> Result<Sign> {
    match group {
        Group::Sl2 => cocycle_sl2(e, g1, g2),
        Group::Gl2 => cocycle_gl2(e, g1, g2),
    }
}

/// `b(g1, g2) b(g1 g2, g3) = b(g1, g2 g3) b(g2, g3)`.
pub fn verify_cocycle_identity(e: &QpExt, group: Group, g1: &Mat2E, g2: &Mat2E, g3: &Mat2E) -> Result<bool> {
    let lhs = cocycle(e, group, g1, g2)? * cocycle(e, group, &g1.mul(g2), g3)?;
    let rhs = cocycle(e, group, g1, &g2.mul(g3))? * cocycle(e, group, g2, g3)?;
    Ok(lhs == rhs)
}

/// Element `(g, zeta)` of the two-fold cover of GL2(E).
#[derive(Clone, Copy, Debug, Serialize)]
pub struct MetaElem {
    pub g: Mat2E,
    pub zeta: Sign,
}

impl MetaElem {
    pub fn new(g: Mat2E, zeta: Sign) -> Self {
        MetaElem { g, zeta }
    }
}

impl PartialEq for MetaElem {
    fn eq(&self, o: &MetaElem) -> bool {
        self.zeta == o.zeta && self.g == o.g
    }
}

pub fn meta_mul(e: &QpExt, m1: &MetaElem, m2: &MetaElem) -> Result<MetaElem> {
    let beta = cocycle_gl2(e, &m1.g, &m2.g)?;
    Ok(MetaElem { g: m1.g.mul(&m2.g), zeta: m1.zeta * m2.zeta * beta })
}

/// The section `g -> (g, +1)` over GL2(F).
pub fn splitting_gl2f(g: &Mat2E) -> Result<MetaElem> {
    if !g.in_base_field() {
        return Err(Error::EntryNotInBaseField);
    }
    Ok(MetaElem { g: *g, zeta: Sign::Plus })
}
