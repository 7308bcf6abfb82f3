//! Quadratic Hilbert symbols over Q_p and Q_p(sqrt d).
//!
//! Three independent backends are provided: the tame formula for odd
//! residue characteristic, the closed form over Q_2, and a conic-solvability
//! search valid everywhere. The dispatcher [`hilbert`] picks the tame
//! formula for odd p, the closed form over Q_2, and for 2-adic quadratic
//! extensions looks up a square-class table filled once by the conic
//! oracle.

mod conic;
mod norm_group;
mod q2;
mod table;
mod tame;

use serde::Serialize;

pub use conic::{hilbert_conic_oracle, hilbert_conic_with_budget, ConicOutcome, DEFAULT_NODE_BUDGET};
pub use norm_group::{base_symbol_table, lemma_f_witness, norm_group, norm_group_from_table, NormGroup};
pub use q2::hilbert_q2;
pub use table::{ext_symbols, ExtSymbols, SymbolTable};
pub use tame::hilbert_tame;

use crate::error::Result;
use crate::padic::{LocalField, PadicE, PadicF, Qp, QpExt};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Tame,
    Q2,
    Conic,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolEval {
    pub sign: Sign,
    pub backend: Backend,
    /// Digits (powers of the maximal ideal) the answer depends on.
    pub depth: u32,
}

/// Fields carrying a default Hilbert-symbol backend.
pub trait SymbolField: LocalField {
    fn hilbert_eval(&self, x: &Self::Elem, y: &Self::Elem) -> Result<SymbolEval>;
}

impl SymbolField for Qp {
    fn hilbert_eval(&self, x: &PadicF, y: &PadicF) -> Result<SymbolEval> {
        if self.prime() == 2 {
            Ok(SymbolEval { sign: hilbert_q2(x, y)?, backend: Backend::Q2, depth: 3 })
        } else {
            Ok(SymbolEval { sign: hilbert_tame(self, x, y)?, backend: Backend::Tame, depth: 1 })
        }
    }
}

impl SymbolField for QpExt {
    fn hilbert_eval(&self, x: &PadicE, y: &PadicE) -> Result<SymbolEval> {
        if self.prime() == 2 {
            let t = ext_symbols(self)?;
            Ok(SymbolEval { sign: t.symbol(x, y)?, backend: Backend::Table, depth: t.table.depth })
        } else {
            Ok(SymbolEval { sign: hilbert_tame(self, x, y)?, backend: Backend::Tame, depth: 1 })
        }
    }
}

pub fn hilbert_eval<K: SymbolField>(k: &K, x: &K::Elem, y: &K::Elem) -> Result<SymbolEval> {
    k.hilbert_eval(x, y)
}

/// The quadratic Hilbert symbol `(x, y)_K`.
pub fn hilbert<K: SymbolField>(k: &K, x: &K::Elem, y: &K::Elem) -> Result<Sign> {
    Ok(k.hilbert_eval(x, y)?.sign)
}
