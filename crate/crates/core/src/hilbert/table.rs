use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::conic::hilbert_conic_oracle;
use super::SymbolEval;
use crate::error::Result;
use crate::padic::{ExtSquareClasses, FieldDesc, LocalField, PadicE, QpExt};
use crate::sign::Sign;

/// Hilbert symbol on square-class indices. Index bits are F_2-coordinates,
/// so `class(i) * class(j) = class(i ^ j)`.
#[derive(Clone, Debug, Serialize)]
pub struct SymbolTable {
    pub field: FieldDesc,
    pub size: usize,
    table: Vec<Sign>,
    /// Largest certification depth used while filling the table.
    pub depth: u32,
}

impl SymbolTable {
    /// Fills the upper triangle with `f` (in parallel) and mirrors it.
    pub fn from_fn<F>(field: FieldDesc, size: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> Result<SymbolEval> + Sync,
    {
        let pairs: Vec<(usize, usize)> = (0..size).flat_map(|i| (i..size).map(move |j| (i, j))).collect();
        let vals = pairs.par_iter().map(|&(i, j)| f(i, j)).collect::<Result<Vec<_>>>()?;
        let mut table = vec![Sign::Plus; size * size];
        let mut depth = 0;
        for (&(i, j), ev) in pairs.iter().zip(&vals) {
            table[i * size + j] = ev.sign;
            table[j * size + i] = ev.sign;
            depth = depth.max(ev.depth);
        }
        Ok(SymbolTable { field, size, table, depth })
    }

    pub fn get(&self, i: usize, j: usize) -> Sign {
        self.table[i * self.size + j]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_bimultiplicative(&self) -> bool {
        (0..self.size).all(|i| {
            (0..self.size).all(|j| (0..self.size).all(|k| self.get(i ^ j, k) == self.get(i, k) * self.get(j, k)))
        })
    }

    /// `(c, -c) = +1` for every class, given the index of `-c` for each `c`.
    pub fn neg_pairing_trivial(&self, neg: &[usize]) -> bool {
        (0..self.size).all(|c| self.get(c, neg[c]).is_plus())
    }

    /// Every nontrivial class pairs to -1 with some class.
    pub fn is_nondegenerate(&self) -> bool {
        (1..self.size).all(|i| (0..self.size).any(|j| self.get(i, j) == Sign::Minus))
    }
}

/// Square classes of a quadratic extension together with their symbol table.
#[derive(Debug)]
pub struct ExtSymbols {
    pub classes: ExtSquareClasses,
    pub table: SymbolTable,
}

impl ExtSymbols {
    /// Builds the table from the conic oracle on class representatives.
    pub fn build(ext: &QpExt) -> Result<Self> {
        let classes = ExtSquareClasses::compute(ext)?;
        let reps = classes.reps().to_vec();
        let table = SymbolTable::from_fn(ext.desc(), reps.len(), |i, j| {
            let o = hilbert_conic_oracle(ext, &reps[i], &reps[j])?;
            Ok(SymbolEval { sign: o.sign, backend: super::Backend::Conic, depth: o.depth })
        })?;
        Ok(ExtSymbols { classes, table })
    }

    /// Index of `-c` for each class `c`.
    pub fn negation_map(&self) -> Result<Vec<usize>> {
        self.classes.reps().iter().map(|r| self.classes.index_of(&-*r)).collect()
    }

    pub fn symbol(&self, x: &PadicE, y: &PadicE) -> Result<Sign> {
        Ok(self.table.get(self.classes.index_of(x)?, self.classes.index_of(y)?))
    }
}

type Slot = Arc<Mutex<Option<Arc<ExtSymbols>>>>;

/// Process-wide table per extension, built once on first use.
pub fn ext_symbols(ext: &QpExt) -> Result<Arc<ExtSymbols>> {
    static CACHE: OnceLock<Mutex<HashMap<QpExt, Slot>>> = OnceLock::new();
    let slot = {
        let mut map = CACHE.get_or_init(Default::default).lock().expect("symbol cache poisoned");
        map.entry(*ext).or_default().clone()
    };
    let mut guard = slot.lock().expect("symbol slot poisoned");
    if let Some(t) = guard.as_ref() {
        return Ok(t.clone());
    }
    let built = Arc::new(ExtSymbols::build(ext)?);
    *guard = Some(built.clone());
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Qp;

    #[test]
    fn two_adic_tables_are_nondegenerate_forms() {
        let f = Qp::new(2, 24).unwrap();
        for d in f.square_class_reps().into_iter().skip(1) {
            let e = QpExt::new(f, d).unwrap();
            let t = ext_symbols(&e).unwrap();
            assert_eq!(t.table.size, 16);
            assert!(t.table.is_symmetric(), "d = {d}");
            assert!(t.table.is_bimultiplicative(), "d = {d}");
            assert!(t.table.is_nondegenerate(), "d = {d}");
            assert!(t.table.neg_pairing_trivial(&t.negation_map().unwrap()), "d = {d}");
        }
    }
}
