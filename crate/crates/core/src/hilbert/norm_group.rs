//! Norm groups of quadratic extensions as subgroups of F^x / F^x^2.

use serde::Serialize;

use super::{hilbert_eval, SymbolTable};
use crate::error::{Error, Result};
use crate::padic::{LocalField, PadicF, Qp};

/// Square-class table of Q_p computed with the closed-form backend.
pub fn base_symbol_table(f: &Qp) -> Result<SymbolTable> {
    let reps = f.square_classes();
    SymbolTable::from_fn(f.desc(), reps.len(), |i, j| hilbert_eval(f, &reps[i], &reps[j]))
}

/// Classes of F^x/F^x^2 that are norms from F(sqrt d): the kernel of
/// `(d, .)_F`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct NormGroup {
    pub p: u32,
    pub d: i64,
    pub classes: Vec<usize>,
    /// Number of square classes of F.
    pub ambient: usize,
}

impl NormGroup {
    pub fn contains(&self, class: usize) -> bool {
        self.classes.contains(&class)
    }

    pub fn index(&self) -> usize {
        self.ambient / self.classes.len()
    }
}

pub fn norm_group(f: &Qp, d: i64) -> Result<NormGroup> {
    let table = base_symbol_table(f)?;
    norm_group_from_table(f, &table, d)
}

pub fn norm_group_from_table(f: &Qp, table: &SymbolTable, d: i64) -> Result<NormGroup> {
    let dc = f.class_index(&f.elem(d))?;
    if dc == 0 {
        return Err(Error::InvalidField(format!("d = {d} is a square")));
    }
    let classes: Vec<usize> = (0..table.size).filter(|&c| table.get(dc, c).is_plus()).collect();
    let g = NormGroup { p: f.prime(), d, classes, ambient: table.size };
    // closed under the F_2 group law and of index 2
    let closed = g.classes.iter().all(|&a| g.classes.iter().all(|&b| g.contains(a ^ b)));
    if !closed || g.classes.len() * 2 != table.size {
        return Err(Error::InvalidField(format!("norm group of sqrt({d}) is not an index-2 subgroup")));
    }
    Ok(g)
}

/// A non-square `d` whose norm group contains the classes of both `f1`
/// and `f2`. Over Q_2 the class group has F_2-dimension 3, so the span of
/// two classes always lies in one of the seven index-2 subgroups.
pub fn lemma_f_witness(f: &Qp, f1: &PadicF, f2: &PadicF) -> Result<i64> {
    if f.prime() != 2 {
        return Err(Error::InvalidField("witness search is for residue characteristic 2".into()));
    }
    let table = base_symbol_table(f)?;
    let c1 = f.class_index(f1)?;
    let c2 = f.class_index(f2)?;
    for d in f.square_class_reps().into_iter().skip(1) {
        let g = norm_group_from_table(f, &table, d)?;
        if g.contains(c1) && g.contains(c2) {
            return Ok(d);
        }
    }
    Err(Error::InvalidField("no quadratic extension has both classes as norms".into()))
}
