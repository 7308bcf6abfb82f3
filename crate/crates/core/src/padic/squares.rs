//! Square classes E^x / E^x^2 of a quadratic extension.

use super::ext::{PadicE, QpExt};
use super::field::LocalField;
use crate::error::{Error, Result};

/// Representatives of E^x / E^x^2, indexed so that bit `j` of an index is
/// the coordinate along `basis[j]`.
#[derive(Clone, Debug)]
pub struct ExtSquareClasses {
    ext: QpExt,
    basis: Vec<PadicE>,
    reps: Vec<PadicE>,
    inv_reps: Vec<PadicE>,
}

impl ExtSquareClasses {
    /// Order of E^x/E^x^2: 4 for odd residue characteristic, 16 over Q_2.
    pub fn expected_size(ext: &QpExt) -> usize {
        if ext.prime() == 2 {
            16
        } else {
            4
        }
    }

    pub fn compute(ext: &QpExt) -> Result<Self> {
        let target = Self::expected_size(ext);
        let mut basis: Vec<PadicE> = Vec::new();
        let mut reps = vec![ext.elem(1)];
        for cand in candidates(ext) {
            if reps.len() == target {
                break;
            }
            if ext.is_zero(&cand) {
                continue;
            }
            let cand = reduce_valuation(ext, cand)?;
            let mut fresh = true;
            for r in &reps {
                if ext.is_square(&(cand * r.inv()?))? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                let mut doubled = Vec::with_capacity(reps.len() * 2);
                doubled.extend(reps.iter().copied());
                for r in &reps {
                    doubled.push(reduce_valuation(ext, *r * cand)?);
                }
                reps = doubled;
                basis.push(cand);
            }
        }
        if reps.len() != target {
            return Err(Error::InvalidField(format!(
                "found {} square classes in Q_{}(sqrt {}), expected {target}",
                reps.len(),
                ext.prime(),
                ext.d()
            )));
        }
        let inv_reps = reps.iter().map(|r| r.inv()).collect::<Result<Vec<_>>>()?;
        Ok(ExtSquareClasses { ext: *ext, basis, reps, inv_reps })
    }

    pub fn ext(&self) -> &QpExt {
        &self.ext
    }

    pub fn basis(&self) -> &[PadicE] {
        &self.basis
    }

    pub fn reps(&self) -> &[PadicE] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Index of the unique representative `r` with `x / r` a square.
    pub fn index_of(&self, x: &PadicE) -> Result<usize> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        let mut pending = None;
        for (i, ri) in self.inv_reps.iter().enumerate() {
            match self.ext.is_square(&(*x * *ri)) {
                Ok(true) => return Ok(i),
                Ok(false) => {}
                Err(e) => pending = Some(e),
            }
        }
        Err(pending.unwrap_or_else(|| {
            Error::InvalidField("element matched no square class representative".into())
        }))
    }
}

/// Divides by an even power of the uniformizer so the valuation is 0 or 1.
fn reduce_valuation(ext: &QpExt, x: PadicE) -> Result<PadicE> {
    let v = ext.valuation(&x).ok_or(Error::ZeroElement)?;
    let k = v.div_euclid(2);
    if k == 0 {
        return Ok(x);
    }
    let pi = ext.uniformizer();
    Ok(x * LocalField::pow(ext, &pi, -2 * k)?)
}

fn candidates(ext: &QpExt) -> Vec<PadicE> {
    let mut out: Vec<PadicE> = ext.base().square_class_reps().into_iter().skip(1).map(|n| ext.elem(n)).collect();
    let pi = ext.uniformizer();
    let th = ext.theta();
    let one = ext.elem(1);
    out.push(pi);
    out.push(th);
    let mut pk = one;
    for _ in 0..6 {
        pk = pk * pi;
        out.push(one + pk);
        out.push(one + th * pk);
        out.push(one - pk);
    }
    for b in 1..=4 {
        for a in -4..=4 {
            out.push(ext.elem(a) + th * ext.elem(b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Qp;

    #[test]
    fn class_counts() {
        for (p, d) in [(2, -1), (2, 5), (2, -5), (2, 2), (2, -2), (2, 10), (2, -10), (3, 2), (3, 3), (5, 2), (5, 10)] {
            let e = QpExt::new(Qp::new(p, 24).unwrap(), d).unwrap();
            let sc = ExtSquareClasses::compute(&e).unwrap();
            assert_eq!(sc.len(), ExtSquareClasses::expected_size(&e));
            for (i, r) in sc.reps().iter().enumerate() {
                assert_eq!(sc.index_of(r).unwrap(), i);
                let v = e.valuation(r).unwrap();
                assert!((0..=1).contains(&v));
            }
        }
    }
}
