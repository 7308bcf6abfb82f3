use serde::Serialize;

use super::{CohResult, ModAut, Subgroup};
use crate::error::{Error, Result};

/// `H^i(Z/n, M)` where a generator acts by `sigma`: `H^0 = M^sigma`,
/// odd degrees `ker N / im(sigma - 1)`, even positive degrees
/// `M^sigma / im N`, with `N = 1 + sigma + ... + sigma^(n-1)`.
pub fn cyclic_cohomology(n: u64, m: &ModAut, i: u32) -> Result<CohResult> {
    if n == 0 || n % m.action_order() != 0 {
        return Err(Error::ActionOrderMismatch(n));
    }
    let s1 = m.sigma_power_minus_one(1);
    let norm = m.norm_table(n);
    match i {
        0 => m.subquotient(&m.kernel(&s1), &m.zero_subgroup()),
        i if i % 2 == 1 => m.subquotient(&m.kernel(&norm), &m.image(&s1)),
        _ => m.subquotient(&m.kernel(&s1), &m.image(&norm)),
    }
}

/// `(H^0(Z, M), H^1(Z, M))` = kernel and cokernel of `sigma - 1`. Higher
/// cohomology of Z vanishes.
pub fn z_cohomology(m: &ModAut) -> Result<(CohResult, CohResult)> {
    let s1 = m.sigma_power_minus_one(1);
    Ok((
        m.subquotient(&m.kernel(&s1), &m.zero_subgroup())?,
        m.subquotient(&m.whole(), &m.image(&s1))?,
    ))
}

/// Restriction `H^1(Z, M) -> H^1(kZ, M)`, i.e.
/// `M/(sigma - 1) -> M/(sigma^k - 1)` induced by `1 + sigma + ... + sigma^(k-1)`.
#[derive(Clone, Debug, Serialize)]
pub struct Restriction {
    pub k: u64,
    pub source: CohResult,
    pub target: CohResult,
    pub kernel: CohResult,
    /// No nonzero element of order 2 in the source maps to zero.
    pub injective_on_2_torsion: bool,
    /// The map on 2-torsion is a bijection `source[2] -> target[2]`.
    pub bijective_on_2_torsion: bool,
    #[serde(skip)]
    module: ModAut,
    #[serde(skip)]
    norm: Vec<usize>,
    #[serde(skip)]
    source_sub: Subgroup,
    #[serde(skip)]
    target_sub: Subgroup,
}

impl Restriction {
    /// Canonical representative of the image of the class of `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.module.coset_rep(self.norm[x], &self.target_sub)
    }

    /// Canonical representative of the class of `x` in the source.
    pub fn source_rep(&self, x: usize) -> usize {
        self.module.coset_rep(x, &self.source_sub)
    }

    pub fn target_rep(&self, x: usize) -> usize {
        self.module.coset_rep(x, &self.target_sub)
    }
}

pub fn restrict_h1(m: &ModAut, k: u64) -> Result<Restriction> {
    if k == 0 {
        return Err(Error::ConfigOutOfRange("restriction index must be positive".into()));
    }
    let src = m.image(&m.sigma_power_minus_one(1));
    let tgt = m.image(&m.sigma_power_minus_one(k));
    let norm = m.norm_table(k);
    let ker: Subgroup = (0..m.order()).map(|x| tgt[norm[x]]).collect();
    let two_tors = |sub: &Subgroup| -> Subgroup { (0..m.order()).map(|x| sub[m.mul(x, 2)]).collect() };
    let src2 = two_tors(&src);
    let injective = (0..m.order()).all(|x| !(src2[x] && ker[x]) || src[x]);
    let source = m.subquotient(&m.whole(), &src)?;
    let target = m.subquotient(&m.whole(), &tgt)?;
    // on 2-torsion, image lands in target[2]; bijective iff injective and the orders agree
    let bijective = injective && source.two_torsion_order() == target.two_torsion_order();
    Ok(Restriction {
        k,
        kernel: m.subquotient(&ker, &src)?,
        source,
        target,
        injective_on_2_torsion: injective,
        bijective_on_2_torsion: bijective,
        module: m.clone(),
        norm,
        source_sub: src,
        target_sub: tgt,
    })
}

/// Character group of a cyclic module, identified with `Z/n` through the
/// pairing `<x, chi> = x chi / n`, with the action `chi -> chi o sigma^-1`.
pub fn dual_module(m: &ModAut) -> Result<ModAut> {
    let [n] = m.orders() else {
        return Err(Error::InvalidModule("duals are implemented for cyclic modules".into()));
    };
    let s = m.generator_images()[0][0];
    let inv = (1..*n).find(|t| (s as u128 * *t as u128) % *n as u128 == 1 % *n as u128).unwrap_or(0);
    ModAut::cyclic(*n, inv as i64)
}

/// `<sigma x, sigma' chi> = <x, chi>` on all pairs of generators, where
/// `sigma'` is the action on the dual.
pub fn pairing_is_invariant(m: &ModAut, dual: &ModAut) -> bool {
    let (Some(&n), Some(&n2)) = (m.orders().first(), dual.orders().first()) else { return false };
    if n != n2 || m.orders().len() != 1 {
        return false;
    }
    (0..n).all(|x| {
        (0..n).all(|chi| {
            let lhs = (m.apply(x as usize) as u128 * dual.apply(chi as usize) as u128) % n as u128;
            lhs == (x as u128 * chi as u128) % n as u128
        })
    })
}

/// Hilbert 90 for `F_{q^2}^x` under Frobenius, as the count
/// `|ker N| = |im(sigma - 1)|` together with `H^1`.
#[derive(Clone, Debug, Serialize)]
pub struct Hilbert90 {
    pub q: u64,
    pub kernel_of_norm: u64,
    pub image_of_sigma_minus_one: u64,
    pub h1: CohResult,
}

impl Hilbert90 {
    pub fn holds(&self) -> bool {
        self.h1.is_zero() && self.kernel_of_norm == self.image_of_sigma_minus_one
    }
}

pub fn hilbert90(q: u64) -> Result<Hilbert90> {
    let m = ModAut::cyclic(q * q - 1, q as i64)?;
    let ker = m.kernel(&m.norm_table(2)).iter().filter(|&&b| b).count() as u64;
    let img = m.image(&m.sigma_power_minus_one(1)).iter().filter(|&&b| b).count() as u64;
    Ok(Hilbert90 { q, kernel_of_norm: ker, image_of_sigma_minus_one: img, h1: cyclic_cohomology(2, &m, 1)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_coefficients() {
        let z2 = ModAut::trivial(vec![2]).unwrap();
        assert_eq!(cyclic_cohomology(8, &z2, 2).unwrap(), CohResult::cyclic(2));
        assert!(cyclic_cohomology(9, &z2, 2).unwrap().is_zero());
        assert_eq!(cyclic_cohomology(8, &z2, 0).unwrap(), CohResult::cyclic(2));
    }

    #[test]
    fn action_order_must_divide() {
        let m = ModAut::cyclic(7, 3).unwrap();
        assert!(matches!(cyclic_cohomology(4, &m, 1), Err(Error::ActionOrderMismatch(4))));
    }

    #[test]
    fn frobenius_on_f9() {
        let m = ModAut::cyclic(8, 3).unwrap();
        assert!(cyclic_cohomology(2, &m, 1).unwrap().is_zero());
        let h = hilbert90(3).unwrap();
        assert_eq!((h.kernel_of_norm, h.image_of_sigma_minus_one), (4, 4));
        assert!(h.holds());
    }

    #[test]
    fn z_cohomology_examples() {
        let (h0, h1) = z_cohomology(&ModAut::trivial(vec![2]).unwrap()).unwrap();
        assert_eq!((h0, h1), (CohResult::cyclic(2), CohResult::cyclic(2)));
        let m = ModAut::cyclic(8, 3).unwrap();
        assert_eq!(z_cohomology(&m).unwrap().1, CohResult::cyclic(2));
        assert_eq!(z_cohomology(&dual_module(&m).unwrap()).unwrap().1, CohResult::cyclic(2));
    }

    #[test]
    fn restriction_examples() {
        let m = ModAut::cyclic(8, 3).unwrap();
        let r1 = restrict_h1(&m, 1).unwrap();
        assert!((0..8).all(|x| r1.apply(x) == r1.source_rep(x)));
        let r = restrict_h1(&m, 2).unwrap();
        assert_eq!(r.source, CohResult::cyclic(2));
        assert_eq!(r.target, CohResult::cyclic(8));
        assert_eq!(r.apply(1), 4);
        assert!(r.injective_on_2_torsion && r.bijective_on_2_torsion);
        let t = restrict_h1(&ModAut::trivial(vec![2]).unwrap(), 2).unwrap();
        assert_eq!(t.apply(1), 0);
        assert!(!t.injective_on_2_torsion);
    }

    #[test]
    fn dual_carries_inverse_action() {
        let m = ModAut::cyclic(48, 7).unwrap();
        let d = dual_module(&m).unwrap();
        assert_eq!(d, m.inverse());
        assert!(pairing_is_invariant(&m, &d));
        assert!(!pairing_is_invariant(&ModAut::cyclic(7, 3).unwrap(), &ModAut::cyclic(7, 3).unwrap()));
    }
}
