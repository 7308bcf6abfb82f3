//! Cohomology of finite cyclic groups, of Z, and of the groups
//! `F_{q^2}^x x| Z` with Z acting through Frobenius.
//!
//! Finite modules are handled by enumeration. Cohomology of Z is computed
//! exactly as kernel and cokernel of `sigma - 1`; Q/Z coefficients stand in
//! for C^x, whose finite-order part they model exactly.

mod brute;
mod cyclic;
mod gprime;
mod module;

use std::fmt;

use serde::Serialize;

pub use brute::{brute_force_h2, parse_group_spec, BruteH2, FiniteGroup, MAX_BRUTE_ORDER};
pub use cyclic::{cyclic_cohomology, dual_module, hilbert90, pairing_is_invariant, restrict_h1, z_cohomology, Hilbert90, Restriction};
pub use gprime::{
    assemble_h2_gprime, frobenius_module, bockstein_check, bockstein_direct_product, h1_gprime_qz, kunneth_h2_mx, kunneth_truncation_check,
    lemma_l_check, Bockstein, Coeffs, KunnethTruncation,
};
pub use module::{ModAut, Subgroup, MAX_MODULE_ORDER};

/// A finitely generated torsion abelian group: cyclic invariant factors
/// (each dividing the next) plus a number of Q/Z summands.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CohResult {
    pub factors: Vec<u64>,
    pub divisible: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u8>>>,
}

impl CohResult {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn elementary_2(rank: u32) -> Self {
        CohResult { factors: vec![2; rank as usize], ..Self::default() }
    }

    pub fn cyclic(n: u64) -> Self {
        Self::from_elementary(&module::factor(n).into_iter().map(|(l, e)| (l, vec![e])).collect::<Vec<_>>())
    }

    /// Assembles invariant factors from prime-power exponents per prime.
    pub fn from_elementary(parts: &[(u64, Vec<u32>)]) -> Self {
        let len = parts.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
        let mut factors = vec![1u64; len];
        for (ell, exps) in parts {
            let mut exps = exps.clone();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (k, e) in exps.iter().enumerate() {
                factors[k] *= ell.pow(*e);
            }
        }
        factors.retain(|&f| f > 1);
        factors.sort_unstable();
        CohResult { factors, divisible: 0, generators: None }
    }

    /// Direct sum.
    pub fn sum(&self, other: &CohResult) -> CohResult {
        let mut parts: Vec<(u64, Vec<u32>)> = Vec::new();
        for f in self.factors.iter().chain(&other.factors) {
            for (ell, e) in module::factor(*f) {
                match parts.iter_mut().find(|(l, _)| *l == ell) {
                    Some((_, v)) => v.push(e),
                    None => parts.push((ell, vec![e])),
                }
            }
        }
        let mut r = Self::from_elementary(&parts);
        r.divisible = self.divisible + other.divisible;
        r
    }

    /// Order, or `None` when a Q/Z summand is present.
    pub fn order(&self) -> Option<u64> {
        (self.divisible == 0).then(|| self.factors.iter().product())
    }

    pub fn is_zero(&self) -> bool {
        self.factors.is_empty() && self.divisible == 0
    }

    /// `|X[2]|`.
    pub fn two_torsion_order(&self) -> u64 {
        1 << (self.factors.iter().filter(|f| *f % 2 == 0).count() as u32 + self.divisible)
    }

    /// `|X / 2X|`; Q/Z summands are 2-divisible.
    pub fn mod_two_order(&self) -> u64 {
        1 << self.factors.iter().filter(|f| *f % 2 == 0).count()
    }
}

impl fmt::Display for CohResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.factors.iter().map(|n| format!("Z/{n}")).collect();
        parts.extend((0..self.divisible).map(|_| "Q/Z".to_string()));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariant_factor_normal_form() {
        assert_eq!(CohResult::cyclic(12).factors, vec![12]);
        assert_eq!(CohResult::cyclic(6).sum(&CohResult::cyclic(4)).factors, vec![2, 12]);
        assert_eq!(CohResult::cyclic(1), CohResult::zero());
        assert_eq!(CohResult::elementary_2(2).to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn torsion_counts() {
        let r = CohResult { factors: vec![4], divisible: 1, generators: None };
        assert_eq!(r.two_torsion_order(), 4);
        assert_eq!(r.mod_two_order(), 2);
        assert_eq!(r.order(), None);
    }
}
