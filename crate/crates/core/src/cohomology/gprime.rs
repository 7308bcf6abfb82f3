//! `G' = F_{q^2}^x x| Z` with `1 in Z` acting by Frobenius `x -> x^q`.
//!
//! `F_{q^2}^x` is written additively as `M = Z/(q^2 - 1)` (exponents of a
//! primitive root), so Frobenius is multiplication by `q`. Since Z has
//! cohomological dimension 1, the Hochschild-Serre sequence collapses to
//! `0 -> H^1(Z, H^1(M, A)) -> H^2(G', A) -> H^2(M, A)^Z -> 0`.

use serde::Serialize;

use super::brute::{brute_force_h2, FiniteGroup};
use super::cyclic::{cyclic_cohomology, dual_module, restrict_h1, z_cohomology};
use super::{CohResult, ModAut};
use crate::error::{Error, Result};
use crate::padic::modarith::prime_power;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coeffs {
    Z2,
    Qz,
}

fn check_q(q: u64) -> Result<()> {
    if q % 2 == 0 || prime_power(q).is_none() {
        return Err(Error::ConfigOutOfRange(format!("q = {q} is not an odd prime power")));
    }
    Ok(())
}

fn inverse_mod(a: u64, n: u64) -> u64 {
    (1..n).find(|t| (a as u128 * *t as u128) % n as u128 == 1).unwrap_or(0)
}

/// `F_{q^2}^x` with Frobenius.
pub fn frobenius_module(q: u64) -> Result<ModAut> {
    ModAut::cyclic(q * q - 1, q as i64)
}

/// `H^2(G', A)` for `A = Z/2` or `A = Q/Z` (trivial action).
///
/// For a cyclic group `M` of order `n`: `H^1(M, A) = A[n]`, on which
/// Frobenius acts through the inverse of its action on `M`, and
/// `H^2(M, A) = A/nA`. For `A = Q/Z` the second term vanishes and the first
/// is the character group of `M`.
pub fn assemble_h2_gprime(q: u64, coeffs: Coeffs) -> Result<CohResult> {
    check_q(q)?;
    let n = q * q - 1;
    let qinv = inverse_mod(q % n, n);
    match coeffs {
        Coeffs::Z2 => {
            // A[n] = Z/2 and A/nA = Z/2 since n is even
            let h1m = ModAut::cyclic(2, qinv as i64)?;
            let h2m = ModAut::cyclic(2, q as i64)?;
            let e11 = z_cohomology(&h1m)?.1;
            let e02 = z_cohomology(&h2m)?.0;
            // both ends are F_2-spaces and the sequence is F_2-linear
            Ok(e11.sum(&e02))
        }
        Coeffs::Qz => {
            let dual = dual_module(&frobenius_module(q)?)?;
            Ok(z_cohomology(&dual)?.1)
        }
    }
}

/// `H^1(G', Q/Z) = Hom(G'^ab, Q/Z)` with `G'^ab = M/(sigma - 1)M x Z`.
pub fn h1_gprime_qz(q: u64) -> Result<CohResult> {
    check_q(q)?;
    let m = frobenius_module(q)?;
    let coinvariants = z_cohomology(&m)?.1;
    // a finite abelian group is isomorphic to its dual; Hom(Z, Q/Z) = Q/Z
    Ok(CohResult { divisible: 1, ..coinvariants })
}

/// `H^2(F_{q^2}^x x Z, Z/2) = H^2(M) + H^1(M) (x) H^1(Z)`.
pub fn kunneth_h2_mx(q: u64) -> Result<CohResult> {
    check_q(q)?;
    let n = q * q - 1;
    let a = ModAut::trivial(vec![2])?;
    let h2 = cyclic_cohomology(n, &a, 2)?;
    let h1 = cyclic_cohomology(n, &a, 1)?;
    let h1z = z_cohomology(&a)?.1;
    let tensor = (h1.factors.len() * h1z.factors.len()) as u32;
    Ok(h2.sum(&CohResult::elementary_2(tensor)))
}

/// Brute force on the finite truncation `M x Z/m`. Künneth over F_2 gives
/// `H^2(M x Z/m) = H^2(M) + H^1(M) (x) H^1(Z/m) + H^2(Z/m)`; the last term
/// (one dimension for even `m`) has no counterpart for Z and is the
/// correction subtracted before comparing.
#[derive(Clone, Debug, Serialize)]
pub struct KunnethTruncation {
    pub q: u64,
    pub m: u64,
    pub brute_dim: usize,
    pub correction: usize,
    pub kunneth_dim: usize,
}

impl KunnethTruncation {
    pub fn agrees(&self) -> bool {
        self.brute_dim - self.correction == self.kunneth_dim
    }
}

pub fn kunneth_truncation_check(q: u64, m: u64) -> Result<KunnethTruncation> {
    check_q(q)?;
    let g = FiniteGroup::product(&FiniteGroup::cyclic((q * q - 1) as usize)?, &FiniteGroup::cyclic(m as usize)?)?;
    let brute = brute_force_h2(&g, false)?.result.factors.len();
    let correction = cyclic_cohomology(m, &ModAut::trivial(vec![2])?, 2)?.factors.len();
    Ok(KunnethTruncation { q, m, brute_dim: brute, correction, kunneth_dim: kunneth_h2_mx(q)?.factors.len() })
}

/// Restriction `H^1(Z, M^) -> H^1(2Z, M^)` on the character group of
/// `F_{q^2}^x` (inverse Frobenius action) is bijective on 2-torsion.
pub fn lemma_l_check(q: u64) -> Result<bool> {
    check_q(q)?;
    let dual = dual_module(&frobenius_module(q)?)?;
    let r = restrict_h1(&dual, 2)?;
    Ok(r.injective_on_2_torsion && r.bijective_on_2_torsion)
}

/// Order bookkeeping of `0 -> H^1(G, C^x)/2 -> H^2(G, Z/2) -> H^2(G, C^x)[2] -> 0`.
#[derive(Clone, Debug, Serialize)]
pub struct Bockstein {
    pub q: u64,
    pub h2_z2: u64,
    pub h1_qz_mod_2: u64,
    pub h2_qz_2_torsion: u64,
}

impl Bockstein {
    pub fn holds(&self) -> bool {
        self.h2_z2 == self.h1_qz_mod_2 * self.h2_qz_2_torsion
    }
}

pub fn bockstein_check(q: u64) -> Result<Bockstein> {
    let h2_z2 = assemble_h2_gprime(q, Coeffs::Z2)?.order().ok_or(Error::InvalidModule("infinite H^2".into()))?;
    Ok(Bockstein {
        q,
        h2_z2,
        h1_qz_mod_2: h1_gprime_qz(q)?.mod_two_order(),
        h2_qz_2_torsion: assemble_h2_gprime(q, Coeffs::Qz)?.two_torsion_order(),
    })
}

/// The same bookkeeping for `F_{q^2}^x x Z` with trivial action:
/// `H^1(Q/Z) = M^ + Q/Z` and `H^2(Q/Z) = H^1(M, Q/Z) (x) H^1(Z) = M^`.
pub fn bockstein_direct_product(q: u64) -> Result<Bockstein> {
    check_q(q)?;
    let m = CohResult::cyclic(q * q - 1);
    let h1 = CohResult { divisible: 1, ..m.clone() };
    Ok(Bockstein {
        q,
        h2_z2: kunneth_h2_mx(q)?.order().unwrap_or(0),
        h1_qz_mod_2: h1.mod_two_order(),
        h2_qz_2_torsion: m.two_torsion_order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_with_z2_coefficients_has_order_four() {
        for q in [3, 5, 7, 9, 11, 25] {
            assert_eq!(assemble_h2_gprime(q, Coeffs::Z2).unwrap(), CohResult::elementary_2(2), "q = {q}");
        }
        assert!(assemble_h2_gprime(4, Coeffs::Z2).is_err());
        assert!(assemble_h2_gprime(15, Coeffs::Z2).is_err());
    }

    #[test]
    fn qz_coefficients() {
        assert_eq!(assemble_h2_gprime(3, Coeffs::Qz).unwrap(), CohResult::cyclic(2));
        assert_eq!(assemble_h2_gprime(5, Coeffs::Qz).unwrap(), CohResult::cyclic(4));
        assert_eq!(h1_gprime_qz(3).unwrap().to_string(), "Z/2 + Q/Z");
    }

    #[test]
    fn kunneth_and_truncation() {
        assert_eq!(kunneth_h2_mx(3).unwrap(), CohResult::elementary_2(2));
        let t = kunneth_truncation_check(3, 4).unwrap();
        assert_eq!((t.brute_dim, t.correction, t.kunneth_dim), (3, 1, 2));
        assert!(t.agrees());
    }

    #[test]
    fn lemma_l_and_bockstein() {
        for q in [3, 5, 7] {
            assert!(lemma_l_check(q).unwrap());
            let b = bockstein_check(q).unwrap();
            assert_eq!((b.h2_z2, b.h1_qz_mod_2, b.h2_qz_2_torsion), (4, 2, 2));
            assert!(bockstein_direct_product(q).unwrap().holds());
        }
    }
}
