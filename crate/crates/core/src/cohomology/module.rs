use serde::Serialize;

use super::CohResult;
use crate::error::{Error, Result};

/// Largest module handled by enumeration.
pub const MAX_MODULE_ORDER: u64 = 1 << 20;

/// A finite abelian group `Z/n_1 x ... x Z/n_k` with an automorphism `sigma`,
/// given by the images of the standard generators.
///
/// Elements are encoded as mixed-radix indices in `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModAut {
    orders: Vec<u64>,
    sigma: Vec<Vec<u64>>,
}

/// Subgroup of a [`ModAut`] as a membership table.
pub type Subgroup = Vec<bool>;

impl ModAut {
    pub fn new(orders: Vec<u64>, sigma: Vec<Vec<u64>>) -> Result<Self> {
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::InvalidModule("cyclic factor of order 0".into()));
        }
        let order: u64 = orders.iter().try_fold(1u64, |acc, &n| acc.checked_mul(n)).unwrap_or(u64::MAX);
        if order > MAX_MODULE_ORDER {
            return Err(Error::SizeLimitExceeded { order, limit: MAX_MODULE_ORDER });
        }
        if sigma.len() != orders.len() || sigma.iter().any(|img| img.len() != orders.len()) {
            return Err(Error::InvalidModule("sigma needs one image per generator".into()));
        }
        let sigma = sigma
            .into_iter()
            .map(|img| img.into_iter().zip(&orders).map(|(x, &n)| x % n).collect())
            .collect();
        let m = ModAut { orders, sigma };
        // sigma(e_i) must be killed by the order of e_i
        for (i, &n) in m.orders.iter().enumerate() {
            let img = m.encode(&m.sigma[i]);
            if m.mul(img, n) != 0 {
                return Err(Error::InvalidModule(format!("image of generator {i} has order not dividing {n}")));
            }
        }
        let table = m.sigma_table();
        let mut hit = vec![false; m.order()];
        for &y in &table {
            if hit[y] {
                return Err(Error::InvalidModule("sigma is not bijective".into()));
            }
            hit[y] = true;
        }
        Ok(m)
    }

    /// `Z/n` with `sigma = multiplication by s`.
    pub fn cyclic(n: u64, s: i64) -> Result<Self> {
        Self::new(vec![n], vec![vec![s.rem_euclid(n as i64) as u64]])
    }

    pub fn trivial(orders: Vec<u64>) -> Result<Self> {
        let k = orders.len();
        let sigma = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
        Self::new(orders, sigma)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generator_images(&self) -> &[Vec<u64>] {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        let mut idx = 0u64;
        for (c, n) in coords.iter().zip(&self.orders) {
            idx = idx * n + c % n;
        }
        idx as usize
    }

    pub fn decode(&self, mut idx: usize) -> Vec<u64> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &n) in out.iter_mut().zip(&self.orders).rev() {
            *slot = idx as u64 % n;
            idx /= n as usize;
        }
        out
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.decode(x), self.decode(y));
        let s: Vec<u64> = a.iter().zip(&b).zip(&self.orders).map(|((p, q), n)| (p + q) % n).collect();
        self.encode(&s)
    }

    pub fn neg(&self, x: usize) -> usize {
        let a = self.decode(x);
        let s: Vec<u64> = a.iter().zip(&self.orders).map(|(p, n)| (n - p) % n).collect();
        self.encode(&s)
    }

    pub fn mul(&self, x: usize, c: u64) -> usize {
        let a = self.decode(x);
        let s: Vec<u64> = a.iter().zip(&self.orders).map(|(p, n)| ((*p as u128 * c as u128) % *n as u128) as u64).collect();
        self.encode(&s)
    }

    /// `sigma(x)`.
    pub fn apply(&self, x: usize) -> usize {
        let a = self.decode(x);
        let mut acc = vec![0u64; self.orders.len()];
        for (coef, img) in a.iter().zip(&self.sigma) {
            for ((slot, v), n) in acc.iter_mut().zip(img).zip(&self.orders) {
                *slot = ((*slot as u128 + *coef as u128 * *v as u128) % *n as u128) as u64;
            }
        }
        self.encode(&acc)
    }

    pub fn sigma_table(&self) -> Vec<usize> {
        (0..self.order()).map(|x| self.apply(x)).collect()
    }

    fn from_table(&self, table: &[usize]) -> ModAut {
        let k = self.orders.len();
        let sigma = (0..k)
            .map(|i| {
                let mut e = vec![0u64; k];
                e[i] = 1;
                self.decode(table[self.encode(&e)])
            })
            .collect();
        ModAut { orders: self.orders.clone(), sigma }
    }

    /// The same group with `sigma^k` (`k` may be negative).
    pub fn power(&self, k: i64) -> ModAut {
        let base = if k < 0 { self.inverse_table() } else { self.sigma_table() };
        let mut table: Vec<usize> = (0..self.order()).collect();
        for _ in 0..k.unsigned_abs() {
            table = table.iter().map(|&x| base[x]).collect();
        }
        self.from_table(&table)
    }

    fn inverse_table(&self) -> Vec<usize> {
        let t = self.sigma_table();
        let mut inv = vec![0; t.len()];
        for (x, &y) in t.iter().enumerate() {
            inv[y] = x;
        }
        inv
    }

    pub fn inverse(&self) -> ModAut {
        self.from_table(&self.inverse_table())
    }

    /// Least `k >= 1` with `sigma^k = 1`.
    pub fn action_order(&self) -> u64 {
        let t = self.sigma_table();
        let mut cur = t.clone();
        let mut k = 1;
        while cur.iter().enumerate().any(|(x, &y)| x != y) {
            cur = cur.iter().map(|&x| t[x]).collect();
            k += 1;
        }
        k
    }

    /// `sum_i c_i sigma^i` as a table.
    pub fn poly_table(&self, coeffs: &[i64]) -> Vec<usize> {
        let t = self.sigma_table();
        let mut out = vec![0usize; self.order()];
        let mut pow: Vec<usize> = (0..self.order()).collect();
        for &c in coeffs {
            if c != 0 {
                for x in 0..self.order() {
                    let term = if c > 0 { self.mul(pow[x], c as u64) } else { self.neg(self.mul(pow[x], c.unsigned_abs())) };
                    out[x] = self.add(out[x], term);
                }
            }
            pow = pow.iter().map(|&x| t[x]).collect();
        }
        out
    }

    /// `1 + sigma + ... + sigma^(k-1)`.
    pub fn norm_table(&self, k: u64) -> Vec<usize> {
        self.poly_table(&vec![1; k as usize])
    }

    /// `sigma^k - 1`.
    pub fn sigma_power_minus_one(&self, k: u64) -> Vec<usize> {
        let mut c = vec![0i64; k as usize + 1];
        c[0] = -1;
        c[k as usize] += 1;
        self.poly_table(&c)
    }

    pub fn kernel(&self, f: &[usize]) -> Subgroup {
        f.iter().map(|&y| y == 0).collect()
    }

    pub fn image(&self, f: &[usize]) -> Subgroup {
        let mut s = vec![false; self.order()];
        for &y in f {
            s[y] = true;
        }
        s
    }

    pub fn whole(&self) -> Subgroup {
        vec![true; self.order()]
    }

    pub fn zero_subgroup(&self) -> Subgroup {
        let mut s = vec![false; self.order()];
        s[0] = true;
        s
    }

    /// Invariant factors of `k / i` for subgroups `i <= k`.
    pub fn subquotient(&self, k: &Subgroup, i: &Subgroup) -> Result<CohResult> {
        let ord_k = k.iter().filter(|&&b| b).count() as u64;
        let ord_i = i.iter().filter(|&&b| b).count() as u64;
        if (0..self.order()).any(|x| i[x] && !k[x]) || ord_k % ord_i != 0 {
            return Err(Error::InvalidModule("subquotient of non-nested subgroups".into()));
        }
        let q = ord_k / ord_i;
        let mut elementary: Vec<(u64, Vec<u32>)> = Vec::new();
        for (ell, e) in factor(q) {
            // c[j] = log_ell |Q[ell^j]|
            let mut c = vec![0u32];
            let mut lj = 1u64;
            for _ in 0..e {
                lj *= ell;
                let cnt = (0..self.order()).filter(|&x| k[x] && i[self.mul(x, lj)]).count() as u64 / ord_i;
                c.push(ilog(cnt, ell));
                if *c.last().unwrap() == e {
                    break;
                }
            }
            // number of factors of order >= ell^j is c[j] - c[j-1]
            let counts: Vec<u32> = c.windows(2).map(|w| w[1] - w[0]).collect();
            let mut exps = Vec::new();
            for (j, w) in counts.iter().enumerate() {
                let next = counts.get(j + 1).copied().unwrap_or(0);
                for _ in 0..(w - next) {
                    exps.push(j as u32 + 1);
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            elementary.push((ell, exps));
        }
        Ok(CohResult::from_elementary(&elementary))
    }

    /// Canonical representative of `x + i`: the least index in the coset.
    pub fn coset_rep(&self, x: usize, i: &Subgroup) -> usize {
        (0..self.order()).filter(|&y| i[y]).map(|y| self.add(x, y)).min().unwrap_or(x)
    }
}

fn ilog(mut n: u64, ell: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= ell;
        k += 1;
    }
    k
}

pub(crate) fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_homomorphism() {
        // 1 -> 1 in Z/4 x Z/2 sends (0,1) of order 2 to an element of order 4
        assert!(ModAut::new(vec![4, 2], vec![vec![1, 0], vec![1, 0]]).is_err());
        assert!(ModAut::cyclic(8, 2).is_err());
    }

    #[test]
    fn subquotient_invariant_factors() {
        let m = ModAut::trivial(vec![4, 2, 3]).unwrap();
        let r = m.subquotient(&m.whole(), &m.zero_subgroup()).unwrap();
        assert_eq!(r.factors, vec![2, 12]);
        let m = ModAut::trivial(vec![8]).unwrap();
        let twice: Vec<usize> = (0..8).map(|x| m.mul(x, 2)).collect();
        assert_eq!(m.subquotient(&m.whole(), &m.image(&twice)).unwrap().factors, vec![2]);
    }

    #[test]
    fn power_and_inverse() {
        let m = ModAut::cyclic(24, 5).unwrap();
        assert_eq!(m.power(2), ModAut::trivial(vec![24]).unwrap());
        assert_eq!(m.inverse(), m);
        assert_eq!(m.action_order(), 2);
        assert_eq!(ModAut::cyclic(7, 3).unwrap().action_order(), 6);
    }
}
