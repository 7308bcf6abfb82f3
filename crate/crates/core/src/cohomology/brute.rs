use serde::Serialize;

use super::CohResult;
use crate::error::{Error, Result};
use crate::padic::modarith::prime_power;

/// Largest group order accepted by [`brute_force_h2`].
pub const MAX_BRUTE_ORDER: u64 = 64;

/// A finite group by its multiplication table; element 0 is the identity.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteGroup {
    pub label: String,
    pub order: usize,
    #[serde(skip)]
    table: Vec<u32>,
}

impl FiniteGroup {
    /// Checks identity, inverses and associativity.
    pub fn new(label: impl Into<String>, order: usize, table: Vec<u32>) -> Result<Self> {
        let g = FiniteGroup { label: label.into(), order, table };
        let n = order;
        let bad = |what: &str| Err(Error::InvalidModule(format!("{}: {what}", g.label)));
        if g.table.len() != n * n || g.table.iter().any(|&x| x as usize >= n) {
            return bad("table has the wrong shape");
        }
        if (0..n).any(|x| g.mul(0, x) != x || g.mul(x, 0) != x) {
            return bad("element 0 is not an identity");
        }
        if (0..n).any(|x| (0..n).all(|y| g.mul(x, y) != 0)) {
            return bad("missing inverse");
        }
        for x in 0..n {
            for y in 0..n {
                let xy = g.mul(x, y);
                if (0..n).any(|z| g.mul(xy, z) != g.mul(x, g.mul(y, z))) {
                    return bad("not associative");
                }
            }
        }
        Ok(g)
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let table = (0..n).flat_map(|x| (0..n).map(move |y| ((x + y) % n) as u32)).collect();
        Self::new(format!("Z/{n}"), n, table)
    }

    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let n = a.order * b.order;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / b.order, x % b.order);
                let (y1, y2) = (y / b.order, y % b.order);
                table.push((a.mul(x1, y1) * b.order + b.mul(x2, y2)) as u32);
            }
        }
        Self::new(format!("{} x {}", a.label, b.label), n, table)
    }

    /// `Z/(q^2 - 1) x| Z/m`, the generator of `Z/m` acting by
    /// multiplication by `q`: a finite quotient of `F_{q^2}^x x| Z`.
    pub fn semidirect(q: u64, m: u64) -> Result<Self> {
        let n = q * q - 1;
        let mut qk = vec![1u64; m as usize + 1];
        for k in 1..=m as usize {
            qk[k] = qk[k - 1] * q % n;
        }
        if qk[m as usize] != 1 % n {
            return Err(Error::ActionOrderMismatch(m));
        }
        let order = (n * m) as usize;
        if order as u64 > MAX_BRUTE_ORDER * MAX_BRUTE_ORDER {
            return Err(Error::SizeLimitExceeded { order: order as u64, limit: MAX_BRUTE_ORDER });
        }
        let mut table = Vec::with_capacity(order * order);
        // element (x, i) has index i * n + x
        for a in 0..order as u64 {
            for b in 0..order as u64 {
                let (i, x) = (a / n, a % n);
                let (j, y) = (b / n, b % n);
                let z = (x + qk[i as usize] * y) % n;
                table.push((((i + j) % m) * n + z) as u32);
            }
        }
        Self::new(format!("Z/{n} x| Z/{m}"), order, table)
    }
}

/// Parses `cyclic:n`, `product:cyclic:n,cyclic:m[,...]` and
/// `semidirect:q[:m]` (default `m = 2`).
pub fn parse_group_spec(spec: &str) -> Result<FiniteGroup> {
    let bad = || Error::Parse(format!("invalid group spec `{spec}`"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some(rest) = spec.strip_prefix("product:") {
        let mut parts = rest.split(',').map(parse_group_spec);
        let mut g = parts.next().ok_or_else(bad)??;
        for h in parts {
            g = FiniteGroup::product(&g, &h?)?;
        }
        return Ok(g);
    }
    if let Some(rest) = spec.strip_prefix("cyclic:") {
        let n = num(rest)?;
        if n == 0 || n > MAX_BRUTE_ORDER * MAX_BRUTE_ORDER {
            return Err(bad());
        }
        return FiniteGroup::cyclic(n as usize);
    }
    if let Some(rest) = spec.strip_prefix("semidirect:") {
        let mut it = rest.split(':');
        let q = num(it.next().ok_or_else(bad)?)?;
        let m = it.next().map(num).transpose()?.unwrap_or(2);
        if it.next().is_some() || m == 0 || q % 2 == 0 || prime_power(q).is_none() {
            return Err(bad());
        }
        return FiniteGroup::semidirect(q, m);
    }
    Err(bad())
}

/// Row-reduced F_2 basis keyed by lowest set bit.
struct Basis {
    words: usize,
    rows: Vec<Option<Vec<u64>>>,
    rank: usize,
}

impl Basis {
    fn new(cols: usize) -> Self {
        Basis { words: cols.div_ceil(64), rows: vec![None; cols], rank: 0 }
    }

    /// Inserts `v`; returns whether the rank grew.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        loop {
            let Some(w) = v.iter().position(|&x| x != 0) else { return false };
            let c = w * 64 + v[w].trailing_zeros() as usize;
            match &self.rows[c] {
                Some(r) => {
                    for (a, b) in v[w..].iter_mut().zip(&r[w..]) {
                        *a ^= b;
                    }
                }
                None => {
                    self.rows[c] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
    }

    /// Basis of the solution space of the inserted equations.
    fn kernel(mut self) -> Vec<Vec<u64>> {
        let cols = self.rows.len();
        let get = |v: &[u64], c: usize| (v[c / 64] >> (c % 64)) & 1 == 1;
        for c in (0..cols).rev() {
            let Some(mut row) = self.rows[c].take() else { continue };
            for c2 in c + 1..cols {
                if get(&row, c2) {
                    if let Some(r2) = &self.rows[c2] {
                        for (a, b) in row.iter_mut().zip(r2) {
                            *a ^= b;
                        }
                    }
                }
            }
            self.rows[c] = Some(row);
        }
        (0..cols)
            .filter(|&f| self.rows[f].is_none())
            .map(|f| {
                let mut v = vec![0u64; self.words];
                v[f / 64] |= 1 << (f % 64);
                for (c, r) in self.rows.iter().enumerate() {
                    if let Some(r) = r {
                        if get(r, f) {
                            v[c / 64] |= 1 << (c % 64);
                        }
                    }
                }
                v
            })
            .collect()
    }
}

/// `H^2(G, Z/2)` with trivial action by linear algebra over F_2.
#[derive(Clone, Debug, Serialize)]
pub struct BruteH2 {
    pub group: String,
    pub order: usize,
    pub cocycle_rank: usize,
    pub coboundary_rank: usize,
    pub result: CohResult,
}

/// `dim H^2 = (n^2 - rank d2) - rank d1` on inhomogeneous cochains. With
/// `generators`, also returns cocycles (as `n x n` tables, row-major)
/// whose classes form a basis.
pub fn brute_force_h2(g: &FiniteGroup, generators: bool) -> Result<BruteH2> {
    let n = g.order;
    if n as u64 > MAX_BRUTE_ORDER {
        return Err(Error::SizeLimitExceeded { order: n as u64, limit: MAX_BRUTE_ORDER });
    }
    let cols = n * n;
    let words = cols.div_ceil(64);
    let idx = |x: usize, y: usize| x * n + y;
    let flip = |v: &mut Vec<u64>, c: usize| v[c / 64] ^= 1 << (c % 64);

    // (d phi)(x, y, z) = phi(y, z) + phi(xy, z) + phi(x, yz) + phi(x, y)
    let mut d2 = Basis::new(cols);
    let mut row = vec![0u64; words];
    for x in 0..n {
        for y in 0..n {
            let xy = g.mul(x, y);
            for z in 0..n {
                row.iter_mut().for_each(|w| *w = 0);
                flip(&mut row, idx(y, z));
                flip(&mut row, idx(xy, z));
                flip(&mut row, idx(x, g.mul(y, z)));
                flip(&mut row, idx(x, y));
                d2.insert(row.clone());
            }
        }
    }
    let cocycle_rank = d2.rank;

    // coboundaries (d f)(x, y) = f(x) + f(y) + f(xy), one per basis function f = e_t
    let mut b2 = Basis::new(cols);
    let mut coboundaries = Vec::with_capacity(n);
    for t in 0..n {
        let mut v = vec![0u64; words];
        for x in 0..n {
            for y in 0..n {
                let hits = u8::from(x == t) + u8::from(y == t) + u8::from(g.mul(x, y) == t);
                if hits % 2 == 1 {
                    flip(&mut v, idx(x, y));
                }
            }
        }
        coboundaries.push(v.clone());
        b2.insert(v);
    }
    let coboundary_rank = b2.rank;
    let dim = cols - cocycle_rank - coboundary_rank;
    let mut result = CohResult::elementary_2(dim as u32);
    if generators {
        let mut gens = Vec::new();
        for z in d2.kernel() {
            if gens.len() == dim {
                break;
            }
            if b2.insert(z.clone()) {
                gens.push((0..cols).map(|c| ((z[c / 64] >> (c % 64)) & 1) as u8).collect());
            }
        }
        result.generators = Some(gens);
    }
    Ok(BruteH2 { group: g.label.clone(), order: n, cocycle_rank, coboundary_rank, result })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(spec: &str) -> usize {
        brute_force_h2(&parse_group_spec(spec).unwrap(), false).unwrap().result.factors.len()
    }

    #[test]
    fn small_groups() {
        assert_eq!(dim("cyclic:1"), 0);
        assert_eq!(dim("cyclic:2"), 1);
        assert_eq!(dim("cyclic:3"), 0);
        assert_eq!(dim("product:cyclic:2,cyclic:2"), 3);
        assert_eq!(dim("product:cyclic:2,cyclic:2,cyclic:2"), 6);
    }

    #[test]
    fn generators_are_cocycles_outside_coboundaries() {
        let g = parse_group_spec("product:cyclic:2,cyclic:4").unwrap();
        let h = brute_force_h2(&g, true).unwrap();
        let gens = h.result.generators.as_ref().unwrap();
        assert_eq!(gens.len(), 3);
        let n = g.order;
        for phi in gens {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let s = phi[y * n + z] ^ phi[g.mul(x, y) * n + z] ^ phi[x * n + g.mul(y, z)] ^ phi[x * n + y];
                        assert_eq!(s, 0);
                    }
                }
            }
        }
    }

    #[test]
    fn semidirect_quotient_is_a_group() {
        let g = parse_group_spec("semidirect:3").unwrap();
        assert_eq!(g.order, 16);
        // dihedral-type: the Z/8 generator does not commute with the Z/2 one
        assert_ne!(g.mul(1, 8), g.mul(8, 1));
    }

    #[test]
    fn spec_errors() {
        for bad in ["cyclic:x", "torus:3", "semidirect:4", "semidirect:3:3", "cyclic:0"] {
            assert!(parse_group_spec(bad).is_err(), "{bad}");
        }
        assert!(brute_force_h2(&FiniteGroup::cyclic(65).unwrap(), false).is_err());
    }
}
