//! Independent Hilbert-symbol oracle: searches for a primitive point on
//! `z^2 = x u^2 + y w^2` by digit-by-digit lifting.
//!
//! After scaling `x`, `y` by even powers of the uniformizer so their
//! valuations lie in {0, 1}, a primitive solution modulo `pi^D` with
//! `D = v(4xy) + 2 v(2) + 1` lifts to a true solution by Hensel's lemma in
//! a unit coordinate, and the absence of primitive solutions modulo some
//! `pi^k` with `k <= D` certifies that none exist. Each primitivity
//! pattern (which coordinate is a unit, scaled to 1) is searched
//! depth-first over the two remaining coordinates.

use crate::error::{Error, Result};
use crate::padic::LocalField;
use crate::sign::Sign;

pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConicOutcome {
    pub sign: Sign,
    /// Lifting depth at which the answer was certified.
    pub depth: u32,
    pub nodes: u64,
}

pub fn hilbert_conic_oracle<K: LocalField>(k: &K, x: &K::Elem, y: &K::Elem) -> Result<ConicOutcome> {
    hilbert_conic_with_budget(k, x, y, DEFAULT_NODE_BUDGET)
}

fn reduce<K: LocalField>(k: &K, x: &K::Elem) -> Result<(K::Elem, i64)> {
    let v = k.valuation(x).ok_or(Error::ZeroElement)?;
    let half = v.div_euclid(2);
    if half == 0 {
        return Ok((*x, v));
    }
    let s = k.pow(&k.uniformizer(), -2 * half)?;
    Ok((*x * s, v - 2 * half))
}

pub fn hilbert_conic_with_budget<K: LocalField>(
    k: &K,
    x: &K::Elem,
    y: &K::Elem,
    budget: u64,
) -> Result<ConicOutcome> {
    let (x, vx) = reduce(k, x)?;
    let (y, vy) = reduce(k, y)?;
    let depth = (4 * k.two_valuation() + vx + vy + 1) as u32;
    let reps = k.residue_reps();
    let pi = k.uniformizer();
    let mut pi_pows = Vec::with_capacity(depth as usize);
    let mut acc = k.elem(1);
    for _ in 0..depth {
        pi_pows.push(acc);
        acc = acc * pi;
    }
    let one = k.elem(1);
    let zero = k.elem(0);
    let form = |z: K::Elem, u: K::Elem, w: K::Elem| x * u * u + y * w * w - z * z;
    let vanishes_to = |val: K::Elem, level: u32| -> bool {
        match k.valuation(&val) {
            None => true,
            Some(v) => v >= level as i64,
        }
    };

    let mut nodes = 0u64;
    // patterns: which coordinate (z, u, w) is fixed to 1
    for fixed in 0..3 {
        let eval = |c1: K::Elem, c2: K::Elem| match fixed {
            0 => form(one, c1, c2),
            1 => form(c1, one, c2),
            _ => form(c1, c2, one),
        };
        let mut stack: Vec<(u32, K::Elem, K::Elem)> = vec![(0, zero, zero)];
        while let Some((level, c1, c2)) = stack.pop() {
            if level == depth {
                return Ok(ConicOutcome { sign: Sign::Plus, depth, nodes });
            }
            let step = pi_pows[level as usize];
            for r1 in &reps {
                let n1 = c1 + *r1 * step;
                for r2 in &reps {
                    nodes += 1;
                    if nodes > budget {
                        return Err(Error::SearchBudgetExceeded { depth: level, nodes });
                    }
                    let n2 = c2 + *r2 * step;
                    if vanishes_to(eval(n1, n2), level + 1) {
                        stack.push((level + 1, n1, n2));
                    }
                }
            }
        }
    }
    Ok(ConicOutcome { sign: Sign::Minus, depth, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{Qp, QpExt};

    #[test]
    fn one_is_always_a_norm() {
        for p in [2u32, 3, 5] {
            let f = Qp::new(p, 24).unwrap();
            for y in [2, 3, 5, -1, 7, 10] {
                let o = hilbert_conic_oracle(&f, &f.elem(1), &f.elem(y)).unwrap();
                assert_eq!(o.sign, Sign::Plus);
            }
        }
    }

    #[test]
    fn minus_one_pair() {
        let q3 = Qp::new(3, 24).unwrap();
        assert_eq!(hilbert_conic_oracle(&q3, &q3.elem(-1), &q3.elem(-1)).unwrap().sign, Sign::Plus);
        let q2 = Qp::new(2, 24).unwrap();
        let o = hilbert_conic_oracle(&q2, &q2.elem(-1), &q2.elem(-1)).unwrap();
        assert_eq!(o.sign, Sign::Minus);
        assert_eq!(o.depth, 5);
    }

    #[test]
    fn scaling_by_squares_is_invisible() {
        let f = Qp::new(3, 24).unwrap();
        let a = hilbert_conic_oracle(&f, &f.elem(3), &f.elem(2)).unwrap().sign;
        let b = hilbert_conic_oracle(&f, &f.elem(3 * 81), &f.ratio(2, 9).unwrap()).unwrap().sign;
        assert_eq!(a, Sign::Minus);
        assert_eq!(a, b);
    }

    #[test]
    fn extension_search_terminates() {
        let e = QpExt::new(Qp::new(2, 24).unwrap(), -1).unwrap();
        // -1 is a square in Q_2(i)
        let o = hilbert_conic_oracle(&e, &e.elem(-1), &e.uniformizer()).unwrap();
        assert_eq!(o.sign, Sign::Plus);
    }

    #[test]
    fn budget_is_reported() {
        let f = Qp::new(2, 24).unwrap();
        let err = hilbert_conic_with_budget(&f, &f.elem(-1), &f.elem(-1), 10).unwrap_err();
        assert!(matches!(err, Error::SearchBudgetExceeded { .. }));
    }
}
