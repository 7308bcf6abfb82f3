//! Residue fields F_p and F_{p^2} of the local fields in play.

use std::ops::Mul;

/// Element `s + t*theta` of F_p or F_p[theta]/(theta^2 - c0 - c1 theta).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Residue {
    p: u64,
    /// `(c0, c1)` with theta^2 = c0 + c1*theta; `None` for the prime field.
    modulus: Option<(u64, u64)>,
    s: u64,
    t: u64,
}

impl Residue {
    pub fn prime_field(p: u64, s: u64) -> Self {
        Residue { p, modulus: None, s: s % p, t: 0 }
    }

    pub fn quadratic(p: u64, c0: u64, c1: u64, s: u64, t: u64) -> Self {
        Residue { p, modulus: Some((c0 % p, c1 % p)), s: s % p, t: t % p }
    }

    pub fn coords(&self) -> (u64, u64) {
        (self.s, self.t)
    }

    pub fn degree(&self) -> u32 {
        if self.modulus.is_some() {
            2
        } else {
            1
        }
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree())
    }

    pub fn is_zero(&self) -> bool {
        self.s == 0 && self.t == 0
    }

    pub fn is_one(&self) -> bool {
        self.s == 1 && self.t == 0
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Residue { s: 1 % self.p, t: 0, ..*self };
        let mut b = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    /// Quadratic character of the multiplicative group (odd characteristic).
    pub fn quadratic_character(&self) -> Option<i8> {
        if self.is_zero() || self.p == 2 {
            return None;
        }
        let h = self.pow((self.order() - 1) / 2);
        Some(if h.is_one() { 1 } else { -1 })
    }
}

impl Mul for Residue {
    type Output = Residue;
    fn mul(self, rhs: Residue) -> Residue {
        let p = self.p as u128;
        match self.modulus {
            None => Residue::prime_field(self.p, ((self.s as u128 * rhs.s as u128) % p) as u64),
            Some((c0, c1)) => {
                let (a, b, c, d) = (self.s as u128, self.t as u128, rhs.s as u128, rhs.t as u128);
                // (a + b th)(c + d th) = ac + (ad + bc) th + bd (c0 + c1 th)
                let bd = b * d % p;
                let s = (a * c + bd * c0 as u128) % p;
                let t = (a * d + b * c + bd * c1 as u128) % p;
                Residue { s: s as u64, t: t as u64, ..self }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f9_character_counts() {
        // F_9 = F_3[th], th^2 = 2: exactly half the units are squares.
        let mut squares = 0;
        for s in 0..3 {
            for t in 0..3 {
                let x = Residue::quadratic(3, 2, 0, s, t);
                if let Some(c) = x.quadratic_character() {
                    if c == 1 {
                        squares += 1;
                    }
                }
            }
        }
        assert_eq!(squares, 4);
    }

    #[test]
    fn f4_generator_has_order_three() {
        let w = Residue::quadratic(2, 1, 1, 0, 1);
        assert!(!w.is_one());
        assert!(w.pow(3).is_one());
    }
}
