use crate::error::{Error, Result};
use crate::padic::LocalField;
use crate::sign::Sign;

/// Tame symbol for odd residue characteristic:
/// `chi((-1)^(ab) x^b y^(-a))` with `a = v(x)`, `b = v(y)` and `chi` the
/// quadratic character of the residue field.
pub fn hilbert_tame<K: LocalField>(k: &K, x: &K::Elem, y: &K::Elem) -> Result<Sign> {
    if k.prime() == 2 {
        return Err(Error::OddResidueOnly(2));
    }
    let a = k.valuation(x).ok_or(Error::ZeroElement)?;
    let b = k.valuation(y).ok_or(Error::ZeroElement)?;
    let mut z = k.pow(x, b)? * k.pow(y, -a)?;
    if (a * b).rem_euclid(2) == 1 {
        z = -z;
    }
    let chi = k
        .residue_image(&z)?
        .quadratic_character()
        .ok_or(Error::InsufficientPrecision { needed: 1, available: 0 })?;
    Ok(Sign::from_parity(chi == -1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::{Qp, QpExt};

    #[test]
    fn three_two_over_q3() {
        let f = Qp::new(3, 24).unwrap();
        assert_eq!(hilbert_tame(&f, &f.elem(3), &f.elem(2)).unwrap(), Sign::Minus);
    }

    #[test]
    fn units_pair_trivially() {
        let f = Qp::new(7, 24).unwrap();
        for (a, b) in [(2, 3), (3, 5), (6, 6), (-1, 3)] {
            assert_eq!(hilbert_tame(&f, &f.elem(a), &f.elem(b)).unwrap(), Sign::Plus);
        }
    }

    #[test]
    fn minus_one_minus_one_over_q3() {
        let f = Qp::new(3, 24).unwrap();
        assert_eq!(hilbert_tame(&f, &f.elem(-1), &f.elem(-1)).unwrap(), Sign::Plus);
    }

    #[test]
    fn ramified_extension() {
        let e = QpExt::new(Qp::new(3, 24).unwrap(), 3).unwrap();
        // (sqrt 3, u) = chi(u mod pi) for a unit u
        assert_eq!(hilbert_tame(&e, &e.sqrt_d(), &e.elem(2)).unwrap(), Sign::Minus);
        assert_eq!(hilbert_tame(&e, &e.sqrt_d(), &e.elem(4)).unwrap(), Sign::Plus);
    }

    #[test]
    fn rejects_even_residue() {
        let f = Qp::new(2, 24).unwrap();
        assert_eq!(hilbert_tame(&f, &f.elem(3), &f.elem(5)), Err(Error::OddResidueOnly(2)));
    }
}
