use crate::error::{Error, Result};
use crate::padic::PadicF;
use crate::sign::Sign;

/// Closed-form symbol over Q_2: for `x = 2^a u`, `y = 2^b v`,
/// `(-1)^(eps(u) eps(v) + a omega(v) + b omega(u))` with
/// `eps(u) = (u - 1)/2` and `omega(u) = (u^2 - 1)/8` mod 2.
pub fn hilbert_q2(x: &PadicF, y: &PadicF) -> Result<Sign> {
    if x.prime() != 2 || y.prime() != 2 {
        return Err(Error::InvalidField("closed-form symbol is for Q_2 only".into()));
    }
    let a = x.valuation().ok_or(Error::ZeroElement)?;
    let b = y.valuation().ok_or(Error::ZeroElement)?;
    let u = x.unit_mod(3)?;
    let v = y.unit_mod(3)?;
    let eps = |t: u128| (t - 1) / 2 % 2;
    let omega = |t: u128| (t * t - 1) / 8 % 2;
    let e = eps(u) * eps(v) + (a.rem_euclid(2) as u128) * omega(v) + (b.rem_euclid(2) as u128) * omega(u);
    Ok(Sign::from_parity(e % 2 == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::Qp;

    #[test]
    fn classical_values() {
        let f = Qp::new(2, 24).unwrap();
        assert_eq!(hilbert_q2(&f.elem(-1), &f.elem(-1)).unwrap(), Sign::Minus);
        // omega(7) = 6 = 0 mod 2; 3^2 = 2 + 7 solves z^2 = 2u^2 + 7w^2
        assert_eq!(hilbert_q2(&f.elem(2), &f.elem(7)).unwrap(), Sign::Plus);
        assert_eq!(hilbert_q2(&f.elem(2), &f.elem(3)).unwrap(), Sign::Minus);
        assert_eq!(hilbert_q2(&f.elem(2), &f.elem(5)).unwrap(), Sign::Minus);
        assert_eq!(hilbert_q2(&f.elem(10), &f.elem(1)).unwrap(), Sign::Plus);
    }

    #[test]
    fn needs_three_digits() {
        let x = PadicF::from_i64(2, 3, 2);
        let y = PadicF::from_i64(2, 5, 24);
        assert!(matches!(hilbert_q2(&x, &y), Err(Error::InsufficientPrecision { .. })));
    }
}
