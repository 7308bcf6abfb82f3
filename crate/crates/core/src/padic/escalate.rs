use super::modarith::max_precision;
use crate::error::{Error, Result};

/// Errors caused by running out of digits rather than by the mathematics.
pub fn is_precision_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InsufficientPrecision { .. }
            | Error::DivisionByZero
            | Error::ZeroElement
            | Error::SingularMatrix
            | Error::NoInvertibleSolution
    )
}

/// Runs `f` at precision `start`, doubling on precision errors up to the
/// largest precision supported for `p`. Returns the value and the precision
/// that produced it.
pub fn escalate<T>(p: u32, start: u32, mut f: impl FnMut(u32) -> Result<T>) -> Result<(T, u32)> {
    let cap = max_precision(p);
    let mut n = start.min(cap);
    loop {
        match f(n) {
            Err(e) if is_precision_error(&e) && n < cap => n = (2 * n).min(cap),
            other => return other.map(|v| (v, n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn doubles_until_success() {
        let mut seen = Vec::new();
        let (v, n) = escalate(2, 24, |n| {
            seen.push(n);
            if n < 90 {
                Err(Error::InsufficientPrecision { needed: 90, available: n })
            } else {
                Ok(n)
            }
        })
        .unwrap();
        assert_eq!((v, n), (96, 96));
        assert_eq!(seen, vec![24, 48, 96]);
    }

    #[test]
    fn stops_at_cap() {
        let r: Result<((), u32)> = escalate(7, 24, |n| Err(Error::InsufficientPrecision { needed: 100, available: n }));
        assert!(matches!(r, Err(Error::InsufficientPrecision { available: 44, .. })));
    }

    #[test]
    fn other_errors_pass_through() {
        let mut calls = 0;
        let r: Result<((), u32)> = escalate(3, 24, |_| {
            calls += 1;
            Err(Error::NotSpecialLinear)
        });
        assert!(r.is_err());
        assert_eq!(calls, 1);
    }
}
