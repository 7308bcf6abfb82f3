//! Counter-based sampling: stream `i` of seed `s` is independent of every
//! other stream, so parallel evaluation order never changes a result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::metaplectic::Mat2E;
use crate::padic::modarith::max_precision;
use crate::padic::{PadicE, PadicF, Qp, QpExt};

/// Valuation window for random field elements.
pub const VAL_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform unit of Z_p. Digits are drawn to the largest supported
/// precision and then truncated, so the same stream yields consistent
/// samples at every working precision.
pub fn unit<R: Rng>(rng: &mut R, f: &Qp) -> PadicF {
    let p = f.prime() as u128;
    let m = p.pow(max_precision(f.prime()));
    loop {
        let u = rng.gen_range(1..m);
        if u % p != 0 {
            return f.from_val_unit(0, u);
        }
    }
}

/// Nonzero element with valuation in [`VAL_RANGE`].
pub fn nonzero<R: Rng>(rng: &mut R, f: &Qp) -> PadicF {
    let v = rng.gen_range(VAL_RANGE);
    unit(rng, f).shift(v)
}

/// Like [`nonzero`], but zero with probability 1/8.
pub fn element<R: Rng>(rng: &mut R, f: &Qp) -> PadicF {
    if rng.gen_ratio(1, 8) {
        f.zero()
    } else {
        nonzero(rng, f)
    }
}

/// Element `a` of F with `a` and `1 - a` both nonzero.
pub fn steinberg_arg<R: Rng>(rng: &mut R, f: &Qp) -> PadicF {
    loop {
        let a = nonzero(rng, f);
        if !(f.one() - a).is_zero() {
            return a;
        }
    }
}

pub fn nonzero_ext<R: Rng>(rng: &mut R, e: &QpExt) -> PadicE {
    let f = e.base();
    loop {
        let x = match rng.gen_range(0..4) {
            0 => e.embed(nonzero(rng, &f)),
            1 => e.from_coords(f.zero(), nonzero(rng, &f)),
            _ => e.from_coords(nonzero(rng, &f), nonzero(rng, &f)),
        };
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn steinberg_arg_ext<R: Rng>(rng: &mut R, e: &QpExt) -> PadicE {
    loop {
        let a = nonzero_ext(rng, e);
        if !(e.elem(1) - a).is_zero() {
            return a;
        }
    }
}

/// Random invertible matrix with entries in F; upper triangular with
/// probability 1/4 so both branches of the Kubota function occur.
pub fn gl2_base<R: Rng>(rng: &mut R, e: &QpExt) -> Mat2E {
    let f = e.base();
    loop {
        let triangular = rng.gen_ratio(1, 4);
        let c = if triangular { f.zero() } else { nonzero(rng, &f) };
        let (a, b, d) = if triangular {
            (nonzero(rng, &f), element(rng, &f), nonzero(rng, &f))
        } else {
            (element(rng, &f), element(rng, &f), element(rng, &f))
        };
        if let Ok(m) = Mat2E::new(e.embed(a), e.embed(b), e.embed(c), e.embed(d)) {
            return m;
        }
    }
}

/// Random element of SL2(E): a Bruhat-cell product `u(s) h(t) w u(s')` or,
/// with probability 1/4, a Borel element `u(s) h(t)`.
pub fn sl2<R: Rng>(rng: &mut R, e: &QpExt) -> Mat2E {
    let s = nonzero_ext(rng, e);
    let t = nonzero_ext(rng, e);
    let borel = Mat2E::unipotent(e, s).mul(&Mat2E::torus(e, t).expect("t is nonzero"));
    if rng.gen_ratio(1, 4) {
        return borel;
    }
    let s2 = nonzero_ext(rng, e);
    borel.mul(&Mat2E::weyl(e)).mul(&Mat2E::unipotent(e, s2))
}

/// Random element of GL2(E) as `g * diag(e, 1)` with `g` in SL2(E).
pub fn gl2<R: Rng>(rng: &mut R, e: &QpExt) -> Mat2E {
    let g = sl2(rng, e);
    let x = nonzero_ext(rng, e);
    g.mul(&Mat2E::diag(e, x, e.elem(1)).expect("x is nonzero"))
}
