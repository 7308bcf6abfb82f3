//! Word-level arithmetic modulo prime powers below 2^126.

/// Largest power exponent we allow, so that moduli stay below 2^126.
pub fn max_precision(p: u32) -> u32 {
    let mut n = 0u32;
    let mut m: u128 = 1;
    while let Some(next) = m.checked_mul(p as u128) {
        if next > (1u128 << 126) {
            break;
        }
        m = next;
        n += 1;
    }
    n
}

pub fn pow_u128(base: u128, exp: u32) -> u128 {
    let mut r: u128 = 1;
    for _ in 0..exp {
        r = r.checked_mul(base).expect("prime power overflow");
    }
    r
}

pub fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= (1u128 << 64) {
        return (a % m) * (b % m) % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc += a;
            if acc >= m {
                acc -= m;
            }
        }
        a <<= 1;
        if a >= m {
            a -= m;
        }
        b >>= 1;
    }
    acc
}

pub fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            r = mul_mod(r, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    r
}

/// Inverse of a p-adic unit modulo p^r via Newton iteration.
pub fn inv_mod_pk(u: u128, p: u32, r: u32) -> u128 {
    let p128 = p as u128;
    let m = pow_u128(p128, r);
    // inverse mod p
    let mut y = if p == 2 { 1 } else { pow_mod(u % p128, p128 - 2, p128) };
    let mut known = 1u32;
    while known < r {
        known = (known * 2).min(r);
        let mk = pow_u128(p128, known);
        // y <- y (2 - u y)
        let uy = mul_mod(u % mk, y, mk);
        let two_minus = (2 + mk - uy) % mk;
        y = mul_mod(y, two_minus, mk);
    }
    y % m
}

/// p-adic valuation of a nonzero integer together with its p-free part.
pub fn split_p(mut n: u128, p: u32) -> (u32, u128) {
    debug_assert!(n != 0);
    let p = p as u128;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    (v, n)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(ell, k)` with `n = ell^k` when `n` is a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            break;
        }
        d += 1;
    }
    let ell = if n % d == 0 && d * d <= n { d } else { n };
    let (mut m, mut k) = (n, 0);
    while m % ell == 0 {
        m /= ell;
        k += 1;
    }
    (m == 1).then_some((ell, k))
}

/// Legendre symbol (a/p) for odd prime p, as 0, 1 or -1.
pub fn legendre(a: u128, p: u32) -> i8 {
    let p128 = p as u128;
    let a = a % p128;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p128 - 1) / 2, p128) == 1 {
        1
    } else {
        -1
    }
}

/// Square root of a quadratic residue modulo an odd prime (Tonelli-Shanks).
pub fn sqrt_mod_p(a: u128, p: u32) -> Option<u128> {
    let p128 = p as u128;
    let a = a % p128;
    if a == 0 {
        return Some(0);
    }
    if legendre(a, p) != 1 {
        return None;
    }
    let (mut s, mut q) = (0u32, p128 - 1);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let z = (2..p128).find(|&z| legendre(z, p) == -1)?;
    let mut m = s;
    let mut c = pow_mod(z, q, p128);
    let mut t = pow_mod(a, q, p128);
    let mut r = pow_mod(a, (q + 1) / 2, p128);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p128);
            i += 1;
        }
        let b = pow_mod(c, 1u128 << (m - i - 1), p128);
        m = i;
        c = mul_mod(b, b, p128);
        t = mul_mod(t, c, p128);
        r = mul_mod(r, b, p128);
    }
    Some(r)
}

/// Smallest positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u32) -> u32 {
    (2..p).find(|&z| legendre(z as u128, p) == -1).expect("odd prime has a non-residue")
}
