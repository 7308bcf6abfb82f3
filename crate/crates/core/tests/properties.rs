use proptest::prelude::*;

use metasplit::cohomology::{cyclic_cohomology, ModAut};
use metasplit::hilbert::{hilbert, hilbert_conic_oracle};
use metasplit::metaplectic::{cocycle_gl2, cocycle_sl2, verify_cocycle_identity, Group, Mat2E};
use metasplit::padic::{escalate, modarith::pow_mod};
use metasplit::quaternion::{embed_m2e, Quat, QuatAlg};
use metasplit::sampling::{self, stream};
use metasplit::{Qp, QpExt, Result, Sign};

const PRIMES: [u32; 4] = [2, 3, 5, 7];

fn ext(p: u32, k: usize, n: u32) -> Result<QpExt> {
    let f = Qp::new(p, n)?;
    let reps = f.square_class_reps();
    QpExt::new(f, reps[1 + k % (reps.len() - 1)])
}

/// Runs `f` with escalation and unwraps.
fn exact<T>(p: u32, f: impl FnMut(u32) -> Result<T>) -> T {
    escalate(p, 24, f).expect("evaluation at the precision cap").0
}

fn random_quat(seed: u64, alg: &QuatAlg) -> Quat {
    let f = alg.field();
    let mut rng = stream(seed, 0);
    alg.elem(
        sampling::element(&mut rng, &f),
        sampling::element(&mut rng, &f),
        sampling::element(&mut rng, &f),
        sampling::element(&mut rng, &f),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws_in_qp(pi in 0usize..4, a in any::<i32>(), b in any::<i32>(), c in any::<i32>()) {
        let f = Qp::new(PRIMES[pi], 24).unwrap();
        let (x, y, z) = (f.elem(a.into()), f.elem(b.into()), f.elem(c.into()));
        prop_assert!(x * (y + z) == x * y + x * z);
        prop_assert!((x - y) + y == x);
        prop_assert!(f.elem(i64::from(a) * i64::from(b)) == x * y);
        if a != 0 {
            prop_assert!(x * x.inv().unwrap() == f.one());
        }
    }

    #[test]
    fn extension_norm_is_multiplicative(pi in 0usize..3, k in 0usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let e = ext(p, k, n)?;
            let mut rng = stream(seed, 0);
            let (x, y) = (sampling::nonzero_ext(&mut rng, &e), sampling::nonzero_ext(&mut rng, &e));
            Ok((x * y).norm() == x.norm() * y.norm() && x * x.inv()? == e.elem(1))
        });
        prop_assert!(ok);
    }

    #[test]
    fn base_symbol_is_a_symmetric_bimultiplicative_form(pi in 0usize..4, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let f = Qp::new(p, n)?;
            let mut rng = stream(seed, 0);
            let x = sampling::nonzero(&mut rng, &f);
            let y = sampling::nonzero(&mut rng, &f);
            let z = sampling::nonzero(&mut rng, &f);
            Ok(hilbert(&f, &x, &y)? == hilbert(&f, &y, &x)?
                && hilbert(&f, &x, &(y * z))? == hilbert(&f, &x, &y)? * hilbert(&f, &x, &z)?
                && hilbert(&f, &x, &-x)? == Sign::Plus
                && hilbert(&f, &x, &(y * y))? == Sign::Plus)
        });
        prop_assert!(ok);
    }

    #[test]
    fn base_symbol_matches_conic_oracle(pi in 0usize..4, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let f = Qp::new(p, n)?;
            let mut rng = stream(seed, 0);
            let (x, y) = (sampling::nonzero(&mut rng, &f), sampling::nonzero(&mut rng, &f));
            Ok(hilbert(&f, &x, &y)? == hilbert_conic_oracle(&f, &x, &y)?.sign)
        });
        prop_assert!(ok);
    }

    #[test]
    fn symbol_of_base_elements_over_extension_is_trivial(pi in 0usize..3, k in 0usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let e = ext(p, k, n)?;
            let f = e.base();
            let mut rng = stream(seed, 0);
            let (a, b) = (sampling::nonzero(&mut rng, &f), sampling::nonzero(&mut rng, &f));
            let c = sampling::nonzero_ext(&mut rng, &e);
            Ok(hilbert(&e, &e.embed(a), &e.embed(b))?.is_plus()
                && hilbert(&e, &e.embed(a), &c)? == hilbert(&f, &a, &c.norm())?)
        });
        prop_assert!(ok);
    }

    #[test]
    fn steinberg_relation(pi in 0usize..3, k in 0usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let e = ext(p, k, n)?;
            let x = sampling::steinberg_arg_ext(&mut stream(seed, 0), &e);
            Ok(hilbert(&e, &x, &(e.elem(1) - x))?.is_plus())
        });
        prop_assert!(ok);
    }

    #[test]
    fn cocycle_identity_holds(pi in 0usize..3, k in 0usize..7, gl in any::<bool>(), seed in any::<u64>()) {
        let p = PRIMES[pi];
        let group = if gl { Group::Gl2 } else { Group::Sl2 };
        let ok = exact(p, |n| {
            let e = ext(p, k, n)?;
            let mut rng = stream(seed, 0);
            let mut draw = || if gl { sampling::gl2(&mut rng, &e) } else { sampling::sl2(&mut rng, &e) };
            let (a, b, c) = (draw(), draw(), draw());
            verify_cocycle_identity(&e, group, &a, &b, &c)
        });
        prop_assert!(ok);
    }

    #[test]
    fn cocycle_is_trivial_on_base_field_and_split_torus(pi in 0usize..3, k in 0usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let e = ext(p, k, n)?;
            let mut rng = stream(seed, 0);
            let (g, h) = (sampling::gl2_base(&mut rng, &e), sampling::gl2_base(&mut rng, &e));
            let one = e.elem(1);
            let d1 = Mat2E::diag(&e, sampling::nonzero_ext(&mut rng, &e), one)?;
            let d2 = Mat2E::diag(&e, sampling::nonzero_ext(&mut rng, &e), one)?;
            Ok(cocycle_gl2(&e, &g, &h)?.is_plus() && cocycle_gl2(&e, &d1, &d2)?.is_plus())
        });
        prop_assert!(ok);
    }

    #[test]
    fn torus_law(pi in 0usize..3, k in 0usize..7, seed in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let e = ext(p, k, n)?;
            let mut rng = stream(seed, 0);
            let (a, b) = (sampling::nonzero_ext(&mut rng, &e), sampling::nonzero_ext(&mut rng, &e));
            Ok(cocycle_sl2(&e, &Mat2E::torus(&e, a)?, &Mat2E::torus(&e, b)?)? == hilbert(&e, &a, &b)?)
        });
        prop_assert!(ok);
    }

    #[test]
    fn quaternion_embedding_is_a_ring_map(pi in 0usize..3, s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let alg = QuatAlg::standard(Qp::new(p, n)?)?;
            let e = QpExt::new(alg.field(), alg.a)?;
            let (q1, q2) = (random_quat(s1, &alg), random_quat(s2, &alg));
            let (m1, m2) = (embed_m2e(&alg, &q1, &e)?, embed_m2e(&alg, &q2, &e)?);
            Ok(embed_m2e(&alg, &alg.mul(&q1, &q2), &e)? == m1.mul(&m2)
                && m1.det() == e.embed(alg.nrd(&q1))
                && alg.nrd(&q1).is_zero() == q1.is_zero())
        });
        prop_assert!(ok);
    }

    #[test]
    fn quaternion_inverse(pi in 0usize..3, s in any::<u64>()) {
        let p = PRIMES[pi];
        let ok = exact(p, |n| {
            let alg = QuatAlg::standard(Qp::new(p, n)?)?;
            let q = random_quat(s, &alg);
            if q.is_zero() {
                return Ok(true);
            }
            Ok(alg.mul(&q, &alg.inv(&q)?) == alg.one() && alg.mul(&q, &alg.conj(&q)) == alg.scalar(alg.nrd(&q)))
        });
        prop_assert!(ok);
    }

    #[test]
    fn cyclic_cohomology_is_two_periodic(n in 1u64..40, m in 2u64..13, s in 1u64..13) {
        // only automorphisms whose order divides n define a Z/n action
        let s = s % m;
        prop_assume!(s != 0 && pow_mod(s as u128, n as u128, m as u128) == 1);
        let g: u64 = (1..m).fold(0, |acc, t| if (s * t) % m == 1 { t } else { acc });
        prop_assume!(g != 0);
        let a = ModAut::cyclic(m, s as i64).unwrap();
        for i in 1..=2 {
            prop_assert_eq!(cyclic_cohomology(n, &a, i).unwrap(), cyclic_cohomology(n, &a, i + 2).unwrap());
        }
        // Herbrand quotient of a finite module is 1
        let h1 = cyclic_cohomology(n, &a, 1).unwrap().order().unwrap();
        let h2 = cyclic_cohomology(n, &a, 2).unwrap().order().unwrap();
        prop_assert_eq!(h1, h2);
    }
}
