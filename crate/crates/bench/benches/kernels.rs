use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use metasplit::cohomology::{brute_force_h2, FiniteGroup};
use metasplit::hilbert::{ext_symbols, hilbert, hilbert_conic_oracle};
use metasplit::metaplectic::{cocycle_gl2, cocycle_sl2};
use metasplit::sampling::{self, stream};
use metasplit::{Qp, QpExt};

fn symbols(c: &mut Criterion) {
    let f2 = Qp::new(2, 24).unwrap();
    let f5 = Qp::new(5, 24).unwrap();
    let (x, y) = (f2.elem(-6), f2.elem(10));
    c.bench_function("conic oracle Q_2", |b| b.iter(|| hilbert_conic_oracle(&f2, black_box(&x), black_box(&y)).unwrap()));
    let (u, v) = (f5.elem(15), f5.elem(-2));
    c.bench_function("tame symbol Q_5", |b| b.iter(|| hilbert(&f5, black_box(&u), black_box(&v)).unwrap()));

    let e = QpExt::new(f2, 2).unwrap();
    ext_symbols(&e).unwrap();
    let mut rng = stream(1, 0);
    let (a, bb) = (sampling::nonzero_ext(&mut rng, &e), sampling::nonzero_ext(&mut rng, &e));
    c.bench_function("class lookup Q_2(sqrt 2)", |b| b.iter(|| hilbert(&e, black_box(&a), black_box(&bb)).unwrap()));
    c.bench_function("conic oracle Q_2(sqrt 2)", |b| b.iter(|| hilbert_conic_oracle(&e, black_box(&a), black_box(&bb)).unwrap()));
}

fn cocycles(c: &mut Criterion) {
    for (p, d) in [(3, 2), (2, -1)] {
        let e = QpExt::new(Qp::new(p, 24).unwrap(), d).unwrap();
        ext_symbols(&e).ok();
        let mut rng = stream(2, 0);
        let (g, h) = (sampling::sl2(&mut rng, &e), sampling::sl2(&mut rng, &e));
        let (g2, h2) = (sampling::gl2(&mut rng, &e), sampling::gl2(&mut rng, &e));
        c.bench_function(&format!("cocycle sl2 Q_{p}(sqrt {d})"), |b| b.iter(|| cocycle_sl2(&e, black_box(&g), black_box(&h))));
        c.bench_function(&format!("cocycle gl2 Q_{p}(sqrt {d})"), |b| b.iter(|| cocycle_gl2(&e, black_box(&g2), black_box(&h2))));
    }
}

fn cohomology(c: &mut Criterion) {
    let z8 = FiniteGroup::cyclic(8).unwrap();
    let z8z4 = FiniteGroup::product(&z8, &FiniteGroup::cyclic(4).unwrap()).unwrap();
    let mut group = c.benchmark_group("brute force H^2");
    group.sample_size(10);
    group.bench_function("Z/8", |b| b.iter(|| brute_force_h2(black_box(&z8), false).unwrap()));
    group.bench_function("Z/8 x Z/4", |b| b.iter(|| brute_force_h2(black_box(&z8z4), false).unwrap()));
    group.finish();
}

criterion_group!(benches, symbols, cocycles, cohomology);
criterion_main!(benches);
