use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use trigsturm::corpus;
use trigsturm::exactnum::rat;
use trigsturm::paramsolve::{maximal_interval, ParamFamily};
use trigsturm::poly::Poly;
use trigsturm::prover::{decide_trig, ProveOptions};
use trigsturm::sturm::SturmChain;
use trigsturm::trig::{sine_poly, q, XInterval, YInterval};

fn sturm(c: &mut Criterion) {
    let p = Poly::from_ints(&[5, 14, -28, -56, 80]);
    c.bench_function("sturm/quartic chain", |b| b.iter(|| SturmChain::new(black_box(&p)).unwrap()));
    let big = corpus::c2().expand().rational().unwrap().0;
    let chain = SturmChain::new(&big).unwrap();
    c.bench_function("sturm/isolate C2", |b| {
        b.iter(|| chain.isolate(&rat(-1, 1), &rat(1, 1), black_box(&rat(1, 1 << 20))))
    });
}

fn decide(c: &mut Criterion) {
    let opts = ProveOptions::default();
    let full = XInterval::full();
    for (name, t) in [("C2", corpus::c2()), ("T2", corpus::t2()), ("vietoris n=12", corpus::v2(12))] {
        c.bench_function(&format!("decide/{name}"), |b| b.iter(|| decide_trig(black_box(&t), &full, &opts).unwrap()));
    }
}

fn param(c: &mut Criterion) {
    let fam = ParamFamily::new(
        sine_poly(&[q(2, 1), q(1, 1)]),
        sine_poly(&[q(0, 1), q(0, 1), q(1, 1)]),
    );
    let iv = YInterval::full();
    let mut g = c.benchmark_group("param");
    g.sample_size(10);
    g.bench_function("maximal interval", |b| b.iter(|| maximal_interval(&fam, &iv, &rat(1, 1)).unwrap()));
    g.finish();
}

criterion_group!(benches, sturm, decide, param);
criterion_main!(benches);
