use criterion::{black_box, criterion_group, criterion_main, Criterion};
use dwd_core::graph::{enumerate, EnumerateOptions};
use dwd_core::laurent::VarTable;
use dwd_core::positivity::{express_minor, MinorId};
use dwd_core::quiver::detect_moves;
use dwd_core::wiring::{chamber_labels, standard_word};
use dwd_core::LaurentPoly;

fn detection(c: &mut Criterion) {
    for n in [3, 4, 5] {
        let s = chamber_labels(&standard_word(n));
        c.bench_function(&format!("detect_moves n={n}"), |b| b.iter(|| detect_moves(black_box(&s))));
    }
}

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for n in [3, 4] {
        let opts = EnumerateOptions { build_graph: false, ..Default::default() };
        group.bench_function(format!("n={n}"), |b| b.iter(|| enumerate(black_box(n), &opts).unwrap()));
    }
    group.finish();
}

fn laurent(c: &mut Criterion) {
    // (x0 + x1 + x2 + x3)^4 / (x0 + x1)
    let vars = VarTable::generic(4);
    let sum = (0..4).fold(LaurentPoly::zero(&vars), |acc, i| acc.add(&LaurentPoly::var(&vars, i)).unwrap());
    let mut p = LaurentPoly::one(&vars);
    for _ in 0..4 {
        p = p.mul(&sum).unwrap();
    }
    let d = LaurentPoly::var(&vars, 0).add(&LaurentPoly::var(&vars, 1)).unwrap();
    let num = p.mul(&d).unwrap();
    c.bench_function("exact_div dense quartic", |b| b.iter(|| num.exact_div(black_box(&d)).unwrap()));

    let base = chamber_labels(&standard_word(4));
    let target = MinorId::parse("24|24", 4).unwrap();
    c.bench_function("express_minor n=4 24|24", |b| b.iter(|| express_minor(black_box(&base), target).unwrap()));
}

criterion_group!(benches, detection, enumeration, laurent);
criterion_main!(benches);
