use antimorph::category::{caf, check_adjunctions, verify_anti_category, AdjunctionConfig};
use antimorph::morphism::{enumerate, factorization_classes, DEFAULT_BOUND};
use antimorph::semilinear::run_suite;
use antimorph::theorem::{anti_monoid, variance_table};
use antimorph::{corpus, Variance};
use antimorph_bench::{adjunction_corpus, group_pairs, semilinear_suite};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn enumeration(c: &mut Criterion) {
    for (a, b) in group_pairs() {
        for v in [Variance::Straight, Variance::Anti] {
            c.bench_function(&format!("enumerate {} -> {} {v}", a.name(), b.name()), |bench| {
                bench.iter(|| enumerate(black_box(&a), black_box(&b), v, DEFAULT_BOUND).unwrap())
            });
        }
    }
    let d4 = corpus::d4();
    c.bench_function("factorization classes D4 -> D4 -> D4", |bench| {
        bench.iter(|| factorization_classes(&d4, &d4, &d4, DEFAULT_BOUND).unwrap())
    });
}

fn laws(c: &mut Criterion) {
    let groups = corpus::groups();
    let mut g = c.benchmark_group("laws");
    g.sample_size(10);
    g.bench_function("variance table over the group corpus", |bench| {
        bench.iter(|| variance_table(black_box(&groups), DEFAULT_BOUND).unwrap())
    });
    g.bench_function("anti monoid of D4", |bench| bench.iter(|| anti_monoid(&corpus::d4(), DEFAULT_BOUND).unwrap()));
    g.finish();
}

fn categories(c: &mut Criterion) {
    let cats = adjunction_corpus();
    let mut g = c.benchmark_group("categories");
    g.sample_size(10);
    g.bench_function("caf and anti-category checks", |bench| {
        bench.iter(|| cats.iter().map(|x| verify_anti_category(&caf(x)).pass()).all(|p| p))
    });
    g.bench_function("adjunctions over the category corpus", |bench| {
        bench.iter(|| check_adjunctions(black_box(&cats), AdjunctionConfig::default()).unwrap())
    });
    g.finish();
}

fn semilinear(c: &mut Criterion) {
    let config = semilinear_suite();
    let mut g = c.benchmark_group("semilinear");
    g.sample_size(10);
    g.bench_function("seeded suite of 10 maps", |bench| bench.iter(|| run_suite(black_box(&config)).unwrap()));
    g.finish();
}

criterion_group!(benches, enumeration, laws, categories, semilinear);
criterion_main!(benches);
