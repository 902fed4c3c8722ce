use criterion::{black_box, criterion_group, criterion_main, Criterion};
use logcoh::linalg::snf::{smith_normal_form, IntMatrix};
use logcoh::residue::NcdChart;
use logcoh::{
    build_stalk_log_model, compare_theorem_f00, gr_cohomology_concentration, verify_cech_exactness,
    verify_homotopy_identities, FsMonoid, LogScene,
};

fn quadric_scene() -> LogScene {
    let p = FsMonoid::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 2]]).unwrap();
    let gens = p.generators().to_vec();
    LogScene::monomial(p, 0, gens).unwrap()
}

fn linear_algebra(c: &mut Criterion) {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4, 6], vec![-6, 6, 12, 0], vec![10, -4, -16, 8], vec![3, 1, 0, 5]]);
    c.bench_function("smith normal form 4x4", |b| b.iter(|| smith_normal_form(black_box(&a))));
}

fn cohomology(c: &mut Criterion) {
    let mut g = c.benchmark_group("compare");
    g.sample_size(20);
    let quadric = quadric_scene();
    g.bench_function("quadric cone", |b| b.iter(|| compare_theorem_f00(black_box(&quadric)).unwrap()));
    let cube = LogScene::ncd_origin(3, 3).unwrap();
    g.bench_function("N^3 origin", |b| b.iter(|| compare_theorem_f00(black_box(&cube)).unwrap()));
    g.finish();
}

fn checks(c: &mut Criterion) {
    let mut g = c.benchmark_group("checks");
    g.sample_size(20);
    g.bench_function("homotopy r=3 i=4", |b| b.iter(|| verify_homotopy_identities(3, 4)));
    let plane = LogScene::ncd_origin(2, 2).unwrap();
    g.bench_function("cech N^2 i=2 n=2", |b| b.iter(|| verify_cech_exactness(&plane, 2, 2, 2).unwrap()));
    let chart = NcdChart::new(3, 2, vec![vec![1, 1, 0]]).unwrap();
    g.bench_function("gr k=1 n=3", |b| b.iter(|| gr_cohomology_concentration(&chart, 1, 12, 2).unwrap()));
    let stalk = build_stalk_log_model(&plane).unwrap();
    g.bench_function("stalk N^2", |b| b.iter(|| logcoh::verify_stalk_poincare(&stalk, 8, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, linear_algebra, cohomology, checks);
criterion_main!(benches);
