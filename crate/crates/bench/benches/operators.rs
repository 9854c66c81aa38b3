use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rumin_core::currents::{mass_report, Chain, Domain, ParamSimplex};
use rumin_core::linalg::Matrix;
use rumin_core::sampling::{random_e0_section, random_form, rng};
use rumin_core::{qi, RuminComplex};

fn complex_construction(c: &mut Criterion) {
    let mut g = c.benchmark_group("complex_new");
    for n in 1..=3 {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| b.iter(|| RuminComplex::new(n)));
    }
    g.finish();
}

fn pseudo_inverse(c: &mut Criterion) {
    let mut g = c.benchmark_group("pseudo_inverse");
    for n in 1..=3 {
        let rc = RuminComplex::get(n);
        let block = rc.d0().block(n).expect("middle degree").matrix.clone();
        g.bench_with_input(BenchmarkId::from_parameter(n), &block, |b, m: &Matrix| b.iter(|| m.pseudo_inverse()));
    }
    g.finish();
}

fn rumin_differential(c: &mut Criterion) {
    let mut g = c.benchmark_group("d_c");
    for n in 1..=2 {
        let rc = RuminComplex::get(n);
        let mut r = rng(1);
        let sections: Vec<_> = (0..2 * n + 1).map(|h| random_e0_section(&mut r, rc, h, 3)).collect();
        g.bench_with_input(BenchmarkId::from_parameter(n), &sections, |b, s| {
            b.iter(|| {
                for g in s {
                    std::hint::black_box(rc.d_c(g).unwrap());
                }
            })
        });
    }
    g.finish();
}

fn projector(c: &mut Criterion) {
    let mut g = c.benchmark_group("pi_e");
    for n in 1..=2 {
        let rc = RuminComplex::get(n);
        let a = random_form(&mut rng(2), n, n, 3);
        g.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| rc.pi_e(a).unwrap()));
    }
    g.finish();
}

fn mass_quadrature(c: &mut Criterion) {
    let square = Chain::single(ParamSimplex::parse(2, Domain::Cube, &["u1", "0", "u2"]).unwrap());
    let curved = Chain::single(ParamSimplex::parse(2, Domain::Cube, &["u1", "u2", "sin(u1*u2)"]).unwrap());
    let plane = Chain::single(ParamSimplex::parse(3, Domain::Cube, &["u1", "u2", "0", "0", "u3"]).unwrap());
    let mut g = c.benchmark_group("mass_report");
    for (name, t) in [("vertical_square", &square), ("curved_graph", &curved), ("h2_plane", &plane)] {
        g.bench_function(name, |b| b.iter(|| mass_report(t)));
    }
    let dilated = square.pushforward_dilation(&qi(64)).unwrap();
    g.bench_function("vertical_square_x64", |b| b.iter(|| mass_report(&dilated)));
    g.finish();
}

criterion_group!(benches, complex_construction, pseudo_inverse, rumin_differential, projector, mass_quadrature);
criterion_main!(benches);
