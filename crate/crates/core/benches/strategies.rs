use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_cox::fan::TorusInvariantDivisor;
use toric_cox::{corpus, CoxData, EulerModule, Strategy};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn lattice_points(c: &mut Criterion) {
    let cd = CoxData::new(corpus::delpezzo6()).unwrap();
    let p = cd.section_polytope(&TorusInvariantDivisor(vec![40; 6]));
    let mut group = c.benchmark_group("lattice_points");
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| black_box(p.lattice_points_with(s).unwrap().len()))
        });
    }
    group.finish();
}

fn monomial_basis(c: &mut Criterion) {
    let cd = CoxData::new(corpus::hirzebruch(3)).unwrap();
    let mut group = c.benchmark_group("monomial_basis");
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| black_box(cd.monomial_basis_with(&[6, 8], s).unwrap().len()))
        });
    }
    group.finish();
}

fn euler_identity(c: &mut Criterion) {
    let em = EulerModule::new(CoxData::new(corpus::delpezzo6()).unwrap());
    let k = em.cox().kappa().clone();
    let mut group = c.benchmark_group("euler_identity");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &s, |b, &s| {
            b.iter(|| black_box(em.verify_euler_identity(&k, 8, 0, 0, s).unwrap().checked))
        });
    }
    group.finish();
}

criterion_group!(benches, lattice_points, monomial_basis, euler_identity);
criterion_main!(benches);
