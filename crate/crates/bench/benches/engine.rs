use bbk_core::examples::o_gb_halfplane;
use bbk_core::linf::{ce_differential, LieAlgebra};
use bbk_core::models::{bf_b_condition, bf_theory, q_line_condition, topological_mechanics};
use bbk_core::observables::{minimal_weiss_covers, ClassicalObservables};
use bbk_core::scalar::q;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn lie(c: &mut Criterion) {
    let g = LieAlgebra::sl2();
    c.bench_function("ce_differential/sl2/T=3", |b| {
        b.iter(|| ce_differential(&g.to_linf(None).unwrap(), 3).unwrap().complex.cohomology_dims())
    });
    c.bench_function("halfplane/sl2/weight<=1", |b| b.iter(|| o_gb_halfplane(black_box(&g), 1).unwrap().1));
}

fn fields(c: &mut Criterion) {
    let tm = topological_mechanics(3, &q(3), 2).unwrap();
    let bf = bf_theory(&LieAlgebra::sl2(), 3, &q(1), 1).unwrap();
    c.bench_function("lagrangian/toplmech/all-opens", |b| {
        b.iter(|| tm.mesh().nonempty_opens().iter().all(|u| tm.check_lagrangian(u).unwrap().holds()))
    });
    c.bench_function("lagrangian/bf-sl2/all-opens", |b| {
        b.iter(|| bf.mesh().nonempty_opens().iter().all(|u| bf.check_lagrangian(u).unwrap().holds()))
    });
}

fn observables(c: &mut Criterion) {
    let mut group = c.benchmark_group("cech");
    group.sample_size(10);
    let tm = topological_mechanics(3, &q(1), 1).unwrap();
    let tm_cond = q_line_condition(&tm).unwrap();
    let bf = bf_theory(&LieAlgebra::sl2(), 3, &q(1), 1).unwrap();
    let bf_cond = bf_b_condition(&bf).unwrap();
    for (name, sys, cond) in [("toplmech", &tm, &tm_cond), ("bf-sl2", &bf, &bf_cond)] {
        group.bench_function(name, |b| {
            b.iter(|| {
                let obs = ClassicalObservables::new(sys, cond, 2).unwrap();
                let full = sys.mesh().full();
                minimal_weiss_covers(sys.mesh(), &full, 2).iter().all(|cover| obs.cech_check(&full, cover).unwrap().holds())
            })
        });
    }
    group.finish();
}

criterion_group!(benches, lie, fields, observables);
criterion_main!(benches);
