use criterion::{black_box, criterion_group, criterion_main, Criterion};
use superqg::cartan::{self, Weight};
use superqg::highest::{build_hw, VermaContext};
use superqg::params;
use superqg::qhs::verify::associativity_fuzz;
use superqg::qhs::{QParams, Rewriter};
use superqg::uminus::Boson;

fn gram_rank(c: &mut Criterion) {
    for (name, beta) in [("A2", vec![2, 2]), ("B2", vec![2, 2])] {
        let d = cartan::preset(name).unwrap();
        let fam = params::preset("Uqsg", &d).unwrap();
        c.bench_function(&format!("gram rank {name} {beta:?}"), |b| {
            b.iter(|| {
                let boson = Boson::new(&d, &fam).unwrap();
                let (_, m) = boson.gram(&beta);
                black_box(boson.rank_of(&m).unwrap())
            })
        });
    }
}

fn highest_weight(c: &mut Criterion) {
    let d = cartan::preset("A2").unwrap();
    let fam = params::preset("Uqsg", &d).unwrap();
    c.bench_function("build V(1,1) on A2 to height 4", |b| {
        b.iter(|| {
            let ctx = VermaContext::new(&d, &fam, &Weight(vec![1, 1])).unwrap();
            black_box(build_hw(&ctx, 4).unwrap().dims())
        })
    });
}

fn quiver_hecke(c: &mut Criterion) {
    let d = cartan::preset("A2").unwrap();
    let rw = Rewriter::new(QParams::preset(&d).unwrap(), 3).unwrap();
    c.bench_function("straighten in R(3)", |b| b.iter(|| black_box(rw.straighten("x1*t2*t1*e(0,1,0)*x3*t2*t1").unwrap())));
    c.bench_function("associativity, 100 triples in R(3)", |b| b.iter(|| black_box(associativity_fuzz(&rw, 100, 7, 4).unwrap())));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = gram_rank, highest_weight, quiver_hecke
}
criterion_main!(benches);
