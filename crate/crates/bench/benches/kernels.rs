use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use onemotive::duality::sharp_pairing;
use onemotive::groups::smith_normal_form;
use onemotive::motives::{sharp_extension, t_oint};
use onemotive::sharp::sharp_envelope;
use onemotive_bench::{free_motives, int_matrix, motives};

fn snf(c: &mut Criterion) {
    for n in [3, 6, 10] {
        let a = int_matrix(n);
        c.bench_function(&format!("snf {n}x{n}"), |b| b.iter(|| smith_normal_form(black_box(&a))));
    }
}

fn sharp(c: &mut Criterion) {
    let ms = motives(16);
    c.bench_function("t_oint + sharp_envelope", |b| {
        b.iter(|| ms.iter().map(|m| sharp_envelope(&t_oint(m).unwrap()).unwrap().result.vdim).sum::<usize>())
    });
    c.bench_function("sharp_extension", |b| {
        b.iter_batched(
            || ms.clone(),
            |ms| ms.iter().map(|m| sharp_extension(m).unwrap().motive.lie_dim()).sum::<usize>(),
            BatchSize::SmallInput,
        )
    });
}

fn pairing(c: &mut Criterion) {
    let ms = free_motives(8);
    c.bench_function("sharp_pairing", |b| b.iter(|| ms.iter().filter(|m| sharp_pairing(m).unwrap().holds()).count()));
}

criterion_group!(benches, snf, sharp, pairing);
criterion_main!(benches);
