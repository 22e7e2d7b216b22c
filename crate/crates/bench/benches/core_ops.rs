//! Microbenchmarks for the hot paths: Weyl group closure, character
//! computation, cyclotomic arithmetic, localized pushforward, and jets.

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use weylkit::completion::tau_point;
use weylkit::cyclotomic::Cyclotomic;
use weylkit::induction::pushforward_fixed_points;
use weylkit::rep::weyl_character;
use weylkit::root_datum::{datum_from_preset, SubDatum, TorsionPoint};
use weylkit::LaurentPoly;

fn weyl_closure(c: &mut Criterion) {
    let g2 = datum_from_preset("G2").unwrap();
    c.bench_function("weyl_closure_g2", |b| {
        b.iter(|| black_box(&g2).weyl_elements().unwrap())
    });
}

fn characters(c: &mut Criterion) {
    let b2 = datum_from_preset("B2").unwrap();
    c.bench_function("weyl_character_b2_22", |b| {
        b.iter(|| weyl_character(black_box(&b2), &[2, 2]).unwrap())
    });
    let g2 = datum_from_preset("G2").unwrap();
    c.bench_function("weyl_character_g2_11", |b| {
        b.iter(|| weyl_character(black_box(&g2), &[1, 1]).unwrap())
    });
}

fn cyclotomic_mul(c: &mut Criterion) {
    let a = Cyclotomic::root_of_unity(12, 5).add_ref(&Cyclotomic::from_i64(3));
    let b = Cyclotomic::root_of_unity(8, 3).add_ref(&Cyclotomic::from_i64(-2));
    c.bench_function("cyclotomic_mul_z12_z8", |bch| {
        bch.iter(|| black_box(&a).mul_ref(black_box(&b)))
    });
}

fn pushforward(c: &mut Criterion) {
    let a2 = datum_from_preset("A2").unwrap();
    let torus = SubDatum::torus(&a2);
    let class = LaurentPoly::monomial(2, &[2, 1], Cyclotomic::one());
    c.bench_function("pushforward_flag_a2", |b| {
        b.iter(|| pushforward_fixed_points(black_box(&torus), black_box(&class)).unwrap())
    });
}

fn jets(c: &mut Criterion) {
    let sl2 = datum_from_preset("SL2").unwrap();
    let q = TorsionPoint::parse("1/4", 1).unwrap();
    let chi = weyl_character(&sl2, &[3]).unwrap();
    c.bench_function("tau_point_sl2_order4", |b| {
        b.iter(|| tau_point(black_box(&sl2), &q, &chi, 4).unwrap())
    });
}

criterion_group!(benches, weyl_closure, characters, cyclotomic_mul, pushforward, jets);
criterion_main!(benches);
