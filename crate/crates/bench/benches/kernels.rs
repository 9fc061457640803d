use criterion::{criterion_group, criterion_main, Criterion};

use reispec_core::{
    coker_card_formula, coker_card_oracle, decide_q_spectrum, enumerate_spectrum,
    smith_normal_form, EnumBound, GroupDesc, Matrix, Ring,
};

fn mat(text: &str) -> Matrix {
    text.parse().unwrap()
}

fn bench_determinant(c: &mut Criterion) {
    let m = mat("3/7,-2,5,1/3;4,1/2,-6,2;7,-1/5,3,8;1,2,3,4/9");
    c.bench_function("det 4x4 rational", |b| {
        b.iter(|| std::hint::black_box(&m).det().unwrap())
    });
}

fn bench_smith(c: &mut Criterion) {
    let m = mat("-6,111,-36,6;5,-672,210,74;0,-255,81,24;-7,255,-81,-10");
    c.bench_function("smith normal form 4x4", |b| {
        b.iter(|| smith_normal_form(std::hint::black_box(&m)).unwrap())
    });
}

fn bench_cokernel(c: &mut Criterion) {
    let ring = Ring::p_local(3).unwrap();
    let m = mat("5/9,2,-7/3;1/3,-8,4;6,1/9,-2/3");
    c.bench_function("cokernel determinant formula 3x3", |b| {
        b.iter(|| coker_card_formula(std::hint::black_box(&m), &ring).unwrap())
    });
    c.bench_function("cokernel localization oracle 3x3", |b| {
        b.iter(|| coker_card_oracle(std::hint::black_box(&m), 3).unwrap())
    });
}

fn bench_dichotomy(c: &mut Criterion) {
    let swap = mat("0,1;1,0");
    c.bench_function("Q dichotomy witness search (swap)", |b| {
        b.iter(|| decide_q_spectrum(std::hint::black_box(&swap)).unwrap())
    });
    let nowitness = mat("1,0;0,4");
    c.bench_function("Q dichotomy full grid exhaustion", |b| {
        b.iter(|| decide_q_spectrum(std::hint::black_box(&nowitness)).unwrap())
    });
}

fn bench_enumeration(c: &mut Criterion) {
    let group = GroupDesc::new(Ring::p_local(2).unwrap(), mat("1,0;0,-1")).unwrap();
    let bound = EnumBound {
        exponent: 4,
        value_cap: 2000,
        coeff_bound: None,
    };
    c.bench_function("spectrum enumeration diag(1,-1) t=4", |b| {
        b.iter(|| enumerate_spectrum(std::hint::black_box(&group), &bound).unwrap())
    });
}

criterion_group!(
    benches,
    bench_determinant,
    bench_smith,
    bench_cokernel,
    bench_dichotomy,
    bench_enumeration
);
criterion_main!(benches);
