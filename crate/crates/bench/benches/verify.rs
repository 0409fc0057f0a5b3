use criterion::{criterion_group, criterion_main, Criterion};
use qsc_core::congruence::check_congruent;
use qsc_core::cyclotomic::cyclotomic;
use qsc_core::harness::theorem_statement;
use qsc_core::microscope::verify_parametric;
use qsc_core::padic::{check, PadicStatement};
use qsc_core::qseries::Family;
use qsc_core::QCase;
use std::hint::black_box;

fn arithmetic(c: &mut Criterion) {
    c.bench_function("cyclotomic 105", |b| b.iter(|| cyclotomic(black_box(105)).unwrap()));
    let phi = cyclotomic(25).unwrap();
    let big = phi.pow(6);
    c.bench_function("gcd of Phi_25 powers", |b| b.iter(|| big.gcd(black_box(&phi.pow(4))).unwrap()));
}

fn congruences(c: &mut Criterion) {
    for (n, d, r) in [(13, 3, 1), (25, 2, 1)] {
        let st = theorem_statement(Family::Theorem1, &QCase::new(n, d, r).unwrap()).unwrap();
        c.bench_function(&format!("theorem 1 at ({n},{d},{r})"), |b| {
            b.iter(|| {
                let (l, r) = st.sides().unwrap();
                check_congruent(&l, &r, &st.modulus).unwrap()
            })
        });
    }
    let case = QCase::new(9, 4, 1).unwrap();
    c.bench_function("parametric theorem 2 at (9,4,1)", |b| {
        b.iter(|| verify_parametric(black_box(&case), Family::Theorem2).unwrap())
    });
}

fn padic(c: &mut Criterion) {
    c.bench_function("B2 at p = 47", |b| b.iter(|| check(PadicStatement::B2, black_box(47), None).unwrap()));
    c.bench_function("Eq7 d = 6 at p = 43", |b| {
        b.iter(|| check(PadicStatement::Eq7(6), black_box(43), None).unwrap())
    });
}

criterion_group!(benches, arithmetic, congruences, padic);
criterion_main!(benches);
