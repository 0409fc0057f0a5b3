//! A deterministic run of the library's invariants, for the `selftest`
//! command.

use crate::arith::LaurentPoly;
use crate::congruence::check_congruent;
use crate::cyclotomic::{cyclotomic, divisors, Modulus};
use crate::error::Result;
use crate::microscope::microscope_report;
use crate::padic::{self, a_p, gamma_p, Outcome, PadicContext, PadicStatement};
use crate::qseries::{bailey_rhs_product, closed_prefactor, q_pochhammer, Family, QCase};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct SelftestItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn random_poly(rng: &mut ChaCha8Rng, max_len: usize) -> LaurentPoly {
    let len = rng.gen_range(1..=max_len);
    let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-9..=9)).collect();
    LaurentPoly::from_ints(rng.gen_range(-3..=3), &coeffs)
}

fn ring_axioms(rng: &mut ChaCha8Rng) -> Result<String> {
    for _ in 0..200 {
        let (a, b, c) = (random_poly(rng, 10), random_poly(rng, 10), random_poly(rng, 10));
        let distributes = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        let associates = &(&a * &b) * &c == &a * &(&b * &c);
        let commutes = &a * &b == &b * &a;
        let involution = a.negate_q().negate_q() == a;
        if !(distributes && associates && commutes && involution) {
            return Ok(format!("violated at {a}, {b}, {c}"));
        }
        if !b.is_zero() {
            let (q, r) = a.divrem(&b)?;
            if &(&q * &b) + &r != a {
                return Ok(format!("divrem reconstruction fails for {a} / {b}"));
            }
            let g = a.gcd(&b)?;
            if !a.divisible_by(&g)? || !b.divisible_by(&g)? {
                return Ok(format!("gcd {g} does not divide {a}, {b}"));
            }
        }
    }
    Ok(String::new())
}

fn cyclotomic_identities() -> Result<String> {
    for n in 1..=40u64 {
        let prod = divisors(n)
            .into_iter()
            .try_fold(LaurentPoly::one(), |acc, d| Ok::<_, crate::Error>(acc * cyclotomic(d)?))?;
        if prod != LaurentPoly::q_pow(n as i64) - LaurentPoly::one() {
            return Ok(format!("divisor product fails at n = {n}"));
        }
    }
    for n in (3..=25u64).step_by(2) {
        let phi = cyclotomic(n)?;
        if cyclotomic(2 * n)? != phi.negate_q() {
            return Ok(format!("Phi_2n(q) != Phi_n(-q) at n = {n}"));
        }
        if phi.compose_power(2)? != &phi * &phi.negate_q() {
            return Ok(format!("Phi_n(q^2) != Phi_n(q) Phi_n(-q) at n = {n}"));
        }
    }
    Ok(String::new())
}

fn prefactor_identity() -> Result<String> {
    for n in (3..=15).step_by(2) {
        for d in 1..=6 {
            for r in (n - d * n + d)..=n {
                let Ok(case) = QCase::new(n, d, r) else { continue };
                if bailey_rhs_product(&case)? != closed_prefactor(&case)? {
                    return Ok(format!("product != prefactor at {case}"));
                }
            }
        }
    }
    Ok(String::new())
}

fn pochhammer_split(rng: &mut ChaCha8Rng) -> String {
    for _ in 0..100 {
        let t = rng.gen_range(-12..12);
        let step = rng.gen_range(1..6);
        let (m, k) = (rng.gen_range(0..8u32), rng.gen_range(0..8u32));
        if q_pochhammer(t, step, m + k) != q_pochhammer(t, step, m) * q_pochhammer(t + step * m as i64, step, k) {
            return format!("split fails at t={t} step={step} m={m} k={k}");
        }
    }
    String::new()
}

fn congruence_oracle(rng: &mut ChaCha8Rng) -> Result<String> {
    for _ in 0..100 {
        let n = rng.gen_range(3..=8u64);
        let m = Modulus::single("Phi", cyclotomic(n)?, rng.gen_range(1..=2))?;
        let (l, r) = (random_poly(rng, 13).shift(3), random_poly(rng, 13).shift(3));
        let l = l.shift(-l.low().min(0));
        let r = r.shift(-r.low().min(0));
        let v = check_congruent(&l.clone().into(), &r.clone().into(), &m)?;
        let (_, rem) = (&l - &r).divrem(m.expanded())?;
        if v.holds != rem.is_zero() {
            return Ok(format!("oracle disagreement for {l} vs {r} mod {}", m.expanded()));
        }
        let t = random_poly(rng, 6);
        let moved = &l + &(m.expanded() * &t);
        if check_congruent(&moved.into(), &r.into(), &m)?.holds != v.holds {
            return Ok("verdict changed under lhs + M T".into());
        }
    }
    Ok(String::new())
}

fn gamma_properties(rng: &mut ChaCha8Rng) -> Result<String> {
    for p in [3u64, 5, 7, 11, 13] {
        let ctx = PadicContext::new(p, 3)?;
        let m = ctx.modulus();
        for x in 1..=2 * p {
            let xr = BigRational::from_integer(BigInt::from(x));
            let g = gamma_p(&xr, &ctx)?;
            let g1 = gamma_p(&(&xr + BigRational::one()), &ctx)?;
            let factor = if x % p == 0 { 1 } else { x % m };
            if (g1 as u128 + (factor as u128 * g as u128) % m as u128) % m as u128 != 0 {
                return Ok(format!("functional equation fails at p = {p}, x = {x}"));
            }
        }
        let mut tried = 0;
        while tried < 50 {
            let den = rng.gen_range(1..100i64);
            if den % p as i64 == 0 {
                continue;
            }
            tried += 1;
            let x = BigRational::new(rng.gen_range(-300..300i64).into(), den.into());
            let prod = (gamma_p(&x, &ctx)? as u128 * gamma_p(&(BigRational::one() - &x), &ctx)? as u128) % m as u128;
            let expect = if a_p(&x, p)? % 2 == 0 { 1 } else { m as u128 - 1 };
            if prod != expect {
                return Ok(format!("reflection fails at p = {p}, x = {x}"));
            }
        }
    }
    Ok(String::new())
}

fn spot_checks() -> Result<String> {
    let case = QCase::new(5, 2, 1)?;
    for fam in Family::ALL {
        let r = microscope_report(&case, fam)?;
        if !r.all_ok() {
            return Ok(format!("microscope report fails at {case} {fam:?}"));
        }
    }
    for (st, p) in [(PadicStatement::B2, 5), (PadicStatement::E2, 7), (PadicStatement::Cor4(4), 5)] {
        if padic::check(st, p, None)?.outcome != Outcome::Held {
            return Ok(format!("{st} fails at p = {p}"));
        }
    }
    Ok(String::new())
}

fn item(name: &'static str, r: Result<String>) -> SelftestItem {
    match r {
        Ok(detail) => SelftestItem {
            name,
            passed: detail.is_empty(),
            detail,
        },
        Err(e) => SelftestItem {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

/// Run every invariant with a fixed seed.
pub fn selftest() -> Vec<SelftestItem> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    vec![
        item("ring axioms, division and gcd", ring_axioms(&mut rng)),
        item("cyclotomic identities", cyclotomic_identities()),
        item("q-shifted factorials split", Ok(pochhammer_split(&mut rng))),
        item("product equals closed prefactor", prefactor_identity()),
        item("congruence oracle and well-definedness", congruence_oracle(&mut rng)),
        item("p-adic gamma properties", gamma_properties(&mut rng)),
        item("parametric and classical spot checks", spot_checks()),
    ]
}
