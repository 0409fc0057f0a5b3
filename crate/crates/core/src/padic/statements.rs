//! The classical supercongruences as checkable statements.

use super::{gamma_p, valuation, PadicContext};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SwisherA {
    Half,
    Third,
    Quarter,
}

impl SwisherA {
    pub const ALL: [SwisherA; 3] = [SwisherA::Half, SwisherA::Third, SwisherA::Quarter];

    /// `1/a`.
    pub fn inverse(self) -> i64 {
        match self {
            SwisherA::Half => 2,
            SwisherA::Third => 3,
            SwisherA::Quarter => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PadicStatement {
    B2,
    E2,
    F2,
    Swisher(SwisherA),
    /// Even `d`.
    Eq7(i64),
    /// `1..=4`: `s = -1` at `q -> 1`, `s = 1` at `q -> 1`, `s = -1` at
    /// `q -> -1`, `s = 1` at `q -> -1`.
    Cor3(u8),
    Cor4(u8),
    He,
}

impl fmt::Display for PadicStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PadicStatement::B2 => write!(f, "B2"),
            PadicStatement::E2 => write!(f, "E2"),
            PadicStatement::F2 => write!(f, "F2"),
            PadicStatement::Swisher(a) => write!(f, "SW-1/{}", a.inverse()),
            PadicStatement::Eq7(d) => write!(f, "EQ7-{d}"),
            PadicStatement::Cor3(i) => write!(f, "COR3-{i}"),
            PadicStatement::Cor4(i) => write!(f, "COR4-{i}"),
            PadicStatement::He => write!(f, "HE"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Held,
    Failed,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PadicVerdict {
    pub statement: String,
    pub p: u64,
    pub e: u32,
    pub outcome: Outcome,
    /// `(lhs - rhs) mod p^e` when defined.
    pub residue: Option<u64>,
    /// `v_p(lhs - rhs)` for exactly comparable sides; `None` when the
    /// difference is zero or the right side is a `Gamma_p` residue.
    pub difference_valuation: Option<i64>,
    pub reason: Option<String>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `sum_{k=0}^{upper} sign^k (c1 k + c0) prod (a_i)_k / prod (b_j)_k`.
struct HyperSum {
    upper: i64,
    alternating: bool,
    weight: (i64, i64),
    numer: Vec<BigRational>,
    denom: Vec<BigRational>,
}

impl HyperSum {
    fn new(upper: i64, numer: Vec<BigRational>, denom: Vec<BigRational>) -> Self {
        Self {
            upper,
            alternating: false,
            weight: (0, 1),
            numer,
            denom,
        }
    }

    fn alternating(mut self) -> Self {
        self.alternating = true;
        self
    }

    fn weighted(mut self, c1: i64, c0: i64) -> Self {
        self.weight = (c1, c0);
        self
    }

    fn value(&self) -> BigRational {
        let mut ratio = BigRational::one();
        let mut total = BigRational::zero();
        for k in 0..=self.upper {
            let w = BigRational::from_integer(BigInt::from(self.weight.0 * k + self.weight.1));
            let signed = if self.alternating && k % 2 == 1 { -&ratio } else { ratio.clone() };
            total += signed * w;
            let kk = BigRational::from_integer(BigInt::from(k));
            for a in &self.numer {
                ratio *= a + &kk;
            }
            for b in &self.denom {
                ratio /= b + &kk;
            }
        }
        total
    }
}

fn cubed(x: BigRational) -> Vec<BigRational> {
    vec![x.clone(), x.clone(), x]
}

fn ones(k: usize) -> Vec<BigRational> {
    vec![BigRational::one(); k]
}

fn sign_pow(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

enum RightSide {
    Exact(BigRational),
    Residue(u64),
}

struct Prepared {
    lhs: BigRational,
    rhs: RightSide,
    precision: u32,
}

fn inapplicable(statement: PadicStatement, p: u64, e: u32, reason: String) -> PadicVerdict {
    PadicVerdict {
        statement: statement.to_string(),
        p,
        e,
        outcome: Outcome::Inapplicable,
        residue: None,
        difference_valuation: None,
        reason: Some(reason),
    }
}

/// Stated precision of a statement.
pub fn stated_precision(statement: PadicStatement) -> u32 {
    match statement {
        PadicStatement::Cor3(1 | 2) | PadicStatement::Cor4(1 | 2) | PadicStatement::He => 2,
        _ => 3,
    }
}

/// Residue-class hypothesis of a statement at `p`, or `None` when it applies.
pub fn applicability(statement: PadicStatement, p: u64) -> Option<String> {
    let p = p as i64;
    match statement {
        PadicStatement::B2 | PadicStatement::He => None,
        PadicStatement::E2 => (p % 6 != 1).then(|| format!("residue: {p} != 1 (mod 6)")),
        PadicStatement::F2 => (p % 4 != 1).then(|| format!("residue: {p} != 1 (mod 4)")),
        PadicStatement::Swisher(a) => {
            let m = a.inverse();
            if a == SwisherA::Quarter && p < 5 {
                Some(format!("range: p = {p} < 5"))
            } else if p % m != 1 && p % m != m - 1 {
                Some(format!("residue: {p} != +-1 (mod {m})"))
            } else {
                None
            }
        }
        PadicStatement::Eq7(d) => {
            if d < 2 || d % 2 != 0 {
                Some(format!("parity: d = {d} must be even"))
            } else if p % d != 1 {
                Some(format!("residue: {p} != 1 (mod {d})"))
            } else {
                None
            }
        }
        PadicStatement::Cor3(i) | PadicStatement::Cor4(i) => {
            let m = if matches!(statement, PadicStatement::Cor3(_)) { 3 } else { 4 };
            let s = if i % 2 == 1 { -1 } else { 1 };
            ((p - s).rem_euclid(m) != 0).then(|| format!("residue: {p} != {s} (mod {m})"))
        }
    }
}

fn prepare(statement: PadicStatement, ctx: &PadicContext) -> Result<Prepared> {
    let p = ctx.p() as i64;
    let pr = BigRational::from_integer(BigInt::from(p));
    let exact = |x: BigRational| RightSide::Exact(x);
    let (lhs, rhs) = match statement {
        PadicStatement::B2 => {
            let lhs = HyperSum::new((p - 1) / 2, cubed(rat(1, 2)), ones(3)).alternating().weighted(4, 1).value();
            let g = gamma_p(&rat(1, 2), ctx)?;
            let inv = ctx.inverse(ctx.mul(g, g)).expect("Gamma_p is a unit");
            (lhs, RightSide::Residue(ctx.sub(0, ctx.mul(ctx.reduce(&pr)?, inv))))
        }
        PadicStatement::E2 => {
            let lhs = HyperSum::new((p - 1) / 3, cubed(rat(1, 3)), ones(3)).alternating().weighted(6, 1).value();
            (lhs, exact(pr))
        }
        PadicStatement::F2 => {
            let lhs = HyperSum::new((p - 1) / 4, cubed(rat(1, 4)), ones(3)).alternating().weighted(8, 1).value();
            let g = ctx.mul(gamma_p(&rat(1, 4), ctx)?, gamma_p(&rat(3, 4), ctx)?);
            let inv = ctx.inverse(g).expect("Gamma_p is a unit");
            (lhs, RightSide::Residue(ctx.sub(0, ctx.mul(ctx.reduce(&pr)?, inv))))
        }
        PadicStatement::Swisher(a) => {
            let m = a.inverse();
            let b = if p % m == 1 { 1 } else { m - 1 };
            if (b * p - 1) % m != 0 {
                return Err(Error::NonIntegralExponent(format!("({b}*{p} - 1)/{m}")));
            }
            let upper = (b * p - 1) / m;
            let lhs = HyperSum::new(upper, cubed(rat(1, m)), ones(3)).alternating().weighted(2 * m, 1).value();
            (lhs, exact(rat(sign_pow(upper) * p * b, 1)))
        }
        PadicStatement::Eq7(d) => {
            let upper = (p - 1) / d;
            let lhs = HyperSum::new(upper, cubed(rat(1, d)), ones(3)).alternating().weighted(2 * d, 1).value();
            (lhs, exact(rat(sign_pow(upper) * p, 1)))
        }
        PadicStatement::Cor3(i) => cor3(i, p)?,
        PadicStatement::Cor4(i) => cor4(i, p)?,
        PadicStatement::He => {
            let upper = (p - 1) / 2;
            let lhs = HyperSum::new(upper, cubed(rat(1, 2)), ones(3)).alternating().value();
            let sum = HyperSum::new(upper, cubed(rat(1, 2)), vec![rat(1, 1), rat(3, 4), rat(5, 4)]).value();
            (lhs, exact(sum * rat(sign_pow(upper) * p, 1)))
        }
    };
    Ok(Prepared {
        lhs,
        rhs,
        precision: stated_precision(statement),
    })
}

fn cor3(i: u8, p: i64) -> Result<(BigRational, RightSide)> {
    let pr = rat(p, 1);
    Ok(match i {
        1 => {
            let upper = (p + 1) / 3;
            let lhs = HyperSum::new(upper, cubed(rat(-1, 3)), ones(3)).alternating().value();
            let sum = HyperSum::new(
                upper,
                vec![rat(-1, 3), rat(-1, 3), rat(1, 2)],
                vec![rat(1, 1), rat(1, 3), rat(5, 6)],
            )
            .value();
            (lhs, RightSide::Exact(sum * pr * rat(-sign_pow(upper), 1)))
        }
        2 => {
            let upper = (p - 1) / 3;
            let lhs = HyperSum::new(upper, cubed(rat(1, 3)), ones(3)).alternating().value();
            let sum = HyperSum::new(
                upper,
                vec![rat(1, 3), rat(1, 3), rat(1, 2)],
                vec![rat(1, 1), rat(2, 3), rat(7, 6)],
            )
            .value();
            (lhs, RightSide::Exact(sum * pr * rat(sign_pow(upper), 1)))
        }
        3 => {
            let upper = (p + 1) / 3;
            let lhs = HyperSum::new(upper, cubed(rat(-1, 3)), ones(3)).weighted(6, -1).value();
            let sum = HyperSum::new(upper, vec![rat(-1, 3), rat(-1, 3)], vec![rat(1, 1), rat(1, 3)]).value();
            (lhs, RightSide::Exact(sum * pr))
        }
        4 => {
            let upper = (p - 1) / 3;
            let lhs = HyperSum::new(upper, cubed(rat(1, 3)), ones(3)).weighted(6, 1).value();
            let sum = HyperSum::new(upper, vec![rat(1, 3), rat(1, 3)], vec![rat(1, 1), rat(2, 3)]).value();
            (lhs, RightSide::Exact(sum * pr))
        }
        _ => return Err(Error::Usage(format!("no corollary COR3-{i}"))),
    })
}

fn cor4(i: u8, p: i64) -> Result<(BigRational, RightSide)> {
    let pr = rat(p, 1);
    Ok(match i {
        1 => {
            let upper = (p + 1) / 4;
            let lhs = HyperSum::new(upper, cubed(rat(-1, 4)), ones(3)).alternating().value();
            let sum = HyperSum::new(
                upper,
                vec![rat(-1, 4), rat(-1, 4), rat(1, 2)],
                vec![rat(1, 1), rat(3, 8), rat(7, 8)],
            )
            .value();
            (lhs, RightSide::Exact(sum * pr * rat(-sign_pow(upper), 1)))
        }
        2 => {
            let upper = (p - 1) / 4;
            let lhs = HyperSum::new(upper, cubed(rat(1, 4)), ones(3)).alternating().value();
            let sum = HyperSum::new(
                upper,
                vec![rat(1, 4), rat(1, 4), rat(1, 2)],
                vec![rat(1, 1), rat(5, 8), rat(9, 8)],
            )
            .value();
            (lhs, RightSide::Exact(sum * pr * rat(sign_pow(upper), 1)))
        }
        3 => {
            let upper = (p + 1) / 4;
            let lhs = HyperSum::new(upper, cubed(rat(-1, 4)), ones(3)).alternating().weighted(8, -1).value();
            (lhs, RightSide::Exact(pr * rat(sign_pow(upper), 1)))
        }
        4 => {
            let upper = (p - 1) / 4;
            let lhs = HyperSum::new(upper, cubed(rat(1, 4)), ones(3)).alternating().weighted(8, 1).value();
            (lhs, RightSide::Exact(pr * rat(sign_pow(upper), 1)))
        }
        _ => return Err(Error::Usage(format!("no corollary COR4-{i}"))),
    })
}

/// Check a statement at `p` with precision `e` (the stated one by default).
///
/// Sides with an exact rational right side are compared by
/// `v_p(lhs - rhs) >= e`, which is meaningful even when single terms are not
/// p-integral. A `Gamma_p` right side is a residue, so the left side must be
/// p-integral and is reduced modulo `p^e`.
pub fn check(statement: PadicStatement, p: u64, e: Option<u32>) -> Result<PadicVerdict> {
    let e_req = e.unwrap_or_else(|| stated_precision(statement));
    if let Some(reason) = applicability(statement, p) {
        if p == 2 || !super::is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        return Ok(inapplicable(statement, p, e_req, reason));
    }
    let ctx = PadicContext::new(p, e_req)?;
    let prepared = prepare(statement, &ctx)?;
    debug_assert!(prepared.precision >= 2);
    let mut verdict = PadicVerdict {
        statement: statement.to_string(),
        p,
        e: e_req,
        outcome: Outcome::Failed,
        residue: None,
        difference_valuation: None,
        reason: None,
    };
    match prepared.rhs {
        RightSide::Exact(rhs) => {
            let diff = &prepared.lhs - &rhs;
            let v = valuation(&diff, p);
            verdict.difference_valuation = v;
            if v.is_none_or(|v| v >= 0) {
                verdict.residue = Some(ctx.reduce(&diff)?);
            }
            verdict.outcome = if v.is_none_or(|v| v >= e_req as i64) {
                Outcome::Held
            } else {
                Outcome::Failed
            };
        }
        RightSide::Residue(rhs) => match ctx.reduce(&prepared.lhs) {
            Ok(l) => {
                let r = ctx.sub(l, rhs);
                verdict.residue = Some(r);
                verdict.outcome = if r == 0 { Outcome::Held } else { Outcome::Failed };
            }
            Err(err) => verdict.reason = Some(err.to_string()),
        },
    }
    Ok(verdict)
}

pub fn check_vanhamme(statement: PadicStatement, p: u64, e: u32) -> Result<PadicVerdict> {
    match statement {
        PadicStatement::B2 | PadicStatement::E2 | PadicStatement::F2 => check(statement, p, Some(e)),
        other => Err(Error::Usage(format!("{other} is not a van Hamme statement"))),
    }
}

pub fn check_swisher(a: SwisherA, p: u64, e: u32) -> Result<PadicVerdict> {
    check(PadicStatement::Swisher(a), p, Some(e))
}

pub fn check_corollary(statement: PadicStatement, p: u64, e: Option<u32>) -> Result<PadicVerdict> {
    check(statement, p, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn held(s: PadicStatement, p: u64) -> bool {
        check(s, p, None).unwrap().outcome == Outcome::Held
    }

    #[test]
    fn van_hamme_examples() {
        let b2 = check_vanhamme(PadicStatement::B2, 5, 3).unwrap();
        assert_eq!(b2.outcome, Outcome::Held);
        assert_eq!(b2.residue, Some(0));
        assert!(held(PadicStatement::E2, 7));
        assert_eq!(
            check_vanhamme(PadicStatement::F2, 3, 3).unwrap().outcome,
            Outcome::Inapplicable
        );
        assert!(held(PadicStatement::F2, 13));
    }

    #[test]
    fn swisher_examples() {
        assert!(held(PadicStatement::Swisher(SwisherA::Half), 5));
        assert!(held(PadicStatement::Swisher(SwisherA::Third), 5));
        assert!(held(PadicStatement::Swisher(SwisherA::Quarter), 7));
        assert_eq!(
            check_swisher(SwisherA::Third, 3, 3).unwrap().outcome,
            Outcome::Inapplicable
        );
    }

    #[test]
    fn corollary_examples() {
        assert!(held(PadicStatement::Cor3(4), 7));
        assert!(held(PadicStatement::Cor4(4), 5));
        assert!(held(PadicStatement::Cor4(3), 3));
        assert!(held(PadicStatement::Eq7(2), 5));
        assert!(held(PadicStatement::B2, 5));
        assert_eq!(check(PadicStatement::Eq7(3), 7, None).unwrap().outcome, Outcome::Inapplicable);
    }

    #[test]
    fn stated_precision_is_sharp_at_small_primes() {
        for (st, p) in [(PadicStatement::He, 7), (PadicStatement::E2, 7), (PadicStatement::Cor3(1), 5)] {
            let e = stated_precision(st);
            assert_eq!(check(st, p, Some(e)).unwrap().outcome, Outcome::Held);
            let above = check(st, p, Some(e + 1)).unwrap();
            assert_eq!(above.outcome, Outcome::Failed, "{st} p={p}");
            assert_eq!(above.difference_valuation, Some(e as i64));
        }
        assert!(check(PadicStatement::B2, 4, None).is_err());
    }

    #[test]
    fn sum_evaluator() {
        // sum_{k<=2} (1/2)_k^3 / k!^3 = 1 + 1/8 + 27/512
        let s = HyperSum::new(2, cubed(rat(1, 2)), ones(3)).value();
        assert_eq!(s, rat(512 + 64 + 27, 512));
    }
}
