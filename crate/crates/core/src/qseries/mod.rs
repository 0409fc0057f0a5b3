//! q-integers, q-shifted factorials and the truncated sums of the
//! supercongruence families.

mod bailey;
mod template;
mod theorems;

pub use bailey::{bailey_params, BaileyParams, BaileySides};
pub use template::{Param, PochFactor, SumTemplate, Summand};
pub use theorems::*;

use crate::arith::{BiPoly, BiRationalFunction, LaurentPoly, RationalFunction};
use crate::error::{Hypothesis, Result};
use num_integer::Integer;
use serde::Serialize;

/// A validated parameter triple `(n, d, r)`.
///
/// Invariants: `n` odd and positive, `d >= 1`, `gcd(n, d) = 1`,
/// `n = r (mod d)` and `n - dn + d <= r <= n`, so that the summation bound
/// `(n - r) / d` is a nonnegative integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QCase {
    n: i64,
    d: i64,
    r: i64,
}

impl QCase {
    pub fn new(n: i64, d: i64, r: i64) -> std::result::Result<Self, Hypothesis> {
        if n < 1 || d < 1 {
            return Err(Hypothesis::Positivity { n, d });
        }
        if n % 2 == 0 {
            return Err(Hypothesis::Parity { n });
        }
        if n.gcd(&d) != 1 {
            return Err(Hypothesis::Gcd { n, d });
        }
        check_residue_range(n, d, r)?;
        Ok(Self { n, d, r })
    }

    /// The `(n, d, r) = (n, 3, s)` / `(n, 4, s)` instances with `s = +-1`.
    pub fn with_sign(n: i64, d: i64, s: i64) -> std::result::Result<Self, Hypothesis> {
        if s != 1 && s != -1 || (n - s).rem_euclid(d) != 0 {
            return Err(Hypothesis::SignClass { n, s, m: d });
        }
        Self::new(n, d, s)
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// The summation bound `(n - r) / d`.
    pub fn upper(&self) -> u32 {
        ((self.n - self.r) / self.d) as u32
    }
}

impl std::fmt::Display for QCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(n={}, d={}, r={})", self.n, self.d, self.r)
    }
}

/// Residue and range hypotheses shared with the auxiliary lemma (which drops
/// the parity and gcd conditions).
pub fn check_residue_range(n: i64, d: i64, r: i64) -> std::result::Result<(), Hypothesis> {
    if (n - r).rem_euclid(d) != 0 {
        return Err(Hypothesis::Residue { n, d, r });
    }
    let lo = n - d * n + d;
    if r < lo || r > n {
        return Err(Hypothesis::Range { r, lo, hi: n });
    }
    Ok(())
}

/// `[n]_{q^power} = (1 - q^{n power}) / (1 - q^{power})`.
pub fn q_integer(n: i64, power: i64) -> RationalFunction {
    RationalFunction::new(
        LaurentPoly::one_minus(1, n * power),
        LaurentPoly::one_minus(1, power),
    )
    .expect("power is positive")
}

/// `(q^t; q^step)_k`.
pub fn q_pochhammer(t: i64, step: i64, k: u32) -> LaurentPoly {
    (0..k as i64).fold(LaurentPoly::one(), |acc, j| {
        acc * LaurentPoly::one_minus(1, t + step * j)
    })
}

/// A q-shifted factorial `(x q^t; q^step)_k` with `x` one of `1`, `a`, `1/a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PochhammerSpec {
    pub param: Param,
    pub base_exp: i64,
    pub step: i64,
    pub length: u32,
}

impl PochhammerSpec {
    pub fn new(param: Param, base_exp: i64, step: i64, length: u32) -> Self {
        assert!(step >= 1, "Pochhammer step must be positive");
        Self {
            param,
            base_exp,
            step,
            length,
        }
    }

    /// The value, with `(q^t/a; q^m)_k = a^{-k} prod (a - q^{t + m j})`.
    pub fn evaluate(&self) -> BiRationalFunction {
        let f = PochFactor::with_param(self.param, self.base_exp, self.step);
        let num = (0..self.length).fold(BiPoly::one(), |acc, j| &acc * &f.step_factor(j));
        let den = if self.param == Param::InvA {
            BiPoly::a_pow(self.length)
        } else {
            BiPoly::one()
        };
        BiRationalFunction::new(num, den).expect("nonzero denominator")
    }

    /// The value when the base carries no `a`.
    pub fn evaluate_q(&self) -> Option<LaurentPoly> {
        (self.param == Param::One).then(|| q_pochhammer(self.base_exp, self.step, self.length))
    }
}

/// `(-1)^e [n]_{q^2} / [r]_{q^2} q^{(n-r)(n+r-d)/d}` for a case.
pub fn closed_prefactor(case: &QCase) -> Result<RationalFunction> {
    let (n, d, r) = (case.n(), case.d(), case.r());
    let num = (n - r) * (n + r - d);
    if num % d != 0 {
        return Err(crate::Error::NonIntegralExponent(format!("({n}-{r})({n}+{r}-{d})/{d}")));
    }
    let ratio = (&q_integer(n, 2) / &q_integer(r, 2))?;
    let signed = if case.upper() % 2 == 1 { -&ratio } else { ratio };
    Ok(signed.shift(num / d))
}
