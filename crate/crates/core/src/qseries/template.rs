//! A minimal grammar for terminating basic hypergeometric sums.
//!
//! A [`SumTemplate`] is `sum_{k=0}^{upper} t_k` where `t_k` is a product of
//! q-shifted factorial powers, an optional alternating sign, an optional
//! `(1 + q^{ck+r}) / (1 + q^r)` factor and a quadratic power of `q`. Every
//! statement the crate verifies is written in this form, so the same
//! evaluator serves the univariate theorems and the parametric lemmas.

use crate::arith::{BiPoly, BiRationalFunction, LaurentPoly, RationalFunction};
use crate::error::{Error, Result};
use serde::Serialize;

/// Which power of the auxiliary indeterminate multiplies a factor's base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Param {
    One,
    /// `a q^t`
    A,
    /// `q^t / a`
    InvA,
}

/// `(sign * param * q^{q_exp}; q^{step})_k` raised to `power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PochFactor {
    pub sign: i8,
    pub param: Param,
    pub q_exp: i64,
    pub step: i64,
    pub power: u32,
}

impl PochFactor {
    pub fn q(q_exp: i64, step: i64, power: u32) -> Self {
        Self {
            sign: 1,
            param: Param::One,
            q_exp,
            step,
            power,
        }
    }

    pub fn with_param(param: Param, q_exp: i64, step: i64) -> Self {
        Self {
            sign: 1,
            param,
            q_exp,
            step,
            power: 1,
        }
    }

    pub fn negated(q_exp: i64, step: i64) -> Self {
        Self {
            sign: -1,
            param: Param::One,
            q_exp,
            step,
            power: 1,
        }
    }

    /// The `j`-th factor `1 - sign * x q^{q_exp + step j}`, with `q^t / a`
    /// written as `a - sign q^t` (the missing `1/a` is the caller's debt).
    pub fn step_factor(&self, j: u32) -> BiPoly {
        let e = self.q_exp + self.step * j as i64;
        let c = -(self.sign as i64);
        match self.param {
            Param::One => BiPoly::from_q(LaurentPoly::one() + LaurentPoly::monomial(c, e)),
            Param::A => BiPoly::linear(LaurentPoly::one(), LaurentPoly::monomial(c, e)),
            Param::InvA => BiPoly::linear(LaurentPoly::monomial(c, e), LaurentPoly::one()),
        }
    }

    /// True when the `j`-th factor vanishes identically (which truncates a
    /// numerator product).
    pub fn vanishes_at(&self, j: u32) -> bool {
        self.param == Param::One && self.sign == 1 && self.q_exp + self.step * j as i64 == 0
    }

    fn inv_a_count(&self) -> i64 {
        if self.param == Param::InvA {
            self.power as i64
        } else {
            0
        }
    }
}

/// The summand `t_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summand {
    pub alternating: bool,
    /// `(1 + q^{c k + r}) / (1 + q^r)` as `(c, r)`.
    pub shifted_ratio: Option<(i64, i64)>,
    pub numer: Vec<PochFactor>,
    pub denom: Vec<PochFactor>,
    /// `q^{k2 k^2 + k1 k + k0}` as `[k2, k1, k0]`.
    pub q_exponent: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SumTemplate {
    pub upper: u32,
    pub summand: Summand,
}

impl Summand {
    fn scalar_part(&self, k: u32) -> BiPoly {
        let k = k as i64;
        let [k2, k1, k0] = self.q_exponent;
        let mut c = LaurentPoly::q_pow(k2 * k * k + k1 * k + k0);
        if self.alternating && k % 2 == 1 {
            c = -c;
        }
        if let Some((cc, r)) = self.shifted_ratio {
            c = &c * &(LaurentPoly::one() + LaurentPoly::q_pow(cc * k + r));
        }
        BiPoly::from_q(c)
    }

    fn constant_denominator(&self) -> BiPoly {
        match self.shifted_ratio {
            Some((_, r)) => BiPoly::from_q(LaurentPoly::one() + LaurentPoly::q_pow(r)),
            None => BiPoly::one(),
        }
    }

    /// Net power of `a` divided out per step by `q^t/a` factors in the
    /// numerator minus those in the denominator.
    fn a_debt(&self) -> i64 {
        self.numer.iter().map(PochFactor::inv_a_count).sum::<i64>()
            - self.denom.iter().map(PochFactor::inv_a_count).sum::<i64>()
    }

    fn step_numerator(&self, j: u32) -> Vec<BiPoly> {
        let mut out = Vec::new();
        for f in &self.numer {
            let s = f.step_factor(j);
            out.extend(std::iter::repeat_n(s, f.power as usize));
        }
        let debt = self.a_debt();
        if debt < 0 {
            out.push(BiPoly::a_pow((-debt) as u32));
        }
        out
    }

    fn step_denominator(&self, j: u32) -> Vec<BiPoly> {
        let mut out = Vec::new();
        for f in &self.denom {
            let s = f.step_factor(j);
            out.extend(std::iter::repeat_n(s, f.power as usize));
        }
        let debt = self.a_debt();
        if debt > 0 {
            out.push(BiPoly::a_pow(debt as u32));
        }
        out
    }

    /// A single term `t_k` as a bivariate rational function.
    pub fn term(&self, k: u32) -> Result<BiRationalFunction> {
        let mut num = self.scalar_part(k);
        let mut den = self.constant_denominator();
        for j in 0..k {
            for f in self.step_numerator(j) {
                num = &num * &f;
            }
            for f in self.step_denominator(j) {
                den = &den * &f;
            }
        }
        BiRationalFunction::new(num, den)
    }

    /// A single term with `a` absent; errors if the summand is parametric.
    pub fn term_q(&self, k: u32) -> Result<RationalFunction> {
        let t = self.term(k)?;
        to_univariate(&t)
    }

    pub fn is_parametric(&self) -> bool {
        self.numer.iter().chain(&self.denom).any(|f| f.param != Param::One)
    }
}

fn to_univariate(t: &BiRationalFunction) -> Result<RationalFunction> {
    if t.numer().a_degree().unwrap_or(0) > 0 || t.denom().a_degree().unwrap_or(0) > 0 {
        return Err(Error::Usage("summand depends on the parameter a".into()));
    }
    RationalFunction::new(t.numer().coeff(0), t.denom().coeff(0))
}

impl SumTemplate {
    /// Exact value as `(numerator, denominator)` over the common denominator
    /// `(1 + q^r) prod_{j < upper} D_j`, without any gcd reduction.
    ///
    /// Horner scheme from the top term down:
    /// `U_upper = c_upper`, `U_k = c_k P_k + N_k U_{k+1}`, `P_k = D_k P_{k+1}`,
    /// so that the sum equals `U_0 / P_0`. Each step multiplies by sparse
    /// binomials only.
    pub fn evaluate_parts(&self) -> (BiPoly, BiPoly) {
        let s = &self.summand;
        let mut u = s.scalar_part(self.upper);
        let mut p = BiPoly::one();
        for k in (0..self.upper).rev() {
            let mut nu = u;
            for f in s.step_numerator(k) {
                nu = &nu * &f;
            }
            for f in s.step_denominator(k) {
                p = &p * &f;
            }
            u = &(&s.scalar_part(k) * &p) + &nu;
        }
        let den = &p * &s.constant_denominator();
        (u, den)
    }

    pub fn evaluate_bi(&self) -> Result<BiRationalFunction> {
        let (n, d) = self.evaluate_parts();
        BiRationalFunction::new(n, d)
    }

    /// Value of a non-parametric sum.
    pub fn evaluate(&self) -> Result<RationalFunction> {
        if self.summand.is_parametric() {
            return Err(Error::Usage("sum depends on the parameter a".into()));
        }
        let (n, d) = self.evaluate_parts();
        RationalFunction::new(n.coeff(0), d.coeff(0))
    }

    /// Smallest `j` at which a numerator factor vanishes; terms beyond it are
    /// zero.
    pub fn natural_truncation(&self) -> Option<u32> {
        self.summand
            .numer
            .iter()
            .filter_map(|f| {
                if f.param != Param::One || f.sign != 1 || f.step == 0 {
                    return None;
                }
                if f.q_exp <= 0 && f.step > 0 && (-f.q_exp) % f.step == 0 {
                    Some(((-f.q_exp) / f.step) as u32)
                } else {
                    None
                }
            })
            .min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horner_matches_term_sum() {
        let t = SumTemplate {
            upper: 4,
            summand: Summand {
                alternating: true,
                shifted_ratio: Some((4, -1)),
                numer: vec![PochFactor::q(-2, 4, 3)],
                denom: vec![PochFactor::q(4, 4, 2), PochFactor::q(3, 4, 1)],
                q_exponent: [2, 6, 0],
            },
        };
        let direct = (0..=4).fold(RationalFunction::zero(), |acc, k| {
            acc + t.summand.term_q(k).unwrap()
        });
        assert_eq!(t.evaluate().unwrap(), direct);
    }

    #[test]
    fn parametric_horner_matches_term_sum() {
        let t = SumTemplate {
            upper: 3,
            summand: Summand {
                alternating: false,
                shifted_ratio: None,
                numer: vec![
                    PochFactor::with_param(Param::A, 2, 4),
                    PochFactor::with_param(Param::InvA, 2, 4),
                    PochFactor::q(2, 4, 1),
                ],
                denom: vec![PochFactor::q(4, 4, 1), PochFactor::q(3, 4, 1)],
                q_exponent: [0, 2, 0],
            },
        };
        let direct = (0..=3).fold(BiRationalFunction::from_poly(BiPoly::zero()), |acc, k| {
            &acc + &t.summand.term(k).unwrap()
        });
        assert!(t.evaluate_bi().unwrap().equals(&direct));
        assert!(t.evaluate().is_err());
    }

    #[test]
    fn truncation_point() {
        let t = SumTemplate {
            upper: 10,
            summand: Summand {
                alternating: false,
                shifted_ratio: None,
                numer: vec![PochFactor::q(-8, 4, 1)],
                denom: vec![],
                q_exponent: [0, 0, 0],
            },
        };
        assert_eq!(t.natural_truncation(), Some(2));
        assert!(t.summand.term(3).unwrap().is_zero());
    }
}
