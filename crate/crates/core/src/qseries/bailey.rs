//! A terminating quadratic transformation with four free parameters, used to
//! certify the parametric sums at `a = q^{+-2n}`.
//!
//! With `Q = q^step` as the base,
//!
//! ```text
//! sum_k (1 + alpha Q^{2k}) / (1 + alpha)
//!       (alpha^2, Q^2/a, Q^2/b; Q^2)_k (-Q, alpha Q/lambda; Q)_k
//!     / ((Q^2, alpha^2 a, alpha^2 b; Q^2)_k (alpha, -lambda; Q)_k)
//!       (-alpha^2 lambda a b)^k Q^{k^2 - 3k}
//!   = (alpha^2 Q^2, alpha^2 a b / Q^2; Q^2)_inf / (alpha^2 a, alpha^2 b; Q^2)_inf
//!     * sum_k (Q^2/a, Q^2/b, lambda, Q lambda; Q^2)_k
//!           / (Q^2, Q alpha, Q^2 alpha, lambda^2; Q^2)_k (alpha^2 a b / Q^2)^k
//! ```
//!
//! Every parameter is a power of `q`; they are stored as exponents.

use super::template::{PochFactor, SumTemplate, Summand};
use super::theorems::Family;
use super::{q_pochhammer, QCase};
use crate::arith::RationalFunction;
use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BaileyParams {
    pub step: i64,
    pub alpha: i64,
    pub a: i64,
    pub b: i64,
    pub lambda: i64,
}

/// Both sides of one instance, with the right side split into the product
/// ratio and the balanced sum.
#[derive(Debug, Clone)]
pub struct BaileySides {
    pub lhs: RationalFunction,
    pub product: RationalFunction,
    pub phi: RationalFunction,
    pub rhs: RationalFunction,
}

/// Parameters reproducing the `a = q^{sign 2n}` specialisation of a family:
/// `alpha = q^r`, `{a, b} = {q^{2(d-r-n)}, q^{2(d-r+n)}}` and `lambda = q^d`
/// or `q^r`.
pub fn bailey_params(case: &QCase, sign: i64, family: Family) -> BaileyParams {
    let (n, d, r) = (case.n(), case.d(), case.r());
    let (mut a, mut b) = (2 * (d - r - n), 2 * (d - r + n));
    if sign < 0 {
        std::mem::swap(&mut a, &mut b);
    }
    let lambda = match family {
        Family::Theorem1 => d,
        Family::Theorem2 => r,
    };
    BaileyParams {
        step: d,
        alpha: r,
        a,
        b,
        lambda,
    }
}

fn terminate(numer: Vec<PochFactor>, denom: Vec<PochFactor>, shifted_ratio: Option<(i64, i64)>, alternating: bool, q_exponent: [i64; 3]) -> Result<SumTemplate> {
    let mut t = SumTemplate {
        upper: 0,
        summand: Summand {
            alternating,
            shifted_ratio,
            numer,
            denom,
            q_exponent,
        },
    };
    let upper = t
        .natural_truncation()
        .ok_or_else(|| Error::Usage("transformation does not terminate".into()))?;
    let hits_zero = t
        .summand
        .denom
        .iter()
        .any(|f| (0..upper).any(|j| f.vanishes_at(j)));
    if hits_zero {
        return Err(Error::DivisionByZero);
    }
    t.upper = upper;
    Ok(t)
}

impl BaileyParams {
    pub fn lhs_template(&self) -> Result<SumTemplate> {
        let s = self.step;
        let (al, a, b, la) = (self.alpha, self.a, self.b, self.lambda);
        terminate(
            vec![
                PochFactor::q(2 * al, 2 * s, 1),
                PochFactor::q(2 * s - a, 2 * s, 1),
                PochFactor::q(2 * s - b, 2 * s, 1),
                PochFactor::negated(s, s),
                PochFactor::q(al + s - la, s, 1),
            ],
            vec![
                PochFactor::q(2 * s, 2 * s, 1),
                PochFactor::q(2 * al + a, 2 * s, 1),
                PochFactor::q(2 * al + b, 2 * s, 1),
                PochFactor::q(al, s, 1),
                PochFactor::negated(la, s),
            ],
            Some((2 * s, al)),
            true,
            [s, 2 * al + la + a + b - 3 * s, 0],
        )
    }

    pub fn phi_template(&self) -> Result<SumTemplate> {
        let s = self.step;
        let (al, a, b, la) = (self.alpha, self.a, self.b, self.lambda);
        terminate(
            vec![
                PochFactor::q(2 * s - a, 2 * s, 1),
                PochFactor::q(2 * s - b, 2 * s, 1),
                PochFactor::q(la, 2 * s, 1),
                PochFactor::q(s + la, 2 * s, 1),
            ],
            vec![
                PochFactor::q(2 * s, 2 * s, 1),
                PochFactor::q(s + al, 2 * s, 1),
                PochFactor::q(2 * s + al, 2 * s, 1),
                PochFactor::q(2 * la, 2 * s, 1),
            ],
            None,
            false,
            [0, 2 * al + a + b - 2 * s, 0],
        )
    }

    /// The infinite-product ratio, reduced to finite products by pairing
    /// each numerator base with a denominator base in the same residue class
    /// modulo `Q^2`.
    pub fn product(&self) -> Result<RationalFunction> {
        let s = self.step;
        let modulus = 2 * s;
        let top = [2 * self.alpha + 2 * s, 2 * self.alpha + self.a + self.b - 2 * s];
        let bottom = [2 * self.alpha + self.a, 2 * self.alpha + self.b];
        let pairing = [[0, 1], [1, 0]]
            .into_iter()
            .find(|p| (0..2).all(|i| (top[i] - bottom[p[i]]) % modulus == 0))
            .ok_or_else(|| Error::Usage("infinite products do not telescope".into()))?;
        let mut acc = RationalFunction::one();
        for (i, &j) in pairing.iter().enumerate() {
            let (x, y) = (top[i], bottom[j]);
            let len = ((x - y).abs() / modulus) as u32;
            let factor = if x >= y {
                RationalFunction::new(crate::arith::LaurentPoly::one(), q_pochhammer(y, modulus, len))?
            } else {
                RationalFunction::from_poly(q_pochhammer(x, modulus, len))
            };
            acc = &acc * &factor;
        }
        Ok(acc)
    }

    pub fn evaluate(&self) -> Result<BaileySides> {
        let lhs = self.lhs_template()?.evaluate()?;
        let product = self.product()?;
        let phi = self.phi_template()?.evaluate()?;
        let rhs = &product * &phi;
        Ok(BaileySides {
            lhs,
            product,
            phi,
            rhs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::theorems::{bailey_display_template, bailey_rhs_product, parametric_lhs};

    #[test]
    fn both_sides_agree_on_small_cases() {
        for (n, d, r) in [(3, 2, 1), (5, 2, -1), (7, 3, 1), (5, 4, 1), (9, 4, -3), (7, 2, -3)] {
            let c = QCase::new(n, d, r).unwrap();
            for fam in Family::ALL {
                for sign in [1, -1] {
                    let p = bailey_params(&c, sign, fam);
                    let sides = p.evaluate().unwrap();
                    assert_eq!(sides.lhs, sides.rhs, "{c} {fam:?} {sign}");
                    assert_eq!(sides.product, bailey_rhs_product(&c).unwrap());
                    let shown = bailey_display_template(fam, &c, sign).evaluate().unwrap();
                    assert_eq!(sides.phi, shown);
                    let spec = parametric_lhs(fam, &c).unwrap().subst_a_qpow(2 * sign * n).unwrap();
                    assert_eq!(spec, sides.lhs);
                }
            }
        }
    }

    #[test]
    fn generic_instance() {
        // alpha = q, a = q^{-4}, b = q^8, lambda = q^3 with Q = q^2.
        let p = BaileyParams {
            step: 2,
            alpha: 1,
            a: -4,
            b: 8,
            lambda: 3,
        };
        let sides = p.evaluate().unwrap();
        assert_eq!(sides.lhs, sides.rhs);
    }
}
