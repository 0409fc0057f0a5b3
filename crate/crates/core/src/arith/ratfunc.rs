//! Rational functions of `q` over the rationals.

use super::int_poly;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// `num / den` in lowest terms.
///
/// Canonical form: `den` is an ordinary integer polynomial with nonzero
/// constant term, primitive, with positive leading coefficient; every power of
/// `q` and every rational scalar lives in `num`; `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (b, den_ord) = den.split_unit();
        let num = num.shift(-b);
        // den = D_int / dd ; move dd and the content of D_int into num
        let d_int = den_ord.numerators();
        let mut c = int_poly::content(d_int);
        if int_poly::sign_of_lead(d_int) == num_bigint::Sign::Minus {
            c = -c;
        }
        let d_prim: Vec<BigInt> = d_int.iter().map(|x| x / &c).collect();
        let num = num.scale(&BigRational::new(den_ord.denominator().clone(), c));
        if d_prim.len() == 1 {
            return Self::from_poly(num);
        }
        let (a, n_ord) = num.split_unit();
        let g = int_poly::gcd_primitive(n_ord.numerators(), &d_prim);
        if g.len() == 1 {
            return Self {
                num,
                den: LaurentPoly::from_int_vec(0, d_prim),
            };
        }
        let n_red = int_poly::div_exact(n_ord.numerators(), &g).expect("gcd divides numerator");
        let d_red = int_poly::div_exact(&d_prim, &g).expect("gcd divides denominator");
        let num = LaurentPoly::from_parts(a, n_red, n_ord.denominator().clone());
        if d_red.len() == 1 {
            // g absorbed all of den; d_red is a positive constant
            let s = BigRational::new(BigInt::one(), d_red[0].clone());
            return Self::from_poly(num.scale(&s));
        }
        Self {
            num,
            den: LaurentPoly::from_int_vec(0, d_red),
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1, i.e. the value is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Self {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        Self {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    pub fn negate_q(&self) -> Self {
        Self::normalize(self.num.negate_q(), self.den.negate_q())
    }

    pub fn compose_power(&self, m: i64) -> Result<Self> {
        Ok(Self::normalize(self.num.compose_power(m)?, self.den.compose_power(m)?))
    }

    /// Evaluate at a rational point; errors if the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x)? / d)
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

fn add_impl(a: &RationalFunction, b: &RationalFunction, negate_b: bool) -> RationalFunction {
    let bn = if negate_b { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return RationalFunction::normalize(&a.num + &bn, a.den.clone());
    }
    let num = &a.num * &b.den + &bn * &a.den;
    RationalFunction::normalize(num, &a.den * &b.den)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        add_impl(self, rhs, false)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        add_impl(self, rhs, true)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.num * &rhs.num);
        }
        RationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RationalFunction {
    type Output = Result<RationalFunction>;
    fn div(self, rhs: &RationalFunction) -> Result<RationalFunction> {
        RationalFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(low, c)
    }

    #[test]
    fn reduces_common_factor() {
        // (q^2 - 1) / (q - 1) = q + 1
        let r = RationalFunction::new(lp(0, &[-1, 0, 1]), lp(0, &[-1, 1])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.numer(), &lp(0, &[1, 1]));
    }

    #[test]
    fn units_move_to_numerator() {
        // 1 / (-2 q^3 (1+q)) -> (-1/2 q^-3) / (1+q)
        let r = RationalFunction::new(lp(0, &[1]), lp(3, &[-2, -2])).unwrap();
        assert_eq!(r.denom(), &lp(0, &[1, 1]));
        assert_eq!(r.numer().low(), -3);
        assert_eq!(r.numer().coeff(-3), BigRational::new((-1).into(), 2.into()));
    }

    #[test]
    fn negative_q_integer() {
        // (1 - q^-2) / (1 - q^2) = -q^-2
        let r = RationalFunction::new(lp(-2, &[-1, 0, 1]), lp(0, &[1, 0, -1])).unwrap();
        assert_eq!(r, RationalFunction::from_poly(lp(-2, &[-1])));
    }

    #[test]
    fn field_ops() {
        let a = RationalFunction::new(lp(0, &[1]), lp(0, &[1, 1])).unwrap();
        let b = RationalFunction::new(lp(0, &[1]), lp(0, &[1, -1])).unwrap();
        // 1/(1+q) + 1/(1-q) = 2/(1-q^2)
        let s = &a + &b;
        assert_eq!(s, RationalFunction::new(lp(0, &[2]), lp(0, &[1, 0, -1])).unwrap());
        assert_eq!((&s - &b), a);
        assert_eq!((&(&a * &b) / &b).unwrap(), a);
    }
}
