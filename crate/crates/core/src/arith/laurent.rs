//! Univariate Laurent polynomials in `q` with rational coefficients.

use super::int_poly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial `sum c_i q^i` with `c_i` rational.
///
/// Stored densely from the lowest exponent as integer numerators over one
/// shared positive denominator. The representation is canonical: the first and
/// last numerators are nonzero, `gcd(content, den) = 1`, and the zero
/// polynomial is `low = 0, coeffs = [], den = 1`. Derived equality is therefore
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
    den: BigInt,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            low: 0,
            coeffs: Vec::new(),
            den: BigInt::one(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^exp` for an integer `c`.
    pub fn monomial(c: i64, exp: i64) -> Self {
        Self::from_parts(exp, vec![BigInt::from(c)], BigInt::one())
    }

    /// `q^exp`.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(1, exp)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_parts(0, vec![c.numer().clone()], c.denom().clone())
    }

    /// Integer coefficients starting at exponent `low`.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_parts(low, coeffs.iter().map(|c| BigInt::from(*c)).collect(), BigInt::one())
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| acc + Self::constant(c).shift(e))
    }

    /// `1 - c q^exp`, the basic factor of every q-shifted factorial.
    pub fn one_minus(c: i64, exp: i64) -> Self {
        Self::one() - Self::monomial(c, exp)
    }

    pub(crate) fn from_int_vec(low: i64, coeffs: Vec<BigInt>) -> Self {
        Self::from_parts(low, coeffs, BigInt::one())
    }

    pub(crate) fn from_parts(mut low: i64, mut coeffs: Vec<BigInt>, mut den: BigInt) -> Self {
        int_poly::trim(&mut coeffs);
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        if lead_zeros > 0 {
            coeffs.drain(..lead_zeros);
            low += lead_zeros as i64;
        }
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in coeffs.iter_mut() {
                *c = -&*c;
            }
        }
        if !den.is_one() {
            let g = int_poly::content(&coeffs).gcd(&den);
            if !g.is_one() {
                den /= &g;
                for c in coeffs.iter_mut() {
                    *c /= &g;
                }
            }
        }
        Self { low, coeffs, den }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one() && self.den.is_one()
    }

    /// True when the polynomial is a nonzero constant times `q^k`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len().saturating_sub(1) as i64
    }

    /// Degree after factoring out the lowest power of `q`; `None` for zero.
    pub fn ordinary_degree(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    /// Integer numerators, ascending from `low()`.
    pub fn numerators(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            return BigRational::zero();
        }
        BigRational::new(self.coeffs[idx as usize].clone(), self.den.clone())
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeff(self.high())
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, BigRational::new(c.clone(), self.den.clone())))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Multiply by `q^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + e,
            coeffs: self.coeffs.clone(),
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_parts(
            self.low,
            int_poly::scale(&self.coeffs, c.numer()),
            &self.den * c.denom(),
        )
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The polynomial with the lowest power of `q` factored out, so that its
    /// constant term is nonzero, together with that power.
    pub fn split_unit(&self) -> (i64, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        (self.low, self.shift(-self.low))
    }

    /// Scale to make the leading coefficient 1.
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Division with remainder in the ordinary-polynomial view.
    ///
    /// With `self = q^a P` and `divisor = q^b D` (constant terms of `P`, `D`
    /// nonzero) this returns `(q^(a-b) Q, q^a R)` where `P = D Q + R` and
    /// `deg R < deg D`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok((Self::zero(), Self::zero()));
        }
        let (a, b) = (self.low, divisor.low);
        // self = q^a * coeffs / den_s ; divisor = q^b * dcoeffs / den_d
        let (q, r, qden, rden) = match int_poly::divrem_int(&self.coeffs, &divisor.coeffs) {
            Some((q, r)) => (q, r, BigInt::one(), BigInt::one()),
            None => {
                let (q, r) = rational_divrem(&self.coeffs, &divisor.coeffs);
                (q.0, r.0, q.1, r.1)
            }
        };
        // coeffs = dcoeffs * q/qden + r/rden
        // self = divisor * (den_d/den_s) q/qden + r/(rden den_s)
        let quot = Self::from_parts(a - b, q, qden * &self.den).scale(&BigRational::from_integer(divisor.den.clone()));
        let rem = Self::from_parts(a, r, rden * &self.den);
        Ok((quot, rem))
    }

    /// Exact quotient when `divisor` divides `self` in `Q[q, 1/q]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Remainder only; see [`LaurentPoly::divrem`].
    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divrem(divisor)?.1)
    }

    /// True if `divisor` divides `self` in `Q[q, 1/q]`.
    pub fn divisible_by(&self, divisor: &Self) -> Result<bool> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(true);
        }
        if let Some(ok) = int_poly::divrem_int(&self.coeffs, &divisor.coeffs) {
            return Ok(ok.1.is_empty());
        }
        Ok(self.rem(divisor)?.is_zero())
    }

    /// Monic gcd in the ordinary-polynomial view.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        let g = int_poly::gcd_primitive(&self.coeffs, &other.coeffs);
        Ok(Self::from_int_vec(0, g).monic())
    }

    /// Image under `q -> -q`.
    pub fn negate_q(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if (self.low + i as i64).rem_euclid(2) == 1 {
                    -c
                } else {
                    c.clone()
                }
            })
            .collect();
        Self::from_parts(self.low, coeffs, self.den.clone())
    }

    /// Image under `q -> q^m` for a nonzero integer `m`.
    pub fn compose_power(&self, m: i64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroPower);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lo = self.low * m;
        let hi = self.high() * m;
        let (new_low, len) = if m > 0 { (lo, hi - lo + 1) } else { (hi, lo - hi + 1) };
        let mut coeffs = vec![BigInt::zero(); len as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = (self.low + i as i64) * m;
            coeffs[(e - new_low) as usize] = c.clone();
        }
        Ok(Self::from_parts(new_low, coeffs, self.den.clone()))
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        if x.is_zero() {
            if self.low < 0 {
                return Err(Error::ZeroSubstitution);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        let scale = if self.low >= 0 {
            x.pow(self.low as i32)
        } else {
            x.recip().pow((-self.low) as i32)
        };
        Ok(acc * scale / BigRational::from_integer(self.den.clone()))
    }

    /// Evaluate at an integer point (`q = 1` and `q = -1` are the classical
    /// limits).
    pub fn eval_int(&self, x: i64) -> Result<BigRational> {
        self.eval(&BigRational::from_integer(BigInt::from(x)))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + i as i64;
            let coef = BigRational::new(c.clone(), self.den.clone());
            let neg = coef.is_negative();
            let mag = coef.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Coefficients of the ordinary polynomial as `i64`, when they fit and are
    /// integral.
    pub fn to_i64_coeffs(&self) -> Option<Vec<i64>> {
        if !self.is_integral() {
            return None;
        }
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

type RatVec = (Vec<BigInt>, BigInt);

/// Long division over `Q` of integer vectors; results as (numerators, common denominator).
fn rational_divrem(a: &[BigInt], b: &[BigInt]) -> (RatVec, RatVec) {
    let mut rem: Vec<BigRational> = a.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let lead = BigRational::from_integer(b.last().unwrap().clone());
    let db = b.len() - 1;
    let qlen = a.len().saturating_sub(db);
    let mut quot = vec![BigRational::zero(); qlen];
    for i in (0..qlen).rev() {
        let top = &rem[i + db];
        if top.is_zero() {
            continue;
        }
        let c = top / &lead;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[i + j] -= &c * BigRational::from_integer(bj.clone());
            }
        }
        quot[i] = c;
    }
    rem.truncate(db);
    (to_common(quot), to_common(rem))
}

fn to_common(v: Vec<BigRational>) -> RatVec {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = v
        .into_iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    (nums, den)
}

fn add_impl(a: &LaurentPoly, b: &LaurentPoly, negate_b: bool) -> LaurentPoly {
    if b.is_zero() {
        return a.clone();
    }
    if a.is_zero() {
        return if negate_b { -b } else { b.clone() };
    }
    let low = a.low.min(b.low);
    let high = a.high().max(b.high());
    let len = (high - low + 1) as usize;
    let den = a.den.lcm(&b.den);
    let fa = &den / &a.den;
    let fb = &den / &b.den;
    let mut out = vec![BigInt::zero(); len];
    let off_a = (a.low - low) as usize;
    for (i, c) in a.coeffs.iter().enumerate() {
        out[off_a + i] = if fa.is_one() { c.clone() } else { c * &fa };
    }
    let off_b = (b.low - low) as usize;
    for (i, c) in b.coeffs.iter().enumerate() {
        let t = if fb.is_one() { c.clone() } else { c * &fb };
        if negate_b {
            out[off_b + i] -= t;
        } else {
            out[off_b + i] += t;
        }
    }
    LaurentPoly::from_parts(low, out, den)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly::from_parts(
            self.low + rhs.low,
            int_poly::mul(&self.coeffs, &rhs.coeffs),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("q"))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(low, c)
    }

    #[test]
    fn ring_examples() {
        // (1+q)(1-q) = 1 - q^2
        assert_eq!(lp(0, &[1, 1]) * lp(0, &[1, -1]), lp(0, &[1, 0, -1]));
        let p = lp(-2, &[3, 0, 5]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
        // (q^-1 + 1) q = 1 + q
        assert_eq!(lp(-1, &[1, 1]) * LaurentPoly::q_pow(1), lp(0, &[1, 1]));
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = lp(0, &[-1, 0, 1]).divrem(&lp(0, &[-1, 1])).unwrap();
        assert_eq!((q, r), (lp(0, &[1, 1]), LaurentPoly::zero()));
        let (q, r) = lp(0, &[1, 0, 0, 1]).divrem(&lp(0, &[1, 1])).unwrap();
        assert_eq!((q, r), (lp(0, &[1, -1, 1]), LaurentPoly::zero()));
        let (q, r) = lp(0, &[1, 0, 1]).divrem(&lp(0, &[-1, 1])).unwrap();
        assert_eq!((q, r), (lp(0, &[1, 1]), lp(0, &[2])));
        assert_eq!(lp(0, &[1]).divrem(&LaurentPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_division() {
        // (q^2 + 1) / (2q + 1) = q/2 - 1/4 remainder 5/4
        let (q, r) = lp(0, &[1, 0, 1]).divrem(&lp(0, &[1, 2])).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(q.coeff(1), half);
        assert_eq!(q.coeff(0), BigRational::new((-1).into(), 4.into()));
        assert_eq!(r, LaurentPoly::constant(BigRational::new(5.into(), 4.into())));
        assert_eq!(q * lp(0, &[1, 2]) + r, lp(0, &[1, 0, 1]));
    }

    #[test]
    fn gcd_examples() {
        let g = lp(0, &[-1, 0, 1]).gcd(&lp(0, &[-1, 0, 0, 1])).unwrap();
        assert_eq!(g, lp(0, &[-1, 1]));
        let p = lp(0, &[4, 2]);
        assert_eq!(LaurentPoly::zero().gcd(&p).unwrap(), lp(0, &[2, 1]));
        assert_eq!(LaurentPoly::zero().gcd(&LaurentPoly::zero()), Err(Error::ZeroGcd));
    }

    #[test]
    fn substitutions() {
        assert_eq!(lp(0, &[1, 1]).negate_q(), lp(0, &[1, -1]));
        assert_eq!(lp(0, &[1, 1, 1]).compose_power(2).unwrap(), lp(0, &[1, 0, 1, 0, 1]));
        assert_eq!(lp(0, &[1, 1]).compose_power(-1).unwrap(), lp(-1, &[1, 1]));
        assert_eq!(lp(-1, &[1]).eval_int(0), Err(Error::ZeroSubstitution));
        assert_eq!(lp(-1, &[1, 0, 3]).eval_int(2).unwrap(), BigRational::new(13.into(), 2.into()));
    }

    #[test]
    fn display() {
        assert_eq!(lp(0, &[1, -1, 1]).to_string(), "q^2 - q + 1");
        assert_eq!(lp(-2, &[-1]).to_string(), "-q^-2");
    }
}
