//! Polynomials in an auxiliary indeterminate `a` with Laurent-polynomial
//! coefficients in `q`, and their quotients.
//!
//! The `a`-exponents are nonnegative; a factor such as `q^t / a` is carried as
//! `(a - q^t)` with the compensating power of `a` pushed into the other side of
//! the fraction by the callers.

use super::int_poly;
use super::laurent::LaurentPoly;
use super::ratfunc::RationalFunction;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    terms: BTreeMap<u32, LaurentPoly>,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_q(LaurentPoly::one())
    }

    /// Constant in `a`.
    pub fn from_q(p: LaurentPoly) -> Self {
        Self::from_terms([(0, p)])
    }

    /// `a^k`.
    pub fn a_pow(k: u32) -> Self {
        Self::from_terms([(k, LaurentPoly::one())])
    }

    /// `c0 + c1 a`.
    pub fn linear(c0: LaurentPoly, c1: LaurentPoly) -> Self {
        Self::from_terms([(0, c0), (1, c1)])
    }

    pub fn from_terms<I>(it: I) -> Self
    where
        I: IntoIterator<Item = (u32, LaurentPoly)>,
    {
        let mut terms: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (k, c) in it {
            if c.is_zero() {
                continue;
            }
            let slot = terms.entry(k).or_default();
            *slot = &*slot + &c;
            if slot.is_zero() {
                terms.remove(&k);
            }
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn a_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn a_low(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, k: u32) -> LaurentPoly {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &LaurentPoly)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn leading(&self) -> Option<(u32, &LaurentPoly)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn q_span(&self) -> usize {
        self.terms
            .values()
            .map(|c| c.ordinary_degree().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Multiply every coefficient by a polynomial in `q`.
    pub fn mul_q(&self, p: &LaurentPoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * p)).collect(),
        }
    }

    /// Multiply by `a^k`.
    pub fn shift_a(&self, k: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    fn shift_a_down(&self, k: u32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e - k, c.clone())).collect(),
        }
    }

    pub fn map_q<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(&LaurentPoly) -> Result<LaurentPoly>,
    {
        let mut out = Vec::with_capacity(self.terms.len());
        for (k, c) in &self.terms {
            out.push((*k, f(c)?));
        }
        Ok(Self::from_terms(out))
    }

    pub fn negate_q(&self) -> Self {
        self.map_q(|c| Ok(c.negate_q())).expect("infallible")
    }

    pub fn compose_power(&self, m: i64) -> Result<Self> {
        self.map_q(|c| c.compose_power(m))
    }

    /// Image under `a -> q^t`.
    pub fn subst_a_qpow(&self, t: i64) -> LaurentPoly {
        self.terms
            .iter()
            .fold(LaurentPoly::zero(), |acc, (k, c)| acc + c.shift(t * *k as i64))
    }

    /// Image under `a -> 1`.
    pub fn subst_a_one(&self) -> LaurentPoly {
        self.subst_a_qpow(0)
    }

    /// Reduce every coefficient modulo a polynomial in `q`.
    pub fn rem_q(&self, m: &LaurentPoly) -> Result<Self> {
        self.map_q(|c| c.rem(m))
    }

    /// True iff the `q`-polynomial `m` divides every coefficient.
    pub fn divisible_by_q(&self, m: &LaurentPoly) -> Result<bool> {
        for c in self.terms.values() {
            if !c.divisible_by(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact quotient in `Q[q, 1/q][a]`, or `None` when `divisor` does not
    /// divide `self` there.
    ///
    /// Long division in `a` over `Q(q)`: every step divides by the leading
    /// `a`-coefficient of the divisor. The quotient over `Q(q)` is unique, so a
    /// non-polynomial step proves non-divisibility in the polynomial ring.
    pub fn div_exact(&self, divisor: &Self) -> Result<Option<Self>> {
        let (dd, dlead) = match divisor.leading() {
            Some((k, c)) => (k, c.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((k, top)) = rem.leading() {
            if k < dd {
                return Ok(None);
            }
            let c = match top.div_exact(&dlead)? {
                Some(c) => c,
                None => return Ok(None),
            };
            let step = divisor.mul_q(&c).shift_a(k - dd);
            rem = &rem - &step;
            quot.insert(k - dd, c);
        }
        Ok(Some(Self { terms: quot }))
    }

    /// Monic gcd of all `q`-coefficients.
    pub fn q_content(&self) -> LaurentPoly {
        self.q_content_with(None)
    }

    fn q_content_with(&self, seed: Option<&LaurentPoly>) -> LaurentPoly {
        let mut g: Option<LaurentPoly> = seed.cloned();
        // Smallest coefficients first keeps the running gcd cheap.
        let mut coeffs: Vec<&LaurentPoly> = self.terms.values().collect();
        coeffs.sort_by_key(|c| c.ordinary_degree().unwrap_or(0));
        for c in coeffs {
            g = Some(match g {
                None => c.gcd(&LaurentPoly::zero()).expect("nonzero coefficient"),
                Some(g) => g.gcd(c).expect("nonzero gcd input"),
            });
            if g.as_ref().is_some_and(|g| g.ordinary_degree() == Some(0)) {
                return LaurentPoly::one();
            }
        }
        g.unwrap_or_else(LaurentPoly::one)
    }

    fn div_q_exact(&self, p: &LaurentPoly) -> Self {
        self.map_q(|c| Ok(c.div_exact(p)?.expect("content divides coefficient")))
            .expect("nonzero divisor")
    }

    /// Pseudo-remainder with respect to `a`.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let (dd, dlead) = divisor.leading().map(|(k, c)| (k, c.clone())).unwrap();
        let mut rem = self.clone();
        while let Some((k, top)) = rem.leading().map(|(k, c)| (k, c.clone())) {
            if k < dd {
                break;
            }
            rem = &rem.mul_q(&dlead) - &divisor.mul_q(&top).shift_a(k - dd);
        }
        rem
    }

    /// Greatest common divisor via content and primitive pseudo-remainder
    /// sequences in `a`. Returned with monic `q`-content and a unit-free
    /// leading coefficient; intended for the small explicit factors used as
    /// moduli.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroGcd);
        }
        if self.is_zero() {
            return Ok(other.normalized_associate());
        }
        if other.is_zero() {
            return Ok(self.normalized_associate());
        }
        let ca = self.q_content();
        let cb = other.q_content();
        let content = ca.gcd(&cb)?;
        let mut x = self.div_q_exact(&ca).strip_a_power().0;
        let mut y = other.div_q_exact(&cb).strip_a_power().0;
        // a-power common factor
        let apow = self.a_low().unwrap().min(other.a_low().unwrap());
        if x.a_degree() < y.a_degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            if y.a_degree() == Some(0) {
                x = Self::one();
                break;
            }
            let r = x.pseudo_rem(&y);
            x = y;
            y = if r.is_zero() {
                r
            } else {
                let c = r.q_content();
                r.div_q_exact(&c)
            };
        }
        let g = x.mul_q(&content).shift_a(apow);
        Ok(g.normalized_associate())
    }

    fn strip_a_power(&self) -> (Self, u32) {
        match self.a_low() {
            Some(k) if k > 0 => (self.shift_a_down(k), k),
            _ => (self.clone(), 0),
        }
    }

    /// Associate with the lowest `q`-power of the leading coefficient removed
    /// and the leading coefficient's leading term equal to 1.
    fn normalized_associate(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some((_, lc)) => {
                let unit = LaurentPoly::constant(lc.leading_coeff().recip()).shift(-lc.low());
                self.mul_q(&unit)
            }
        }
    }

    /// True iff `self` and `other` have no common factor of positive degree
    /// in `a` or `q`.
    pub fn coprime(&self, other: &Self) -> Result<bool> {
        let g = self.gcd(other)?;
        Ok(g.a_degree() == Some(0) && g.coeff(0).ordinary_degree() == Some(0))
    }
}

fn add_impl(a: &BiPoly, b: &BiPoly, negate_b: bool) -> BiPoly {
    let mut terms = a.terms.clone();
    for (k, c) in &b.terms {
        let slot = terms.entry(*k).or_default();
        *slot = if negate_b { &*slot - c } else { &*slot + c };
        if slot.is_zero() {
            terms.remove(k);
        }
    }
    BiPoly { terms }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        add_impl(self, rhs, false)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        add_impl(self, rhs, true)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<u32, LaurentPoly> = BTreeMap::new();
        for (i, x) in &self.terms {
            for (j, y) in &rhs.terms {
                let slot = acc.entry(i + j).or_default();
                *slot = &*slot + &(x * y);
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { terms: acc }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: BiPoly) -> BiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, rhs: &BiPoly) -> BiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*a"),
                _ => format!("({c})*a^{k}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

/// `num / den` with `num`, `den` in `Q[q, 1/q][a]`.
///
/// Normalisation removes common powers of `a`, the common `q`-content and the
/// `q`-power units; it does not run a full bivariate gcd, so two equal values
/// may have different representations. Compare with
/// [`BiRationalFunction::equals`].
#[derive(Clone)]
pub struct BiRationalFunction {
    num: BiPoly,
    den: BiPoly,
}

impl BiRationalFunction {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    pub fn from_poly(p: BiPoly) -> Self {
        Self {
            num: p,
            den: BiPoly::one(),
        }
    }

    pub fn from_q(r: &RationalFunction) -> Self {
        Self {
            num: BiPoly::from_q(r.numer().clone()),
            den: BiPoly::from_q(r.denom().clone()),
        }
    }

    fn normalize(num: BiPoly, den: BiPoly) -> Self {
        if num.is_zero() {
            return Self::from_poly(BiPoly::zero());
        }
        let k = num.a_low().unwrap().min(den.a_low().unwrap());
        let (mut num, mut den) = (num.shift_a_down(k), den.shift_a_down(k));
        let cd = den.q_content();
        if cd.ordinary_degree() != Some(0) {
            let g = num.q_content_with(Some(&cd));
            if g.ordinary_degree() != Some(0) {
                num = num.div_q_exact(&g);
                den = den.div_q_exact(&g);
            }
        }
        // Units: the lowest q-power across den, and the scalar that makes den
        // integral and primitive with a positive leading coefficient.
        let qlow = den.terms.values().map(LaurentPoly::low).min().unwrap();
        let (_, lc) = den.leading().unwrap();
        let lc_negative = lc.leading_coeff().is_negative();
        let lcm_den = den
            .terms
            .values()
            .fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denominator()));
        // content of den * lcm_den, computed without materialising the product
        let cont = den.terms.values().fold(BigInt::zero(), |acc, c| {
            let scaled = int_poly::content(c.numerators()) * (&lcm_den / c.denominator());
            num_integer::Integer::gcd(&acc, &scaled)
        });
        let mut unit_scalar = BigRational::new(lcm_den, cont);
        if lc_negative {
            unit_scalar = -unit_scalar;
        }
        let unit = LaurentPoly::constant(unit_scalar).shift(-qlow);
        Self {
            num: num.mul_q(&unit),
            den: den.mul_q(&unit),
        }
    }

    pub fn numer(&self) -> &BiPoly {
        &self.num
    }

    pub fn denom(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Image under `a -> q^t`; fails if the denominator vanishes there.
    pub fn subst_a_qpow(&self, t: i64) -> Result<RationalFunction> {
        RationalFunction::new(self.num.subst_a_qpow(t), self.den.subst_a_qpow(t))
    }

    /// Image under `a -> 1`.
    pub fn subst_a_one(&self) -> Result<RationalFunction> {
        self.subst_a_qpow(0)
    }

    pub fn negate_q(&self) -> Self {
        Self::normalize(self.num.negate_q(), self.den.negate_q())
    }

    /// Exact equality by cross-multiplication.
    pub fn equals(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    /// Multiply numerator by a `q`-rational function.
    pub fn scale_q(&self, r: &RationalFunction) -> Self {
        Self::normalize(self.num.mul_q(r.numer()), self.den.mul_q(r.denom()))
    }
}

fn bi_add(a: &BiRationalFunction, b: &BiRationalFunction, negate_b: bool) -> BiRationalFunction {
    let bn = if negate_b { -&b.num } else { b.num.clone() };
    if a.den == b.den {
        return BiRationalFunction::normalize(&a.num + &bn, a.den.clone());
    }
    BiRationalFunction::normalize(&a.num * &b.den + &bn * &a.den, &a.den * &b.den)
}

impl Add for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn add(self, rhs: &BiRationalFunction) -> BiRationalFunction {
        bi_add(self, rhs, false)
    }
}

impl Sub for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn sub(self, rhs: &BiRationalFunction) -> BiRationalFunction {
        bi_add(self, rhs, true)
    }
}

impl Mul for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn mul(self, rhs: &BiRationalFunction) -> BiRationalFunction {
        BiRationalFunction::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &BiRationalFunction {
    type Output = BiRationalFunction;
    fn neg(self) -> BiRationalFunction {
        BiRationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for BiRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiRationalFunction(({}) / ({}))", self.num, self.den)
    }
}
