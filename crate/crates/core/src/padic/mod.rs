//! Arithmetic modulo prime powers on p-integral rationals, Morita's p-adic
//! gamma function, and the classical supercongruences.

mod statements;

pub use statements::{
    check, check_corollary, check_swisher, check_vanhamme, Outcome, PadicStatement, PadicVerdict, SwisherA,
};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest `p^e` for which the gamma table is built.
const MAX_TABLE: u64 = 20_000_000;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// An odd prime `p` with working precision `p^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PadicContext {
    p: u64,
    e: u32,
    #[serde(skip)]
    modulus: u64,
}

impl PadicContext {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if p == 2 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if e == 0 {
            return Err(Error::PrecisionTooLarge { p, e });
        }
        let modulus = p
            .checked_pow(e)
            .filter(|m| *m < (1 << 62))
            .ok_or(Error::PrecisionTooLarge { p, e })?;
        Ok(Self { p, e, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// `p^e`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn with_precision(&self, e: u32) -> Result<Self> {
        Self::new(self.p, e)
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    fn inverse(&self, a: u64) -> Option<u64> {
        let m = self.modulus as i128;
        let (mut r0, mut r1) = (m, a as i128 % m);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| t0.rem_euclid(m) as u64)
    }

    /// `x mod p^e` for a p-integral rational.
    pub fn reduce(&self, x: &BigRational) -> Result<u64> {
        let m = BigInt::from(self.modulus);
        let num = x.numer().mod_floor(&m).to_u64().expect("below modulus");
        let den = x.denom().mod_floor(&m).to_u64().expect("below modulus");
        let inv = self.inverse(den).ok_or_else(|| Error::NotPIntegral {
            value: x.to_string(),
            p: self.p,
        })?;
        Ok(self.mul(num, inv))
    }

    /// Symmetric-free residue of `a - b`.
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b % self.modulus) % self.modulus
    }
}

/// `v_p(x)`; `None` for zero.
pub fn valuation(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let count = |v: &BigInt| {
        let mut v = v.abs();
        let mut c = 0i64;
        while (&v % &p).is_zero() {
            v /= &p;
            c += 1;
        }
        c
    };
    Some(count(x.numer()) - count(x.denom()))
}

pub fn is_p_integral(x: &BigRational, p: u64) -> bool {
    valuation(x, p).is_none_or(|v| v >= 0)
}

/// A rational known to be p-integral.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PInteger {
    value: BigRational,
    context: PadicContext,
}

impl PInteger {
    pub fn new(value: BigRational, context: PadicContext) -> Result<Self> {
        if !is_p_integral(&value, context.p) {
            return Err(Error::NotPIntegral {
                value: value.to_string(),
                p: context.p,
            });
        }
        Ok(Self { value, context })
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn residue(&self) -> u64 {
        self.context.reduce(&self.value).expect("checked p-integral")
    }
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer_rational(x: &BigRational, k: u32) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, j| acc * (x + BigRational::from_integer(j.into())))
}

/// The representative of `x` in `{1, ..., p}`.
pub fn a_p(x: &BigRational, p: u64) -> Result<u64> {
    let ctx = PadicContext::new(p, 1)?;
    let r = ctx.reduce(x)?;
    Ok(if r == 0 { p } else { r })
}

fn gamma_table(ctx: &PadicContext) -> Result<Arc<Vec<u64>>> {
    static TABLES: OnceLock<Mutex<HashMap<(u64, u32), Arc<Vec<u64>>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = tables.lock().unwrap().get(&(ctx.p, ctx.e)) {
        return Ok(Arc::clone(t));
    }
    if ctx.modulus > MAX_TABLE {
        return Err(Error::PrecisionTooLarge { p: ctx.p, e: ctx.e });
    }
    // prefix[m] = prod_{0<k<m, p !| k} k mod p^e
    let size = ctx.modulus as usize;
    let mut prefix = Vec::with_capacity(size);
    let mut acc = 1 % ctx.modulus;
    prefix.push(acc);
    for k in 1..ctx.modulus {
        prefix.push(acc);
        if k % ctx.p != 0 {
            acc = ctx.mul(acc, k);
        }
    }
    let table = Arc::new(prefix);
    tables.lock().unwrap().insert((ctx.p, ctx.e), Arc::clone(&table));
    Ok(table)
}

/// `Gamma_p(x) mod p^e`, through the integer `0 <= m < p^e` with
/// `m = x (mod p^e)`.
pub fn gamma_p(x: &BigRational, ctx: &PadicContext) -> Result<u64> {
    let m = ctx.reduce(x)?;
    let table = gamma_table(ctx)?;
    let prod = table[m as usize];
    Ok(if m % 2 == 1 { ctx.sub(0, prod) } else { prod })
}
