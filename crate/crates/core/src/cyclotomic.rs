//! Cyclotomic polynomials and the composite moduli built from them.

use crate::arith::LaurentPoly;
use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

fn memo() -> &'static Mutex<HashMap<u64, LaurentPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<u64, LaurentPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The `n`-th cyclotomic polynomial `Phi_n(q)`.
///
/// Computed as `(q^n - 1) / prod_{d | n, d < n} Phi_d(q)` by exact division;
/// results are memoised process-wide.
pub fn cyclotomic(n: u64) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::ZeroCyclotomicIndex);
    }
    if let Some(p) = memo().lock().unwrap().get(&n) {
        return Ok(p.clone());
    }
    let mut acc = LaurentPoly::q_pow(n as i64) - LaurentPoly::one();
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic(d)?;
        acc = acc
            .div_exact(&phi_d)?
            .expect("proper-divisor cyclotomic factors divide q^n - 1");
    }
    memo().lock().unwrap().insert(n, acc.clone());
    Ok(acc)
}

/// `Phi_n(-q)`, sign-normalised to a positive leading coefficient.
pub fn cyclotomic_neg(n: u64) -> Result<LaurentPoly> {
    let p = cyclotomic(n)?.negate_q();
    if p.leading_coeff() < num_rational::BigRational::from_integer(0.into()) {
        Ok(-p)
    } else {
        Ok(p)
    }
}

/// A product of pairwise coprime polynomial powers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Modulus {
    factors: Vec<ModulusFactor>,
    #[serde(skip)]
    expanded: LaurentPoly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModulusFactor {
    pub label: String,
    pub base: LaurentPoly,
    pub multiplicity: u32,
}

impl Modulus {
    /// Build from `(label, base, multiplicity)` triples; bases must be pairwise
    /// coprime and nonconstant.
    pub fn new(factors: Vec<(String, LaurentPoly, u32)>) -> Result<Self> {
        let factors: Vec<ModulusFactor> = factors
            .into_iter()
            .map(|(label, base, multiplicity)| ModulusFactor {
                label,
                base,
                multiplicity,
            })
            .collect();
        for (i, f) in factors.iter().enumerate() {
            if f.base.ordinary_degree().unwrap_or(0) == 0 || f.multiplicity == 0 {
                return Err(Error::Usage(format!("degenerate modulus factor {}", f.label)));
            }
            for g in &factors[i + 1..] {
                if f.base.gcd(&g.base)?.ordinary_degree() != Some(0) {
                    return Err(Error::Usage(format!(
                        "modulus factors {} and {} are not coprime",
                        f.label, g.label
                    )));
                }
            }
        }
        let expanded = factors
            .iter()
            .fold(LaurentPoly::one(), |acc, f| acc * f.base.pow(f.multiplicity));
        Ok(Self { factors, expanded })
    }

    pub fn single(label: &str, base: LaurentPoly, multiplicity: u32) -> Result<Self> {
        Self::new(vec![(label.to_string(), base, multiplicity)])
    }

    pub fn factors(&self) -> &[ModulusFactor] {
        &self.factors
    }

    pub fn expanded(&self) -> &LaurentPoly {
        &self.expanded
    }

    pub fn degree(&self) -> usize {
        self.expanded.ordinary_degree().unwrap_or(0)
    }

    /// Same bases, with the multiplicity of factor `index` replaced.
    pub fn with_multiplicity(&self, index: usize, multiplicity: u32) -> Result<Self> {
        let mut spec: Vec<(String, LaurentPoly, u32)> = self
            .factors
            .iter()
            .map(|f| (f.label.clone(), f.base.clone(), f.multiplicity))
            .collect();
        spec[index].2 = multiplicity;
        Self::new(spec)
    }
}

fn check_odd(n: i64) -> Result<u64> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::InvalidModulus(n));
    }
    Ok(n as u64)
}

/// `Phi_n(-q)^3 Phi_n(q)^2` for odd `n >= 3`.
pub fn theorem_modulus(n: i64) -> Result<Modulus> {
    let m = check_odd(n)?;
    Modulus::new(vec![
        (format!("Phi_{m}(-q)"), cyclotomic_neg(m)?, 3),
        (format!("Phi_{m}(q)"), cyclotomic(m)?, 2),
    ])
}

/// Modulus with the `n mod 4`-dependent exponent of `Phi_n(q)`: 2 when
/// `n = 1 (mod 4)`, 3 when `n = 3 (mod 4)`.
pub fn e3e4_modulus(n: i64) -> Result<Modulus> {
    let m = check_odd(n)?;
    let mult = if m % 4 == 1 { 2 } else { 3 };
    Modulus::new(vec![
        (format!("Phi_{m}(-q)"), cyclotomic_neg(m)?, 3),
        (format!("Phi_{m}(q)"), cyclotomic(m)?, mult),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(0, c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).unwrap(), lp(&[-1, 1]));
        assert_eq!(cyclotomic(2).unwrap(), lp(&[1, 1]));
        assert_eq!(cyclotomic(6).unwrap(), lp(&[1, -1, 1]));
        assert_eq!(cyclotomic(0), Err(Error::ZeroCyclotomicIndex));
    }

    #[test]
    fn product_over_divisors_of_15() {
        let prod = divisors(15)
            .into_iter()
            .fold(LaurentPoly::one(), |acc, d| acc * cyclotomic(d).unwrap());
        assert_eq!(prod, LaurentPoly::q_pow(15) - LaurentPoly::one());
    }

    #[test]
    fn theorem_modulus_examples() {
        let m3 = theorem_modulus(3).unwrap();
        assert_eq!(m3.factors()[0].base, lp(&[1, -1, 1]));
        assert_eq!(m3.expanded(), &(lp(&[1, -1, 1]).pow(3) * lp(&[1, 1, 1]).pow(2)));
        assert_eq!(theorem_modulus(5).unwrap().degree(), 20);
        assert_eq!(theorem_modulus(4), Err(Error::InvalidModulus(4)));
        assert_eq!(theorem_modulus(1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn e3e4_multiplicities() {
        let mults = |n| -> Vec<u32> {
            e3e4_modulus(n).unwrap().factors().iter().map(|f| f.multiplicity).collect()
        };
        assert_eq!(mults(5), vec![3, 2]);
        assert_eq!(mults(7), vec![3, 3]);
        assert_eq!(mults(9), vec![3, 2]);
        assert!(e3e4_modulus(6).is_err());
    }

    #[test]
    fn values_at_plus_minus_one() {
        let one = BigRational::from_integer(BigInt::from(1));
        for n in [3u64, 5, 7, 11, 13] {
            let phi = cyclotomic(n).unwrap();
            assert_eq!(phi.eval_int(1).unwrap(), BigRational::from_integer(BigInt::from(n)));
            assert_eq!(phi.eval_int(-1).unwrap(), one);
        }
        for n in [15u64, 21, 33, 35] {
            assert_eq!(cyclotomic(n).unwrap().eval_int(1).unwrap(), one);
        }
    }
}
