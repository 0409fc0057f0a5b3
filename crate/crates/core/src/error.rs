use thiserror::Error;

/// A violated hypothesis of a parameter record `(n, d, r)`.
///
/// The variant names are what sweep logs print when a grid point is skipped.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Hypothesis {
    #[error("parity: n = {n} must be odd")]
    Parity { n: i64 },
    #[error("positivity: n = {n} and d = {d} must be positive")]
    Positivity { n: i64, d: i64 },
    #[error("gcd: gcd({n}, {d}) != 1")]
    Gcd { n: i64, d: i64 },
    #[error("residue: {n} != {r} (mod {d})")]
    Residue { n: i64, d: i64, r: i64 },
    #[error("range: r = {r} outside [{lo}, {hi}]")]
    Range { r: i64, lo: i64, hi: i64 },
    #[error("residue: {n} != {s} (mod {m}) for s in {{1, -1}}")]
    SignClass { n: i64, s: i64, m: i64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    ZeroGcd,
    #[error("cannot substitute q = 0 into a polynomial with negative exponents")]
    ZeroSubstitution,
    #[error("substitution q -> q^0 is not allowed")]
    ZeroPower,
    #[error("invalid case: {0}")]
    InvalidCase(#[from] Hypothesis),
    #[error("cyclotomic index must be positive")]
    ZeroCyclotomicIndex,
    #[error("modulus requires an odd n >= 3, got {0}")]
    InvalidModulus(i64),
    #[error("multiplicity against a constant base is undefined")]
    ConstantBase,
    #[error("{value} is not p-integral for p = {p}")]
    NotPIntegral { value: String, p: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("precision {p}^{e} is outside the supported range")]
    PrecisionTooLarge { p: u64, e: u32 },
    #[error("exponent {0} is not an integer")]
    NonIntegralExponent(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
