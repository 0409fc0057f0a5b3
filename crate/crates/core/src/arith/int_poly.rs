//! Dense integer polynomial kernels.
//!
//! Coefficient vectors are ascending (`v[i]` is the coefficient of `q^i`) and
//! are kept trimmed: the last entry is nonzero, the zero polynomial is empty.
//! Everything above this layer (Laurent polynomials, rational functions,
//! bivariate polynomials) funnels its heavy lifting through these routines.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::OnceLock;

pub(crate) fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Nonnegative gcd of all coefficients; zero for the zero polynomial.
pub(crate) fn content(v: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in v {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(crate) fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn max_bits(v: &[BigInt]) -> u64 {
    v.iter().map(BigInt::bits).max().unwrap_or(0)
}

fn nonzero_count(v: &[BigInt]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

/// Product of two coefficient vectors.
///
/// Uses an `i128` accumulator when the coefficient bit-lengths guarantee no
/// overflow, and iterates only over nonzero entries of a sparse operand.
pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (ba, bb) = (max_bits(a), max_bits(b));
    let terms = a.len().min(b.len()) as u64;
    let log_terms = 64 - terms.leading_zeros() as u64;
    if ba <= 63 && bb <= 63 && ba + bb + log_terms <= 126 {
        return mul_i128(a, b);
    }
    mul_big(a, b)
}

fn mul_i128(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let av: Vec<i64> = a.iter().map(|c| c.to_i64().expect("fits i64")).collect();
    let bv: Vec<i64> = b.iter().map(|c| c.to_i64().expect("fits i64")).collect();
    let (long, short) = if av.len() >= bv.len() { (av, bv) } else { (bv, av) };
    let mut acc = vec![0i128; long.len() + short.len() - 1];
    let sparse: Vec<(usize, i128)> = short
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(i, c)| (i, *c as i128))
        .collect();
    if sparse.len() * 4 < short.len() || sparse.len() <= 8 {
        for (j, s) in sparse {
            for (i, l) in long.iter().enumerate() {
                acc[i + j] += *l as i128 * s;
            }
        }
    } else {
        for (i, l) in long.iter().enumerate() {
            if *l == 0 {
                continue;
            }
            let l = *l as i128;
            for (slot, s) in acc[i..i + short.len()].iter_mut().zip(&short) {
                *slot += l * *s as i128;
            }
        }
    }
    let mut out: Vec<BigInt> = acc.into_iter().map(BigInt::from).collect();
    trim(&mut out);
    out
}

fn mul_big(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut acc = vec![BigInt::zero(); long.len() + short.len() - 1];
    if nonzero_count(short) * 4 < short.len() {
        for (j, s) in short.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (i, l) in long.iter().enumerate() {
                acc[i + j] += l * s;
            }
        }
    } else {
        for (i, l) in long.iter().enumerate() {
            if l.is_zero() {
                continue;
            }
            for (slot, s) in acc[i..i + short.len()].iter_mut().zip(short) {
                if !s.is_zero() {
                    *slot += l * s;
                }
            }
        }
    }
    trim(&mut acc);
    acc
}

/// Integer long division. Returns `None` as soon as a quotient coefficient
/// would be non-integral; the caller then falls back to rational arithmetic.
pub(crate) fn divrem_int(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.len() < b.len() {
        return Some((Vec::new(), a.to_vec()));
    }
    let lead = b.last().unwrap();
    let unit = lead.abs().is_one();
    let small = max_bits(b) <= 62;
    let mut rem = a.to_vec();
    let qlen = a.len() - b.len() + 1;
    let mut quot = vec![BigInt::zero(); qlen];
    let bi64: Option<Vec<i64>> = if small {
        Some(b.iter().map(|c| c.to_i64().unwrap()).collect())
    } else {
        None
    };
    for i in (0..qlen).rev() {
        let top = &rem[i + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let coef = if unit {
            if lead.is_positive() {
                top.clone()
            } else {
                -top
            }
        } else {
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            q
        };
        match (&bi64, coef.to_i64()) {
            (Some(bs), Some(c)) if c.unsigned_abs() < (1u64 << 62) => {
                for (j, bj) in bs.iter().enumerate() {
                    if *bj != 0 {
                        rem[i + j] -= BigInt::from(*bj as i128 * c as i128);
                    }
                }
            }
            _ => {
                for (j, bj) in b.iter().enumerate() {
                    if !bj.is_zero() {
                        rem[i + j] -= &coef * bj;
                    }
                }
            }
        }
        quot[i] = coef;
    }
    trim(&mut rem);
    trim(&mut quot);
    Some((quot, rem))
}

/// Exact quotient `a / b` over the integers, or `None` when `b` does not
/// divide `a` in `Z[q]`.
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    match divrem_int(a, b) {
        Some((q, r)) if r.is_empty() => Some(q),
        _ => None,
    }
}

/// Divide out the content and make the leading coefficient positive.
pub(crate) fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut c = content(v);
    if v.last().unwrap().is_negative() {
        c = -c;
    }
    if c.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &c).collect()
}

// ---------------------------------------------------------------------------
// Modular gcd
// ---------------------------------------------------------------------------

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for all `u64`.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(256);
        let mut c = (1u64 << 62) - 1;
        while out.len() < 256 {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn reduce_mod(v: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    v.iter()
        .map(|c| {
            let r = c.mod_floor(&pb);
            r.to_u64().unwrap()
        })
        .collect()
}

fn trim_u64(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Monic gcd over `F_p`.
fn gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim_u64(&mut x);
    trim_u64(&mut y);
    while !y.is_empty() {
        // x <- x mod y
        let inv = invmod(*y.last().unwrap(), p);
        let dy = y.len() - 1;
        while x.len() > dy {
            let top = *x.last().unwrap();
            if top != 0 {
                let c = mulmod(top, inv, p);
                let shift = x.len() - 1 - dy;
                for (j, yj) in y.iter().enumerate() {
                    if *yj != 0 {
                        let t = mulmod(c, *yj, p);
                        let slot = &mut x[shift + j];
                        *slot = if *slot >= t { *slot - t } else { *slot + p - t };
                    }
                }
            }
            x.pop();
            trim_u64(&mut x);
        }
        std::mem::swap(&mut x, &mut y);
    }
    if let Some(&lc) = x.last() {
        let inv = invmod(lc, p);
        for c in x.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
    x
}

fn symmetric(v: &BigInt, m: &BigInt, half: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r > half {
        r - m
    } else {
        r
    }
}

/// Primitive gcd (positive leading coefficient) of two integer polynomials.
///
/// Brown-style multi-modular algorithm: images modulo 62-bit primes are
/// combined by CRT until the reconstruction stabilises, then the candidate is
/// certified by exact trial division of both inputs.
pub(crate) fn gcd_primitive(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    if f.is_empty() && g.is_empty() {
        return Vec::new();
    }
    if f.is_empty() {
        return primitive(g);
    }
    if g.is_empty() {
        return primitive(f);
    }
    if f.len() == 1 || g.len() == 1 {
        return vec![BigInt::one()];
    }
    let f = primitive(f);
    let g = primitive(g);
    if f == g {
        return f;
    }
    // Cheap exits: one divides the other.
    let (big, small) = if f.len() >= g.len() { (&f, &g) } else { (&g, &f) };
    if div_exact(big, small).is_some() {
        return small.clone();
    }
    let lc_gcd = f.last().unwrap().gcd(g.last().unwrap());
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut prev: Option<Vec<BigInt>> = None;
    for &p in gcd_primes() {
        let pb = BigInt::from(p);
        if (f.last().unwrap() % &pb).is_zero() || (g.last().unwrap() % &pb).is_zero() {
            continue;
        }
        let h = gcd_mod_p(&reduce_mod(&f, p), &reduce_mod(&g, p), p);
        let deg = h.len() - 1;
        if deg == 0 {
            return vec![BigInt::one()];
        }
        let lcp = lc_gcd.mod_floor(&pb).to_u64().unwrap();
        let image: Vec<u64> = h.iter().map(|c| mulmod(*c, lcp, p)).collect();
        if deg > best_deg {
            continue;
        }
        if deg < best_deg {
            best_deg = deg;
            acc = image.iter().map(|c| BigInt::from(*c)).collect();
            modulus = pb;
            prev = None;
            continue;
        }
        // CRT: x = acc (mod modulus), x = image (mod p)
        let m_inv = BigInt::from(invmod((&modulus % &pb).to_u64().unwrap(), p));
        for (a, im) in acc.iter_mut().zip(&image) {
            let a_mod = (&*a % &pb).to_u64().unwrap();
            let diff = (*im as u128 + p as u128 - a_mod as u128) as u64 % p;
            let t = (BigInt::from(diff) * &m_inv).mod_floor(&pb);
            *a += &modulus * t;
        }
        modulus *= &pb;
        let half = &modulus >> 1usize;
        let cand: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus, &half)).collect();
        let cand = primitive(&cand);
        if prev.as_ref() == Some(&cand) {
            if div_exact(&f, &cand).is_some() && div_exact(&g, &cand).is_some() {
                return cand;
            }
        }
        prev = Some(cand);
    }
    // Exhausting 256 primes means coefficients beyond ~15000 bits; fall back
    // to the primitive Euclidean remainder sequence.
    gcd_prs(&f, &g)
}

fn gcd_prs(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive(f);
    let mut b = primitive(g);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = pseudo_rem(&a, &b);
        a = b;
        b = primitive(&r);
    }
    primitive(&a)
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
pub(crate) fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let lead = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let top = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c *= &lead;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn sign_of_lead(v: &[BigInt]) -> Sign {
    v.last().map_or(Sign::NoSign, BigInt::sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = v.iter().map(|c| BigInt::from(*c)).collect();
        trim(&mut out);
        out
    }

    #[test]
    fn mul_paths_agree() {
        let a = p(&[1, -2, 3, 0, 5]);
        let b = p(&[7, 0, -1]);
        let big_a: Vec<BigInt> = a.iter().map(|c| c << 100usize).collect();
        let prod = mul(&a, &b);
        let prod_big = mul(&big_a, &b);
        let shifted: Vec<BigInt> = prod.iter().map(|c| c << 100usize).collect();
        assert_eq!(prod_big, shifted);
        assert_eq!(prod, p(&[7, -14, 20, 2, 32, 0, -5]));
    }

    #[test]
    fn gcd_of_products() {
        let common = p(&[1, 1, 1]);
        let f = mul(&common, &p(&[-1, 0, 0, 1]));
        let g = mul(&common, &p(&[3, 5]));
        assert_eq!(gcd_primitive(&f, &g), common);
        assert_eq!(gcd_primitive(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }

    #[test]
    fn gcd_with_non_monic_common_factor() {
        let common = p(&[3, 0, 7, 2]);
        let f = mul(&mul(&common, &common), &p(&[1, 4]));
        let g = mul(&common, &p(&[5, 0, 0, -9]));
        assert_eq!(gcd_primitive(&f, &g), mul(&common, &[BigInt::one()]));
    }

    #[test]
    fn divrem_reports_non_integral_step() {
        assert!(divrem_int(&p(&[1, 0, 1]), &p(&[1, 2])).is_none());
        let (q, r) = divrem_int(&p(&[1, 0, 1]), &p(&[-1, 1])).unwrap();
        assert_eq!((q, r), (p(&[1, 1]), p(&[2])));
    }

    #[test]
    fn primes_are_prime() {
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(1_000_000_007 * 3));
        assert!(gcd_primes().iter().all(|q| *q > (1 << 61)));
    }
}
