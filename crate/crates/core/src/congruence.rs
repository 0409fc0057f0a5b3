//! Congruences of rational functions modulo polynomial moduli.
//!
//! `A/B = C/D (mod M)` is decided by cross-multiplication: with both
//! denominators coprime to `M`, it holds iff `M` divides `A D - C B`.

use crate::arith::{BiPoly, BiRationalFunction, LaurentPoly, RationalFunction};
use crate::cyclotomic::Modulus;
use crate::error::{Error, Result};
use num_traits::Zero;
use serde::Serialize;

/// Observed power of one modulus factor in the difference numerator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorMultiplicity {
    pub label: String,
    pub required: u32,
    /// `None` when the difference is zero (every power divides it).
    pub observed: Option<u32>,
}

impl FactorMultiplicity {
    pub fn satisfied(&self) -> bool {
        self.observed.is_none_or(|m| m >= self.required)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceVerdict {
    pub holds: bool,
    pub modulus_degree: usize,
    /// Remainder of the difference numerator modulo the expanded modulus;
    /// zero when the congruence holds.
    pub residue: LaurentPoly,
    pub coprimality_ok: bool,
    /// Common factor of a denominator and the modulus, when there is one.
    pub offending_gcd: Option<String>,
    pub max_multiplicity: Vec<FactorMultiplicity>,
}

impl CongruenceVerdict {
    fn inapplicable(degree: usize, offending: String) -> Self {
        Self {
            holds: false,
            modulus_degree: degree,
            residue: LaurentPoly::zero(),
            coprimality_ok: false,
            offending_gcd: Some(offending),
            max_multiplicity: Vec::new(),
        }
    }

    /// Smallest observed multiplicity of the factor with this label.
    pub fn multiplicity_of(&self, label: &str) -> Option<Option<u32>> {
        self.max_multiplicity
            .iter()
            .find(|f| f.label == label)
            .map(|f| f.observed)
    }
}

/// `A D - C B` for `A/B` and `C/D`.
pub fn difference_numerator(lhs: &RationalFunction, rhs: &RationalFunction) -> LaurentPoly {
    if lhs.denom() == rhs.denom() {
        return lhs.numer() - rhs.numer();
    }
    lhs.numer() * rhs.denom() - rhs.numer() * lhs.denom()
}

/// Bivariate counterpart of [`difference_numerator`].
pub fn bi_difference_numerator(lhs: &BiRationalFunction, rhs: &BiRationalFunction) -> BiPoly {
    if lhs.denom() == rhs.denom() {
        return lhs.numer() - rhs.numer();
    }
    &(lhs.numer() * rhs.denom()) - &(rhs.numer() * lhs.denom())
}

/// Canonical representative of `p` modulo `m` of degree below `deg m`, with
/// negative powers of `q` inverted modulo `m`. Requires `m(0) != 0`.
pub fn reduce_mod(p: &LaurentPoly, m: &LaurentPoly) -> Result<LaurentPoly> {
    let m = m.shift(-m.low());
    if m.ordinary_degree() == Some(0) {
        return Ok(LaurentPoly::zero());
    }
    // Division in the Laurent ring ignores powers of q, so reduce the
    // q^0-based part and then walk the power of q in one step at a time.
    let low = p.low();
    let mut r = p.shift(-low).rem(&m)?;
    let deg = m.high();
    if low > 0 {
        let lead = m.leading_coeff();
        for _ in 0..low {
            r = r.shift(1);
            let c = r.coeff(deg);
            if !c.is_zero() {
                r = &r - &m.scale(&(c / &lead));
            }
        }
    } else {
        let m0 = m.coeff(0);
        for _ in 0..(-low) {
            let c = r.coeff(0);
            if !c.is_zero() {
                r = &r - &m.scale(&(c / &m0));
            }
            r = r.shift(-1);
        }
    }
    Ok(r)
}

/// Largest `e` with `base^e | p`; `None` for `p = 0`.
pub fn multiplicity_profile(p: &LaurentPoly, base: &LaurentPoly) -> Result<Option<u32>> {
    if base.ordinary_degree().unwrap_or(0) == 0 {
        return Err(Error::ConstantBase);
    }
    if p.is_zero() {
        return Ok(None);
    }
    let mut e = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.div_exact(base)? {
        cur = q;
        e += 1;
    }
    Ok(Some(e))
}

fn offending(den: &LaurentPoly, base: &LaurentPoly) -> Result<Option<LaurentPoly>> {
    let g = den.gcd(base)?;
    Ok((g.ordinary_degree() != Some(0)).then_some(g))
}

/// Decide `lhs = rhs (mod modulus)`.
pub fn check_congruent(
    lhs: &RationalFunction,
    rhs: &RationalFunction,
    modulus: &Modulus,
) -> Result<CongruenceVerdict> {
    let degree = modulus.degree();
    for f in modulus.factors() {
        for den in [lhs.denom(), rhs.denom()] {
            if let Some(g) = offending(den, &f.base)? {
                return Ok(CongruenceVerdict::inapplicable(degree, g.to_string()));
            }
        }
    }
    let diff = difference_numerator(lhs, rhs);
    let residue = reduce_mod(&diff, modulus.expanded())?;
    let max_multiplicity = modulus
        .factors()
        .iter()
        .map(|f| {
            Ok(FactorMultiplicity {
                label: f.label.clone(),
                required: f.multiplicity,
                observed: multiplicity_profile(&diff, &f.base)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let holds = residue.is_zero();
    debug_assert_eq!(holds, max_multiplicity.iter().all(FactorMultiplicity::satisfied));
    Ok(CongruenceVerdict {
        holds,
        modulus_degree: degree,
        residue,
        coprimality_ok: true,
        offending_gcd: None,
        max_multiplicity,
    })
}

/// A named bivariate modulus factor.
#[derive(Debug, Clone)]
pub struct BiFactor {
    pub label: String,
    pub poly: BiPoly,
}

impl BiFactor {
    pub fn new(label: impl Into<String>, poly: BiPoly) -> Self {
        Self {
            label: label.into(),
            poly,
        }
    }
}

/// `gcd(f, g)` is trivial. Factors free of `a` only meet `g` through its
/// `q`-content; a primitive factor of degree one in `a` is irreducible, so
/// it is coprime to `g` unless it divides it.
fn bi_coprime(f: &BiPoly, g: &BiPoly) -> Result<bool> {
    match f.a_degree() {
        Some(0) => {
            let c = f.coeff(0);
            let content = g.q_content();
            Ok(c.gcd(&content)?.ordinary_degree() == Some(0))
        }
        Some(1) if f.q_content().ordinary_degree() == Some(0) => Ok(g.div_exact(f)?.is_none()),
        _ => f.coprime(g),
    }
}

fn bi_divides(f: &BiPoly, n: &BiPoly) -> Result<bool> {
    if n.is_zero() {
        return Ok(true);
    }
    match f.a_degree() {
        Some(0) => n.divisible_by_q(&f.coeff(0)),
        _ => Ok(n.div_exact(f)?.is_some()),
    }
}

/// Decide `lhs = rhs` modulo the product of pairwise coprime bivariate
/// factors.
///
/// Divisibility is checked both factor by factor and for the product; the
/// two must agree. The residue witness is the remainder modulo the first
/// failing `a`-free factor, or the image of the difference at the root
/// `a = q^t` of the first failing linear factor.
pub fn check_bicongruent(
    lhs: &BiRationalFunction,
    rhs: &BiRationalFunction,
    factors: &[BiFactor],
) -> Result<CongruenceVerdict> {
    let degree: usize = factors.iter().map(|f| f.poly.q_span()).sum();
    for (i, f) in factors.iter().enumerate() {
        for g in &factors[i + 1..] {
            if !bi_coprime(&f.poly, &g.poly)? {
                return Err(Error::Usage(format!("factors {} and {} are not coprime", f.label, g.label)));
            }
        }
        for den in [lhs.denom(), rhs.denom()] {
            if !bi_coprime(&f.poly, den)? {
                return Ok(CongruenceVerdict::inapplicable(degree, f.label.clone()));
            }
        }
    }
    let diff = bi_difference_numerator(lhs, rhs);
    let mut each = Vec::with_capacity(factors.len());
    let mut residue = LaurentPoly::zero();
    for f in factors {
        let ok = bi_divides(&f.poly, &diff)?;
        if !ok && residue.is_zero() {
            residue = witness(&diff, &f.poly)?;
        }
        each.push(FactorMultiplicity {
            label: f.label.clone(),
            required: 1,
            observed: if diff.is_zero() { None } else { Some(ok as u32) },
        });
    }
    let all = each.iter().all(FactorMultiplicity::satisfied);
    let product = factors.iter().fold(BiPoly::one(), |acc, f| &acc * &f.poly);
    let together = bi_divides(&product, &diff)?;
    assert_eq!(all, together, "factorwise and product divisibility disagree");
    Ok(CongruenceVerdict {
        holds: together,
        modulus_degree: degree,
        residue,
        coprimality_ok: true,
        offending_gcd: None,
        max_multiplicity: each,
    })
}

fn witness(diff: &BiPoly, f: &BiPoly) -> Result<LaurentPoly> {
    if f.a_degree() == Some(0) {
        let m = f.coeff(0);
        for (_, c) in diff.terms() {
            let r = reduce_mod(c, &m)?;
            if !r.is_zero() {
                return Ok(r);
            }
        }
        return Ok(LaurentPoly::zero());
    }
    // Linear factor c0 + c1 a with monomial coefficients: root a = -c0/c1.
    let (c0, c1) = (f.coeff(0), f.coeff(1));
    if f.a_degree() == Some(1) && c0.is_monomial() && c1.is_monomial() {
        let root = -&c0.div_exact(&c1)?.expect("monomial division");
        if root == LaurentPoly::q_pow(root.low()) {
            let image = diff.subst_a_qpow(root.low());
            if !image.is_zero() {
                return Ok(image);
            }
        }
    }
    Ok(LaurentPoly::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{cyclotomic, theorem_modulus};
    use crate::qseries::{lhs_theorem1, lhs_theorem2, rhs_theorem1, rhs_theorem2, QCase};
    use proptest::prelude::*;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_ints(0, c)
    }

    fn rf(p: LaurentPoly) -> RationalFunction {
        RationalFunction::from_poly(p)
    }

    #[test]
    fn identical_sides_hold() {
        let x = RationalFunction::new(lp(&[1, 2, 3]), lp(&[1, 1])).unwrap();
        let m = theorem_modulus(3).unwrap();
        let v = check_congruent(&x, &x, &m).unwrap();
        assert!(v.holds);
        assert!(v.residue.is_zero());
        assert!(v.max_multiplicity.iter().all(|f| f.observed.is_none()));
    }

    #[test]
    fn q_to_the_n_is_one() {
        let m = Modulus::single("Phi_5(q)", cyclotomic(5).unwrap(), 1).unwrap();
        let v = check_congruent(&rf(LaurentPoly::q_pow(5)), &RationalFunction::one(), &m).unwrap();
        assert!(v.holds);
        let v = check_congruent(&rf(LaurentPoly::q_pow(4)), &RationalFunction::one(), &m).unwrap();
        assert!(!v.holds);
        assert!(!v.residue.is_zero());
    }

    #[test]
    fn theorem_instance() {
        let c = QCase::new(5, 2, 1).unwrap();
        let v = check_congruent(&lhs_theorem1(&c).unwrap(), &rhs_theorem1(&c).unwrap(), &theorem_modulus(5).unwrap())
            .unwrap();
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn sharper_multiplicity_for_three_mod_four() {
        let c = QCase::new(7, 2, 1).unwrap();
        let diff = difference_numerator(&lhs_theorem2(&c).unwrap(), &rhs_theorem2(&c).unwrap());
        assert!(multiplicity_profile(&diff, &cyclotomic(7).unwrap()).unwrap().unwrap() >= 3);
    }

    #[test]
    fn multiplicity_examples() {
        let p = lp(&[-1, 1]).pow(3) * lp(&[2, 1]);
        assert_eq!(multiplicity_profile(&p, &lp(&[-1, 1])).unwrap(), Some(3));
        assert_eq!(multiplicity_profile(&lp(&[2, 1]), &lp(&[-1, 1])).unwrap(), Some(0));
        assert_eq!(multiplicity_profile(&p, &lp(&[3])), Err(Error::ConstantBase));
    }

    #[test]
    fn non_coprime_denominator_is_inapplicable() {
        let m = Modulus::single("Phi_3(q)", cyclotomic(3).unwrap(), 1).unwrap();
        let x = RationalFunction::new(LaurentPoly::one(), cyclotomic(3).unwrap()).unwrap();
        let v = check_congruent(&x, &RationalFunction::one(), &m).unwrap();
        assert!(!v.holds);
        assert!(!v.coprimality_ok);
        assert!(v.offending_gcd.is_some());
    }

    #[test]
    fn reduce_mod_inverts_q() {
        let m = cyclotomic(5).unwrap();
        // q^{-1} * q = 1
        let inv = reduce_mod(&LaurentPoly::q_pow(-1), &m).unwrap();
        assert_eq!(reduce_mod(&inv.shift(1), &m).unwrap(), LaurentPoly::one());
        assert_eq!(reduce_mod(&LaurentPoly::q_pow(-5), &m).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn bicongruence_examples() {
        let n = 3;
        let f = BiPoly::linear(LaurentPoly::one(), LaurentPoly::monomial(-1, 2 * n));
        let arb = BiPoly::linear(lp(&[1, 2]), lp(&[0, 0, 5]));
        let x = BiRationalFunction::from_poly(&f * &arb);
        let zero = BiRationalFunction::from_poly(BiPoly::zero());
        let factors = [BiFactor::new("1-aq^6", f.clone())];
        assert!(check_bicongruent(&x, &zero, &factors).unwrap().holds);
        assert!(check_bicongruent(&x, &x, &factors).unwrap().holds);
        let y = BiRationalFunction::from_poly(arb);
        let v = check_bicongruent(&y, &zero, &factors).unwrap();
        assert!(!v.holds);
        assert!(!v.residue.is_zero());
    }

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec(-5i64..=5, 1..=13).prop_map(|c| LaurentPoly::from_ints(0, &c))
    }

    fn small_modulus() -> impl Strategy<Value = Modulus> {
        (prop::sample::select(vec![3u64, 4, 5, 6, 7]), 1u32..=2)
            .prop_map(|(n, e)| Modulus::single("Phi", cyclotomic(n).unwrap(), e).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn oracle_equivalence(l in poly_strategy(), r in poly_strategy(), m in small_modulus()) {
            let v = check_congruent(&rf(l.clone()), &rf(r.clone()), &m).unwrap();
            let (_, rem) = (&l - &r).divrem(m.expanded()).unwrap();
            prop_assert_eq!(v.holds, rem.is_zero());
        }

        #[test]
        fn well_defined(l in poly_strategy(), r in poly_strategy(), t in poly_strategy(), m in small_modulus()) {
            let shifted = &l + &(m.expanded() * &t);
            let a = check_congruent(&rf(l), &rf(r.clone()), &m).unwrap();
            let b = check_congruent(&rf(shifted), &rf(r), &m).unwrap();
            prop_assert_eq!(a.holds, b.holds);
            prop_assert_eq!(a.residue, b.residue);
        }

        #[test]
        fn scaling_invariant(l in poly_strategy(), r in poly_strategy(), s in poly_strategy(), m in small_modulus()) {
            prop_assume!(!s.is_zero());
            prop_assume!(s.gcd(m.expanded()).unwrap().ordinary_degree() == Some(0));
            let scaled = RationalFunction::new(&l * &s, s.clone()).unwrap();
            let a = check_congruent(&rf(l), &rf(r.clone()), &m).unwrap();
            let b = check_congruent(&scaled, &rf(r), &m).unwrap();
            prop_assert_eq!(a.holds, b.holds);
        }
    }
}
