//! The creative-microscoping steps as separately checkable statements.
//!
//! A parametric congruence modulo `Phi_n(-q) (1 - a q^{2n}) (a - q^{2n})` is
//! assembled from exact identities at `a = q^{+-2n}` (a terminating
//! quadratic transformation), a pairing of terms modulo `Phi_n(-q)` (which
//! rests on a reflection congruence for q-shifted factorial ratios), and the
//! three pairwise coprime factors themselves.

use crate::arith::{BiPoly, BiRationalFunction, LaurentPoly};
use crate::congruence::{check_bicongruent, check_congruent, BiFactor, CongruenceVerdict};
use crate::cyclotomic::{cyclotomic, theorem_modulus};
use crate::error::{Error, Result};
use crate::qseries::{
    bailey_display_template, bailey_params, bailey_rhs_product, check_residue_range, lhs, parametric_lhs,
    parametric_lhs_template, parametric_rhs, rhs, Family, Param, PochhammerSpec, QCase,
};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct MicroscopeReport {
    pub case: QCase,
    pub family: Family,
    pub bailey_plus: bool,
    pub bailey_minus: bool,
    pub pairing_ok: bool,
    pub lemma21_ok: bool,
    pub parametric_ok: CongruenceVerdict,
    /// The `a -> 1` specialisation holds modulo the full theorem modulus and
    /// `Phi_n(q^2) = Phi_n(q) Phi_n(-q)`.
    pub chain_ok: bool,
}

impl MicroscopeReport {
    pub fn all_ok(&self) -> bool {
        self.bailey_plus
            && self.bailey_minus
            && self.pairing_ok
            && self.lemma21_ok
            && self.parametric_ok.holds
            && self.chain_ok
    }
}

/// The parametric left side at `a = q^{2 sign n}` against the product times
/// the terminating sum, each computed independently.
pub fn verify_bailey_instance(case: &QCase, sign: i64, family: Family) -> Result<bool> {
    let n = case.n();
    let specialised = parametric_lhs(family, case)?.subst_a_qpow(2 * sign * n)?;
    let sides = bailey_params(case, sign, family).evaluate()?;
    let shown = &bailey_rhs_product(case)? * &bailey_display_template(family, case, sign).evaluate()?;
    Ok(specialised == sides.lhs && sides.lhs == sides.rhs && sides.rhs == shown)
}

fn ratio(num: &BiRationalFunction, den: &BiRationalFunction) -> Result<BiRationalFunction> {
    BiRationalFunction::new(num.numer() * den.denom(), num.denom() * den.numer())
}

fn shifted_ratio(n_len: u32, r: i64, d: i64) -> Result<BiRationalFunction> {
    ratio(
        &PochhammerSpec::new(Param::A, r, d, n_len).evaluate(),
        &PochhammerSpec::new(Param::InvA, d, d, n_len).evaluate(),
    )
}

/// Both sides of the reflection congruence for `(a q^r; q^d)_m / (q^d/a; q^d)_m`
/// at `m = (n-r)/d - k` and `m = k`.
pub fn lemma21_sides(n: i64, d: i64, r: i64, k: u32) -> Result<(BiRationalFunction, BiRationalFunction)> {
    if n < 1 || d < 1 {
        return Err(crate::Hypothesis::Positivity { n, d }.into());
    }
    check_residue_range(n, d, r)?;
    let upper = ((n - r) / d) as u32;
    if k > upper {
        return Err(Error::Usage(format!("k = {k} exceeds (n-r)/d = {upper}")));
    }
    let twice = (n - r) * (n - d + r) + 2 * d * k as i64 * (d - r);
    if twice % (2 * d) != 0 {
        return Err(Error::NonIntegralExponent(format!("({n}-{r})({n}-{d}+{r})/(2*{d}) + {k}({d}-{r})")));
    }
    let exponent = twice / (2 * d);
    let left = shifted_ratio(upper - k, r, d)?;
    let sign_power = upper as i64 - 2 * k as i64;
    let unit = if sign_power % 2 == 0 { 1 } else { -1 };
    let scalar = LaurentPoly::monomial(unit, exponent);
    let a_power = BiPoly::a_pow(sign_power.unsigned_abs() as u32);
    let (num, den) = if sign_power >= 0 {
        (&a_power.mul_q(&scalar), BiPoly::one())
    } else {
        (&BiPoly::from_q(scalar), a_power)
    };
    let right = shifted_ratio(k, r, d)?;
    let right = BiRationalFunction::new(num * right.numer(), &den * right.denom())?;
    Ok((left, right))
}

/// The reflection congruence modulo `Phi_n(q)` with `a` indeterminate.
pub fn verify_lemma21(n: i64, d: i64, r: i64, k: u32) -> Result<bool> {
    let (left, right) = lemma21_sides(n, d, r, k)?;
    let phi = BiFactor::new(format!("Phi_{n}(q)"), BiPoly::from_q(cyclotomic(n as u64)?));
    Ok(check_bicongruent(&left, &right, &[phi])?.holds)
}

fn phi_neg_factor(n: i64) -> Result<BiFactor> {
    Ok(BiFactor::new(
        format!("Phi_{n}(-q)"),
        BiPoly::from_q(cyclotomic(n as u64)?.negate_q()),
    ))
}

/// Terms `k` and `(n-r)/d - k` of the parametric left side cancel modulo
/// `Phi_n(-q)`. For the squared family the intermediate form
/// `t_{K-k} = (-1)^K q^{3nK - n} t_k` is checked as well.
pub fn verify_term_pairing(case: &QCase, family: Family) -> Result<bool> {
    let template = parametric_lhs_template(family, case);
    let upper = case.upper();
    let n = case.n();
    let phi = [phi_neg_factor(n)?];
    let terms = (0..=upper)
        .map(|k| template.summand.term(k))
        .collect::<Result<Vec<_>>>()?;
    for k in 0..=upper as usize {
        let partner = &terms[upper as usize - k];
        if !check_bicongruent(&terms[k], &(-partner), &phi)?.holds {
            return Ok(false);
        }
        if family == Family::Theorem2 {
            let sign = if upper % 2 == 0 { 1 } else { -1 };
            let factor = LaurentPoly::monomial(sign, 3 * n * upper as i64 - n);
            let shown = BiRationalFunction::new(terms[k].numer().mul_q(&factor), terms[k].denom().clone())?;
            if !check_bicongruent(partner, &shown, &phi)?.holds {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The parametric congruence modulo `Phi_n(-q) (1 - a q^{2n}) (a - q^{2n})`.
pub fn verify_parametric(case: &QCase, family: Family) -> Result<CongruenceVerdict> {
    let n = case.n();
    let factors = [
        phi_neg_factor(n)?,
        BiFactor::new(
            format!("1-aq^{}", 2 * n),
            BiPoly::linear(LaurentPoly::one(), LaurentPoly::monomial(-1, 2 * n)),
        ),
        BiFactor::new(
            format!("a-q^{}", 2 * n),
            BiPoly::linear(LaurentPoly::monomial(-1, 2 * n), LaurentPoly::one()),
        ),
    ];
    check_bicongruent(&parametric_lhs(family, case)?, &parametric_rhs(family, case)?, &factors)
}

/// `Phi_n(q^2) = Phi_n(q) Phi_n(-q)` for odd `n`.
pub fn cyclotomic_square_identity(n: u64) -> Result<bool> {
    let phi = cyclotomic(n)?;
    Ok(phi.compose_power(2)? == &phi * &phi.negate_q())
}

pub fn microscope_report(case: &QCase, family: Family) -> Result<MicroscopeReport> {
    let bailey_plus = verify_bailey_instance(case, 1, family)?;
    let bailey_minus = verify_bailey_instance(case, -1, family)?;
    let pairing_ok = verify_term_pairing(case, family)?;
    let mut lemma21_ok = true;
    for k in 0..=case.upper() {
        lemma21_ok &= verify_lemma21(case.n(), case.d(), case.r(), k)?;
    }
    let parametric_ok = verify_parametric(case, family)?;
    let chain_ok = if parametric_ok.holds && case.n() >= 3 {
        let modulus = theorem_modulus(case.n())?;
        cyclotomic_square_identity(case.n() as u64)?
            && check_congruent(&lhs(family, case)?, &rhs(family, case)?, &modulus)?.holds
    } else {
        parametric_ok.holds
    };
    Ok(MicroscopeReport {
        case: *case,
        family,
        bailey_plus,
        bailey_minus,
        pairing_ok,
        lemma21_ok,
        parametric_ok,
        chain_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(n: i64, d: i64, r: i64) -> QCase {
        QCase::new(n, d, r).unwrap()
    }

    #[test]
    fn bailey_examples() {
        for fam in Family::ALL {
            for s in [1, -1] {
                assert!(verify_bailey_instance(&case(7, 3, 7), s, fam).unwrap());
            }
        }
        assert!(verify_bailey_instance(&case(3, 2, 1), 1, Family::Theorem1).unwrap());
        assert!(verify_bailey_instance(&case(5, 3, -1), -1, Family::Theorem1).unwrap());
    }

    #[test]
    fn lemma21_examples() {
        assert!(verify_lemma21(5, 2, 1, 0).unwrap());
        assert!(verify_lemma21(5, 2, 1, 2).unwrap());
        assert!(verify_lemma21(7, 3, 1, 1).unwrap());
        // any positive n, including even ones
        assert!(verify_lemma21(8, 3, 2, 1).unwrap());
        assert!(verify_lemma21(5, 2, 2, 0).is_err());
    }

    #[test]
    fn lemma21_reflection_is_involution() {
        let (n, d, r) = (9, 4, 1);
        let upper = 2u32;
        let reflect = |k: u32| upper - k;
        for k in 0..=upper {
            assert_eq!(reflect(reflect(k)), k);
            let (l, rt) = lemma21_sides(n, d, r, k).unwrap();
            let (l2, rt2) = lemma21_sides(n, d, r, reflect(reflect(k))).unwrap();
            assert!(l.equals(&l2) && rt.equals(&rt2));
        }
    }

    #[test]
    fn pairing_examples() {
        assert!(verify_term_pairing(&case(3, 2, 1), Family::Theorem1).unwrap());
        assert!(verify_term_pairing(&case(5, 2, -1), Family::Theorem2).unwrap());
        // K = 2 has a central term
        assert!(verify_term_pairing(&case(5, 2, 1), Family::Theorem1).unwrap());
    }

    #[test]
    fn parametric_examples() {
        assert!(verify_parametric(&case(5, 3, 2), Family::Theorem1).unwrap().holds);
        assert!(verify_parametric(&case(5, 2, 1), Family::Theorem1).unwrap().holds);
        assert!(verify_parametric(&case(7, 4, -1), Family::Theorem2).unwrap().holds);
    }

    #[test]
    fn full_report() {
        let r = microscope_report(&case(7, 3, 1), Family::Theorem1).unwrap();
        assert!(r.all_ok(), "{r:?}");
    }

    #[test]
    fn square_identity() {
        for n in (3..=25).step_by(2) {
            assert!(cyclotomic_square_identity(n).unwrap());
        }
    }
}
