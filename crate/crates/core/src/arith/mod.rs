//! Exact arithmetic: Laurent polynomials, rational functions and their
//! bivariate counterparts in an auxiliary parameter `a`.

mod bipoly;
pub(crate) mod int_poly;
mod laurent;
mod ratfunc;

pub use bipoly::{BiPoly, BiRationalFunction};
pub use laurent::LaurentPoly;
pub use ratfunc::RationalFunction;

/// A substitution applied to a (bi)variate polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Substitution {
    /// `q -> -q`
    NegateQ,
    /// `q -> q^m`, `m != 0`
    QPower(i64),
    /// `a -> q^t`
    AToQPower(i64),
    /// `q -> x` for a rational `x`
    QValue(num_rational::BigRational),
}

/// Apply a substitution to a univariate polynomial. `AToQPower` is the
/// identity here since there is no `a`.
pub fn substitute(p: &LaurentPoly, s: &Substitution) -> crate::Result<LaurentPoly> {
    match s {
        Substitution::NegateQ => Ok(p.negate_q()),
        Substitution::QPower(m) => p.compose_power(*m),
        Substitution::AToQPower(_) => Ok(p.clone()),
        Substitution::QValue(x) => Ok(LaurentPoly::constant(p.eval(x)?)),
    }
}

/// Apply a substitution to a bivariate polynomial; `q`-substitutions act on
/// every coefficient, `a -> q^t` collapses it to a univariate polynomial.
pub fn substitute_bi(p: &BiPoly, s: &Substitution) -> crate::Result<BiPoly> {
    match s {
        Substitution::AToQPower(t) => Ok(BiPoly::from_q(p.subst_a_qpow(*t))),
        other => p.map_q(|c| substitute(c, other)),
    }
}
