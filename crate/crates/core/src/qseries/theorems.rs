//! Both sides of the two supercongruence families, their one-parameter
//! generalisations, and the finite product that evaluates them at
//! `a = q^{+-2n}`.

use super::template::{Param, PochFactor, SumTemplate, Summand};
use super::{closed_prefactor, q_pochhammer, QCase};
use crate::arith::{BiRationalFunction, RationalFunction};
use crate::error::Result;
use serde::{Deserialize, Serialize};

/// Which family of sums: cubed Pochhammer ratios with `q^{dk^2+2k(d-r)}`
/// (`Theorem1`) or squared ones with `q^{dk^2+k(d-r)}` (`Theorem2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    Theorem1,
    Theorem2,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Theorem1, Family::Theorem2];
}

fn alternating_lhs(case: &QCase, numer: Vec<PochFactor>, denom: Vec<PochFactor>, k1: i64) -> SumTemplate {
    let (d, r) = (case.d(), case.r());
    SumTemplate {
        upper: case.upper(),
        summand: Summand {
            alternating: true,
            shifted_ratio: Some((2 * d, r)),
            numer,
            denom,
            q_exponent: [d, k1, 0],
        },
    }
}

fn plain_sum(case: &QCase, numer: Vec<PochFactor>, denom: Vec<PochFactor>) -> SumTemplate {
    let (d, r) = (case.d(), case.r());
    SumTemplate {
        upper: case.upper(),
        summand: Summand {
            alternating: false,
            shifted_ratio: None,
            numer,
            denom,
            q_exponent: [0, 2 * (d - r), 0],
        },
    }
}

/// Left-hand summation of the given family.
pub fn lhs_template(family: Family, case: &QCase) -> SumTemplate {
    let (d, r) = (case.d(), case.r());
    match family {
        Family::Theorem1 => alternating_lhs(
            case,
            vec![PochFactor::q(2 * r, 2 * d, 3)],
            vec![PochFactor::q(2 * d, 2 * d, 3)],
            2 * (d - r),
        ),
        Family::Theorem2 => alternating_lhs(
            case,
            vec![PochFactor::q(2 * r, 2 * d, 2)],
            vec![PochFactor::q(2 * d, 2 * d, 2)],
            d - r,
        ),
    }
}

/// The sum on the right-hand side (without the closed prefactor).
pub fn rhs_sum_template(family: Family, case: &QCase) -> SumTemplate {
    let (d, r) = (case.d(), case.r());
    match family {
        Family::Theorem1 => plain_sum(
            case,
            vec![PochFactor::q(2 * r, 2 * d, 2), PochFactor::q(d, 2 * d, 1)],
            vec![
                PochFactor::q(2 * d, 2 * d, 1),
                PochFactor::q(d + r, 2 * d, 1),
                PochFactor::q(2 * d + r, 2 * d, 1),
            ],
        ),
        Family::Theorem2 => plain_sum(
            case,
            vec![PochFactor::q(2 * r, 2 * d, 1), PochFactor::q(r, 2 * d, 1)],
            vec![PochFactor::q(2 * d, 2 * d, 1), PochFactor::q(2 * d + r, 2 * d, 1)],
        ),
    }
}

/// Parametric left-hand summation: `q^{2r}` and `q^{2d}` bases gain the pairs
/// `a q^{2r}, q^{2r}/a` and `a q^{2d}, q^{2d}/a`.
pub fn parametric_lhs_template(family: Family, case: &QCase) -> SumTemplate {
    let (d, r) = (case.d(), case.r());
    let mut numer = vec![
        PochFactor::with_param(Param::A, 2 * r, 2 * d),
        PochFactor::with_param(Param::InvA, 2 * r, 2 * d),
    ];
    let mut denom = vec![
        PochFactor::with_param(Param::A, 2 * d, 2 * d),
        PochFactor::with_param(Param::InvA, 2 * d, 2 * d),
    ];
    let k1 = match family {
        Family::Theorem1 => {
            numer.push(PochFactor::q(2 * r, 2 * d, 1));
            denom.push(PochFactor::q(2 * d, 2 * d, 1));
            2 * (d - r)
        }
        Family::Theorem2 => d - r,
    };
    alternating_lhs(case, numer, denom, k1)
}

/// Parametric right-hand sum (without the closed prefactor).
pub fn parametric_rhs_sum_template(family: Family, case: &QCase) -> SumTemplate {
    let (d, r) = (case.d(), case.r());
    let pair = [
        PochFactor::with_param(Param::A, 2 * r, 2 * d),
        PochFactor::with_param(Param::InvA, 2 * r, 2 * d),
    ];
    match family {
        Family::Theorem1 => {
            let mut numer = pair.to_vec();
            numer.push(PochFactor::q(d, 2 * d, 1));
            plain_sum(
                case,
                numer,
                vec![
                    PochFactor::q(2 * d, 2 * d, 1),
                    PochFactor::q(d + r, 2 * d, 1),
                    PochFactor::q(2 * d + r, 2 * d, 1),
                ],
            )
        }
        Family::Theorem2 => {
            let mut numer = pair.to_vec();
            numer.push(PochFactor::q(r, 2 * d, 1));
            plain_sum(
                case,
                numer,
                vec![
                    PochFactor::q(2 * d, 2 * d, 1),
                    PochFactor::q(2 * d + r, 2 * d, 1),
                    PochFactor::q(2 * r, 2 * d, 1),
                ],
            )
        }
    }
}

/// The right-hand sum after `a -> q^{sign 2n}`, as displayed in the
/// transformation step.
pub fn bailey_display_template(family: Family, case: &QCase, sign: i64) -> SumTemplate {
    let (n, d, r) = (case.n(), case.d(), case.r());
    let (e1, e2) = if sign > 0 {
        (2 * r + 2 * n, 2 * r - 2 * n)
    } else {
        (2 * r - 2 * n, 2 * r + 2 * n)
    };
    let mut numer = vec![PochFactor::q(e1, 2 * d, 1), PochFactor::q(e2, 2 * d, 1)];
    let denom = match family {
        Family::Theorem1 => {
            numer.push(PochFactor::q(d, 2 * d, 1));
            vec![
                PochFactor::q(2 * d, 2 * d, 1),
                PochFactor::q(d + r, 2 * d, 1),
                PochFactor::q(2 * d + r, 2 * d, 1),
            ]
        }
        Family::Theorem2 => {
            numer.push(PochFactor::q(r, 2 * d, 1));
            vec![
                PochFactor::q(2 * d, 2 * d, 1),
                PochFactor::q(2 * d + r, 2 * d, 1),
                PochFactor::q(2 * r, 2 * d, 1),
            ]
        }
    };
    plain_sum(case, numer, denom)
}

pub fn lhs(family: Family, case: &QCase) -> Result<RationalFunction> {
    lhs_template(family, case).evaluate()
}

pub fn rhs(family: Family, case: &QCase) -> Result<RationalFunction> {
    let sum = rhs_sum_template(family, case).evaluate()?;
    Ok(&closed_prefactor(case)? * &sum)
}

pub fn lhs_theorem1(case: &QCase) -> Result<RationalFunction> {
    lhs(Family::Theorem1, case)
}

pub fn rhs_theorem1(case: &QCase) -> Result<RationalFunction> {
    rhs(Family::Theorem1, case)
}

pub fn lhs_theorem2(case: &QCase) -> Result<RationalFunction> {
    lhs(Family::Theorem2, case)
}

pub fn rhs_theorem2(case: &QCase) -> Result<RationalFunction> {
    rhs(Family::Theorem2, case)
}

pub fn parametric_lhs(family: Family, case: &QCase) -> Result<BiRationalFunction> {
    parametric_lhs_template(family, case).evaluate_bi()
}

pub fn parametric_rhs(family: Family, case: &QCase) -> Result<BiRationalFunction> {
    let sum = parametric_rhs_sum_template(family, case).evaluate_bi()?;
    Ok(sum.scale_q(&closed_prefactor(case)?))
}

pub fn parametric_lhs_lemma22(case: &QCase) -> Result<BiRationalFunction> {
    parametric_lhs(Family::Theorem1, case)
}

pub fn parametric_rhs_lemma22(case: &QCase) -> Result<BiRationalFunction> {
    parametric_rhs(Family::Theorem1, case)
}

pub fn parametric_lhs_eq1param(case: &QCase) -> Result<BiRationalFunction> {
    parametric_lhs(Family::Theorem2, case)
}

pub fn parametric_rhs_eq1param(case: &QCase) -> Result<BiRationalFunction> {
    parametric_rhs(Family::Theorem2, case)
}

/// `(q^{2r+2d}; q^{2d})_K / (q^{2d-2n}; q^{2d})_K` with `K = (n-r)/d`.
pub fn bailey_rhs_product(case: &QCase) -> Result<RationalFunction> {
    let (n, d, r) = (case.n(), case.d(), case.r());
    let k = case.upper();
    RationalFunction::new(
        q_pochhammer(2 * r + 2 * d, 2 * d, k),
        q_pochhammer(2 * d - 2 * n, 2 * d, k),
    )
}
