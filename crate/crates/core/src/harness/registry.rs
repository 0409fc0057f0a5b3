//! Statement identifiers and the displayed q-statements as sum templates.

use crate::arith::RationalFunction;
use crate::cyclotomic::{e3e4_modulus, theorem_modulus, Modulus};
use crate::error::{Error, Hypothesis, Result};
use crate::padic::{PadicStatement, SwisherA};
use crate::qseries::{
    closed_prefactor, lhs_template, q_integer, rhs_sum_template, Family, PochFactor, QCase, SumTemplate, Summand,
};
use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StatementId {
    T1,
    T2,
    T3,
    T4,
    G8,
    G13,
    E3,
    E4,
    L21,
    L22,
    Eq1P,
    BaileyPlus,
    BaileyMinus,
    Pairing,
    Padic(PadicStatement),
}

impl StatementId {
    pub fn is_padic(&self) -> bool {
        matches!(self, StatementId::Padic(_))
    }

    /// Every identifier, with `EQ7-d` for `d` in `{2, 4, 6}`.
    pub fn all() -> Vec<StatementId> {
        use StatementId::*;
        let mut v = vec![T1, T2, T3, T4, G8, G13, E3, E4, L21, L22, Eq1P, BaileyPlus, BaileyMinus, Pairing];
        v.extend(
            [PadicStatement::B2, PadicStatement::E2, PadicStatement::F2]
                .into_iter()
                .chain(SwisherA::ALL.into_iter().map(PadicStatement::Swisher))
                .chain([2, 4, 6].into_iter().map(PadicStatement::Eq7))
                .chain((1..=4).map(PadicStatement::Cor3))
                .chain((1..=4).map(PadicStatement::Cor4))
                .chain([PadicStatement::He])
                .map(Padic),
        );
        v
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            StatementId::T1 => "T1",
            StatementId::T2 => "T2",
            StatementId::T3 => "T3",
            StatementId::T4 => "T4",
            StatementId::G8 => "G8",
            StatementId::G13 => "G13",
            StatementId::E3 => "E3",
            StatementId::E4 => "E4",
            StatementId::L21 => "L21",
            StatementId::L22 => "L22",
            StatementId::Eq1P => "EQ1P",
            StatementId::BaileyPlus => "BAILEY+",
            StatementId::BaileyMinus => "BAILEY-",
            StatementId::Pairing => "PAIRING",
            StatementId::Padic(p) => return write!(f, "{p}"),
        };
        f.write_str(s)
    }
}

impl Serialize for StatementId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase().replace('\u{2212}', "-");
        let id = match upper.as_str() {
            "T1" => StatementId::T1,
            "T2" => StatementId::T2,
            "T3" => StatementId::T3,
            "T4" => StatementId::T4,
            "G8" => StatementId::G8,
            "G13" => StatementId::G13,
            "E3" => StatementId::E3,
            "E4" => StatementId::E4,
            "L21" => StatementId::L21,
            "L22" => StatementId::L22,
            "EQ1P" => StatementId::Eq1P,
            "BAILEY+" => StatementId::BaileyPlus,
            "BAILEY-" => StatementId::BaileyMinus,
            "PAIRING" => StatementId::Pairing,
            "B2" => StatementId::Padic(PadicStatement::B2),
            "E2" => StatementId::Padic(PadicStatement::E2),
            "F2" => StatementId::Padic(PadicStatement::F2),
            "HE" => StatementId::Padic(PadicStatement::He),
            "SW-1/2" => StatementId::Padic(PadicStatement::Swisher(SwisherA::Half)),
            "SW-1/3" => StatementId::Padic(PadicStatement::Swisher(SwisherA::Third)),
            "SW-1/4" => StatementId::Padic(PadicStatement::Swisher(SwisherA::Quarter)),
            other => {
                let bad = || Error::Usage(format!("unknown statement id {s:?}"));
                if let Some(d) = other.strip_prefix("EQ7-") {
                    StatementId::Padic(PadicStatement::Eq7(d.parse().map_err(|_| bad())?))
                } else if let Some(i) = other.strip_prefix("COR3-") {
                    let i: u8 = i.parse().map_err(|_| bad())?;
                    if !(1..=4).contains(&i) {
                        return Err(bad());
                    }
                    StatementId::Padic(PadicStatement::Cor3(i))
                } else if let Some(i) = other.strip_prefix("COR4-") {
                    let i: u8 = i.parse().map_err(|_| bad())?;
                    if !(1..=4).contains(&i) {
                        return Err(bad());
                    }
                    StatementId::Padic(PadicStatement::Cor4(i))
                } else {
                    return Err(bad());
                }
            }
        };
        Ok(id)
    }
}

/// A displayed q-congruence: `lhs = prefactor * rhs_sum (mod modulus)`.
#[derive(Debug, Clone)]
pub struct QStatement {
    pub lhs: SumTemplate,
    pub prefactor: RationalFunction,
    pub rhs_sum: SumTemplate,
    pub modulus: Modulus,
}

impl QStatement {
    pub fn sides(&self) -> Result<(RationalFunction, RationalFunction)> {
        let lhs = self.lhs.evaluate()?;
        let rhs = &self.prefactor * &self.rhs_sum.evaluate()?;
        Ok((lhs, rhs))
    }

    /// Copies with one summand exponent raised by one, over every exponent
    /// in both sums.
    pub fn corruptions(&self) -> Vec<(String, QStatement)> {
        let mut out = Vec::new();
        for (side, template) in [("lhs", &self.lhs), ("rhs", &self.rhs_sum)] {
            let mut push = |what: String, summand: Summand| {
                let mut c = self.clone();
                let t = SumTemplate {
                    upper: template.upper,
                    summand,
                };
                if side == "lhs" {
                    c.lhs = t;
                } else {
                    c.rhs_sum = t;
                }
                out.push((format!("{side}: {what}"), c));
            };
            for i in 0..template.summand.numer.len() {
                let mut s = template.summand.clone();
                s.numer[i].q_exp += 1;
                push(format!("numerator factor {i}"), s);
            }
            for i in 0..template.summand.denom.len() {
                let mut s = template.summand.clone();
                s.denom[i].q_exp += 1;
                push(format!("denominator factor {i}"), s);
            }
            for (i, name) in ["k^2", "k"].iter().enumerate() {
                if template.summand.q_exponent[i] != 0 || i == 1 {
                    let mut s = template.summand.clone();
                    s.q_exponent[i] += 1;
                    push(format!("q-power coefficient of {name}"), s);
                }
            }
        }
        out
    }
}

/// `(-1)^{(n-1)/2} [n]_{q^2} q^{(n-1)^2/2}`, the prefactor of the `d = 2`
/// displays.
fn half_prefactor(n: i64) -> RationalFunction {
    let p = q_integer(n, 2).shift((n - 1) * (n - 1) / 2);
    if ((n - 1) / 2) % 2 == 1 {
        -&p
    } else {
        p
    }
}

fn literal(upper: i64, alternating: bool, ratio: Option<(i64, i64)>, numer: Vec<PochFactor>, denom: Vec<PochFactor>, exp: [i64; 3]) -> SumTemplate {
    SumTemplate {
        upper: upper as u32,
        summand: Summand {
            alternating,
            shifted_ratio: ratio,
            numer,
            denom,
            q_exponent: exp,
        },
    }
}

fn odd_n(n: i64) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Hypothesis::Parity { n }.into());
    }
    Ok(())
}

/// The family statements at a validated case.
pub fn theorem_statement(family: Family, case: &QCase) -> Result<QStatement> {
    Ok(QStatement {
        lhs: lhs_template(family, case),
        prefactor: closed_prefactor(case)?,
        rhs_sum: rhs_sum_template(family, case),
        modulus: theorem_modulus(case.n())?,
    })
}

/// The `d = 2` displays, transcribed term by term.
pub fn guo_statement(id: StatementId, n: i64) -> Result<QStatement> {
    odd_n(n)?;
    let q = PochFactor::q;
    let half = (n - 1) / 2;
    let st = match id {
        StatementId::G8 => QStatement {
            lhs: literal(half, true, Some((4, 1)), vec![q(2, 4, 3)], vec![q(4, 4, 3)], [2, 2, 0]),
            prefactor: half_prefactor(n),
            rhs_sum: literal(half, false, None, vec![q(2, 4, 3)], vec![q(4, 4, 1), q(3, 4, 1), q(5, 4, 1)], [0, 2, 0]),
            modulus: theorem_modulus(n)?,
        },
        StatementId::G13 => QStatement {
            lhs: literal(half + 1, true, Some((4, -1)), vec![q(-2, 4, 3)], vec![q(4, 4, 3)], [2, 6, 0]),
            prefactor: half_prefactor(n),
            rhs_sum: literal(
                half + 1,
                false,
                None,
                vec![q(-2, 4, 2), q(2, 4, 1)],
                vec![q(4, 4, 1), q(1, 4, 1), q(3, 4, 1)],
                [0, 6, 0],
            ),
            modulus: theorem_modulus(n)?,
        },
        // 1/[4k+1] = (q; q^4)_k / (q^5; q^4)_k
        StatementId::E3 => QStatement {
            lhs: literal(half, true, Some((4, 1)), vec![q(2, 4, 2)], vec![q(4, 4, 2)], [2, 1, 0]),
            prefactor: half_prefactor(n),
            rhs_sum: literal(half, false, None, vec![q(2, 4, 1), q(1, 4, 1)], vec![q(4, 4, 1), q(5, 4, 1)], [0, 2, 0]),
            modulus: e3e4_modulus(n)?,
        },
        StatementId::E4 => QStatement {
            lhs: literal(half + 1, true, Some((4, -1)), vec![q(-2, 4, 2)], vec![q(4, 4, 2)], [2, 3, 0]),
            prefactor: half_prefactor(n),
            rhs_sum: literal(half + 1, false, None, vec![q(-2, 4, 1), q(-1, 4, 1)], vec![q(4, 4, 1), q(3, 4, 1)], [0, 6, 0]),
            modulus: e3e4_modulus(n)?,
        },
        other => return Err(Error::Usage(format!("{other} is not a d = 2 display"))),
    };
    Ok(st)
}
