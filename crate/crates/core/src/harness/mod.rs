//! Statement registry, case enumeration, sweeps and reports.

mod registry;
mod report;
mod selftest;

pub use registry::{guo_statement, theorem_statement, QStatement, StatementId};
pub use report::{emit_report, Format, Report, Skipped, Summary, SCHEMA_VERSION};
pub use selftest::{selftest, SelftestItem};

use crate::congruence::{check_congruent, CongruenceVerdict, FactorMultiplicity};
use crate::error::{Error, Hypothesis, Result};
use crate::microscope::{verify_bailey_instance, verify_lemma21, verify_parametric, verify_term_pairing};
use crate::padic::{self, Outcome};
use crate::qseries::{Family, QCase};
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Parameters of one case; unused fields stay `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e: Option<u32>,
}

impl Params {
    pub fn ndr(n: i64, d: i64, r: i64) -> Self {
        Self {
            n: Some(n),
            d: Some(d),
            r: Some(r),
            ..Self::default()
        }
    }

    pub fn prime(p: u64, e: Option<u32>) -> Self {
        Self {
            p: Some(p),
            e,
            ..Self::default()
        }
    }

    fn need<T: Copy>(v: Option<T>, name: &str, id: StatementId) -> Result<T> {
        v.ok_or_else(|| Error::Usage(format!("{id} requires --{name}")))
    }
}

impl std::fmt::Display for Params {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (name, v) in [("n", self.n), ("d", self.d), ("r", self.r), ("s", self.s)] {
            if let Some(v) = v {
                parts.push(format!("{name}={v}"));
            }
        }
        if let Some(p) = self.p {
            parts.push(format!("p={p}"));
        }
        if let Some(e) = self.e {
            parts.push(format!("e={e}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// One checked case.
#[derive(Debug, Clone, Serialize)]
pub struct CaseRecord {
    pub statement: StatementId,
    pub parameters: Params,
    pub outcome: Outcome,
    /// Residue witness; empty when the statement held.
    pub residue: String,
    pub multiplicities: Vec<FactorMultiplicity>,
    pub detail: Option<String>,
    pub wall_time_ms: f64,
}

fn outcome_of(v: &CongruenceVerdict) -> Outcome {
    if !v.coprimality_ok {
        Outcome::Inapplicable
    } else if v.holds {
        Outcome::Held
    } else {
        Outcome::Failed
    }
}

struct Partial {
    outcome: Outcome,
    residue: String,
    multiplicities: Vec<FactorMultiplicity>,
    detail: Option<String>,
}

impl Partial {
    fn from_verdict(v: CongruenceVerdict) -> Self {
        Self {
            outcome: outcome_of(&v),
            residue: if v.residue.is_zero() { String::new() } else { v.residue.to_string() },
            detail: v.offending_gcd.map(|g| format!("denominator shares {g} with the modulus")),
            multiplicities: v.max_multiplicity,
        }
    }

    fn from_flags(flags: &[(&str, bool)]) -> Self {
        let failing: Vec<&str> = flags.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
        Self {
            outcome: if failing.is_empty() { Outcome::Held } else { Outcome::Failed },
            residue: String::new(),
            multiplicities: Vec::new(),
            detail: (!failing.is_empty()).then(|| format!("failed: {}", failing.join(", "))),
        }
    }
}

/// The case a q-statement is checked at.
pub fn q_case(id: StatementId, params: &Params) -> Result<QCase> {
    let n = Params::need(params.n, "n", id)?;
    let case = match id {
        StatementId::T3 | StatementId::T4 => {
            let m = if id == StatementId::T3 { 3 } else { 4 };
            let s = Params::need(params.s.or(params.r), "s", id)?;
            QCase::with_sign(n, m, s)?
        }
        StatementId::G8 | StatementId::E3 => QCase::new(n, 2, 1)?,
        StatementId::G13 | StatementId::E4 => QCase::new(n, 2, -1)?,
        _ => QCase::new(n, Params::need(params.d, "d", id)?, Params::need(params.r, "r", id)?)?,
    };
    Ok(case)
}

fn run_inner(id: StatementId, params: &Params) -> Result<Partial> {
    match id {
        StatementId::T1 | StatementId::T2 | StatementId::T3 | StatementId::T4 => {
            let case = q_case(id, params)?;
            let family = if id == StatementId::T2 { Family::Theorem2 } else { Family::Theorem1 };
            let st = theorem_statement(family, &case)?;
            if case.n() < 3 {
                return Err(Error::InvalidModulus(case.n()));
            }
            let (l, r) = st.sides()?;
            Ok(Partial::from_verdict(check_congruent(&l, &r, &st.modulus)?))
        }
        StatementId::G8 | StatementId::G13 | StatementId::E3 | StatementId::E4 => {
            let n = Params::need(params.n, "n", id)?;
            let st = guo_statement(id, n)?;
            let (l, r) = st.sides()?;
            Ok(Partial::from_verdict(check_congruent(&l, &r, &st.modulus)?))
        }
        StatementId::L21 => {
            let n = Params::need(params.n, "n", id)?;
            let d = Params::need(params.d, "d", id)?;
            let r = Params::need(params.r, "r", id)?;
            if n < 1 || d < 1 {
                return Err(Hypothesis::Positivity { n, d }.into());
            }
            crate::qseries::check_residue_range(n, d, r)?;
            let upper = ((n - r) / d) as u32;
            let mut flags = Vec::new();
            for k in 0..=upper {
                flags.push((k, verify_lemma21(n, d, r, k)?));
            }
            let names: Vec<String> = flags.iter().map(|(k, _)| format!("k={k}")).collect();
            let pairs: Vec<(&str, bool)> = names.iter().zip(&flags).map(|(n, (_, ok))| (n.as_str(), *ok)).collect();
            Ok(Partial::from_flags(&pairs))
        }
        StatementId::L22 | StatementId::Eq1P => {
            let case = q_case(id, params)?;
            let family = if id == StatementId::L22 { Family::Theorem1 } else { Family::Theorem2 };
            Ok(Partial::from_verdict(verify_parametric(&case, family)?))
        }
        StatementId::BaileyPlus | StatementId::BaileyMinus => {
            let case = q_case(id, params)?;
            let sign = if id == StatementId::BaileyPlus { 1 } else { -1 };
            let a = verify_bailey_instance(&case, sign, Family::Theorem1)?;
            let b = verify_bailey_instance(&case, sign, Family::Theorem2)?;
            Ok(Partial::from_flags(&[("theorem1", a), ("theorem2", b)]))
        }
        StatementId::Pairing => {
            let case = q_case(id, params)?;
            let a = verify_term_pairing(&case, Family::Theorem1)?;
            let b = verify_term_pairing(&case, Family::Theorem2)?;
            Ok(Partial::from_flags(&[("theorem1", a), ("theorem2", b)]))
        }
        StatementId::Padic(st) => {
            let p = Params::need(params.p, "p", id)?;
            let v = padic::check(st, p, params.e)?;
            Ok(Partial {
                outcome: v.outcome,
                residue: match (v.outcome, v.residue) {
                    (Outcome::Failed, Some(r)) => r.to_string(),
                    (Outcome::Failed, None) => format!("v_p = {:?}", v.difference_valuation),
                    _ => String::new(),
                },
                multiplicities: Vec::new(),
                detail: v.reason,
            })
        }
    }
}

/// Check one statement at one parameter set.
pub fn run(id: StatementId, params: &Params) -> Result<CaseRecord> {
    let start = Instant::now();
    let partial = run_inner(id, params)?;
    Ok(CaseRecord {
        statement: id,
        parameters: *params,
        outcome: partial.outcome,
        residue: partial.residue,
        multiplicities: partial.multiplicities,
        detail: partial.detail,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

/// What to sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub statement: StatementId,
    pub n_min: i64,
    pub n_max: i64,
    pub d_list: Vec<i64>,
    /// `None` sweeps every admissible `r` (or both signs `s`).
    pub r_list: Option<Vec<i64>>,
    pub p_max: u64,
    pub e: Option<u32>,
    pub jobs: usize,
}

impl SweepSpec {
    pub fn new(statement: StatementId, n_max: i64) -> Self {
        Self {
            statement,
            n_min: 3,
            n_max,
            d_list: vec![2, 3, 4, 5, 6],
            r_list: None,
            p_max: 47,
            e: None,
            jobs: 0,
        }
    }
}

fn odd_range(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    let lo = if lo % 2 == 0 { lo + 1 } else { lo };
    (lo..=hi).step_by(2)
}

/// Cases of a sweep in lexicographic order, and the skipped grid points
/// with the violated hypothesis.
pub fn enumerate_cases(spec: &SweepSpec) -> (Vec<Params>, Vec<Skipped>) {
    let mut cases = Vec::new();
    let mut skipped = Vec::new();
    let mut skip = |params: Params, h: Hypothesis| {
        log::info!("skipping {} at {params}: {h}", spec.statement);
        skipped.push(Skipped {
            parameters: params,
            reason: h.to_string(),
        });
    };
    match spec.statement {
        StatementId::Padic(_) => {
            for p in (3..=spec.p_max).filter(|p| padic::is_prime(*p)) {
                cases.push(Params::prime(p, spec.e));
            }
        }
        StatementId::G8 | StatementId::G13 | StatementId::E3 | StatementId::E4 => {
            cases.extend(odd_range(spec.n_min.max(3), spec.n_max).map(|n| Params {
                n: Some(n),
                ..Params::default()
            }));
        }
        StatementId::T3 | StatementId::T4 => {
            let m = if spec.statement == StatementId::T3 { 3 } else { 4 };
            let signs = spec.r_list.clone().unwrap_or_else(|| vec![-1, 1]);
            for n in odd_range(spec.n_min.max(3), spec.n_max) {
                for &s in &signs {
                    let params = Params {
                        n: Some(n),
                        s: Some(s),
                        ..Params::default()
                    };
                    match QCase::with_sign(n, m, s) {
                        Ok(_) => cases.push(params),
                        Err(h) => skip(params, h),
                    }
                }
            }
        }
        _ => {
            let mut d_list = spec.d_list.clone();
            d_list.sort_unstable();
            d_list.dedup();
            for n in odd_range(spec.n_min.max(3), spec.n_max) {
                for &d in &d_list {
                    if d < 1 {
                        skip(Params::ndr(n, d, 0), Hypothesis::Positivity { n, d });
                        continue;
                    }
                    if n.gcd(&d) != 1 {
                        let mut p = Params::ndr(n, d, 0);
                        p.r = None;
                        skip(p, Hypothesis::Gcd { n, d });
                        continue;
                    }
                    let lo = n - d * n + d;
                    let rs: Vec<i64> = match &spec.r_list {
                        Some(list) => {
                            let mut l = list.clone();
                            l.sort_unstable();
                            l.dedup();
                            l
                        }
                        None => (lo..=n).filter(|r| (n - r).rem_euclid(d) == 0).collect(),
                    };
                    for r in rs {
                        match QCase::new(n, d, r) {
                            Ok(_) => cases.push(Params::ndr(n, d, r)),
                            Err(h) => skip(Params::ndr(n, d, r), h),
                        }
                    }
                }
            }
        }
    }
    (cases, skipped)
}

/// Run a sweep on a pool of `spec.jobs` workers (all cores when zero).
/// Records come back in enumeration order.
pub fn sweep(spec: &SweepSpec) -> Result<Report> {
    let (cases, skipped) = enumerate_cases(spec);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| Error::Usage(e.to_string()))?;
    let records = pool.install(|| {
        cases
            .par_iter()
            .map(|p| run(spec.statement, p))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(Report::new(spec.statement, records, skipped))
}

/// Serial variant of [`sweep`].
pub fn sweep_serial(spec: &SweepSpec) -> Result<Report> {
    let (cases, skipped) = enumerate_cases(spec);
    let records = cases.iter().map(|p| run(spec.statement, p)).collect::<Result<Vec<_>>>()?;
    Ok(Report::new(spec.statement, records, skipped))
}
