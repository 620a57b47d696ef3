//! Per-row consistency checks shared by `scan` and `verify`.

use serde::Serialize;

use crate::closed_forms::EqualityCertificate;
use crate::oracle::Family;

use super::cell::{OracleValue, ParamResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// A proven statement: pass or fail.
    Theorem,
    /// An open prediction: consistent or refuted, never proven.
    Conjecture,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
    Consistent,
    Refuted,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
            Verdict::Consistent => "consistent",
            Verdict::Refuted => "refuted",
        }
    }

    pub fn is_problem(self) -> bool {
        matches!(self, Verdict::Fail | Verdict::Refuted)
    }
}

pub const CAUCHY_DAVENPORT: &str = "cauchy-davenport";
pub const PLAIN_MINIMUM: &str = "plain-minimum";
pub const SIGNED_BOUNDS: &str = "signed-bounds";
pub const CYCLIC_EQUALITY: &str = "cyclic-equality";
pub const FAMILY_REDUCTION: &str = "family-reduction";
pub const SMALL_PRIME_EQUALITY: &str = "small-prime-equality";
pub const POWER_SPLIT_EQUALITY: &str = "power-split-equality";
pub const DIGIT_MINIMIZERS: &str = "digit-minimizers";
pub const ZP2_CLASSIFICATION: &str = "zp2-classification";
pub const ZP2_GAP_COUNT: &str = "zp2-gap-count";
pub const DIVISOR_PREDICTION: &str = "divisor-prediction";
pub const STRICT_GAP: &str = "strict-gap";
pub const ZP2_TABLE: &str = "zp2-table";
pub const PROBE_LOWER: &str = "probe-lower";
pub const PROBE_PREDICTION: &str = "probe-prediction";

pub fn kind_of(check: &str) -> CheckKind {
    match check {
        DIVISOR_PREDICTION | STRICT_GAP | ZP2_TABLE => CheckKind::Conjecture,
        _ => CheckKind::Theorem,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: &'static str,
    pub verdict: Verdict,
    pub detail: String,
}

impl CheckOutcome {
    pub fn new(check: &'static str, holds: bool, detail: String) -> Self {
        let verdict = match (kind_of(check), holds) {
            (CheckKind::Theorem, true) => Verdict::Pass,
            (CheckKind::Theorem, false) => Verdict::Fail,
            (CheckKind::Conjecture, true) => Verdict::Consistent,
            (CheckKind::Conjecture, false) => Verdict::Refuted,
        };
        CheckOutcome {
            check,
            verdict,
            detail,
        }
    }

    pub fn skip(check: &'static str, detail: String) -> Self {
        CheckOutcome {
            check,
            verdict: Verdict::Skip,
            detail,
        }
    }
}

/// Compares one oracle slot against a predicate, skipping when the oracle
/// ran out of budget and staying silent when it did not run.
fn against(
    out: &mut Vec<CheckOutcome>,
    check: &'static str,
    slot: OracleValue,
    holds: impl FnOnce(u64) -> bool,
    detail: impl FnOnce(u64) -> String,
) {
    match slot {
        OracleValue::Value(v) => out.push(CheckOutcome::new(check, holds(v), detail(v))),
        OracleValue::Skipped => {
            out.push(CheckOutcome::skip(check, "oracle skipped (budget)".into()))
        }
        OracleValue::NotRun | OracleValue::Infeasible => {}
    }
}

/// Every check that applies to a row.
pub fn row_checks(row: &ParamResult, cyclic: bool) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let u = row.rho_formula;
    against(
        &mut out,
        PLAIN_MINIMUM,
        row.rho_oracle,
        |v| v == u,
        |v| format!("oracle {v}, formula {u}"),
    );

    // Restricted families only give upper bounds on the signed minimum.
    let pm = if matches!(row.family, Family::AFamily | Family::AllSets) {
        row.rho_pm_oracle
    } else {
        OracleValue::NotRun
    };
    let u_pm = row.u_pm;
    against(
        &mut out,
        SIGNED_BOUNDS,
        pm,
        |v| u <= v && v <= u_pm,
        |v| format!("signed oracle {v}, expected within [{u}, {u_pm}]"),
    );
    if cyclic {
        against(
            &mut out,
            CYCLIC_EQUALITY,
            pm,
            |v| v == u,
            |v| format!("signed {v}, plain {u}"),
        );
    }
    if let (OracleValue::Value(a), OracleValue::Value(b)) = (row.rho_pm_all_sets, pm) {
        out.push(CheckOutcome::new(
            FAMILY_REDUCTION,
            a == b,
            format!("all sets {a}, families {b}"),
        ));
    } else if row.rho_pm_all_sets != OracleValue::NotRun && pm != OracleValue::NotRun {
        out.push(CheckOutcome::skip(
            FAMILY_REDUCTION,
            "oracle skipped (budget)".into(),
        ));
    }
    match row.classification.certificate {
        Some(c) if c == EqualityCertificate::PrimeAtMostFold.label() => against(
            &mut out,
            SMALL_PRIME_EQUALITY,
            pm,
            |v| v == u,
            |v| format!("signed {v}, plain {u}"),
        ),
        Some(c) if c == EqualityCertificate::PowerSplitBound.label() => against(
            &mut out,
            POWER_SPLIT_EQUALITY,
            pm,
            |v| v == u,
            |v| format!("signed {v}, plain {u}"),
        ),
        Some(c) if c == EqualityCertificate::Unknown.label() => against(
            &mut out,
            STRICT_GAP,
            pm,
            |v| v > u,
            |v| format!("signed {v}, plain {u}"),
        ),
        _ => {}
    }
    if let Some(equal) = row.classification.zp2_equal {
        let expect = if equal { "equal" } else { "unequal" };
        against(
            &mut out,
            ZP2_CLASSIFICATION,
            pm,
            |v| (v == u) == equal,
            |v| format!("signed {v}, plain {u}, classified {expect}"),
        );
    }
    let conj = row.conjecture_value;
    against(
        &mut out,
        DIVISOR_PREDICTION,
        pm,
        |v| v == conj,
        |v| format!("signed {v}, predicted {conj}"),
    );
    if let Some(pred) = row.zp2_prediction {
        against(
            &mut out,
            ZP2_TABLE,
            pm,
            |v| v == pred,
            |v| format!("signed {v}, tabulated {pred}"),
        );
    }
    if let Some(probe) = row.probe_upper_bound {
        out.push(CheckOutcome::new(
            PROBE_LOWER,
            u <= probe,
            format!("sampled {probe}, plain minimum {u}"),
        ));
        let target = row.zp2_prediction.unwrap_or(conj);
        out.push(CheckOutcome::new(
            PROBE_PREDICTION,
            probe <= target,
            format!("sampled {probe}, predicted {target}"),
        ));
    }
    out
}
