//! Checker registry for `verify` and the grid driver for `scan`.

use std::fmt;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::closed_forms::{
    coset_progression_size, equality_certificate, min_sumset_size, DigitProfile,
    EqualityCertificate,
};
use crate::error::{param, Result};
use crate::group::{admissible_divisors, is_prime, GroupSpec};
use crate::oracle::Family;
use crate::set::ElementSet;
use crate::sumset::set_add;

use super::cell::{CellRunner, OracleValue, ParamResult};
use super::checks::*;
use super::report::ReportWriter;

/// The fixed registry of verification targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "cli", derive(clap::ValueEnum))]
pub enum VerifyId {
    /// `|A + B| ≥ min(p, |A| + |B| - 1)` in `Z_p` on random pairs.
    CauchyDavenport,
    /// Exact minimum `|hA|` equals the divisor formula, all groups.
    PlainMinimum,
    /// Signed and plain minima agree on cyclic groups.
    CyclicEquality,
    /// Restricting to the three structural families loses nothing.
    FamilyReduction,
    /// Signed and plain minima agree on `Z_p^r` when `p ≤ h`.
    SmallPrimeEquality,
    /// Signed and plain minima agree on `Z_p^r` when `m ≤ (c+1)p^k`.
    PowerSplitEquality,
    /// Digit descriptions of the divisor minimizers, formulas only.
    DigitMinimizers,
    /// Exact equality pattern on `Z_p^2` for `h = 2`.
    Zp2Classification,
    /// Signed minimum equals the divisor prediction (open).
    DivisorPrediction,
    /// Signed minimum strictly exceeds the plain one outside the
    /// power-split range (open).
    StrictGap,
    /// Signed minimum on `Z_p^2`, `h = 2` equals the tabulated value (open).
    Zp2Table,
}

impl VerifyId {
    pub const ALL: [VerifyId; 11] = [
        VerifyId::CauchyDavenport,
        VerifyId::PlainMinimum,
        VerifyId::CyclicEquality,
        VerifyId::FamilyReduction,
        VerifyId::SmallPrimeEquality,
        VerifyId::PowerSplitEquality,
        VerifyId::DigitMinimizers,
        VerifyId::Zp2Classification,
        VerifyId::DivisorPrediction,
        VerifyId::StrictGap,
        VerifyId::Zp2Table,
    ];

    pub fn label(self) -> &'static str {
        match self {
            VerifyId::CauchyDavenport => CAUCHY_DAVENPORT,
            VerifyId::PlainMinimum => PLAIN_MINIMUM,
            VerifyId::CyclicEquality => CYCLIC_EQUALITY,
            VerifyId::FamilyReduction => FAMILY_REDUCTION,
            VerifyId::SmallPrimeEquality => SMALL_PRIME_EQUALITY,
            VerifyId::PowerSplitEquality => POWER_SPLIT_EQUALITY,
            VerifyId::DigitMinimizers => DIGIT_MINIMIZERS,
            VerifyId::Zp2Classification => ZP2_CLASSIFICATION,
            VerifyId::DivisorPrediction => DIVISOR_PREDICTION,
            VerifyId::StrictGap => STRICT_GAP,
            VerifyId::Zp2Table => ZP2_TABLE,
        }
    }

    pub fn from_label(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.label() == s)
            .ok_or_else(|| param(format!("unknown verification target {s:?}")))
    }
}

impl fmt::Display for VerifyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Grid flags for `verify`. Unset fields take per-target defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyParams {
    pub primes: Vec<u64>,
    pub rank: Option<u32>,
    pub n_max: Option<usize>,
    pub h_max: Option<u64>,
    pub m: Option<(u64, u64)>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub groups: Vec<GroupSpec>,
}

impl VerifyParams {
    fn primes_or(&self, default: &[u64]) -> Result<Vec<u64>> {
        let ps = if self.primes.is_empty() {
            default.to_vec()
        } else {
            self.primes.clone()
        };
        for &p in &ps {
            if !is_prime(p) {
                return Err(param(format!("{p} is not prime")));
            }
        }
        Ok(ps)
    }

    fn odd_primes_or(&self, default: &[u64]) -> Result<Vec<u64>> {
        let ps = self.primes_or(default)?;
        if let Some(&p) = ps.iter().find(|&&p| p == 2) {
            return Err(param(format!("this target needs odd primes, got {p}")));
        }
        Ok(ps)
    }

    fn m_range(&self, n: u64) -> impl Iterator<Item = u64> {
        let (lo, hi) = self.m.unwrap_or((1, n));
        lo.max(1)..=hi.min(n)
    }
}

/// Inclusive `a..b` or a single integer; `b < a` is an empty range.
pub fn parse_range(s: &str) -> Result<(u64, u64)> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| param(format!("bad range {s:?}: expected a..b or an integer")))
    };
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)),
        None => {
            let v = num(s)?;
            Ok((v, v))
        }
    }
}

/// Comma-separated group literals; `order:N` expands to every abelian group
/// of order `N`.
pub fn parse_group_pattern(s: &str) -> Result<Vec<GroupSpec>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if let Some(n) = part.strip_prefix("order:") {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| param(format!("bad order in {part:?}")))?;
            out.extend(GroupSpec::all_of_order(n)?);
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(param("empty group pattern"));
    }
    Ok(out)
}

fn cell_of(row: &ParamResult) -> (String, u64, u64) {
    (row.group.clone(), row.m, row.h)
}

/// Evaluates one cell, writes the row and tallies the selected checks.
fn run_cell(
    runner: &mut CellRunner<'_>,
    out: &mut ReportWriter,
    g: &GroupSpec,
    m: u64,
    h: u64,
    wanted: Option<&[&str]>,
) -> Result<ParamResult> {
    let row = runner.evaluate(g, m, h)?;
    out.row(&row)?;
    let (group, m, h) = cell_of(&row);
    for outcome in row_checks(&row, g.is_cyclic()) {
        if wanted.is_none_or(|w| w.contains(&outcome.check)) {
            out.record(&outcome, Some((&group, m, h)))?;
        }
    }
    Ok(row)
}

/// Every group of order `2..=n_max`.
fn groups_up_to(n_max: usize) -> Result<Vec<GroupSpec>> {
    let mut out = Vec::new();
    for n in 2..=n_max {
        out.extend(GroupSpec::all_of_order(n)?);
    }
    Ok(out)
}

/// Grid for `scan`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanParams {
    pub groups: Vec<GroupSpec>,
    /// `None` means `1..=n` for each group; clipped to `n` otherwise.
    pub m: Option<(u64, u64)>,
    pub h: (u64, u64),
}

/// One row per `(group, h, m)` cell, in that nesting order, with every
/// applicable check tallied.
pub fn run_scan(
    params: &ScanParams,
    runner: &mut CellRunner<'_>,
    out: &mut ReportWriter,
) -> Result<()> {
    for g in &params.groups {
        let n = g.order() as u64;
        let (mlo, mhi) = params.m.unwrap_or((1, n));
        for h in params.h.0..=params.h.1 {
            for m in mlo.max(1)..=mhi.min(n) {
                run_cell(runner, out, g, m, h, None)?;
            }
        }
    }
    Ok(())
}

pub fn run_verify(
    id: VerifyId,
    params: &VerifyParams,
    runner: &mut CellRunner<'_>,
    out: &mut ReportWriter,
) -> Result<()> {
    let cfg = &mut runner.config;
    cfg.family = Family::AFamily;
    cfg.rho = false;
    cfg.rho_pm = true;
    cfg.all_sets = false;
    cfg.probe_trials = None;
    cfg.seed = params.seed;
    match id {
        VerifyId::CauchyDavenport => {
            let primes = params.primes_or(&[3, 5, 7, 11, 13])?;
            cauchy_davenport(&primes, params.trials.unwrap_or(10_000), params.seed, out)
        }
        VerifyId::PlainMinimum => {
            runner.config.rho = true;
            runner.config.rho_pm = false;
            let h_max = params.h_max.unwrap_or(4);
            let groups = if params.groups.is_empty() {
                groups_up_to(params.n_max.unwrap_or(16))?
            } else {
                params.groups.clone()
            };
            for g in &groups {
                for h in 1..=h_max {
                    for m in params.m_range(g.order() as u64) {
                        run_cell(runner, out, g, m, h, Some(&[PLAIN_MINIMUM]))?;
                    }
                }
            }
            Ok(())
        }
        VerifyId::CyclicEquality => {
            let h_max = params.h_max.unwrap_or(4);
            for n in 2..=params.n_max.unwrap_or(24) {
                let g = GroupSpec::cyclic(n)?;
                for h in 2..=h_max {
                    for m in params.m_range(n as u64) {
                        run_cell(runner, out, &g, m, h, Some(&[CYCLIC_EQUALITY]))?;
                    }
                }
            }
            Ok(())
        }
        VerifyId::FamilyReduction => {
            runner.config.all_sets = true;
            let h_max = params.h_max.unwrap_or(3);
            let groups = if params.groups.is_empty() {
                groups_up_to(params.n_max.unwrap_or(12))?
            } else {
                params.groups.clone()
            };
            for g in &groups {
                for h in 2..=h_max {
                    for m in params.m_range(g.order() as u64) {
                        run_cell(runner, out, g, m, h, Some(&[FAMILY_REDUCTION]))?;
                    }
                }
            }
            Ok(())
        }
        VerifyId::SmallPrimeEquality => {
            let r = params.rank.unwrap_or(2).max(2);
            for p in params.odd_primes_or(&[3])? {
                let g = GroupSpec::elementary(p as usize, r as usize)?;
                for h in p..=params.h_max.unwrap_or(p + 1).max(p) {
                    for m in params.m_range(g.order() as u64) {
                        run_cell(runner, out, &g, m, h, Some(&[SMALL_PRIME_EQUALITY]))?;
                    }
                }
            }
            Ok(())
        }
        VerifyId::PowerSplitEquality | VerifyId::StrictGap => {
            let (target, check) = match id {
                VerifyId::PowerSplitEquality => {
                    (EqualityCertificate::PowerSplitBound, POWER_SPLIT_EQUALITY)
                }
                _ => (EqualityCertificate::Unknown, STRICT_GAP),
            };
            let r = params.rank.unwrap_or(2).max(2);
            for p in params.odd_primes_or(&[5])? {
                let g = GroupSpec::elementary(p as usize, r as usize)?;
                let h_max = params.h_max.unwrap_or(p - 1).min(p - 1);
                for h in 2..=h_max {
                    for m in params.m_range(g.order() as u64) {
                        if equality_certificate(&g, m, h)? == target {
                            run_cell(runner, out, &g, m, h, Some(&[check]))?;
                        }
                    }
                }
            }
            Ok(())
        }
        VerifyId::DigitMinimizers => {
            let p_max = params.primes.iter().copied().max().unwrap_or(31);
            let suite = DigitSuite {
                p_max,
                r_max: params.rank.unwrap_or(4),
                h_max: params.h_max.unwrap_or(6),
                m_max: params.m.map_or(2000, |(_, hi)| hi),
            };
            digit_minimizer_checks(&suite, |outcome, cell| {
                let label = format!("p={} r={}", cell.0, cell.1);
                out.record(outcome, Some((&label, cell.2, cell.3)))
            })
        }
        VerifyId::Zp2Classification => {
            runner.config.rho = true;
            for p in params.odd_primes_or(&[3])? {
                let g = GroupSpec::elementary(p as usize, 2)?;
                let rows = (1..=p * p)
                    .filter(|m| params.m_range(p * p).any(|x| x == *m))
                    .map(|m| run_cell(runner, out, &g, m, 2, Some(&[ZP2_CLASSIFICATION])))
                    .collect::<Result<Vec<_>>>()?;
                gap_count(p, &rows, out)?;
            }
            Ok(())
        }
        VerifyId::DivisorPrediction => {
            let h_max = params.h_max.unwrap_or(3);
            let groups = if params.groups.is_empty() {
                groups_up_to(params.n_max.unwrap_or(12))?
            } else {
                params.groups.clone()
            };
            for g in &groups {
                for h in 2..=h_max {
                    for m in params.m_range(g.order() as u64) {
                        run_cell(runner, out, g, m, h, Some(&[DIVISOR_PREDICTION]))?;
                    }
                }
            }
            Ok(())
        }
        VerifyId::Zp2Table => {
            runner.config.probe_trials = Some(params.trials.unwrap_or(2000));
            for p in params.odd_primes_or(&[3])? {
                let g = GroupSpec::elementary(p as usize, 2)?;
                for m in params.m_range(p * p) {
                    run_cell(
                        runner,
                        out,
                        &g,
                        m,
                        2,
                        Some(&[ZP2_TABLE, ZP2_CLASSIFICATION, PROBE_LOWER, PROBE_PREDICTION]),
                    )?;
                }
            }
            Ok(())
        }
    }
}

/// On `Z_p^2` with `h = 2` the minima differ for exactly `(p-1)^2/4`
/// values of `m`.
fn gap_count(p: u64, rows: &[ParamResult], out: &mut ReportWriter) -> Result<()> {
    let group = format!("Z{p}xZ{p}");
    let cell = Some((group.as_str(), 0, 2));
    let full = rows.len() as u64 == p * p;
    if !full || rows.iter().any(|r| r.rho_pm_oracle.value().is_none()) {
        let outcome = CheckOutcome::skip(ZP2_GAP_COUNT, "not every m was computed".into());
        return out.record(&outcome, cell);
    }
    let gaps: Vec<u64> = rows
        .iter()
        .filter(|r| r.rho_pm_oracle != OracleValue::Value(r.rho_formula))
        .map(|r| r.m)
        .collect();
    let expected = (p - 1) * (p - 1) / 4;
    out.record(
        &CheckOutcome::new(
            ZP2_GAP_COUNT,
            gaps.len() as u64 == expected,
            format!(
                "{} unequal values of m {gaps:?}, expected {expected}",
                gaps.len()
            ),
        ),
        cell,
    )
}

fn cauchy_davenport(primes: &[u64], trials: u64, seed: u64, out: &mut ReportWriter) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &p in primes {
        let g = GroupSpec::cyclic(p as usize)?;
        let label = g.to_string();
        for m in 1..=p {
            let u = min_sumset_size(p, m, 2)?.value;
            let expected = p.min(2 * m - 1);
            out.record(
                &CheckOutcome::new(
                    CAUCHY_DAVENPORT,
                    u == expected,
                    format!("formula {u}, min(p, 2m-1) = {expected}"),
                ),
                Some((&label, m, 2)),
            )?;
        }
        let pu = p as usize;
        for _ in 0..trials {
            let a_len = rng.gen_range(1..=pu);
            let b_len = rng.gen_range(1..=pu);
            let a = ElementSet::from_indices(&g, index::sample(&mut rng, pu, a_len))?;
            let b = ElementSet::from_indices(&g, index::sample(&mut rng, pu, b_len))?;
            let sum = set_add(&g, &a, &b).len();
            let bound = pu.min(a_len + b_len - 1);
            if sum < bound {
                out.record(
                    &CheckOutcome::new(
                        CAUCHY_DAVENPORT,
                        false,
                        format!(
                            "|A+B| = {sum} < {bound} for A = {}, B = {}",
                            a.format(&g),
                            b.format(&g)
                        ),
                    ),
                    Some((&label, a_len as u64, b_len as u64)),
                )?;
            } else {
                out.record(
                    &CheckOutcome::new(CAUCHY_DAVENPORT, true, String::new()),
                    None,
                )?;
            }
        }
    }
    Ok(())
}

/// Ranges for the formula-only digit suite over `Z_p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DigitSuite {
    pub p_max: u64,
    pub r_max: u32,
    pub h_max: u64,
    pub m_max: u64,
}

/// Compares the digit descriptions of the minimizing exponents, the
/// admissible divisors of `Z_p^r` and the coincidence criterion against
/// direct minimization, for odd `p ≤ p_max`, `1 ≤ r ≤ r_max`,
/// `2 ≤ h ≤ h_max`, `2 ≤ m ≤ min(p^r, m_max)`. `sink` receives one outcome
/// per cell and the cell as `(p, r, m, h)`.
pub fn digit_minimizer_checks(
    suite: &DigitSuite,
    mut sink: impl FnMut(&CheckOutcome, (u64, u32, u64, u64)) -> Result<()>,
) -> Result<()> {
    for p in (3..=suite.p_max).filter(|&p| is_prime(p)) {
        for r in 1..=suite.r_max {
            let Some(n) = p.checked_pow(r) else { continue };
            let g = GroupSpec::with_order_cap(vec![p as usize; r as usize], usize::MAX)?;
            for h in 2..=suite.h_max {
                for m in 2..=n.min(suite.m_max) {
                    let problems = digit_cell(&g, p, r, m, h)?;
                    let outcome = CheckOutcome::new(
                        DIGIT_MINIMIZERS,
                        problems.is_empty(),
                        problems.join("; "),
                    );
                    sink(&outcome, (p, r, m, h))?;
                }
            }
        }
    }
    Ok(())
}

fn digit_cell(g: &GroupSpec, p: u64, r: u32, m: u64, h: u64) -> Result<Vec<String>> {
    let profile = DigitProfile::new(p, r, m, h)?;
    let sizes: Vec<u64> = (0..=r)
        .map(|i| coset_progression_size(p.pow(i), m, h))
        .collect::<Result<_>>()?;
    let argmin = |exps: &[u32]| -> (u64, Vec<u32>) {
        let best = exps
            .iter()
            .map(|&i| sizes[i as usize])
            .min()
            .expect("nonempty");
        (
            best,
            exps.iter()
                .copied()
                .filter(|&i| sizes[i as usize] == best)
                .collect(),
        )
    };
    let all: Vec<u32> = (0..=r).collect();
    let (u, plain_min) = argmin(&all);

    let lead = profile.leading as u32;
    let admissible = admissible_divisors(g, m)?;
    let expected: Vec<u64> = (lead..=r).map(|i| p.pow(i)).collect();
    let exps: Vec<u32> = admissible.iter().map(|&d| d.ilog(p)).collect();
    let (u_pm, signed_min) = argmin(&exps);

    let mut problems = Vec::new();
    if admissible != expected {
        problems.push(format!(
            "admissible divisors {admissible:?}, digits give {expected:?}"
        ));
    }
    if profile.sumset_minimizers() != plain_min {
        problems.push(format!(
            "plain minimizers {plain_min:?}, digits give {:?}",
            profile.sumset_minimizers()
        ));
    }
    let digit_signed = profile.signed_minimizers()?;
    if digit_signed != signed_min {
        problems.push(format!(
            "signed minimizers {signed_min:?}, digits give {digit_signed:?}"
        ));
    }
    if profile.bounds_coincide() != (u == u_pm) {
        problems.push(format!(
            "minima {u} and {u_pm}, digit criterion says coincide = {}",
            profile.bounds_coincide()
        ));
    }
    Ok(problems)
}
