//! One evaluated parameter cell `(G, m, h)`: every closed-form value plus
//! whichever oracle values were requested.

use serde::ser::Serializer;
use serde::Serialize;

use crate::closed_forms::{
    equality_certificate, min_sumset_size, predicted_signed_minimum, signed_sumset_bound,
    zp2_equality, zp2_table_prediction, EqualityCertificate,
};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::oracle::{
    rho_oracle, rho_pm_oracle, upper_bound_probe, Family, OracleResult, SearchOptions,
};
use crate::sumset::SymmetryClass;

use super::cache::Cache;

/// An oracle slot in a report row.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleValue {
    NotRun,
    Value(u64),
    /// The search space exceeded the budget.
    Skipped,
    /// The requested family has no sets of this size.
    Infeasible,
}

impl OracleValue {
    pub fn value(self) -> Option<u64> {
        match self {
            OracleValue::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn text(self) -> String {
        match self {
            OracleValue::NotRun => "-".into(),
            OracleValue::Value(v) => v.to_string(),
            OracleValue::Skipped => "skipped(budget)".into(),
            OracleValue::Infeasible => "infeasible".into(),
        }
    }
}

impl Serialize for OracleValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            OracleValue::NotRun => s.serialize_none(),
            OracleValue::Value(v) => s.serialize_u64(*v),
            OracleValue::Skipped => s.serialize_str("skipped(budget)"),
            OracleValue::Infeasible => s.serialize_str("infeasible"),
        }
    }
}

/// Verdicts of the structural equality criteria, where they apply.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// Sufficient-condition certificate on `Z_p^r` (odd `p`, `r ≥ 2`).
    pub certificate: Option<&'static str>,
    /// Exact equality criterion on `Z_p^2` for `h = 2`.
    pub zp2_equal: Option<bool>,
}

/// Report row. Field names and order are the JSONL / CSV compatibility
/// surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamResult {
    pub group: String,
    pub m: u64,
    pub h: u64,
    /// Minimum `|hA|`, exact for every group of this order.
    pub rho_formula: u64,
    /// Signed divisor bound, an upper bound on the minimum `|h_±A|`.
    pub u_pm: u64,
    /// Predicted minimum `|h_±A|`.
    pub conjecture_value: u64,
    /// False when a proven result pins the minimum to `conjecture_value`.
    pub conjectural: bool,
    /// Tabulated prediction on `Z_p^2`, `h = 2`.
    pub zp2_prediction: Option<u64>,
    pub rho_oracle: OracleValue,
    pub rho_pm_oracle: OracleValue,
    /// Signed minimum over every `m`-subset, for cross-checking the family
    /// restriction.
    pub rho_pm_all_sets: OracleValue,
    /// Smallest `|h_±A|` seen by random sampling.
    pub probe_upper_bound: Option<u64>,
    pub family: Family,
    pub witness: Option<Vec<String>>,
    pub witness_class: Option<SymmetryClass>,
    pub classification: Classification,
    /// `rho_pm_oracle == rho_formula`, present only when both oracle
    /// values are.
    pub agrees: Option<bool>,
}

/// The closed-form part of a row.
pub fn formula_row(g: &GroupSpec, m: u64, h: u64) -> Result<ParamResult> {
    let n = g.order() as u64;
    let rho_formula = min_sumset_size(n, m, h)?.value;
    let u_pm = signed_sumset_bound(g, m, h)?.value;
    let conjecture_value = predicted_signed_minimum(g, m, h)?;
    let odd_elementary = g.elementary_prime().filter(|&p| p > 2 && g.rank() >= 2);
    let certificate = match odd_elementary {
        Some(_) => Some(equality_certificate(g, m, h)?),
        None => None,
    };
    let zp2 = odd_elementary.filter(|_| g.rank() == 2 && h == 2);
    let zp2_equal = zp2.map(|p| zp2_equality(p as u64, m)).transpose()?;
    let zp2_prediction = zp2.map(|p| zp2_table_prediction(p as u64, m)).transpose()?;
    let pinned = m == 1
        || h <= 1
        || g.is_cyclic()
        || g.elementary_prime() == Some(2)
        || certificate.is_some_and(EqualityCertificate::is_equal)
        || zp2_equal == Some(true);
    Ok(ParamResult {
        group: g.to_string(),
        m,
        h,
        rho_formula,
        u_pm,
        conjecture_value,
        conjectural: !(pinned && conjecture_value == rho_formula),
        zp2_prediction,
        rho_oracle: OracleValue::NotRun,
        rho_pm_oracle: OracleValue::NotRun,
        rho_pm_all_sets: OracleValue::NotRun,
        probe_upper_bound: None,
        family: Family::AFamily,
        witness: None,
        witness_class: None,
        classification: Classification {
            certificate: certificate.map(EqualityCertificate::label),
            zp2_equal,
        },
        agrees: None,
    })
}

/// Which oracles a cell evaluation runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub options: SearchOptions,
    pub family: Family,
    pub rho: bool,
    pub rho_pm: bool,
    pub all_sets: bool,
    /// Sample this many sets when the signed oracle is skipped.
    pub probe_trials: Option<u64>,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            options: SearchOptions::default(),
            family: Family::AFamily,
            rho: true,
            rho_pm: true,
            all_sets: false,
            probe_trials: None,
            seed: 0,
        }
    }
}

/// Evaluates cells, consulting the cache before any oracle run.
pub struct CellRunner<'c> {
    pub config: OracleConfig,
    cache: Option<&'c mut Cache>,
}

impl<'c> CellRunner<'c> {
    pub fn new(config: OracleConfig, cache: Option<&'c mut Cache>) -> Self {
        CellRunner { config, cache }
    }

    pub fn evaluate(&mut self, g: &GroupSpec, m: u64, h: u64) -> Result<ParamResult> {
        let mut row = formula_row(g, m, h)?;
        let cfg = self.config;
        row.family = cfg.family;
        let mu = m as usize;
        let hu = h as usize;
        let mut witness: Option<OracleResult> = None;
        if cfg.rho {
            let (v, r) = self.cached(g, m, h, Family::ZeroAnchored, || {
                rho_oracle(g, mu, hu, &cfg.options)
            })?;
            row.rho_oracle = v;
            witness = r;
        }
        if cfg.rho_pm {
            let (v, r) = self.cached(g, m, h, cfg.family, || {
                rho_pm_oracle(g, mu, hu, cfg.family, &cfg.options)
            })?;
            row.rho_pm_oracle = v;
            if r.is_some() {
                witness = r;
            }
            if v == OracleValue::Skipped {
                if let Some(trials) = cfg.probe_trials {
                    row.probe_upper_bound =
                        Some(upper_bound_probe(g, mu, hu, trials, cfg.seed)?.value as u64);
                }
            }
        }
        if cfg.all_sets {
            let (v, _) = self.cached(g, m, h, Family::AllSets, || {
                rho_pm_oracle(g, mu, hu, Family::AllSets, &cfg.options)
            })?;
            row.rho_pm_all_sets = v;
        }
        if let Some(w) = witness {
            row.witness = Some(w.witness.iter().map(|i| g.format_element(i)).collect());
            row.witness_class = Some(w.witness_class);
        }
        if let (Some(_), Some(pm)) = (row.rho_oracle.value(), row.rho_pm_oracle.value()) {
            row.agrees = Some(pm == row.rho_formula);
        }
        Ok(row)
    }

    fn cached(
        &mut self,
        g: &GroupSpec,
        m: u64,
        h: u64,
        family: Family,
        run: impl FnOnce() -> Result<OracleResult>,
    ) -> Result<(OracleValue, Option<OracleResult>)> {
        if let Some(cache) = self.cache.as_deref() {
            if let Some(hit) = cache.lookup(g, m, h, family)? {
                return Ok((OracleValue::Value(hit.value as u64), Some(hit)));
            }
        }
        match run() {
            Ok(r) => {
                if let Some(cache) = self.cache.as_deref_mut() {
                    cache.store(g, m, h, &r)?;
                }
                Ok((OracleValue::Value(r.value as u64), Some(r)))
            }
            Err(Error::BudgetExceeded { .. }) => Ok((OracleValue::Skipped, None)),
            Err(Error::InfeasibleFamily { .. }) => Ok((OracleValue::Infeasible, None)),
            Err(e) => Err(e),
        }
    }
}
