//! Closed-form sizes and predicates for minimum sumsets and signed sumsets.
//!
//! `coset_progression_size(d, m, h) = (h⌈m/d⌉ - h + 1)·d` is the size of
//! `hA` when `A` fills `⌈m/d⌉` cosets of a subgroup of order `d` laid out
//! in arithmetic progression. Minimizing it over all divisors of `n` gives
//! the minimum sumset size for every abelian group of order `n`; minimizing
//! over the admissible divisors of a specific group gives the known upper
//! bound for signed sumsets.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::group::{admissible_divisors, divisors, is_prime, GroupSpec};

/// `(h⌈m/d⌉ - h + 1)·d`, overflow-checked.
pub fn coset_progression_size(d: u64, m: u64, h: u64) -> Result<u64> {
    if d == 0 || m == 0 {
        return Err(param("d and m must be positive"));
    }
    let blocks = m.div_ceil(d);
    h.checked_mul(blocks)
        .and_then(|x| x.checked_sub(h))
        .and_then(|x| x.checked_add(1))
        .and_then(|x| x.checked_mul(d))
        .ok_or(Error::Overflow("coset progression size"))
}

/// A minimum over divisors together with every divisor attaining it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorMinimum {
    pub value: u64,
    pub minimizers: Vec<u64>,
}

fn minimize_over(ds: &[u64], m: u64, h: u64) -> Result<DivisorMinimum> {
    let mut best: Option<DivisorMinimum> = None;
    for &d in ds {
        let v = coset_progression_size(d, m, h)?;
        match &mut best {
            Some(b) if v > b.value => {}
            Some(b) if v == b.value => b.minimizers.push(d),
            _ => {
                best = Some(DivisorMinimum {
                    value: v,
                    minimizers: vec![d],
                })
            }
        }
    }
    best.ok_or_else(|| param("empty divisor set"))
}

// h = 0, h = 1 and m = 1 are settled before any divisor logic.
fn trivial_case(m: u64, h: u64) -> Option<DivisorMinimum> {
    let value = match (m, h) {
        (_, 0) => 1,
        (1, _) => 1,
        (m, 1) => m,
        _ => return None,
    };
    Some(DivisorMinimum {
        value,
        minimizers: vec![1],
    })
}

/// Minimum of [`coset_progression_size`] over all divisors of `n`: the
/// smallest possible `|hA|` for an `m`-subset of any abelian group of
/// order `n`.
pub fn min_sumset_size(n: u64, m: u64, h: u64) -> Result<DivisorMinimum> {
    if n == 0 || m == 0 || m > n {
        return Err(param(format!("subset size {m} outside [1, {n}]")));
    }
    if let Some(t) = trivial_case(m, h) {
        return Ok(t);
    }
    minimize_over(&divisors(n), m, h)
}

/// Minimum of [`coset_progression_size`] over the admissible divisors of
/// `g`; an upper bound for the minimum signed sumset size.
pub fn signed_sumset_bound(g: &GroupSpec, m: u64, h: u64) -> Result<DivisorMinimum> {
    let n = g.order() as u64;
    if m == 0 || m > n {
        return Err(param(format!("subset size {m} outside [1, {n}]")));
    }
    if let Some(t) = trivial_case(m, h) {
        return Ok(t);
    }
    minimize_over(&admissible_divisors(g, m)?, m, h)
}

/// Base-`p` digits of `m - 1` and the three special indices derived from
/// them. Indices use `-1` for "no such index".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitProfile {
    pub p: u64,
    pub rank: u32,
    pub m: u64,
    pub h: u64,
    /// `digits[i]` is the coefficient of `p^i` in `m - 1`.
    pub digits: Vec<u64>,
    /// Largest `i` with a nonzero digit.
    pub leading: i32,
    /// Largest `i` with `h·q_i ≥ p`.
    pub heavy: i32,
    /// Top of the run of digits equal to `(p-1)/h` directly above `heavy`;
    /// equals `heavy` when the run is empty.
    pub plateau: i32,
}

impl DigitProfile {
    pub fn new(p: u64, rank: u32, m: u64, h: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(param(format!("{p} is not an odd prime")));
        }
        if rank == 0 {
            return Err(param("rank must be at least 1"));
        }
        if h < 2 {
            return Err(param("fold must be at least 2"));
        }
        let n = p.checked_pow(rank).ok_or(Error::Overflow("p^r"))?;
        if m == 0 || m > n {
            return Err(param(format!("subset size {m} outside [1, {n}]")));
        }
        let mut rest = m - 1;
        let digits: Vec<u64> = (0..rank)
            .map(|_| {
                let d = rest % p;
                rest /= p;
                d
            })
            .collect();
        let top = |pred: &dyn Fn(u64) -> bool| -> i32 {
            (0..rank as usize)
                .rev()
                .find(|&i| pred(digits[i]))
                .map_or(-1, |i| i as i32)
        };
        let leading = top(&|q| q >= 1);
        let heavy = top(&|q| h * q >= p);
        let mut plateau = heavy;
        if (p - 1).is_multiple_of(h) {
            let target = (p - 1) / h;
            let mut i = (heavy + 1) as usize;
            while i < rank as usize && digits[i] == target {
                plateau = i as i32;
                i += 1;
            }
        }
        Ok(DigitProfile {
            p,
            rank,
            m,
            h,
            digits,
            leading,
            heavy,
            plateau,
        })
    }

    /// Digits from most to least significant, `(q_{r-1}, ..., q_0)`.
    pub fn digits_msb_first(&self) -> Vec<u64> {
        self.digits.iter().rev().copied().collect()
    }

    /// Exponents `i` for which `p^i` minimizes the coset progression size
    /// over all divisors of `p^r`: `heavy + 1 ≤ i ≤ plateau + 1`.
    pub fn sumset_minimizers(&self) -> Vec<u32> {
        ((self.heavy + 1) as u32..=(self.plateau + 1) as u32).collect()
    }

    /// Exponents `i` for which `p^i` minimizes over the admissible
    /// divisors of `Z_p^r`. Requires `m ≥ 2`.
    pub fn signed_minimizers(&self) -> Result<Vec<u32>> {
        if self.m < 2 {
            return Err(param("signed minimizers need m >= 2"));
        }
        let lead = self.leading as u32;
        let weighted = self.h * self.digits[lead as usize];
        Ok(if weighted >= self.p {
            vec![lead + 1]
        } else if weighted == self.p - 1 {
            vec![lead, lead + 1]
        } else {
            vec![lead]
        })
    }

    /// Whether the two divisor minima coincide for `Z_p^r`.
    pub fn bounds_coincide(&self) -> bool {
        self.leading == self.plateau || self.leading == self.plateau + 1
    }
}

/// The integers `δ`, `k`, `c` attached to `(p, h, m)` for `2 ≤ h ≤ p-1`:
/// `δ = 0` iff `h | p-1`; `k` is maximal with `p^k + δ ≤ hm-h+1`; `c` is
/// maximal with `(hc+1)·p^k + δ ≤ hm-h+1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSplit {
    pub p: u64,
    pub h: u64,
    pub m: u64,
    pub delta: u64,
    pub k: u32,
    pub c: u64,
}

impl PowerSplit {
    pub fn new(p: u64, h: u64, m: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(param(format!("{p} is not an odd prime")));
        }
        if h < 2 || h > p - 1 {
            return Err(param(format!("fold {h} outside [2, {}]", p - 1)));
        }
        if m < 2 {
            return Err(param("m must be at least 2"));
        }
        let delta = u64::from(!(p - 1).is_multiple_of(h));
        let budget = coset_progression_size(1, m, h)?;
        let mut k = 0u32;
        let mut pk = 1u64;
        while let Some(next) = pk.checked_mul(p) {
            if next + delta > budget {
                break;
            }
            pk = next;
            k += 1;
        }
        // (hc+1)·p^k + δ ≤ budget
        let c = ((budget - delta) / pk - 1) / h;
        Ok(PowerSplit {
            p,
            h,
            m,
            delta,
            k,
            c,
        })
    }

    /// `(c+1)·p^k`.
    pub fn threshold(&self) -> u64 {
        (self.c + 1) * self.p.pow(self.k)
    }
}

/// Which sufficient condition, if any, certifies that the minimum signed
/// sumset size equals the minimum sumset size on `Z_p^r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EqualityCertificate {
    /// `m = 1` or `h ≤ 1`.
    Trivial,
    /// `p ≤ h`.
    PrimeAtMostFold,
    /// `2 ≤ h ≤ p-1` and `m ≤ (c+1)·p^k`.
    PowerSplitBound,
    /// Neither condition applies; strict inequality is conjectured.
    Unknown,
}

impl EqualityCertificate {
    pub fn label(self) -> &'static str {
        match self {
            EqualityCertificate::Trivial => "equal:trivial",
            EqualityCertificate::PrimeAtMostFold => "equal:p<=h",
            EqualityCertificate::PowerSplitBound => "equal:m<=(c+1)p^k",
            EqualityCertificate::Unknown => "unknown",
        }
    }

    pub fn is_equal(self) -> bool {
        self != EqualityCertificate::Unknown
    }
}

pub fn equality_certificate(g: &GroupSpec, m: u64, h: u64) -> Result<EqualityCertificate> {
    let p = match g.elementary_prime() {
        Some(p) if p > 2 && g.rank() >= 2 => p as u64,
        _ => {
            return Err(param(format!(
                "{g} is not an elementary abelian group Z_p^r with p odd and r >= 2"
            )))
        }
    };
    let n = g.order() as u64;
    if m == 0 || m > n {
        return Err(param(format!("subset size {m} outside [1, {n}]")));
    }
    if m == 1 || h <= 1 {
        return Ok(EqualityCertificate::Trivial);
    }
    if p <= h {
        return Ok(EqualityCertificate::PrimeAtMostFold);
    }
    let split = PowerSplit::new(p, h, m)?;
    Ok(if m <= split.threshold() {
        EqualityCertificate::PowerSplitBound
    } else {
        EqualityCertificate::Unknown
    })
}

fn check_zp2_args(p: u64, m: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(param(format!("{p} is not an odd prime")));
    }
    if m == 0 || m > p * p {
        return Err(param(format!("subset size {m} outside [1, {}]", p * p)));
    }
    Ok(())
}

/// Equality of the two minima on `Z_p^2` for `h = 2`, stated as the union
/// of three ranges of `m`.
pub fn zp2_equality_by_ranges(p: u64, m: u64) -> Result<bool> {
    check_zp2_args(p, m)?;
    let half = (p - 1) / 2;
    Ok(m <= p
        || 2 * m > p * p
        || (1..=half).any(|c| c * p + p.div_ceil(2) <= m && m <= (c + 1) * p))
}

/// The same predicate stated through its complement: the minima differ
/// exactly when `m = qp + v` with `1 ≤ q, v ≤ (p-1)/2`.
pub fn zp2_equality_by_complement(p: u64, m: u64) -> Result<bool> {
    check_zp2_args(p, m)?;
    let half = (p - 1) / 2;
    let (q, v) = (m / p, m % p);
    Ok(!((1..=half).contains(&q) && (1..=half).contains(&v)))
}

/// Whether the minimum 2-fold signed sumset size on `Z_p^2` equals the
/// minimum 2-fold sumset size. Both formulations are evaluated and must
/// agree.
pub fn zp2_equality(p: u64, m: u64) -> Result<bool> {
    let by_ranges = zp2_equality_by_ranges(p, m)?;
    let by_complement = zp2_equality_by_complement(p, m)?;
    assert_eq!(
        by_ranges, by_complement,
        "Z_{p}^2 equality formulations disagree at m = {m}"
    );
    Ok(by_ranges)
}

/// Conjectured minimum signed sumset size for any group: the signed bound
/// for `h ≥ 3`; for `h = 2`, `min(bound, d_m - 1)` where `d_m` is the
/// smallest odd divisor of `n` exceeding `2m`, if any.
///
/// Since `2m` is even no odd divisor can equal it, so "less than `2m`" and
/// "greater than `2m`" exhaust the cases.
pub fn predicted_signed_minimum(g: &GroupSpec, m: u64, h: u64) -> Result<u64> {
    let bound = signed_sumset_bound(g, m, h)?.value;
    if h != 2 || m == 1 {
        return Ok(bound);
    }
    let n = g.order() as u64;
    let d_m = divisors(n).into_iter().find(|&d| d % 2 == 1 && d > 2 * m);
    Ok(match d_m {
        Some(d) => bound.min(d - 1),
        None => bound,
    })
}

/// Conjectured minimum 2-fold signed sumset size on `Z_p^2`, writing
/// `m = cp + v` with `0 ≤ c ≤ p-1` and `1 ≤ v ≤ p`. This is a prediction,
/// not a proven value.
pub fn zp2_table_prediction(p: u64, m: u64) -> Result<u64> {
    check_zp2_args(p, m)?;
    let c = (m - 1) / p;
    let v = m - c * p;
    let half = (p - 1) / 2;
    let small_v = v <= half;
    Ok(if c == 0 {
        if small_v {
            2 * m - 1
        } else {
            p
        }
    } else if c < half {
        (2 * c + 1) * p
    } else if c == half && small_v {
        p * p - 1
    } else {
        p * p
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(lit: &str) -> GroupSpec {
        lit.parse().unwrap()
    }

    #[test]
    fn coset_progression_examples() {
        assert_eq!(coset_progression_size(1, 4, 2).unwrap(), 7);
        assert_eq!(coset_progression_size(3, 4, 2).unwrap(), 9);
        for d in 1..20 {
            for h in 0..6 {
                assert_eq!(coset_progression_size(d, 1, h).unwrap(), d);
            }
        }
        assert_eq!(
            coset_progression_size(u64::MAX / 2, 1, 3).unwrap(),
            u64::MAX / 2
        );
        assert!(matches!(
            coset_progression_size(1 << 40, (1 << 40) + 1, 1 << 30),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn uses_ceiling_of_m_over_d() {
        // With ⌈m/h⌉ in place of ⌈m/d⌉, f_1(5,2) would be 5 instead of 2m-1 = 9.
        assert_eq!(coset_progression_size(1, 5, 2).unwrap(), 9);
        for p in [3u64, 5, 7, 11, 13] {
            for m in 1..=p {
                assert_eq!(min_sumset_size(p, m, 2).unwrap().value, p.min(2 * m - 1));
            }
        }
    }

    #[test]
    fn min_sumset_examples() {
        let u = min_sumset_size(9, 4, 2).unwrap();
        assert_eq!(u.value, 7);
        assert_eq!(u.minimizers, vec![1]);
        assert_eq!(min_sumset_size(27, 13, 2).unwrap().value, 25);
        assert_eq!(min_sumset_size(5, 3, 2).unwrap().value, 5);
        assert_eq!(min_sumset_size(9, 5, 2).unwrap().minimizers, vec![1, 3, 9]);
        assert_eq!(min_sumset_size(12, 5, 0).unwrap().value, 1);
        assert_eq!(min_sumset_size(12, 5, 1).unwrap().value, 5);
        assert_eq!(min_sumset_size(12, 1, 7).unwrap().value, 1);
        assert!(min_sumset_size(9, 10, 2).is_err());
        assert!(min_sumset_size(9, 0, 2).is_err());
    }

    #[test]
    fn signed_bound_examples() {
        let b = signed_sumset_bound(&z("Z3xZ3"), 4, 2).unwrap();
        assert_eq!(b.value, 9);
        assert_eq!(b.minimizers, vec![3, 9]);
        assert_eq!(signed_sumset_bound(&z("Z9"), 4, 2).unwrap().value, 7);
        assert_eq!(signed_sumset_bound(&z("Z5^2"), 8, 2).unwrap().value, 15);
        assert!(signed_sumset_bound(&z("Z5^2"), 26, 2).is_err());
    }

    #[test]
    fn digit_profile_examples() {
        let a = DigitProfile::new(3, 3, 13, 2).unwrap();
        assert_eq!(a.digits_msb_first(), vec![1, 1, 0]);
        assert_eq!((a.leading, a.heavy, a.plateau), (2, -1, -1));
        let b = DigitProfile::new(3, 2, 5, 2).unwrap();
        assert_eq!(b.digits_msb_first(), vec![1, 1]);
        assert_eq!((b.leading, b.heavy, b.plateau), (1, -1, 1));
        let c = DigitProfile::new(3, 2, 4, 2).unwrap();
        assert_eq!(c.digits_msb_first(), vec![1, 0]);
        assert_eq!((c.leading, c.heavy, c.plateau), (1, -1, -1));

        assert_eq!(a.sumset_minimizers(), vec![0]);
        assert_eq!(b.sumset_minimizers(), vec![0, 1, 2]);
        assert_eq!(c.sumset_minimizers(), vec![0]);

        assert_eq!(c.signed_minimizers().unwrap(), vec![1, 2]);
        assert_eq!(a.signed_minimizers().unwrap(), vec![2, 3]);
        let d = DigitProfile::new(5, 2, 8, 2).unwrap();
        assert_eq!(d.digits_msb_first(), vec![1, 2]);
        assert_eq!(d.signed_minimizers().unwrap(), vec![1]);

        assert!(b.bounds_coincide());
        assert!(!c.bounds_coincide());
        assert!(!a.bounds_coincide());
    }

    #[test]
    fn digit_profile_rejects_bad_input() {
        assert!(DigitProfile::new(4, 2, 3, 2).is_err());
        assert!(DigitProfile::new(2, 2, 3, 2).is_err());
        assert!(DigitProfile::new(3, 2, 10, 2).is_err());
        assert!(DigitProfile::new(3, 2, 0, 2).is_err());
        assert!(DigitProfile::new(3, 2, 4, 1).is_err());
        assert!(DigitProfile::new(3, 2, 1, 2)
            .unwrap()
            .signed_minimizers()
            .is_err());
    }

    #[test]
    fn power_split_examples() {
        let s = PowerSplit::new(5, 2, 8).unwrap();
        assert_eq!((s.delta, s.k, s.c), (0, 1, 1));
        let s = PowerSplit::new(5, 2, 6).unwrap();
        assert_eq!((s.delta, s.k, s.c), (0, 1, 0));
        // hm-h+1 = 3 = 3^1, so k = 1 and c = 0.
        let s = PowerSplit::new(3, 2, 2).unwrap();
        assert_eq!((s.delta, s.k, s.c), (0, 1, 0));
        let s = PowerSplit::new(7, 4, 5).unwrap();
        assert_eq!(s.delta, 1);
        assert!(PowerSplit::new(5, 5, 8).is_err());
        assert!(PowerSplit::new(5, 1, 8).is_err());
    }

    #[test]
    fn power_split_is_maximal() {
        for p in [3u64, 5, 7, 11, 13] {
            for h in 2..p {
                for m in 2..=300 {
                    let s = PowerSplit::new(p, h, m).unwrap();
                    let budget = h * m - h + 1;
                    let pk = p.pow(s.k);
                    assert!(pk + s.delta <= budget);
                    assert!(pk * p + s.delta > budget);
                    assert!((h * s.c + 1) * pk + s.delta <= budget);
                    assert!((h * (s.c + 1) + 1) * pk + s.delta > budget);
                    assert!(s.c < p);
                }
            }
        }
    }

    #[test]
    fn equality_certificate_examples() {
        assert_eq!(
            equality_certificate(&z("Z3^2"), 7, 3).unwrap(),
            EqualityCertificate::PrimeAtMostFold
        );
        assert_eq!(
            equality_certificate(&z("Z5^2"), 8, 2).unwrap(),
            EqualityCertificate::PowerSplitBound
        );
        assert_eq!(
            equality_certificate(&z("Z5^2"), 6, 2).unwrap(),
            EqualityCertificate::Unknown
        );
        assert_eq!(
            equality_certificate(&z("Z5^2"), 1, 2).unwrap(),
            EqualityCertificate::Trivial
        );
        assert!(equality_certificate(&z("Z9"), 4, 2).is_err());
        assert!(equality_certificate(&z("Z3xZ9"), 4, 2).is_err());
        assert!(equality_certificate(&z("Z2^3"), 4, 2).is_err());
    }

    #[test]
    fn zp2_classification_examples() {
        let gaps = |p: u64| -> Vec<u64> {
            (1..=p * p)
                .filter(|&m| !zp2_equality(p, m).unwrap())
                .collect()
        };
        assert_eq!(gaps(3), vec![4]);
        assert_eq!(gaps(5), vec![6, 7, 11, 12]);
        assert!(zp2_equality(3, 9).unwrap());
        assert!(zp2_equality(3, 10).is_err());
        assert!(zp2_equality(9, 3).is_err());
    }

    #[test]
    fn zp2_formulations_agree_and_count_gaps() {
        for p in (3..=101u64).filter(|&p| is_prime(p)) {
            let mut gaps = 0;
            for m in 1..=p * p {
                let a = zp2_equality_by_ranges(p, m).unwrap();
                assert_eq!(a, zp2_equality_by_complement(p, m).unwrap(), "p={p} m={m}");
                gaps += u64::from(!a);
            }
            assert_eq!(gaps, (p - 1) * (p - 1) / 4);
        }
    }

    #[test]
    fn predicted_minimum_examples() {
        assert_eq!(predicted_signed_minimum(&z("Z3^2"), 4, 2).unwrap(), 8);
        assert_eq!(predicted_signed_minimum(&z("Z3^2"), 5, 2).unwrap(), 9);
        assert_eq!(predicted_signed_minimum(&z("Z9"), 4, 2).unwrap(), 7);
        assert_eq!(predicted_signed_minimum(&z("Z3^2"), 4, 3).unwrap(), 9);
    }

    #[test]
    fn table_prediction_examples() {
        assert_eq!(zp2_table_prediction(3, 4).unwrap(), 8);
        assert_eq!(zp2_table_prediction(5, 6).unwrap(), 15);
        assert_eq!(zp2_table_prediction(5, 7).unwrap(), 15);
        assert_eq!(zp2_table_prediction(5, 11).unwrap(), 24);
        assert_eq!(zp2_table_prediction(5, 12).unwrap(), 24);
        assert_eq!(zp2_table_prediction(5, 13).unwrap(), 25);
        assert_eq!(zp2_table_prediction(5, 1).unwrap(), 1);
        assert!(zp2_table_prediction(5, 26).is_err());
    }
}
