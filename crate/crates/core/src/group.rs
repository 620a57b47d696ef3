//! Finite abelian groups in invariant-factor form.
//!
//! A group `Z_{n_1} x ... x Z_{n_r}` with `n_1 | n_2 | ... | n_r` is stored as
//! its factor chain. Elements are packed into a single mixed-radix index in
//! `[0, n)` with `n_1` as the most significant digit, so the identity is
//! index 0 and bitset kernels can address elements directly.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error, Result};

/// Largest group order accepted by [`GroupSpec::new`].
pub const DEFAULT_ORDER_CAP: usize = 1 << 16;

/// A finite abelian group given by its invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<usize>,
    // strides[i] = factors[i+1] * ... * factors[r-1]
    strides: Vec<usize>,
    order: usize,
}

/// An element of a [`GroupSpec`], stored as its packed mixed-radix index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement(usize);

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement(0);

    pub fn index(self) -> usize {
        self.0
    }
}

impl GroupSpec {
    /// Builds a group from an invariant-factor chain, rejecting orders above
    /// [`DEFAULT_ORDER_CAP`].
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        Self::with_order_cap(factors, DEFAULT_ORDER_CAP)
    }

    pub fn with_order_cap(factors: Vec<usize>, cap: usize) -> Result<Self> {
        if factors.is_empty() {
            return Err(param("a group needs at least one invariant factor"));
        }
        if let Some(bad) = factors.iter().find(|&&f| f < 2) {
            return Err(param(format!("invariant factor {bad} must be at least 2")));
        }
        for w in factors.windows(2) {
            if w[1] % w[0] != 0 {
                return Err(param(format!(
                    "{} does not divide {}: not an invariant-factor chain",
                    w[0], w[1]
                )));
            }
        }
        let full = factors
            .iter()
            .fold(1u128, |acc, &f| acc.saturating_mul(f as u128));
        if full > cap as u128 {
            return Err(Error::OrderCap { order: full, cap });
        }
        let order = full as usize;
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len() - 1).rev() {
            strides[i] = strides[i + 1] * factors[i + 1];
        }
        Ok(GroupSpec {
            factors,
            strides,
            order,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// `Z_p^r`.
    pub fn elementary(p: usize, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(param("rank must be at least 1"));
        }
        Self::new(vec![p; r])
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant-factor
    /// form, so `[2, 3]` becomes `Z6` and `[4, 2]` becomes `Z2xZ4`.
    pub fn from_cyclic_orders(orders: &[usize]) -> Result<Self> {
        Self::from_cyclic_orders_capped(orders, DEFAULT_ORDER_CAP)
    }

    pub fn from_cyclic_orders_capped(orders: &[usize], cap: usize) -> Result<Self> {
        if orders.contains(&0) {
            return Err(param("cyclic factor of order 0"));
        }
        let mut by_prime: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for &n in orders {
            for (p, e) in factorize(n) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let factors = invariant_factors(&by_prime);
        if factors.is_empty() {
            return Err(param("the trivial group is not supported"));
        }
        Self::with_order_cap(factors, cap)
    }

    /// Every abelian group of order `n`, one per isomorphism type, sorted by
    /// rank and then by factor chain.
    pub fn all_of_order(n: usize) -> Result<Vec<GroupSpec>> {
        if n < 2 {
            return Ok(Vec::new());
        }
        let mut types: Vec<BTreeMap<usize, Vec<u32>>> = vec![BTreeMap::new()];
        for (p, e) in factorize(n) {
            let mut next = Vec::new();
            for partial in &types {
                for part in partitions(e) {
                    let mut t = partial.clone();
                    t.insert(p, part);
                    next.push(t);
                }
            }
            types = next;
        }
        let mut groups = types
            .iter()
            .map(|t| GroupSpec::new(invariant_factors(t)))
            .collect::<Result<Vec<_>>>()?;
        groups.sort_by(|a, b| (a.rank(), &a.factors).cmp(&(b.rank(), &b.factors)));
        Ok(groups)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    /// `Some(p)` when the group is `Z_p^r` for a prime `p`.
    pub fn elementary_prime(&self) -> Option<usize> {
        let p = self.factors[0];
        (is_prime(p as u64) && self.factors.iter().all(|&f| f == p)).then_some(p)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::IDENTITY
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index < self.order {
            Ok(GroupElement(index))
        } else {
            Err(param(format!(
                "element index {index} outside [0, {})",
                self.order
            )))
        }
    }

    pub fn element_from_coords(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(param(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let index = coords
            .iter()
            .zip(&self.factors)
            .zip(&self.strides)
            .map(|((&c, &f), &s)| c.rem_euclid(f as i64) as usize * s)
            .sum();
        Ok(GroupElement(index))
    }

    pub fn coords(&self, a: GroupElement) -> Vec<usize> {
        self.coords_of(a.0)
    }

    pub(crate) fn coords_of(&self, mut index: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let d = index / s;
                index %= s;
                d
            })
            .collect()
    }

    /// Renders an element as `3` for cyclic groups and `(1,2)` otherwise.
    pub fn format_element(&self, index: usize) -> String {
        let c = self.coords_of(index);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|d| d.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }

    pub fn add(&self, a: GroupElement, b: GroupElement) -> GroupElement {
        GroupElement(self.add_idx(a.0, b.0))
    }

    pub fn neg(&self, a: GroupElement) -> GroupElement {
        GroupElement(self.neg_idx(a.0))
    }

    pub fn scale(&self, k: i64, a: GroupElement) -> GroupElement {
        GroupElement(self.scale_idx(k, a.0))
    }

    #[inline]
    pub(crate) fn add_idx(&self, a: usize, b: usize) -> usize {
        if self.factors.len() == 1 {
            let s = a + b;
            return if s >= self.order { s - self.order } else { s };
        }
        let (mut ra, mut rb, mut out) = (a, b, 0);
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let mut d = ra / s + rb / s;
            ra %= s;
            rb %= s;
            if d >= f {
                d -= f;
            }
            out += d * s;
        }
        out
    }

    #[inline]
    pub(crate) fn neg_idx(&self, a: usize) -> usize {
        if self.factors.len() == 1 {
            return if a == 0 { 0 } else { self.order - a };
        }
        let (mut ra, mut out) = (a, 0);
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let d = ra / s;
            ra %= s;
            out += ((f - d) % f) * s;
        }
        out
    }

    pub(crate) fn scale_idx(&self, k: i64, a: usize) -> usize {
        let (mut ra, mut out) = (a, 0);
        for (&f, &s) in self.factors.iter().zip(&self.strides) {
            let d = (ra / s) as u128;
            ra %= s;
            let kk = k.rem_euclid(f as i64) as u128;
            out += ((kk * d) % f as u128) as usize * s;
        }
        out
    }

    /// Elements `x` with `2x = 0`, the identity included.
    pub fn involutions(&self) -> Vec<GroupElement> {
        (0..self.order)
            .filter(|&x| self.neg_idx(x) == x)
            .map(GroupElement)
            .collect()
    }

    /// Canonical literal, e.g. `Z9` or `Z3xZ3`.
    pub fn literal(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Accepts `Z9`, `Z3xZ3`, `Z5^2` and mixtures such as `Z2xZ3^2`;
    /// non-chain inputs are normalized (`Z2xZ3` parses as `Z6`).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::GroupLiteral {
            literal: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(bad("empty literal"));
        }
        let mut orders = Vec::new();
        for token in trimmed.split(['x', 'X', '×']) {
            let token = token.trim();
            let body = token
                .strip_prefix('Z')
                .or_else(|| token.strip_prefix('z'))
                .ok_or_else(|| bad("each factor must look like Z<n> or Z<n>^<k>"))?;
            let body = body.strip_prefix('_').unwrap_or(body);
            let (base, power) = match body.split_once('^') {
                Some((b, e)) => (b, e),
                None => (body, "1"),
            };
            let n: usize = base.trim().parse().map_err(|_| bad("bad cyclic order"))?;
            let k: usize = power.trim().parse().map_err(|_| bad("bad exponent"))?;
            if n == 0 {
                return Err(bad("cyclic order must be positive"));
            }
            if k > 64 {
                return Err(bad("exponent too large"));
            }
            orders.extend(std::iter::repeat_n(n, k));
        }
        GroupSpec::from_cyclic_orders(&orders).map_err(|e| match e {
            Error::Parameter(reason) => bad(&reason),
            other => other,
        })
    }
}

/// Prime factorization by trial division, primes ascending.
pub(crate) fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Integer partitions of e, parts in descending order.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

// Combines per-prime exponent lists into an ascending invariant-factor chain.
fn invariant_factors(by_prime: &BTreeMap<usize, Vec<u32>>) -> Vec<usize> {
    let mut sorted: Vec<(usize, Vec<u32>)> = by_prime
        .iter()
        .map(|(&p, es)| {
            let mut es: Vec<u32> = es.iter().copied().filter(|&e| e > 0).collect();
            es.sort_unstable_by(|a, b| b.cmp(a));
            (p, es)
        })
        .collect();
    sorted.retain(|(_, es)| !es.is_empty());
    let rank = sorted.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    let mut factors: Vec<usize> = (0..rank)
        .map(|j| {
            sorted
                .iter()
                .filter_map(|(p, es)| es.get(j).map(|&e| p.pow(e)))
                .product()
        })
        .collect();
    factors.reverse();
    factors
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// The divisors `d` of `n` that factor as `d_1 ... d_r` with `d_i | n_i`
/// and `d * n_r >= d_r * m`.
///
/// The products reachable from the first `r - 1` factors are collected
/// once; for each candidate `d` the smallest admissible last component
/// `d_r` is the only one worth testing, since the inequality only gets
/// harder as `d_r` grows.
pub fn admissible_divisors(g: &GroupSpec, m: u64) -> Result<Vec<u64>> {
    let n = g.order() as u64;
    if m == 0 || m > n {
        return Err(param(format!("subset size {m} outside [1, {n}]")));
    }
    let (last, head) = g.factors().split_last().expect("nonempty chain");
    let mut reachable = std::collections::BTreeSet::from([1u64]);
    for &f in head {
        let ds = divisors(f as u64);
        reachable = reachable
            .iter()
            .flat_map(|&x| ds.iter().map(move |&d| x * d))
            .collect();
    }
    let last = *last as u64;
    let last_divisors = divisors(last);
    Ok(divisors(n)
        .into_iter()
        .filter(|&d| {
            last_divisors
                .iter()
                .find(|&&dr| d % dr == 0 && reachable.contains(&(d / dr)))
                .is_some_and(|&dr| d as u128 * last as u128 >= dr as u128 * m as u128)
        })
        .collect())
}
