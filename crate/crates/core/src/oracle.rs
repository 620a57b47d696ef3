//! Exhaustive oracles for the minimum size of `hA` and `h_±A`.
//!
//! Signed minima may be restricted to the union of the symmetric,
//! near-symmetric and asymmetric families, which always contains a
//! minimizer. Sets are enumerated shard by shard (each shard fixes the
//! leading combinatorial choice), shards may run in parallel, and results
//! merge by smallest value and then by the lexicographically smallest
//! witness, so the answer does not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::group::GroupSpec;
use crate::set::ElementSet;
use crate::sumset::{classify_symmetry, SignedWeightTable, SumsetScratch, SymmetryClass};

/// Default ceiling on the number of sets a single oracle call may evaluate.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Every `m`-subset.
    #[serde(rename = "all")]
    AllSets,
    /// Every `m`-subset containing the identity.
    #[serde(rename = "zero-anchored")]
    ZeroAnchored,
    #[serde(rename = "sym")]
    Symmetric,
    #[serde(rename = "nsym")]
    NearSymmetric,
    #[serde(rename = "asym")]
    Asymmetric,
    /// Union of the symmetric, near-symmetric and asymmetric families.
    #[serde(rename = "afamily")]
    AFamily,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::AllSets => "all",
            Family::ZeroAnchored => "zero-anchored",
            Family::Symmetric => "sym",
            Family::NearSymmetric => "nsym",
            Family::Asymmetric => "asym",
            Family::AFamily => "afamily",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Family::AllSets,
            "zero-anchored" => Family::ZeroAnchored,
            "sym" => Family::Symmetric,
            "nsym" => Family::NearSymmetric,
            "asym" => Family::Asymmetric,
            "afamily" => Family::AFamily,
            other => return Err(param(format!("unknown family {other:?}"))),
        })
    }
}

/// Partition of a symmetric set into involutions (`2x = 0`) and inverse
/// pairs `{x, -x}` with `x < -x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairStructure {
    pub involutions: Vec<usize>,
    pub pairs: Vec<(usize, usize)>,
}

impl PairStructure {
    pub fn of_group(g: &GroupSpec) -> Self {
        Self::collect(g, 0..g.order())
    }

    /// Pair structure of the members of `set` whose inverse is also a
    /// member.
    pub fn restricted_to(g: &GroupSpec, set: &ElementSet) -> Self {
        Self::collect(g, set.iter().filter(|&x| set.contains(g.neg_idx(x))))
    }

    fn collect(g: &GroupSpec, elems: impl Iterator<Item = usize>) -> Self {
        let mut involutions = Vec::new();
        let mut pairs = Vec::new();
        for x in elems {
            let nx = g.neg_idx(x);
            if nx == x {
                involutions.push(x);
            } else if x < nx {
                pairs.push((x, nx));
            }
        }
        PairStructure { involutions, pairs }
    }

    /// Number of elements covered, `|I| + 2·#pairs`.
    pub fn covered(&self) -> usize {
        self.involutions.len() + 2 * self.pairs.len()
    }

    /// `(pairs, involutions)` splits of a symmetric `size`-set.
    fn symmetric_splits(&self, size: usize) -> Vec<(usize, usize)> {
        let (np, ni) = (self.pairs.len(), self.involutions.len());
        (size % 2..=size.min(ni))
            .step_by(2)
            .map(|j| ((size - j) / 2, j))
            .filter(|&(k, _)| k <= np)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairKind {
    Symmetric,
    NearSymmetric,
    Asymmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shard {
    /// Plain `m`-subsets; `first` is the smallest chosen element other than
    /// the anchor.
    Subsets {
        anchored: bool,
        first: Option<usize>,
    },
    /// `k` pairs (the smallest pair index fixed to `first`) and `j`
    /// involutions, expanded according to `kind`.
    Pairs {
        kind: PairKind,
        k: usize,
        j: usize,
        first: Option<usize>,
    },
}

/// A family of `m`-subsets of a group, ready to enumerate.
#[derive(Clone, Debug)]
pub struct SearchSpace<'g> {
    group: &'g GroupSpec,
    m: usize,
    family: Family,
    pairs: PairStructure,
}

impl<'g> SearchSpace<'g> {
    pub fn new(group: &'g GroupSpec, m: usize, family: Family) -> Result<Self> {
        if m == 0 || m > group.order() {
            return Err(param(format!(
                "subset size {m} outside [1, {}]",
                group.order()
            )));
        }
        Ok(SearchSpace {
            group,
            m,
            family,
            pairs: PairStructure::of_group(group),
        })
    }

    pub fn group(&self) -> &GroupSpec {
        self.group
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn pairs(&self) -> &PairStructure {
        &self.pairs
    }

    /// Exact number of sets the enumeration yields (saturating).
    pub fn cardinality(&self) -> u128 {
        self.cardinality_with(false)
    }

    fn cardinality_with(&self, reduce: bool) -> u128 {
        self.shards().iter().fold(0u128, |acc, s| {
            acc.saturating_add(self.shard_size(s, reduce))
        })
    }

    fn shard_size(&self, shard: &Shard, reduce: bool) -> u128 {
        let n = self.group.order();
        let np = self.pairs.pairs.len();
        let ni = self.pairs.involutions.len();
        match *shard {
            Shard::Subsets { anchored, first } => {
                let fixed = usize::from(anchored) + usize::from(first.is_some());
                match first {
                    None => 1,
                    Some(f) => binomial(n - f - 1, self.m - fixed),
                }
            }
            Shard::Pairs { kind, k, j, first } => {
                let pair_choices = match first {
                    None => 1,
                    Some(f) => binomial(np - f - 1, k - 1),
                };
                let base = pair_choices.saturating_mul(binomial(ni, j));
                match kind {
                    PairKind::Symmetric => base,
                    PairKind::NearSymmetric => base.saturating_mul(2 * (np - k) as u128),
                    PairKind::Asymmetric => {
                        let bits = if reduce { k.saturating_sub(1) } else { k };
                        base.saturating_mul(pow2(bits))
                    }
                }
            }
        }
    }

    fn shards(&self) -> Vec<Shard> {
        let n = self.group.order();
        let m = self.m;
        let np = self.pairs.pairs.len();
        let mut out = Vec::new();
        let pair_shards = |kind: PairKind, k: usize, j: usize, out: &mut Vec<Shard>| {
            if k == 0 {
                out.push(Shard::Pairs {
                    kind,
                    k,
                    j,
                    first: None,
                });
            } else {
                for f in 0..=np - k {
                    out.push(Shard::Pairs {
                        kind,
                        k,
                        j,
                        first: Some(f),
                    });
                }
            }
        };
        let symmetric = |out: &mut Vec<Shard>| {
            for (k, j) in self.pairs.symmetric_splits(m) {
                pair_shards(PairKind::Symmetric, k, j, out);
            }
        };
        let near = |out: &mut Vec<Shard>| {
            for (k, j) in self.pairs.symmetric_splits(m - 1) {
                if k < np {
                    pair_shards(PairKind::NearSymmetric, k, j, out);
                }
            }
        };
        let asym = |out: &mut Vec<Shard>| {
            if m <= np {
                pair_shards(PairKind::Asymmetric, m, 0, out);
            }
        };
        match self.family {
            Family::AllSets => {
                for f in 0..=n - m {
                    out.push(Shard::Subsets {
                        anchored: false,
                        first: Some(f),
                    });
                }
            }
            Family::ZeroAnchored => {
                if m == 1 {
                    out.push(Shard::Subsets {
                        anchored: true,
                        first: None,
                    });
                } else {
                    for f in 1..=n - (m - 1) {
                        out.push(Shard::Subsets {
                            anchored: true,
                            first: Some(f),
                        });
                    }
                }
            }
            Family::Symmetric => symmetric(&mut out),
            Family::NearSymmetric => near(&mut out),
            Family::Asymmetric => asym(&mut out),
            Family::AFamily => {
                symmetric(&mut out);
                near(&mut out);
                // Singletons {x} with x ≠ -x are already near-symmetric.
                if m >= 2 {
                    asym(&mut out);
                }
            }
        }
        out
    }

    /// Calls `f` with the (unsorted) elements of every set in `shard`.
    /// With `reduce`, asymmetric sets keep the first chosen pair in its
    /// representative orientation, skipping the negated half.
    fn visit(&self, shard: &Shard, reduce: bool, f: &mut dyn FnMut(&[usize])) {
        let n = self.group.order();
        let m = self.m;
        let mut buf = Vec::with_capacity(m);
        match *shard {
            Shard::Subsets { anchored, first } => {
                let mut prefix = Vec::new();
                if anchored {
                    prefix.push(0);
                }
                let Some(first) = first else {
                    f(&prefix);
                    return;
                };
                prefix.push(first);
                for_each_combination(first + 1, n, m - prefix.len(), |rest| {
                    buf.clear();
                    buf.extend_from_slice(&prefix);
                    buf.extend_from_slice(rest);
                    f(&buf);
                });
            }
            Shard::Pairs { kind, k, j, first } => {
                let pairs = &self.pairs.pairs;
                let invols = &self.pairs.involutions;
                let mut chosen = Vec::with_capacity(k);
                let mut emit = |chosen: &[usize], inv: &[usize]| match kind {
                    PairKind::Symmetric => {
                        buf.clear();
                        for &i in chosen {
                            buf.push(pairs[i].0);
                            buf.push(pairs[i].1);
                        }
                        buf.extend(inv.iter().map(|&i| invols[i]));
                        f(&buf);
                    }
                    PairKind::NearSymmetric => {
                        buf.clear();
                        for &i in chosen {
                            buf.push(pairs[i].0);
                            buf.push(pairs[i].1);
                        }
                        buf.extend(inv.iter().map(|&i| invols[i]));
                        let base = buf.len();
                        let mut taken = chosen.iter().peekable();
                        for (q, &(x, nx)) in pairs.iter().enumerate() {
                            if taken.peek() == Some(&&q) {
                                taken.next();
                                continue;
                            }
                            for extra in [x, nx] {
                                buf.truncate(base);
                                buf.push(extra);
                                f(&buf);
                            }
                        }
                    }
                    PairKind::Asymmetric => {
                        let step = if reduce { 2u64 } else { 1 };
                        let mut mask = 0u64;
                        while mask < 1u64 << k {
                            buf.clear();
                            for (bit, &i) in chosen.iter().enumerate() {
                                let (x, nx) = pairs[i];
                                buf.push(if mask >> bit & 1 == 0 { x } else { nx });
                            }
                            f(&buf);
                            mask += step;
                        }
                    }
                };
                match first {
                    None => for_each_combination(0, invols.len(), j, |inv| emit(&[], inv)),
                    Some(first) => for_each_combination(first + 1, pairs.len(), k - 1, |rest| {
                        chosen.clear();
                        chosen.push(first);
                        chosen.extend_from_slice(rest);
                        for_each_combination(0, invols.len(), j, |inv| emit(&chosen, inv));
                    }),
                }
            }
        }
    }

    /// Streams every set of the family exactly once, in a deterministic
    /// order. Sets are materialized one shard at a time.
    pub fn iter(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.shards().into_iter().flat_map(move |shard| {
            let mut sets = Vec::new();
            self.visit(&shard, false, &mut |elems| {
                sets.push(ElementSet::from_indices(self.group, elems.iter().copied()).unwrap());
            });
            sets
        })
    }
}

/// The members of a search space, as a stream of sets.
pub fn enumerate_family<'a>(space: &'a SearchSpace<'_>) -> impl Iterator<Item = ElementSet> + 'a {
    space.iter()
}

/// Lexicographic `k`-combinations of `start..end`.
fn for_each_combination(start: usize, end: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k == 0 {
        f(&[]);
        return;
    }
    if end < start || end - start < k {
        return;
    }
    let mut idx: Vec<usize> = (start..start + k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < end - (k - i) {
                break;
            }
        }
        idx[i] += 1;
        for t in i + 1..k {
            idx[t] = idx[t - 1] + 1;
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

fn pow2(bits: usize) -> u128 {
    if bits >= 127 {
        u128::MAX
    } else {
        1u128 << bits
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Refuse to run when the space holds more sets than this.
    pub budget: u128,
    /// Skip the negated half of the asymmetric family. Witnesses are then
    /// compared through `min(A, -A)`, which reproduces the unreduced
    /// witness exactly.
    pub reduce_negation: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            reduce_negation: false,
        }
    }
}

/// An exact minimum with its witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub value: usize,
    pub witness: ElementSet,
    pub family: Family,
    pub witness_class: SymmetryClass,
    pub enumerated: u64,
}

trait SizeKernel {
    fn size(&mut self, g: &GroupSpec, elems: &[usize]) -> usize;
}

impl SizeKernel for SignedWeightTable {
    fn size(&mut self, g: &GroupSpec, elems: &[usize]) -> usize {
        self.signed_size(g, elems)
    }
}

impl SizeKernel for SumsetScratch {
    fn size(&mut self, g: &GroupSpec, elems: &[usize]) -> usize {
        SumsetScratch::size(self, g, elems)
    }
}

struct ShardBest {
    best: Option<(usize, ElementSet)>,
    count: u64,
}

fn better(a: &(usize, ElementSet), b: &(usize, ElementSet)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && a.1 < b.1)
}

fn run_shard<K: SizeKernel>(
    space: &SearchSpace<'_>,
    shard: &Shard,
    kernel: &mut K,
    reduce: bool,
) -> ShardBest {
    let g = space.group;
    let mut best: Option<(usize, ElementSet)> = None;
    let mut cand = ElementSet::empty_in(g);
    let mut count = 0u64;
    space.visit(shard, reduce, &mut |elems| {
        count += 1;
        let v = kernel.size(g, elems);
        if matches!(&best, Some((bv, _)) if v > *bv) {
            return;
        }
        cand.clear();
        for &x in elems {
            cand.insert(x);
        }
        if reduce {
            let neg = cand.negated(g);
            if neg < cand {
                cand = neg;
            }
        }
        match &mut best {
            Some((bv, bw)) => {
                if v < *bv || cand < *bw {
                    *bv = v;
                    bw.clone_from(&cand);
                }
            }
            None => best = Some((v, cand.clone())),
        }
    });
    ShardBest { best, count }
}

fn search<K, F>(
    space: &SearchSpace<'_>,
    opts: &SearchOptions,
    make_kernel: F,
) -> Result<OracleResult>
where
    K: SizeKernel,
    F: Fn() -> K + Sync,
{
    let reduce = opts.reduce_negation;
    let estimate = space.cardinality_with(reduce);
    if estimate == 0 {
        return Err(Error::InfeasibleFamily {
            family: space.family.label(),
            m: space.m,
        });
    }
    if estimate > opts.budget {
        return Err(Error::BudgetExceeded {
            estimate,
            budget: opts.budget,
        });
    }
    let shards = space.shards();
    #[cfg(feature = "parallel")]
    let results: Vec<ShardBest> = shards
        .par_iter()
        .map_init(&make_kernel, |kernel, shard| {
            run_shard(space, shard, kernel, reduce)
        })
        .collect();
    #[cfg(not(feature = "parallel"))]
    let results: Vec<ShardBest> = {
        let mut kernel = make_kernel();
        shards
            .iter()
            .map(|shard| run_shard(space, shard, &mut kernel, reduce))
            .collect()
    };
    let mut enumerated = 0u64;
    let mut best: Option<(usize, ElementSet)> = None;
    for r in results {
        enumerated += r.count;
        if let Some(b) = r.best {
            if best.as_ref().is_none_or(|cur| better(&b, cur)) {
                best = Some(b);
            }
        }
    }
    let (value, witness) = best.expect("nonempty search space");
    let witness_class = classify_symmetry(space.group, &witness)?;
    Ok(OracleResult {
        value,
        witness,
        family: space.family,
        witness_class,
        enumerated,
    })
}

/// Exact `min |hA|` over `m`-subsets. Only sets containing the identity
/// are enumerated: `h(A + t) = hA + ht`, so every size is attained by a
/// set through 0.
pub fn rho_oracle(g: &GroupSpec, m: usize, h: usize, opts: &SearchOptions) -> Result<OracleResult> {
    let space = SearchSpace::new(g, m, Family::ZeroAnchored)?;
    search(&space, opts, || SumsetScratch::new(g, h))
}

/// Exact `min |h_±A|` over the `m`-subsets in `family`.
pub fn rho_pm_oracle(
    g: &GroupSpec,
    m: usize,
    h: usize,
    family: Family,
    opts: &SearchOptions,
) -> Result<OracleResult> {
    if family == Family::ZeroAnchored {
        return Err(param(
            "signed sumsets are not translation invariant; zero-anchored search is only valid for plain sumsets",
        ));
    }
    let space = SearchSpace::new(g, m, family)?;
    search(&space, opts, || SignedWeightTable::new(g, h))
}

/// Smallest `|h_±A|` found by randomized sampling; an upper bound only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub value: usize,
    pub witness: ElementSet,
    pub trials: u64,
}

/// Samples `trials` members of the symmetric / near-symmetric / asymmetric
/// families and reports the smallest signed sumset seen. Half the trials
/// draw a uniform member of a random feasible family; the other half draw
/// a symmetric or near-symmetric subset of a union of cosets of a random
/// cyclic subgroup placed at a centred progression, which is where small
/// signed sumsets live. Reproducible from `seed`.
pub fn upper_bound_probe(
    g: &GroupSpec,
    m: usize,
    h: usize,
    trials: u64,
    seed: u64,
) -> Result<ProbeResult> {
    let n = g.order();
    if m == 0 || m > n {
        return Err(param(format!("subset size {m} outside [1, {n}]")));
    }
    if trials == 0 {
        return Err(param("trials must be at least 1"));
    }
    if m == 1 || h == 0 {
        // {0} attains the trivial minimum of 1; for h = 0 every set does
        let witness = if m == 1 {
            ElementSet::identity_in(g)
        } else {
            ElementSet::from_indices(g, 0..m)?
        };
        return Ok(ProbeResult {
            value: 1,
            witness,
            trials,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = PairStructure::of_group(g);
    let mut table = SignedWeightTable::new(g, h);
    let mut best: Option<(usize, ElementSet)> = None;
    for _ in 0..trials {
        let elems = if rng.gen_bool(0.5) {
            coset_progression_sample(g, m, &mut rng)
        } else {
            None
        }
        .or_else(|| sample_family_member(&pool, m, &mut rng))
        .expect("the union of the three families is never empty");
        let v = table.signed_size(g, &elems);
        let cand = (v, ElementSet::from_indices(g, elems)?);
        if best.as_ref().is_none_or(|b| better(&cand, b)) {
            best = Some(cand);
        }
    }
    let (value, witness) = best.expect("trials >= 1");
    Ok(ProbeResult {
        value,
        witness,
        trials,
    })
}

fn choose<R: Rng>(rng: &mut R, len: usize, k: usize) -> Vec<usize> {
    index::sample(rng, len, k).into_vec()
}

fn sample_symmetric<R: Rng>(
    pool: &PairStructure,
    size: usize,
    rng: &mut R,
    max_pairs: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let splits: Vec<_> = pool
        .symmetric_splits(size)
        .into_iter()
        .filter(|&(k, _)| k <= max_pairs)
        .collect();
    if splits.is_empty() {
        return None;
    }
    let (k, j) = splits[rng.gen_range(0..splits.len())];
    let chosen = choose(rng, pool.pairs.len(), k);
    let mut elems: Vec<usize> = chosen
        .iter()
        .flat_map(|&i| [pool.pairs[i].0, pool.pairs[i].1])
        .collect();
    elems.extend(
        choose(rng, pool.involutions.len(), j)
            .into_iter()
            .map(|i| pool.involutions[i]),
    );
    Some((elems, chosen))
}

fn sample_near_symmetric<R: Rng>(
    pool: &PairStructure,
    m: usize,
    rng: &mut R,
) -> Option<Vec<usize>> {
    let np = pool.pairs.len();
    if np == 0 {
        return None;
    }
    let (mut elems, chosen) = sample_symmetric(pool, m - 1, rng, np - 1)?;
    let free: Vec<usize> = (0..np).filter(|q| !chosen.contains(q)).collect();
    let (x, nx) = pool.pairs[free[rng.gen_range(0..free.len())]];
    elems.push(if rng.gen_bool(0.5) { x } else { nx });
    Some(elems)
}

fn sample_asymmetric<R: Rng>(pool: &PairStructure, m: usize, rng: &mut R) -> Option<Vec<usize>> {
    if m > pool.pairs.len() {
        return None;
    }
    Some(
        choose(rng, pool.pairs.len(), m)
            .into_iter()
            .map(|i| {
                let (x, nx) = pool.pairs[i];
                if rng.gen_bool(0.5) {
                    x
                } else {
                    nx
                }
            })
            .collect(),
    )
}

fn sample_family_member<R: Rng>(pool: &PairStructure, m: usize, rng: &mut R) -> Option<Vec<usize>> {
    let start = rng.gen_range(0..3);
    (0..3).find_map(|i| match (start + i) % 3 {
        0 => sample_symmetric(pool, m, rng, usize::MAX).map(|(e, _)| e),
        1 => sample_near_symmetric(pool, m, rng),
        _ => sample_asymmetric(pool, m, rng),
    })
}

/// A symmetric or near-symmetric `m`-subset of `U = ⋃_t (t·e + H)`, where
/// `H` is the cyclic subgroup generated by a random element and `t` runs
/// over the centred progression `-(k-1), -(k-3), ..., k-1` with
/// `k = ⌈m/|H|⌉`. Any subset of `U` has `|h_±A| ≤ (h(k-1)+1)·|H|`.
fn coset_progression_sample<R: Rng>(g: &GroupSpec, m: usize, rng: &mut R) -> Option<Vec<usize>> {
    let n = g.order();
    let generator = if rng.gen_bool(0.25) {
        0
    } else {
        rng.gen_range(0..n)
    };
    let mut subgroup = vec![0usize];
    let mut x = g.add_idx(0, generator);
    while x != 0 {
        subgroup.push(x);
        x = g.add_idx(x, generator);
    }
    let direction = rng.gen_range(0..n);
    let k = m.div_ceil(subgroup.len());
    let mut union = ElementSet::empty_in(g);
    for i in 0..k {
        let offset = g.scale_idx(2 * i as i64 - (k as i64 - 1), direction);
        for &y in &subgroup {
            union.insert(g.add_idx(offset, y));
        }
    }
    if union.len() < m {
        return None;
    }
    let pool = PairStructure::restricted_to(g, &union);
    if rng.gen_bool(0.5) {
        sample_symmetric(&pool, m, rng, usize::MAX)
            .map(|(e, _)| e)
            .or_else(|| sample_near_symmetric(&pool, m, rng))
    } else {
        sample_near_symmetric(&pool, m, rng)
            .or_else(|| sample_symmetric(&pool, m, rng, usize::MAX).map(|(e, _)| e))
    }
}
