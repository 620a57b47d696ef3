use std::cmp::Ordering;
use std::fmt;

use crate::error::{param, Result};
use crate::group::{GroupElement, GroupSpec};

/// A subset of a group, stored as a bit mask over packed element indices
/// together with its cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
    universe: usize,
    card: usize,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            card: 0,
        }
    }

    pub fn empty_in(g: &GroupSpec) -> Self {
        Self::empty(g.order())
    }

    /// `{0}`.
    pub fn identity_in(g: &GroupSpec) -> Self {
        let mut s = Self::empty_in(g);
        s.insert(0);
        s
    }

    pub fn full_in(g: &GroupSpec) -> Self {
        let mut s = Self::empty_in(g);
        for x in 0..g.order() {
            s.insert(x);
        }
        s
    }

    pub fn from_indices(g: &GroupSpec, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty_in(g);
        for i in indices {
            if i >= g.order() {
                return Err(param(format!(
                    "element index {i} outside [0, {})",
                    g.order()
                )));
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_elements(g: &GroupSpec, elems: impl IntoIterator<Item = GroupElement>) -> Self {
        let mut s = Self::empty_in(g);
        for e in elems {
            s.insert(e.index());
        }
        s
    }

    /// Convenience for tests and examples: cyclic residues or coordinate
    /// tuples, reduced modulo the factors.
    pub fn from_coords(g: &GroupSpec, coords: &[&[i64]]) -> Result<Self> {
        let mut s = Self::empty_in(g);
        for c in coords {
            s.insert(g.element_from_coords(c)?.index());
        }
        Ok(s)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.card
    }

    pub fn is_empty(&self) -> bool {
        self.card == 0
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    /// Inserts `i`, returning whether it was absent. Panics when `i` lies
    /// outside the universe.
    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        assert!(
            i < self.universe,
            "index {i} outside universe {}",
            self.universe
        );
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        self.card += fresh as usize;
        fresh
    }

    pub fn remove(&mut self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        let w = &mut self.words[i >> 6];
        let bit = 1u64 << (i & 63);
        let present = *w & bit != 0;
        *w &= !bit;
        self.card -= present as usize;
        present
    }

    pub fn clear(&mut self) {
        self.words.iter_mut().for_each(|w| *w = 0);
        self.card = 0;
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.universe, other.universe);
        let mut card = 0;
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
            card += a.count_ones() as usize;
        }
        self.card = card;
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Set bits in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// `-A`.
    pub fn negated(&self, g: &GroupSpec) -> ElementSet {
        let mut out = ElementSet::empty(self.universe);
        for x in self.iter() {
            out.insert(g.neg_idx(x));
        }
        out
    }

    /// `A + t`.
    pub fn translated(&self, g: &GroupSpec, t: usize) -> ElementSet {
        let mut out = ElementSet::empty(self.universe);
        self.shift_into(g, t, &mut out);
        out
    }

    /// Scatters every member `y` to `y + x` inside `dst` (union, not
    /// overwrite).
    #[inline]
    pub(crate) fn shift_into(&self, g: &GroupSpec, x: usize, dst: &mut ElementSet) {
        for (wi, &w) in self.words.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let y = wi * 64 + w.trailing_zeros() as usize;
                w &= w - 1;
                dst.insert(g.add_idx(y, x));
            }
        }
    }

    pub fn format(&self, g: &GroupSpec) -> String {
        let parts: Vec<String> = self.iter().map(|i| g.format_element(i)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

/// Lexicographic order on the ascending element lists, the tie-break used
/// for witness reporting.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
