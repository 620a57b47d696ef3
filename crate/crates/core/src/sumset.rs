//! h-fold sumsets and h-fold signed sumsets.
//!
//! The signed sumset `h_±A` is the set of sums `Σ λ_i a_i` with
//! `Σ |λ_i| = h`, where every element of `A` carries a single integer
//! coefficient. It is *not* the union of `jA + (h-j)(-A)`: that union lets
//! the same element appear with both signs (`a - a = 0`), which is not an
//! admissible coefficient vector.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::group::GroupSpec;
use crate::set::ElementSet;

/// Membership of a set in the symmetric / near-symmetric / asymmetric
/// families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryClass {
    /// `A = -A`.
    Symmetric,
    /// Not symmetric, but symmetric after deleting one element.
    NearSymmetric,
    /// `A ∩ (-A) = ∅`.
    Asymmetric,
    /// In none of the three families.
    Outside,
}

impl SymmetryClass {
    pub fn label(self) -> &'static str {
        match self {
            SymmetryClass::Symmetric => "symmetric",
            SymmetryClass::NearSymmetric => "near-symmetric",
            SymmetryClass::Asymmetric => "asymmetric",
            SymmetryClass::Outside => "outside",
        }
    }
}

/// `A + B`, as the union over `x ∈ A` of `B` shifted by `x`.
pub fn set_add(g: &GroupSpec, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty_in(g);
    for x in a.iter() {
        b.shift_into(g, x, &mut out);
    }
    out
}

/// `hA`; `0A = {0}`.
pub fn h_fold_sumset(g: &GroupSpec, a: &ElementSet, h: usize) -> Result<ElementSet> {
    check_universe(g, a)?;
    if h == 0 {
        return Ok(ElementSet::identity_in(g));
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut acc = a.clone();
    for _ in 1..h {
        acc = set_add(g, &acc, a);
    }
    Ok(acc)
}

/// `h_±A`, computed with a [`SignedWeightTable`].
pub fn h_fold_signed_sumset(g: &GroupSpec, a: &ElementSet, h: usize) -> Result<ElementSet> {
    check_universe(g, a)?;
    if h == 0 {
        return Ok(ElementSet::identity_in(g));
    }
    if a.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut table = SignedWeightTable::new(g, h);
    for x in a.iter() {
        table.absorb(g, x);
    }
    Ok(table.rows.swap_remove(h))
}

fn check_universe(g: &GroupSpec, a: &ElementSet) -> Result<()> {
    if a.universe() != g.order() {
        return Err(param(format!(
            "set over {} elements used with a group of order {}",
            a.universe(),
            g.order()
        )));
    }
    Ok(())
}

/// Dynamic-programming table for signed sumsets.
///
/// `rows[w]` holds every value `Σ λ_i a_i` reachable from the elements
/// absorbed so far with total weight `Σ |λ_i| = w`. Absorbing a new element
/// `a` adds, for each weight `u ≥ 1` it may take, the shifts of `rows[w-u]`
/// by `±u·a` into `rows[w]`; leaving `λ = 0` keeps the old row.
#[derive(Clone, Debug)]
pub struct SignedWeightTable {
    rows: Vec<ElementSet>,
    multiples: Vec<(usize, usize)>,
}

impl SignedWeightTable {
    pub fn new(g: &GroupSpec, h: usize) -> Self {
        let mut rows = vec![ElementSet::empty_in(g); h + 1];
        rows[0].insert(0);
        SignedWeightTable {
            rows,
            multiples: Vec::with_capacity(h + 1),
        }
    }

    pub fn fold(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn reset(&mut self) {
        for row in &mut self.rows {
            row.clear();
        }
        self.rows[0].insert(0);
    }

    pub fn row(&self, w: usize) -> &ElementSet {
        &self.rows[w]
    }

    /// Folds one more element of `A` into the table.
    pub fn absorb(&mut self, g: &GroupSpec, a: usize) {
        let h = self.fold();
        self.multiples.clear();
        self.multiples.push((0, 0));
        for u in 1..=h {
            let plus = g.scale_idx(u as i64, a);
            self.multiples.push((plus, g.neg_idx(plus)));
        }
        // Descending w keeps rows[w - u] (u ≥ 1) at their pre-absorb value.
        for w in (1..=h).rev() {
            let (lower, upper) = self.rows.split_at_mut(w);
            let target = &mut upper[0];
            for u in 1..=w {
                let src = &lower[w - u];
                if src.is_empty() {
                    continue;
                }
                let (plus, minus) = self.multiples[u];
                src.shift_into(g, plus, target);
                if minus != plus {
                    src.shift_into(g, minus, target);
                }
            }
        }
    }

    /// `|h_±A|` for the elements given, reusing this table's buffers.
    pub fn signed_size(&mut self, g: &GroupSpec, elems: &[usize]) -> usize {
        self.reset();
        for &x in elems {
            self.absorb(g, x);
        }
        self.rows[self.fold()].len()
    }

    pub fn result(&self) -> &ElementSet {
        &self.rows[self.fold()]
    }
}

/// Reusable buffers for repeated `|hA|` evaluation.
#[derive(Clone, Debug)]
pub struct SumsetScratch {
    h: usize,
    base: ElementSet,
    acc: ElementSet,
    next: ElementSet,
}

impl SumsetScratch {
    pub fn new(g: &GroupSpec, h: usize) -> Self {
        SumsetScratch {
            h,
            base: ElementSet::empty_in(g),
            acc: ElementSet::empty_in(g),
            next: ElementSet::empty_in(g),
        }
    }

    pub fn size(&mut self, g: &GroupSpec, elems: &[usize]) -> usize {
        if self.h == 0 {
            return 1;
        }
        self.base.clear();
        for &x in elems {
            self.base.insert(x);
        }
        self.acc.clone_from(&self.base);
        for _ in 1..self.h {
            self.next.clear();
            for x in self.base.iter() {
                self.acc.shift_into(g, x, &mut self.next);
            }
            std::mem::swap(&mut self.acc, &mut self.next);
        }
        self.acc.len()
    }
}

/// Number of members `x` of `A` with `-x` also in `A`.
fn paired_count(g: &GroupSpec, a: &ElementSet) -> usize {
    a.iter().filter(|&x| a.contains(g.neg_idx(x))).count()
}

/// Classifies a nonempty set. Checked in the order symmetric,
/// near-symmetric, asymmetric; the families only overlap for singletons,
/// where a non-involution `{x}` is reported as near-symmetric.
pub fn classify_symmetry(g: &GroupSpec, a: &ElementSet) -> Result<SymmetryClass> {
    check_universe(g, a)?;
    if a.is_empty() {
        return Err(param("cannot classify the empty set"));
    }
    let m = a.len();
    Ok(match paired_count(g, a) {
        p if p == m => SymmetryClass::Symmetric,
        p if p + 1 == m => SymmetryClass::NearSymmetric,
        0 => SymmetryClass::Asymmetric,
        _ => SymmetryClass::Outside,
    })
}

/// Whether `A` belongs to the union of the three families.
pub fn in_a_family(g: &GroupSpec, a: &ElementSet) -> Result<bool> {
    Ok(classify_symmetry(g, a)? != SymmetryClass::Outside)
}

pub fn is_symmetric(g: &GroupSpec, a: &ElementSet) -> bool {
    paired_count(g, a) == a.len()
}

pub fn is_near_symmetric(g: &GroupSpec, a: &ElementSet) -> bool {
    !a.is_empty() && paired_count(g, a) + 1 == a.len()
}

pub fn is_asymmetric(g: &GroupSpec, a: &ElementSet) -> bool {
    paired_count(g, a) == 0
}
