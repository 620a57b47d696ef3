//! Independent reference implementations: direct enumeration of
//! coefficient vectors, sharing nothing with the library's kernels except
//! element arithmetic.

#![allow(dead_code)]

use signed_sumset::{ElementSet, GroupElement, GroupSpec};

fn elements(g: &GroupSpec, a: &ElementSet) -> Vec<GroupElement> {
    a.iter().map(|i| g.element(i).unwrap()).collect()
}

/// Calls `f` with every integer vector of length `len` whose absolute
/// values sum to exactly `h` (signed) or whose nonnegative entries sum to
/// `h` (unsigned).
fn coefficient_vectors(len: usize, h: i64, signed: bool, f: &mut impl FnMut(&[i64])) {
    fn go(i: usize, left: i64, signed: bool, buf: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
        if i == buf.len() {
            if left == 0 {
                f(buf);
            }
            return;
        }
        let lo = if signed { -left } else { 0 };
        for c in lo..=left {
            buf[i] = c;
            go(i + 1, left - c.abs(), signed, buf, f);
        }
    }
    let mut buf = vec![0; len];
    go(0, h, signed, &mut buf, f);
}

fn combine(g: &GroupSpec, elems: &[GroupElement], h: usize, signed: bool) -> ElementSet {
    let mut out = ElementSet::empty_in(g);
    coefficient_vectors(elems.len(), h as i64, signed, &mut |lambda| {
        let sum = elems
            .iter()
            .zip(lambda)
            .fold(g.identity(), |acc, (&x, &c)| g.add(acc, g.scale(c, x)));
        out.insert(sum.index());
    });
    out
}

/// `hA` by enumerating nonnegative coefficient vectors.
pub fn naive_sumset(g: &GroupSpec, a: &ElementSet, h: usize) -> ElementSet {
    combine(g, &elements(g, a), h, false)
}

/// `h_±A` by enumerating signed coefficient vectors, one coefficient per
/// element.
pub fn naive_signed_sumset(g: &GroupSpec, a: &ElementSet, h: usize) -> ElementSet {
    combine(g, &elements(g, a), h, true)
}

/// Every `k`-subset of the group, as index lists.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `2..=n_max`.
pub fn groups_up_to(n_max: usize) -> Vec<GroupSpec> {
    (2..=n_max)
        .flat_map(|n| GroupSpec::all_of_order(n).unwrap())
        .collect()
}
