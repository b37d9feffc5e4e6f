//! Graded ordered sets, partial rulings and flagged complexes.
//!
//! Indices are 0-based in this API (index 0 is the bottom of the flag);
//! text and JSON formats print them 1-based. A differential is a square
//! matrix whose entry `(r, c)` is the coefficient of basis vector `r` in
//! `d(b_c)`; flag-decreasing means strictly upper triangular.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::gfq::{odometer, Field, FqMatrix};
use crate::ring::{int_pow, SkeinScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlagError {
    #[error("invalid ruling: {0}")]
    InvalidRuling(String),
    #[error("matrix is not flag-decreasing of degree one at ({0}, {1})")]
    NotFlagDecreasing(usize, usize),
    #[error("differential does not square to zero")]
    NotADifferential,
    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },
}

/// Degrees of a basis listed bottom to top along the flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GradedSet {
    degrees: Vec<i32>,
}

impl GradedSet {
    pub fn new(degrees: Vec<i32>) -> Self {
        GradedSet { degrees }
    }

    pub fn empty() -> Self {
        GradedSet { degrees: Vec::new() }
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    #[inline]
    pub fn deg(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    /// `X[k]`: every degree decreases by `k`.
    pub fn shift(&self, k: i32) -> GradedSet {
        GradedSet::new(self.degrees.iter().map(|d| d - k).collect())
    }

    /// `self ⊗ top`: `top` is stacked above `self`.
    pub fn concat(&self, top: &GradedSet) -> GradedSet {
        let mut d = self.degrees.clone();
        d.extend_from_slice(&top.degrees);
        GradedSet::new(d)
    }

    /// Reversed order with negated degrees.
    pub fn dual(&self) -> GradedSet {
        GradedSet::new(self.degrees.iter().rev().map(|d| -d).collect())
    }

    /// Subset of positions, in order.
    pub fn select(&self, idx: &[usize]) -> GradedSet {
        GradedSet::new(idx.iter().map(|&i| self.degrees[i]).collect())
    }
}

impl fmt::Display for GradedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, d) in self.degrees.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", d)?;
        }
        f.write_str("]")
    }
}

/// `dim Hom^k(src, dst)`: pairs `(r, c)` with `deg_dst r = deg_src c + k`.
pub fn hom_dim(src: &GradedSet, dst: &GradedSet, k: i32) -> usize {
    let mut n = 0;
    for &c in src.degrees() {
        n += dst.degrees().iter().filter(|&&r| r == c + k).count();
    }
    n
}

/// `dim Hom^k_{<0}(x, x)`: pairs `r < c` with `deg r = deg c + k`.
pub fn hom_dim_strict(x: &GradedSet, k: i32) -> usize {
    let d = x.degrees();
    let mut n = 0;
    for c in 0..d.len() {
        for r in 0..c {
            if d[r] == d[c] + k {
                n += 1;
            }
        }
    }
    n
}

/// Pairs `(δ(i), i)` with `δ(i) < i`, stored sorted by the upper index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialRuling {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl PartialRuling {
    pub fn empty(n: usize) -> Self {
        PartialRuling { n, pairs: Vec::new() }
    }

    /// Checks the pairs against `x` and sorts them.
    pub fn new(x: &GradedSet, mut pairs: Vec<(usize, usize)>) -> Result<Self, FlagError> {
        let n = x.len();
        let mut used = vec![false; n];
        for &(o, c) in &pairs {
            if o >= c || c >= n {
                return Err(FlagError::InvalidRuling(alloc::format!("bad pair ({}, {})", o + 1, c + 1)));
            }
            if x.deg(o) != x.deg(c) + 1 {
                return Err(FlagError::InvalidRuling(alloc::format!(
                    "pair ({}, {}) has degrees {} and {}",
                    o + 1,
                    c + 1,
                    x.deg(o),
                    x.deg(c)
                )));
            }
            if used[o] || used[c] {
                return Err(FlagError::InvalidRuling(alloc::format!(
                    "index reused in pair ({}, {})",
                    o + 1,
                    c + 1
                )));
            }
            used[o] = true;
            used[c] = true;
        }
        pairs.sort_by_key(|p| p.1);
        Ok(PartialRuling { n, pairs })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// `|D|`.
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_full(&self) -> bool {
        2 * self.pairs.len() == self.n
    }

    /// `partner[i]` is the other index of the pair containing `i`.
    pub fn partners(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n];
        for &(o, c) in &self.pairs {
            p[o] = Some(c);
            p[c] = Some(o);
        }
        p
    }

    /// `δ` as a map on `D`.
    pub fn delta(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n];
        for &(o, c) in &self.pairs {
            p[c] = Some(o);
        }
        p
    }

    /// `δ^{-1}` as a map on `δ(D)`.
    pub fn delta_inv(&self) -> Vec<Option<usize>> {
        let mut p = vec![None; self.n];
        for &(o, c) in &self.pairs {
            p[o] = Some(c);
        }
        p
    }

    /// Indices in neither `D` nor `δ(D)`, ascending.
    pub fn unpaired(&self) -> Vec<usize> {
        let p = self.partners();
        (0..self.n).filter(|&i| p[i].is_none()).collect()
    }
}

impl fmt::Display for PartialRuling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (o, c)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({},{})", o + 1, c + 1)?;
        }
        f.write_str("]")
    }
}

/// All partial rulings of `x`, sorted.
pub fn enumerate_partial_rulings(x: &GradedSet) -> Vec<PartialRuling> {
    let mut out = Vec::new();
    let mut open = Vec::new();
    let mut pairs = Vec::new();
    walk_rulings(x, 0, false, &mut open, &mut pairs, &mut out);
    out.sort();
    out
}

/// All rulings of `x` that pair every index, sorted.
pub fn enumerate_full_rulings(x: &GradedSet) -> Vec<PartialRuling> {
    let mut out = Vec::new();
    if x.len() % 2 == 1 {
        return out;
    }
    let mut open = Vec::new();
    let mut pairs = Vec::new();
    walk_rulings(x, 0, true, &mut open, &mut pairs, &mut out);
    out.sort();
    out
}

fn walk_rulings(
    x: &GradedSet,
    i: usize,
    full: bool,
    open: &mut Vec<usize>,
    pairs: &mut Vec<(usize, usize)>,
    out: &mut Vec<PartialRuling>,
) {
    if i == x.len() {
        if open.is_empty() {
            let mut p = pairs.clone();
            p.sort_by_key(|p| p.1);
            out.push(PartialRuling { n: x.len(), pairs: p });
        }
        return;
    }
    if !full {
        walk_rulings(x, i + 1, full, open, pairs, out);
    }
    open.push(i);
    walk_rulings(x, i + 1, full, open, pairs, out);
    open.pop();
    for k in 0..open.len() {
        let o = open[k];
        if x.deg(o) == x.deg(i) + 1 {
            open.remove(k);
            pairs.push((o, i));
            walk_rulings(x, i + 1, full, open, pairs, out);
            pairs.pop();
            open.insert(k, o);
        }
    }
}

/// The normal-form differential `d(D, δ)`: a 1 at `(δ(i), i)` for `i ∈ D`.
pub fn ruling_differential(r: &PartialRuling) -> FqMatrix {
    let mut d = FqMatrix::zeros(r.n, r.n);
    for &(o, c) in &r.pairs {
        d.set(o, c, 1);
    }
    d
}

/// Checks shape, flag/degree support and `d² = 0`.
pub fn check_differential(f: &Field, x: &GradedSet, d: &FqMatrix) -> Result<(), FlagError> {
    let n = x.len();
    if d.rows() != n || d.cols() != n {
        return Err(FlagError::Shape { expected: n, got: d.rows().max(d.cols()) });
    }
    for r in 0..n {
        for c in 0..n {
            if d.get(r, c) != 0 && (r >= c || x.deg(r) != x.deg(c) + 1) {
                return Err(FlagError::NotFlagDecreasing(r, c));
            }
        }
    }
    if !d.mul(f, d).is_zero() {
        return Err(FlagError::NotADifferential);
    }
    Ok(())
}

/// A graded vector space with complete flag and a flag-decreasing differential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlaggedComplex {
    pub base: GradedSet,
    pub diff: FqMatrix,
}

impl FlaggedComplex {
    pub fn new(f: &Field, base: GradedSet, diff: FqMatrix) -> Result<Self, FlagError> {
        check_differential(f, &base, &diff)?;
        Ok(FlaggedComplex { base, diff })
    }

    pub fn normal_form(base: &GradedSet, r: &PartialRuling) -> Self {
        FlaggedComplex { base: base.clone(), diff: ruling_differential(r) }
    }

    pub fn dim(&self) -> usize {
        self.base.len()
    }
}

/// The partial ruling labelling the conjugacy class of `d`.
///
/// Left-to-right column reduction: the lowest nonzero row of each reduced
/// column is paired with that column.
pub fn bruhat_reduce(f: &Field, x: &GradedSet, d: &FqMatrix) -> Result<PartialRuling, FlagError> {
    check_differential(f, x, d)?;
    Ok(bruhat_reduce_unchecked(f, d))
}

/// Column reduction without validating the input.
pub fn bruhat_reduce_unchecked(f: &Field, d: &FqMatrix) -> PartialRuling {
    let n = d.cols();
    let mut cols: Vec<Vec<u8>> = (0..n).map(|c| (0..d.rows()).map(|r| d.get(r, c)).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; d.rows()];
    let mut pairs = Vec::new();
    for c in 0..n {
        while let Some(low) = (0..d.rows()).rev().find(|&r| cols[c][r] != 0) {
            match owner[low] {
                Some(j) => {
                    let factor = f.mul(cols[c][low], f.inv(cols[j][low]));
                    for r in 0..=low {
                        let v = f.sub(cols[c][r], f.mul(factor, cols[j][r]));
                        cols[c][r] = v;
                    }
                }
                None => {
                    owner[low] = Some(c);
                    pairs.push((low, c));
                    break;
                }
            }
        }
    }
    PartialRuling { n, pairs }
}

/// `m = #{i < j : deg i = deg j}`.
pub fn same_degree_pairs(x: &GradedSet) -> usize {
    hom_dim_strict(x, 0)
}

/// Exponents `(n - r, m - s)` with `|Aut(V, d(D,δ))| = (q-1)^{n-r} q^{m-s}`.
///
/// `s` is the rank of the linear relations that `A d = d A` imposes on the
/// off-diagonal entries, computed by merging entries that are set equal and
/// marking entries that are forced to vanish.
pub fn aut_exponents(x: &GradedSet, r: &PartialRuling) -> (usize, usize) {
    let n = x.len();
    let delta = r.delta();
    let delta_inv = r.delta_inv();
    // slot for each off-diagonal same-degree entry
    let mut slot = BTreeMap::new();
    for j in 0..n {
        for i in 0..j {
            if x.deg(i) == x.deg(j) {
                let k = slot.len();
                slot.insert((i, j), k);
            }
        }
    }
    let m = slot.len();
    let mut parent: Vec<usize> = (0..m).collect();
    let mut dead = vec![false; m];
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for i in 0..n {
        for k in 0..n {
            // (A d)_{ik} = a_{i,δ(k)} ; (d A)_{ik} = a_{δ^{-1}(i),k}
            let lhs = delta[k].filter(|&dk| i <= dk && x.deg(i) == x.deg(dk)).map(|dk| (i, dk));
            let rhs = delta_inv[i].filter(|&di| di <= k && x.deg(di) == x.deg(k)).map(|di| (di, k));
            let lhs = lhs.filter(|(a, b)| a != b);
            let rhs = rhs.filter(|(a, b)| a != b);
            match (lhs.and_then(|e| slot.get(&e).copied()), rhs.and_then(|e| slot.get(&e).copied())) {
                (Some(a), Some(b)) => {
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    if ra != rb {
                        parent[ra] = rb;
                        dead[rb] |= dead[ra];
                    }
                }
                (Some(a), None) | (None, Some(a)) => {
                    let ra = find(&mut parent, a);
                    dead[ra] = true;
                }
                (None, None) => {}
            }
        }
    }
    let mut free = 0;
    for a in 0..m {
        if find(&mut parent, a) == a && !dead[a] {
            free += 1;
        }
    }
    (n - r.rank(), free)
}

/// `|Aut(V, d(D,δ))|` as an element of the ring.
pub fn aut_count(x: &GradedSet, r: &PartialRuling) -> SkeinScalar {
    let (a, b) = aut_exponents(x, r);
    SkeinScalar::monomial(b as i64, a as i64)
}

/// `|Aut(V, d(D,δ))|` at a specific prime power `q`.
pub fn aut_count_at(x: &GradedSet, r: &PartialRuling, q: i64) -> BigInt {
    let (a, b) = aut_exponents(x, r);
    int_pow(q - 1, a as u64) * int_pow(q, b as u64)
}

/// The closed-form `s(D,δ)` counting pairs `(i, j)` with
/// `deg i = deg j + 1` and (`j ∈ D`, `δ(j) > i`) or (`i ∈ δ(D)`, `δ^{-1}(i) < j`).
///
/// This over-counts when one entry is forced to vanish by two relations,
/// so [`aut_exponents`] does not use it.
pub fn s_closed_form(x: &GradedSet, r: &PartialRuling) -> usize {
    let n = x.len();
    let delta = r.delta();
    let delta_inv = r.delta_inv();
    let mut s = 0;
    for i in 0..n {
        for j in 0..n {
            if x.deg(i) != x.deg(j) + 1 {
                continue;
            }
            let a = delta[j].is_some_and(|dj| dj > i);
            let b = delta_inv[i].is_some_and(|di| di < j);
            if a || b {
                s += 1;
            }
        }
    }
    s
}

/// Iterates over the flag- and grading-preserving invertible matrices
/// (upper triangular, nonzero diagonal, nonzero entries only between equal degrees).
pub struct BorelIter {
    q: u8,
    n: usize,
    slots: Vec<(usize, usize)>,
    digits: Vec<u8>,
    done: bool,
}

impl BorelIter {
    pub fn new(f: &Field, x: &GradedSet) -> Self {
        let n = x.len();
        let mut slots = Vec::new();
        for i in 0..n {
            slots.push((i, i));
        }
        for j in 0..n {
            for i in 0..j {
                if x.deg(i) == x.deg(j) {
                    slots.push((i, j));
                }
            }
        }
        let digits = vec![0; slots.len()];
        BorelIter { q: f.q(), n, slots, digits, done: false }
    }

    /// Group order `(q-1)^n q^m`.
    pub fn order(&self) -> BigInt {
        int_pow(self.q as i64 - 1, self.n as u64) * int_pow(self.q as i64, (self.slots.len() - self.n) as u64)
    }
}

impl Iterator for BorelIter {
    type Item = FqMatrix;
    fn next(&mut self) -> Option<FqMatrix> {
        if self.done {
            return None;
        }
        let mut a = FqMatrix::zeros(self.n, self.n);
        for (k, &(i, j)) in self.slots.iter().enumerate() {
            let v = if k < self.n { self.digits[k] + 1 } else { self.digits[k] };
            a.set(i, j, v);
        }
        // diagonal digits range over q-1 values, the rest over q
        let mut k = self.slots.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            let base = if k < self.n { self.q - 1 } else { self.q };
            self.digits[k] += 1;
            if self.digits[k] < base {
                break;
            }
            self.digits[k] = 0;
        }
        Some(a)
    }
}

/// All automorphisms of `(x, d)` by brute force over the Borel group.
pub fn enumerate_aut(f: &Field, x: &GradedSet, d: &FqMatrix) -> Vec<FqMatrix> {
    BorelIter::new(f, x).filter(|a| a.mul(f, d) == d.mul(f, a)).collect()
}

/// Every flag-decreasing differential on `x`, by brute force.
pub fn enumerate_differentials(f: &Field, x: &GradedSet) -> Vec<FqMatrix> {
    let n = x.len();
    let mut slots = Vec::new();
    for c in 0..n {
        for r in 0..c {
            if x.deg(r) == x.deg(c) + 1 {
                slots.push((r, c));
            }
        }
    }
    let mut digits = vec![0u8; slots.len()];
    let mut out = Vec::new();
    loop {
        let mut d = FqMatrix::zeros(n, n);
        for (k, &(r, c)) in slots.iter().enumerate() {
            d.set(r, c, digits[k]);
        }
        if d.mul(f, &d).is_zero() {
            out.push(d);
        }
        if !odometer(&mut digits, f.q()) {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(d: &[i32]) -> GradedSet {
        GradedSet::new(d.to_vec())
    }

    #[test]
    fn rulings_of_small_sets() {
        assert_eq!(enumerate_partial_rulings(&gs(&[1, 0])).len(), 2);
        assert_eq!(enumerate_full_rulings(&gs(&[1, 1, 0, 0])).len(), 2);
        assert_eq!(enumerate_full_rulings(&gs(&[0, 1])).len(), 0);
    }

    #[test]
    fn reduce_example() {
        let f = Field::new(2).unwrap();
        let x = gs(&[1, 0, 0]);
        let d = FqMatrix::from_rows(&[vec![0, 1, 1], vec![0, 0, 0], vec![0, 0, 0]]);
        let r = bruhat_reduce(&f, &x, &d).unwrap();
        assert_eq!(r.pairs(), &[(0, 1)]);
    }

    #[test]
    fn closed_form_double_counts() {
        let x = gs(&[1, 0, 0, -1]);
        let r = PartialRuling::new(&x, vec![(0, 1), (2, 3)]).unwrap();
        assert_eq!(aut_exponents(&x, &r), (2, 0));
        assert_eq!(s_closed_form(&x, &r), 2);
        assert_eq!(same_degree_pairs(&x), 1);
    }

    #[test]
    fn borel_order_matches_iteration() {
        let f = Field::new(3).unwrap();
        let x = gs(&[0, 0, 1]);
        let it = BorelIter::new(&f, &x);
        let order = it.order();
        assert_eq!(BigInt::from(it.count()), order);
    }
}
