//! Graded Legendrian tangle words, normal rulings and the invariant ν.
//!
//! A word lists slices left to right. The left boundary is the target of
//! the tangle and the right boundary its source. Positions are 1-based from
//! the bottom.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::flags::{enumerate_full_rulings, enumerate_partial_rulings, GradedSet, PartialRuling};
use crate::ring::{ExactRational, RingError, SkeinScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TangleError {
    /// `index` is 0-based; messages count slices from 1.
    #[error("slice {}: position {pos} out of range for {strands} strands", index + 1)]
    PositionOutOfRange { index: usize, pos: usize, strands: usize },
    #[error("slice {}: death cusp joins degrees {lower} (bottom) and {upper} (top)", index + 1)]
    CuspDegreeMismatch { index: usize, lower: i32, upper: i32 },
    #[error("boundary mismatch: {0} vs {1}")]
    BoundaryMismatch(GradedSet, GradedSet),
    #[error("left boundary must be empty, found {0}")]
    NonEmptyLeft(GradedSet),
}

/// One elementary slice. `Birth` is a cusp with its point on the left
/// creating strands `pos, pos+1` of degrees `(deg+1, deg)`; `Death` is a cusp
/// with its point on the right; `Cross` swaps strands `pos, pos+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slice {
    Birth { deg: i32, pos: usize },
    Death { pos: usize },
    Cross { pos: usize },
}

impl Slice {
    pub fn pos(&self) -> usize {
        match *self {
            Slice::Birth { pos, .. } | Slice::Death { pos } | Slice::Cross { pos } => pos,
        }
    }

    fn with_pos(self, pos: usize) -> Slice {
        match self {
            Slice::Birth { deg, .. } => Slice::Birth { deg, pos },
            Slice::Death { .. } => Slice::Death { pos },
            Slice::Cross { .. } => Slice::Cross { pos },
        }
    }
}

impl fmt::Display for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Slice::Birth { deg, pos } => write!(f, "B({})@{}", deg, pos),
            Slice::Death { pos } => write!(f, "D@{}", pos),
            Slice::Cross { pos } => write!(f, "X@{}", pos),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TangleWord {
    pub left: GradedSet,
    pub slices: Vec<Slice>,
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "left: {}\nslices:", self.left)?;
        for (i, s) in self.slices.iter().enumerate() {
            if i > 0 {
                f.write_str(" ;")?;
            }
            write!(f, " {}", s)?;
        }
        Ok(())
    }
}

impl TangleWord {
    pub fn new(left: GradedSet, slices: Vec<Slice>) -> Self {
        TangleWord { left, slices }
    }

    /// The identity tangle on `x`.
    pub fn identity(x: &GradedSet) -> Self {
        TangleWord { left: x.clone(), slices: Vec::new() }
    }

    /// Strand degrees before each slice, plus the right boundary at the end.
    pub fn strand_degrees(&self) -> Result<Vec<Vec<i32>>, TangleError> {
        let mut cur = self.left.degrees().to_vec();
        let mut out = Vec::with_capacity(self.slices.len() + 1);
        for (index, s) in self.slices.iter().enumerate() {
            out.push(cur.clone());
            let k = cur.len();
            match *s {
                Slice::Birth { deg, pos } => {
                    if pos == 0 || pos > k + 1 {
                        return Err(TangleError::PositionOutOfRange { index, pos, strands: k });
                    }
                    cur.insert(pos - 1, deg);
                    cur.insert(pos - 1, deg + 1);
                }
                Slice::Death { pos } => {
                    if pos == 0 || pos + 1 > k {
                        return Err(TangleError::PositionOutOfRange { index, pos, strands: k });
                    }
                    let (lower, upper) = (cur[pos - 1], cur[pos]);
                    if lower != upper + 1 {
                        return Err(TangleError::CuspDegreeMismatch { index, lower, upper });
                    }
                    cur.drain(pos - 1..=pos);
                }
                Slice::Cross { pos } => {
                    if pos == 0 || pos + 1 > k {
                        return Err(TangleError::PositionOutOfRange { index, pos, strands: k });
                    }
                    cur.swap(pos - 1, pos);
                }
            }
        }
        out.push(cur);
        Ok(out)
    }

    pub fn right(&self) -> Result<GradedSet, TangleError> {
        let mut d = self.strand_degrees()?;
        Ok(GradedSet::new(d.pop().unwrap_or_default()))
    }

    pub fn crossings(&self) -> usize {
        self.slices.iter().filter(|s| matches!(s, Slice::Cross { .. })).count()
    }
}

/// Returns `(left, right)` boundaries of a grading-valid word.
pub fn check_grading(w: &TangleWord) -> Result<(GradedSet, GradedSet), TangleError> {
    Ok((w.left.clone(), w.right()?))
}

/// `g ∘ f`: the slices of `g` followed by those of `f`.
pub fn compose_words(g: &TangleWord, f: &TangleWord) -> Result<TangleWord, TangleError> {
    let gr = g.right()?;
    f.right()?;
    if gr != f.left {
        return Err(TangleError::BoundaryMismatch(gr, f.left.clone()));
    }
    let mut slices = g.slices.clone();
    slices.extend_from_slice(&f.slices);
    Ok(TangleWord { left: g.left.clone(), slices })
}

/// `bottom ⊗ top`: `top` drawn above `bottom`.
pub fn stack_words(top: &TangleWord, bottom: &TangleWord) -> Result<TangleWord, TangleError> {
    top.right()?;
    bottom.right()?;
    let k = bottom.left.len();
    let mut slices: Vec<Slice> = top.slices.iter().map(|s| s.with_pos(s.pos() + k)).collect();
    slices.extend_from_slice(&bottom.slices);
    Ok(TangleWord { left: bottom.left.concat(&top.left), slices })
}

/// Weight of a crossing whose left-bottom strand has degree `m` and
/// left-top strand degree `n`, for `m ≠ n`.
pub fn crossing_weight(m: i32, n: i32) -> SkeinScalar {
    if m < n {
        SkeinScalar::q_pow(if (n - m) % 2 == 0 { 1 } else { -1 })
    } else {
        SkeinScalar::one()
    }
}

fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a0, a1) = (a.0.min(a.1), a.0.max(a.1));
    let (b0, b1) = (b.0.min(b.1), b.0.max(b.1));
    (a0 < b0 && b0 < a1 && a1 < b1) || (b0 < a0 && a0 < b1 && b1 < a1)
}

/// Partner arrays over strand positions; one entry per strand.
type Chords = Vec<usize>;

fn swap_positions(c: &mut Chords, i: usize, j: usize) {
    c.swap(i, j);
    for v in c.iter_mut() {
        if *v == i {
            *v = j;
        } else if *v == j {
            *v = i;
        }
    }
}

/// How a ruling passes a crossing of equal degrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingRole {
    Plain,
    Switch,
    Departure,
    Return,
}

/// All ways a ruling state extends across one slice, with factors.
fn step(chords: &Chords, degs: &[i32], s: &Slice) -> Vec<(Chords, SkeinScalar, Option<CrossingRole>)> {
    match *s {
        Slice::Birth { pos, .. } => {
            let i = pos - 1;
            let mut c: Chords = chords.iter().map(|&v| if v >= i { v + 2 } else { v }).collect();
            c.insert(i, i + 1);
            c.insert(i + 1, i);
            vec![(c, SkeinScalar::q_minus_one_pow(-1), None)]
        }
        Slice::Death { pos } => {
            let i = pos - 1;
            if chords[i] != i + 1 {
                return Vec::new();
            }
            let mut c = chords.clone();
            c.drain(i..=i + 1);
            for v in c.iter_mut() {
                if *v > i + 1 {
                    *v -= 2;
                }
            }
            vec![(c, SkeinScalar::one(), None)]
        }
        Slice::Cross { pos } => {
            let (i, j) = (pos - 1, pos);
            if chords[i] == j {
                return Vec::new();
            }
            let (m, n) = (degs[i], degs[j]);
            let mut passed = chords.clone();
            swap_positions(&mut passed, i, j);
            if m != n {
                return vec![(passed, crossing_weight(m, n), Some(CrossingRole::Plain))];
            }
            let before = interleaved((i, chords[i]), (j, chords[j]));
            let mut out = Vec::with_capacity(2);
            if !before {
                out.push((chords.clone(), SkeinScalar::q_minus_one_pow(1), Some(CrossingRole::Switch)));
                out.push((passed, SkeinScalar::one(), Some(CrossingRole::Departure)));
            } else {
                out.push((passed, SkeinScalar::q_pow(1), Some(CrossingRole::Return)));
            }
            out
        }
    }
}

fn chords_to_ruling(right: &GradedSet, c: &Chords) -> PartialRuling {
    let pairs = c.iter().enumerate().filter(|&(i, &p)| i < p).map(|(i, &p)| (i, p)).collect();
    PartialRuling::new(right, pairs).expect("sweep preserves ruling degrees")
}

/// One normal ruling of a one-sided tangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleRuling {
    pub boundary: PartialRuling,
    pub weight: SkeinScalar,
    /// Role at each crossing slice, in word order.
    pub roles: Vec<CrossingRole>,
}

/// Depth-first enumeration of the normal rulings of `w`.
pub fn enumerate_tangle_rulings(w: &TangleWord) -> Result<Vec<TangleRuling>, TangleError> {
    if !w.left.is_empty() {
        return Err(TangleError::NonEmptyLeft(w.left.clone()));
    }
    let degs = w.strand_degrees()?;
    let right = GradedSet::new(degs[w.slices.len()].clone());
    let mut out = Vec::new();
    let mut roles = Vec::new();
    dfs(w, &degs, &right, 0, Vec::new(), SkeinScalar::one(), &mut roles, &mut out);
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    w: &TangleWord,
    degs: &[Vec<i32>],
    right: &GradedSet,
    k: usize,
    chords: Chords,
    weight: SkeinScalar,
    roles: &mut Vec<CrossingRole>,
    out: &mut Vec<TangleRuling>,
) {
    if k == w.slices.len() {
        out.push(TangleRuling { boundary: chords_to_ruling(right, &chords), weight, roles: roles.clone() });
        return;
    }
    for (c, f, role) in step(&chords, &degs[k], &w.slices[k]) {
        if let Some(r) = role {
            roles.push(r);
        }
        dfs(w, degs, right, k + 1, c, &weight * &f, roles, out);
        if role.is_some() {
            roles.pop();
        }
    }
}

/// A formal combination of full rulings of `src`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeinVector {
    pub src: GradedSet,
    pub terms: BTreeMap<PartialRuling, SkeinScalar>,
}

impl SkeinVector {
    pub fn zero(src: GradedSet) -> Self {
        SkeinVector { src, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, r: PartialRuling, c: SkeinScalar) {
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(r) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &SkeinScalar) -> SkeinVector {
        let mut out = SkeinVector::zero(self.src.clone());
        for (r, v) in &self.terms {
            out.add_term(r.clone(), v * c);
        }
        out
    }

    pub fn add_scaled(&mut self, other: &SkeinVector, c: &SkeinScalar) -> Result<(), TangleError> {
        if other.src != self.src {
            return Err(TangleError::BoundaryMismatch(self.src.clone(), other.src.clone()));
        }
        for (r, v) in &other.terms {
            self.add_term(r.clone(), v * c);
        }
        Ok(())
    }

    pub fn get(&self, r: &PartialRuling) -> SkeinScalar {
        self.terms.get(r).cloned().unwrap_or_else(SkeinScalar::zero)
    }

    /// Coefficients specialized at `q0`.
    pub fn eval(&self, q0: i64) -> Result<BTreeMap<PartialRuling, ExactRational>, RingError> {
        let mut out = BTreeMap::new();
        for (r, v) in &self.terms {
            let x = v.eval(q0)?;
            if x != ExactRational::from_integer(0.into()) {
                out.insert(r.clone(), x);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for SkeinVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (r, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            let s = alloc::format!("{}", c);
            if s.contains(' ') {
                write!(f, "({}) * {}", s, r)?;
            } else {
                write!(f, "{} * {}", s, r)?;
            }
        }
        Ok(())
    }
}

/// `ν(w)`, summing rulings by their boundary with a sweep over chord states.
pub fn nu(w: &TangleWord) -> Result<SkeinVector, TangleError> {
    if !w.left.is_empty() {
        return Err(TangleError::NonEmptyLeft(w.left.clone()));
    }
    let degs = w.strand_degrees()?;
    let mut states: BTreeMap<Chords, SkeinScalar> = BTreeMap::new();
    states.insert(Vec::new(), SkeinScalar::one());
    for (k, s) in w.slices.iter().enumerate() {
        let mut next: BTreeMap<Chords, SkeinScalar> = BTreeMap::new();
        for (c, v) in &states {
            for (c2, f, _) in step(c, &degs[k], s) {
                let add = v * &f;
                let e = next.entry(c2).or_insert_with(SkeinScalar::zero);
                *e += &add;
            }
        }
        next.retain(|_, v| !v.is_zero());
        states = next;
    }
    let right = GradedSet::new(degs[w.slices.len()].clone());
    let mut out = SkeinVector::zero(right.clone());
    for (c, v) in states {
        out.add_term(chords_to_ruling(&right, &c), v);
    }
    Ok(out)
}

/// Extends ν of a one-sided word `w` to ν of `w` followed by `s`.
pub fn nu_extend(v: &SkeinVector, s: &Slice) -> Result<SkeinVector, TangleError> {
    let w = TangleWord::new(v.src.clone(), vec![*s]);
    let degs = w.strand_degrees()?;
    let right = GradedSet::new(degs[1].clone());
    let mut out = SkeinVector::zero(right.clone());
    for (r, c) in &v.terms {
        let chords: Chords = r.partners().into_iter().map(|p| p.expect("ν is supported on full rulings")).collect();
        for (c2, f, _) in step(&chords, &degs[0], s) {
            out.add_term(chords_to_ruling(&right, &c2), c * &f);
        }
    }
    Ok(out)
}

/// ν of a formal combination of words sharing a right boundary.
pub fn nu_combination(terms: &[(SkeinScalar, TangleWord)], right: &GradedSet) -> Result<SkeinVector, TangleError> {
    let mut out = SkeinVector::zero(right.clone());
    for (c, w) in terms {
        out.add_scaled(&nu(w)?, c)?;
    }
    Ok(out)
}

/// The tangle `β_Y` with right boundary `Y[-1] ⊗ Y`.
pub fn beta_word(y: &GradedSet) -> TangleWord {
    let n = y.len();
    let mut slices = Vec::new();
    for k in (1..=n).rev() {
        slices.push(Slice::Birth { deg: y.deg(k - 1), pos: 1 });
        for p in 2..=(n - k + 1) {
            slices.push(Slice::Cross { pos: p });
        }
    }
    TangleWord { left: GradedSet::empty(), slices }
}

/// `β_Y ∘ (1_{Y[-1]} ⊗ w)` where `Y` is the left boundary of `w`.
pub fn bend(w: &TangleWord) -> Result<TangleWord, TangleError> {
    w.right()?;
    let k = w.left.len();
    let mut out = beta_word(&w.left);
    out.slices.extend(w.slices.iter().map(|s| s.with_pos(s.pos() + k)));
    Ok(out)
}

/// Number of returns in the ruling of `β_Y` attached to `(D,δ)`.
pub fn beta_returns(y: &GradedSet, r: &PartialRuling) -> usize {
    let delta = r.delta();
    let delta_inv = r.delta_inv();
    let n = y.len();
    let mut s = 0;
    for j in 0..n {
        for i in 0..j {
            if y.deg(i) != y.deg(j) + 1 || delta[j] == Some(i) {
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

/// The ruling of `Y[-1] ⊗ Y` induced by a partial ruling of `Y`.
pub fn beta_induced_ruling(y: &GradedSet, r: &PartialRuling) -> PartialRuling {
    let n = y.len();
    let mut pairs = Vec::new();
    for &(o, c) in r.pairs() {
        pairs.push((o, c));
        pairs.push((o + n, c + n));
    }
    for u in r.unpaired() {
        pairs.push((u, u + n));
    }
    PartialRuling::new(&y.shift(-1).concat(y), pairs).expect("induced ruling is valid")
}

/// Closed formula for `ν(β_Y)` as a sum over partial rulings of `Y`.
pub fn beta_rulings_formula(y: &GradedSet) -> SkeinVector {
    let n = y.len() as i64;
    let mut base: i64 = 0;
    for j in 0..y.len() {
        for i in 0..j {
            let (a, b) = (y.deg(i), y.deg(j));
            if a <= b {
                base -= if (a - b) % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    let mut out = SkeinVector::zero(y.shift(-1).concat(y));
    for r in enumerate_partial_rulings(y) {
        let a = base + beta_returns(y, &r) as i64;
        let c = SkeinScalar::monomial(a, -n + r.rank() as i64);
        out.add_term(beta_induced_ruling(y, &r), c);
    }
    out
}

/// `y = X_1` pairs with some `x` one degree lower; the recursive basis
/// removes that pair. Rulings of `x` in that order.
pub fn generator_ruling_order(x: &GradedSet) -> Vec<PartialRuling> {
    let n = x.len();
    if n == 0 {
        return vec![PartialRuling::empty(0)];
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in 1..n {
        if x.deg(j) != x.deg(0) - 1 {
            continue;
        }
        let rest: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        for sub in generator_ruling_order(&x.select(&rest)) {
            let mut pairs: Vec<(usize, usize)> = sub.pairs().iter().map(|&(o, c)| (rest[o], rest[c])).collect();
            pairs.push((0, j));
            out.push(PartialRuling::new(x, pairs).expect("extension is a ruling"));
        }
    }
    out
}

/// The spanning family of one-sided tangles with right boundary `x`, each a
/// composition of single-birth slices with the birth at the bottom and the
/// upper new strand routed upwards. Same order as [`generator_ruling_order`].
pub fn generator_words(x: &GradedSet) -> Vec<TangleWord> {
    let n = x.len();
    if n == 0 {
        return vec![TangleWord::identity(&GradedSet::empty())];
    }
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for j in 1..n {
        if x.deg(j) != x.deg(0) - 1 {
            continue;
        }
        let rest: Vec<usize> = (1..n).filter(|&k| k != j).collect();
        for sub in generator_words(&x.select(&rest)) {
            let mut w = sub;
            w.slices.push(Slice::Birth { deg: x.deg(j), pos: 1 });
            for p in 2..=j {
                w.slices.push(Slice::Cross { pos: p });
            }
            out.push(w);
        }
    }
    out
}

/// Reflection in a vertical axis: reverses the word and swaps cusp kinds.
pub fn dual_v(w: &TangleWord) -> Result<TangleWord, TangleError> {
    let degs = w.strand_degrees()?;
    let k = w.slices.len();
    let mut slices = Vec::with_capacity(k);
    for idx in (0..k).rev() {
        slices.push(match w.slices[idx] {
            Slice::Birth { pos, .. } => Slice::Death { pos },
            Slice::Death { pos } => Slice::Birth { deg: degs[idx][pos], pos },
            Slice::Cross { pos } => Slice::Cross { pos },
        });
    }
    Ok(TangleWord { left: GradedSet::new(degs[k].clone()), slices })
}

/// Reflection in a horizontal axis: reverses strand order and negates degrees.
pub fn dual_h(w: &TangleWord) -> Result<TangleWord, TangleError> {
    let degs = w.strand_degrees()?;
    let slices = w
        .slices
        .iter()
        .enumerate()
        .map(|(idx, s)| {
            let k = degs[idx].len();
            match *s {
                Slice::Birth { deg, pos } => Slice::Birth { deg: -deg - 1, pos: k + 2 - pos },
                Slice::Death { pos } => Slice::Death { pos: k - pos },
                Slice::Cross { pos } => Slice::Cross { pos: k - pos },
            }
        })
        .collect();
    Ok(TangleWord { left: w.left.dual(), slices })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    S1,
    S2,
    S3,
}

impl MoveKind {
    pub const ALL: [MoveKind; 6] = [MoveKind::R1, MoveKind::R2, MoveKind::R3, MoveKind::S1, MoveKind::S2, MoveKind::S3];

    /// Number of degree labels the move takes.
    pub fn arity(self) -> usize {
        match self {
            MoveKind::R1 | MoveKind::S2 | MoveKind::S3 => 1,
            MoveKind::R2 | MoveKind::S1 => 2,
            MoveKind::R3 => 3,
        }
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::R1 => "R1",
            MoveKind::R2 => "R2",
            MoveKind::R3 => "R3",
            MoveKind::S1 => "S1",
            MoveKind::S2 => "S2",
            MoveKind::S3 => "S3",
        };
        f.write_str(s)
    }
}

/// Two formal combinations of words with common boundaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveInstance {
    pub kind: MoveKind,
    pub labels: Vec<i32>,
    pub left: GradedSet,
    pub right: GradedSet,
    pub lhs: Vec<(SkeinScalar, TangleWord)>,
    pub rhs: Vec<(SkeinScalar, TangleWord)>,
}

impl MoveInstance {
    /// Applies a word-level duality to every word of both sides.
    pub fn map_words(&self, f: impl Fn(&TangleWord) -> Result<TangleWord, TangleError>) -> Result<MoveInstance, TangleError> {
        let map = |side: &[(SkeinScalar, TangleWord)]| -> Result<Vec<(SkeinScalar, TangleWord)>, TangleError> {
            side.iter().map(|(c, w)| Ok((c.clone(), f(w)?))).collect()
        };
        let lhs = map(&self.lhs)?;
        let rhs = map(&self.rhs)?;
        let probe = lhs.first().or(rhs.first()).expect("moves have at least one word");
        let (left, right) = check_grading(&probe.1)?;
        Ok(MoveInstance { kind: self.kind, labels: self.labels.clone(), left, right, lhs, rhs })
    }
}

fn word(left: &[i32], slices: &[Slice]) -> TangleWord {
    TangleWord::new(GradedSet::new(left.to_vec()), slices.to_vec())
}

/// One instance of a Reidemeister move or skein relation. `labels` has
/// length [`MoveKind::arity`].
pub fn move_instance(kind: MoveKind, labels: &[i32]) -> MoveInstance {
    assert_eq!(labels.len(), kind.arity(), "{} takes {} labels", kind, kind.arity());
    use Slice::*;
    let one = SkeinScalar::one;
    let (lhs, rhs) = match kind {
        MoveKind::R1 => {
            let n = labels[0];
            (
                vec![(one(), word(&[n], &[Birth { deg: n - 1, pos: 2 }, Cross { pos: 1 }, Death { pos: 2 }]))],
                vec![(one(), word(&[n], &[]))],
            )
        }
        MoveKind::R2 => {
            let (m, n) = (labels[0], labels[1]);
            let left = [m, n + 1, n];
            (
                vec![(one(), word(&left, &[Cross { pos: 1 }, Cross { pos: 2 }, Death { pos: 1 }]))],
                vec![(one(), word(&left, &[Death { pos: 2 }]))],
            )
        }
        MoveKind::R3 => {
            let left = [labels[0], labels[1], labels[2]];
            (
                vec![(one(), word(&left, &[Cross { pos: 2 }, Cross { pos: 1 }, Cross { pos: 2 }]))],
                vec![(one(), word(&left, &[Cross { pos: 1 }, Cross { pos: 2 }, Cross { pos: 1 }]))],
            )
        }
        MoveKind::S1 => {
            // a strand of degree n passing below / above a cusp with branches m, m-1
            let (m, n) = (labels[0], labels[1]);
            let e = if (m - n) % 2 == 0 { 1 } else { -1 };
            let lhs = vec![
                (one(), word(&[n], &[Birth { deg: m - 1, pos: 2 }, Cross { pos: 1 }])),
                (-SkeinScalar::q_pow(e), word(&[n], &[Birth { deg: m - 1, pos: 1 }, Cross { pos: 2 }])),
            ];
            let mut rhs = Vec::new();
            if m == n {
                rhs.push((SkeinScalar::q_minus_one_pow(1), word(&[n], &[Birth { deg: m - 1, pos: 2 }])));
            }
            if m == n + 1 {
                let c = SkeinScalar::monomial(-1, 1);
                rhs.push((-c, word(&[n], &[Birth { deg: m - 1, pos: 1 }])));
            }
            (lhs, rhs)
        }
        MoveKind::S2 => {
            let n = labels[0];
            (
                vec![(one(), word(&[], &[Birth { deg: n, pos: 1 }, Death { pos: 1 }]))],
                vec![(SkeinScalar::q_minus_one_pow(-1), word(&[], &[]))],
            )
        }
        MoveKind::S3 => {
            let n = labels[0];
            (vec![(one(), word(&[n - 1], &[Birth { deg: n, pos: 1 }, Death { pos: 2 }]))], Vec::new())
        }
    };
    let probe = &lhs[0].1;
    let (left, right) = check_grading(probe).expect("move words are grading-valid");
    MoveInstance { kind, labels: labels.to_vec(), left, right, lhs, rhs }
}

/// All instances of `kind` with labels in `lo..=hi`.
pub fn move_instances(kind: MoveKind, lo: i32, hi: i32) -> Vec<MoveInstance> {
    let mut out = Vec::new();
    let k = kind.arity();
    let mut labels = vec![lo; k];
    if lo > hi {
        return out;
    }
    loop {
        out.push(move_instance(kind, &labels));
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            if labels[i] < hi {
                labels[i] += 1;
                break;
            }
            labels[i] = lo;
            i += 1;
        }
    }
}

/// Full rulings of `x`, the basis indexing ν.
pub fn rulings_of(x: &GradedSet) -> Vec<PartialRuling> {
    enumerate_full_rulings(x)
}
