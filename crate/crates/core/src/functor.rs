//! The functor Φ from tangle words to [`HMorphism`]s, and checks comparing
//! it with ν, bending, dualities and the Hecke relations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_bigint::BigInt;
use num_traits::One;

use crate::flags::{
    aut_count_at, enumerate_differentials, enumerate_full_rulings, hom_dim_strict, ruling_differential, same_degree_pairs, FlaggedComplex,
    GradedSet, PartialRuling,
};
use crate::gfq::{Field, Fq, FqMatrix};
use crate::hcat::{
    bend_iso, canonical_key, compose, key_to_quintuple, cone_set, dual_d, dual_vee, from_triples, identity, tensor_ext, tensor_full,
    HContext, HError, HMorphism, HTriple,
};
use crate::ring::{q_power, ExactRational, RingError};
use crate::ring::SkeinScalar;
use crate::tangle::{bend, dual_h, dual_v, nu, nu_extend, MoveInstance, SkeinVector, Slice, TangleError, TangleWord};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PhiError {
    #[error(transparent)]
    Tangle(#[from] TangleError),
    #[error(transparent)]
    Category(#[from] HError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Objects are already stored as graded ordered sets.
pub fn phi_object(x: &GradedSet) -> GradedSet {
    x.clone()
}

fn rat(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

fn zero_complex(x: &GradedSet) -> FlaggedComplex {
    FlaggedComplex { base: x.clone(), diff: FqMatrix::zeros(x.len(), x.len()) }
}

/// The bare elementary image of a slice whose left side carries `left`
/// (the two strands it acts on, or nothing for a birth).
pub fn phi_elementary(ctx: &HContext, s: &Slice, left: &[i32]) -> Result<HMorphism, PhiError> {
    let f = ctx.field();
    let qm1 = ctx.q() as i64 - 1;
    let (coef, t) = match *s {
        Slice::Birth { deg, .. } => {
            let e = GradedSet::new(vec![deg + 1, deg]);
            let mut d = FqMatrix::zeros(2, 2);
            d.set(0, 1, 1);
            let src = FlaggedComplex::new(f, e, d).map_err(HError::from)?;
            (ExactRational::new(BigInt::one(), BigInt::from(qm1)), HTriple::new(f, src, zero_complex(&GradedSet::empty()), FqMatrix::zeros(0, 2))?)
        }
        Slice::Death { .. } => {
            let e = GradedSet::new(left.to_vec());
            let mut d = FqMatrix::zeros(2, 2);
            d.set(0, 1, 1);
            let dst = FlaggedComplex::new(f, e, d).map_err(HError::from)?;
            (ExactRational::new(BigInt::one(), BigInt::from(qm1)), HTriple::new(f, zero_complex(&GradedSet::empty()), dst, FqMatrix::zeros(2, 0))?)
        }
        Slice::Cross { .. } => {
            let dst = GradedSet::new(left.to_vec());
            let src = GradedSet::new(vec![left[1], left[0]]);
            let t = FqMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
            (ExactRational::new(BigInt::one(), BigInt::from(qm1 * qm1)), HTriple::new(f, zero_complex(&src), zero_complex(&dst), t)?)
        }
    };
    Ok(from_triples(ctx, &[(coef, t)])?)
}

/// Splits the strands on the left of a slice into (below, acted on, above).
fn split(s: &Slice, left: &[i32]) -> (GradedSet, Vec<i32>, GradedSet) {
    let p = s.pos() - 1;
    match s {
        Slice::Birth { .. } => (GradedSet::new(left[..p].to_vec()), Vec::new(), GradedSet::new(left[p..].to_vec())),
        _ => (
            GradedSet::new(left[..p].to_vec()),
            left[p..p + 2].to_vec(),
            GradedSet::new(left[p + 2..].to_vec()),
        ),
    }
}

/// `Φ` with a cache of slice images. Not shareable across threads; build
/// one per worker.
pub struct Phi {
    ctx: HContext,
    cache: RefCell<BTreeMap<(Slice, Vec<i32>), HMorphism>>,
    key_cache: RefCell<BTreeMap<KeyColumn, HMorphism>>,
}

/// A key's source ruling and target degrees, then the slice and its left side.
type KeyColumn = (PartialRuling, Vec<i32>, Slice, Vec<i32>);

impl Phi {
    pub fn new(q: u32) -> Result<Self, PhiError> {
        Ok(Phi { ctx: HContext::new(q)?, cache: RefCell::new(BTreeMap::new()), key_cache: RefCell::new(BTreeMap::new()) })
    }

    pub fn ctx(&self) -> &HContext {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    /// `1_below ⊗ e ⊗ 1_above` for the slice `s` with left-side degrees `left`.
    pub fn slice(&self, s: &Slice, left: &[i32]) -> Result<HMorphism, PhiError> {
        let key = (*s, left.to_vec());
        if let Some(m) = self.cache.borrow().get(&key) {
            return Ok(m.clone());
        }
        let m = phi_slice_tensor(&self.ctx, s, left)?;
        self.cache.borrow_mut().insert(key, m.clone());
        Ok(m)
    }

    /// Left fold over the slices, target side first, through [`Phi::extend`].
    pub fn word(&self, w: &TangleWord) -> Result<HMorphism, PhiError> {
        w.strand_degrees()?;
        let mut acc = identity(&self.ctx, &w.left);
        for s in &w.slices {
            acc = self.extend(&acc, s)?;
        }
        Ok(acc)
    }

    /// `acc ∘ Φ(s)`, expanded over the keys of `acc`. A key with source
    /// ruling `r` only composes with [`phi_slice_column`] for `r`, so each
    /// `key ∘ column` is computed once and cached.
    pub fn extend(&self, acc: &HMorphism, s: &Slice) -> Result<HMorphism, PhiError> {
        let left = acc.src().degrees().to_vec();
        let dst = acc.dst().degrees().to_vec();
        let right = TangleWord::new(acc.src().clone(), vec![*s]).right()?;
        let mut out = HMorphism::zero(self.q(), right, acc.dst().clone());
        for (k, c) in acc.terms() {
            let ck = (k.clone(), dst.clone(), *s, left.clone());
            let hit = self.key_cache.borrow().get(&ck).cloned();
            let img = match hit {
                Some(img) => img,
                None => {
                    let r = key_to_quintuple(acc.src(), acc.dst(), k).src_ruling;
                    let col = phi_slice_column(&self.ctx, s, &left, &r)?;
                    let unit = HMorphism::single(self.q(), acc.src().clone(), acc.dst().clone(), k.clone(), ExactRational::one());
                    let img = compose(&self.ctx, &unit, &col)?;
                    self.key_cache.borrow_mut().insert(ck, img.clone());
                    img
                }
            };
            for (k2, c2) in img.terms() {
                out.add_term(k2.clone(), c * c2);
            }
        }
        Ok(out)
    }

    /// Right fold over the slices, source side first, composing full slice
    /// images built with [`tensor_ext`].
    pub fn word_right_fold(&self, w: &TangleWord) -> Result<HMorphism, PhiError> {
        let degs = w.strand_degrees()?;
        let mut acc: Option<HMorphism> = None;
        for (k, s) in w.slices.iter().enumerate().rev() {
            let m = self.slice(s, &degs[k])?;
            acc = Some(match acc {
                None => m,
                Some(a) => compose(&self.ctx, &m, &a)?,
            });
        }
        Ok(acc.unwrap_or_else(|| identity(&self.ctx, &w.left)))
    }
}

/// Slice image assembled with [`tensor_ext`] from the elementary image.
pub fn phi_slice_tensor(ctx: &HContext, s: &Slice, left: &[i32]) -> Result<HMorphism, PhiError> {
    let (below, mid, above) = split(s, left);
    let e = phi_elementary(ctx, s, &mid)?;
    let inner = tensor_ext(ctx, &e, &identity(ctx, &above))?;
    Ok(tensor_ext(ctx, &identity(ctx, &below), &inner)?)
}

/// Same as [`phi_slice_tensor`] but through [`tensor_full`].
pub fn phi_slice_tensor_full(ctx: &HContext, s: &Slice, left: &[i32]) -> Result<HMorphism, PhiError> {
    let (below, mid, above) = split(s, left);
    let e = phi_elementary(ctx, s, &mid)?;
    let inner = tensor_full(ctx, &e, &identity(ctx, &above))?;
    Ok(tensor_full(ctx, &identity(ctx, &below), &inner)?)
}

/// `∏_{i≥0} |Hom^{-i}_{<0}(Z,Z)|^{(-1)^{i+1}}` as a power of `q`.
fn strict_euler_exponent(z: &GradedSet) -> i64 {
    let span = match (z.degrees().iter().max(), z.degrees().iter().min()) {
        (Some(a), Some(b)) => (a - b) as i64 + 1,
        _ => 0,
    };
    let mut e = 0i64;
    for i in 0..=span {
        let s = if i % 2 == 0 { -1 } else { 1 };
        e += s * hom_dim_strict(z, -(i as i32)) as i64;
    }
    e
}

/// Block-diagonal placement helper.
fn diag3(a: &FqMatrix, b: &FqMatrix, c: &FqMatrix) -> FqMatrix {
    let (r, k) = (a.rows() + b.rows() + c.rows(), a.cols() + b.cols() + c.cols());
    let mut m = FqMatrix::zeros(r, k);
    m.put_block(0, 0, a);
    m.put_block(a.rows(), a.cols(), b);
    m.put_block(a.rows() + b.rows(), a.cols() + b.cols(), c);
    m
}

/// Common prefactor of the closed-form slice sums, as a power of `q` over a
/// power of `q - 1`.
fn closed_prefactor(q: i64, s: &Slice, left: &[i32]) -> ExactRational {
    let (below, mid, above) = split(s, left);
    match *s {
        Slice::Birth { .. } => {
            let z = below.concat(&above);
            q_power(q, strict_euler_exponent(&z)) / rat((q - 1).pow(z.len() as u32 + 1))
        }
        Slice::Death { .. } => {
            let z = below.concat(&GradedSet::new(mid)).concat(&above);
            q_power(q, strict_euler_exponent(&z)) / rat((q - 1).pow(z.len() as u32))
        }
        Slice::Cross { .. } => {
            let (m, n) = (mid[0], mid[1]);
            let z = below.concat(&GradedSet::new(mid)).concat(&above);
            let tau = if m > n { 0 } else if (m - n) % 2 == 0 { 1 } else { -1 };
            q_power(q, strict_euler_exponent(&z) + tau) / rat((q - 1).pow(z.len() as u32))
        }
    }
}

/// The summand of the closed-form image of `s` indexed by the differential
/// `b` on the target `left`, or `None` where the sum skips `b`.
fn closed_term(ctx: &HContext, s: &Slice, left: &[i32], b: &FqMatrix) -> Result<Option<HTriple>, PhiError> {
    let f = ctx.field();
    let (below, mid, above) = split(s, left);
    let (v, w) = (below.len(), above.len());
    let z = GradedSet::new(left.to_vec());
    let (src_set, sd, map) = match *s {
        Slice::Birth { deg, .. } => {
            let src_set = below.concat(&GradedSet::new(vec![deg + 1, deg])).concat(&above);
            let mut map = FqMatrix::zeros(v + w, v + w + 2);
            map.put_block(0, 0, &FqMatrix::identity(v));
            map.put_block(v, v + 2, &FqMatrix::identity(w));
            let mut sd = FqMatrix::zeros(v + w + 2, v + w + 2);
            sd.put_block(0, 0, &b.block(0, 0, v, v));
            sd.put_block(0, v + 2, &b.block(0, v, v, w));
            sd.put_block(v + 2, v + 2, &b.block(v, v, w, w));
            sd.set(v, v + 1, 1);
            (src_set, sd, map)
        }
        Slice::Death { .. } => {
            let bv = b.get(v, v + 1);
            if bv == 0 {
                return Ok(None);
            }
            let mut b22p = FqMatrix::zeros(2, 2);
            b22p.set(1, 0, f.inv(bv));
            let b12 = b.block(0, v, v, 2);
            let b23 = b.block(v, v + 2, 2, w);
            let corr = b12.mul(f, &b22p).mul(f, &b23);
            let mut sd = FqMatrix::zeros(v + w, v + w);
            sd.put_block(0, 0, &b.block(0, 0, v, v));
            sd.put_block(0, v, &b.block(0, v + 2, v, w).sub(f, &corr));
            sd.put_block(v, v, &b.block(v + 2, v + 2, w, w));
            let mut map = FqMatrix::zeros(v + w + 2, v + w);
            map.put_block(0, 0, &FqMatrix::identity(v));
            map.put_block(v, v, &b22p.mul(f, &b23).neg(f));
            map.put_block(v + 2, v, &FqMatrix::identity(w));
            (below.concat(&above), sd, map)
        }
        Slice::Cross { .. } => {
            if !b.block(v, v, 2, 2).is_zero() {
                return Ok(None);
            }
            let (m, n) = (mid[0], mid[1]);
            let tt = FqMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
            let map = diag3(&FqMatrix::identity(v), &tt, &FqMatrix::identity(w));
            let mut sd = FqMatrix::zeros(v + w + 2, v + w + 2);
            sd.put_block(0, 0, &b.block(0, 0, v, v));
            sd.put_block(0, v, &b.block(0, v, v, 2).mul(f, &tt));
            sd.put_block(0, v + 2, &b.block(0, v + 2, v, w));
            sd.put_block(v, v + 2, &tt.mul(f, &b.block(v, v + 2, 2, w)));
            sd.put_block(v + 2, v + 2, &b.block(v + 2, v + 2, w, w));
            (below.concat(&GradedSet::new(vec![n, m])).concat(&above), sd, map)
        }
    };
    Ok(Some(HTriple::new(
        f,
        FlaggedComplex::new(f, src_set, sd).map_err(HError::from)?,
        FlaggedComplex::new(f, z, b.clone()).map_err(HError::from)?,
        map,
    )?))
}

/// Slice image from the explicit sums over all differentials on the
/// ambient object. Exponential in the ambient size.
pub fn phi_slice_closed(ctx: &HContext, s: &Slice, left: &[i32]) -> Result<HMorphism, PhiError> {
    let pre = closed_prefactor(ctx.q() as i64, s, left);
    let mut terms = Vec::new();
    for b in enumerate_differentials(ctx.field(), &GradedSet::new(left.to_vec())) {
        if let Some(t) = closed_term(ctx, s, left, &b)? {
            terms.push((pre.clone(), t));
        }
    }
    Ok(from_triples(ctx, &terms)?)
}

/// Number of differentials on `x` conjugate to `d(D,δ)` under graded
/// flag-preserving automorphisms.
pub fn class_size(x: &GradedSet, r: &PartialRuling, q: i64) -> BigInt {
    let group = BigInt::from(q - 1).pow(x.len() as u32) * BigInt::from(q).pow(same_degree_pairs(x) as u32);
    group / aut_count_at(x, r, q)
}

/// The terms of the closed-form image of `s` whose target differential lies
/// in the class of `r`.
///
/// Summands are invariant under conjugation by flag-preserving maps that do
/// not mix the two strands of an equal-degree crossing. Those maps form a
/// subgroup with cosets `u_t = 1 + t e_{p,p+1}`, so the class sum is its size
/// over the coset count times the summands at `u_t d(D,δ) u_t^{-1}`.
pub fn phi_slice_column(ctx: &HContext, s: &Slice, left: &[i32], r: &PartialRuling) -> Result<HMorphism, PhiError> {
    let f = ctx.field();
    let q = ctx.q() as i64;
    let x = GradedSet::new(left.to_vec());
    let right = TangleWord::new(x.clone(), vec![*s]).right()?;
    let d = ruling_differential(r);
    let mut reps = vec![d.clone()];
    if let Slice::Cross { pos } = *s {
        let v = pos - 1;
        if left[v] == left[v + 1] {
            reps.clear();
            for t in 0..ctx.q() as u8 {
                let mut u = FqMatrix::identity(x.len());
                u.set(v, v + 1, t);
                let mut ui = FqMatrix::identity(x.len());
                ui.set(v, v + 1, f.neg(t));
                reps.push(u.mul(f, &d).mul(f, &ui));
            }
        }
    }
    let c = closed_prefactor(q, s, left) * ExactRational::from_integer(class_size(&x, r, q))
        / ExactRational::from_integer(BigInt::from(reps.len()));
    let mut out = HMorphism::zero(ctx.q(), right, x);
    for b in &reps {
        if let Some(t) = closed_term(ctx, s, left, b)? {
            out.add_term(canonical_key(f, &t)?, c.clone());
        }
    }
    Ok(out)
}

/// Pairs each full ruling of `x` with the key of `(d(D,δ), 0, 0): x → ∅`.
pub fn ruling_dictionary(ctx: &HContext, x: &GradedSet) -> Result<Vec<(PartialRuling, PartialRuling)>, PhiError> {
    enumerate_full_rulings(x).into_iter().map(|r| Ok((r.clone(), ruling_key(ctx, x, &r)?))).collect()
}

/// The key of the normal-form complex of `r`, viewed as a morphism `x → ∅`.
pub fn ruling_key(ctx: &HContext, x: &GradedSet, r: &PartialRuling) -> Result<PartialRuling, PhiError> {
    let f = ctx.field();
    let t = HTriple::new(f, FlaggedComplex::normal_form(x, r), zero_complex(&GradedSet::empty()), FqMatrix::zeros(0, x.len()))?;
    Ok(canonical_key(f, &t)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of a named check over a number of instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new(check: &str) -> Self {
        Report { check: check.into(), instances: 0, failures: Vec::new() }
    }

    /// Counts one instance and records it as a failure unless `ok`.
    pub fn record(&mut self, ok: bool, input: impl FnOnce() -> String, lhs: impl FnOnce() -> String, rhs: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures.push(Failure { input: input(), lhs: lhs(), rhs: rhs() });
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.instances += other.instances;
        self.failures.extend(other.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn one_line(w: &TangleWord) -> String {
    format!("{}", w).replace('\n', " ")
}

/// Evaluates ν at `q` and transports it along the ruling dictionary.
pub fn nu_as_morphism(phi: &Phi, w: &TangleWord) -> Result<HMorphism, PhiError> {
    let v = nu(w)?;
    let mut out = HMorphism::zero(phi.q(), v.src.clone(), GradedSet::empty());
    for (r, c) in v.eval(phi.q() as i64)? {
        out.add_term(ruling_key(phi.ctx(), &v.src, &r)?, c);
    }
    Ok(out)
}

/// ν(w) at `q` against Φ(w), for `w` with empty left boundary.
pub fn compare_nu_phi(phi: &Phi, w: &TangleWord) -> Result<Report, PhiError> {
    let lhs = nu_as_morphism(phi, w)?;
    let rhs = phi.word(w)?;
    let mut rep = Report::new("compare_nu_phi");
    rep.record(lhs == rhs, || one_line(w), || format!("{}", lhs), || format!("{}", rhs));
    Ok(rep)
}

/// Grading-valid slices that can follow a word whose right boundary has
/// degrees `degs`, keeping every strand degree in `lo..=hi`.
pub fn next_slices(degs: &[i32], lo: i32, hi: i32) -> Vec<Slice> {
    let k = degs.len();
    let mut out = Vec::new();
    for deg in lo..hi {
        for pos in 1..=k + 1 {
            out.push(Slice::Birth { deg, pos });
        }
    }
    for pos in 1..k {
        if degs[pos - 1] == degs[pos] + 1 {
            out.push(Slice::Death { pos });
        }
    }
    for pos in 1..k {
        out.push(Slice::Cross { pos });
    }
    out
}

struct Walk<'a> {
    phi: &'a Phi,
    lo: i32,
    hi: i32,
    dict: BTreeMap<(Vec<i32>, PartialRuling), PartialRuling>,
    rep: Report,
}

impl Walk<'_> {
    fn visit(&mut self, w: &mut TangleWord, v: &SkeinVector, m: &HMorphism, left: usize) -> Result<(), PhiError> {
        let degs = v.src.degrees().to_vec();
        let mut lhs = HMorphism::zero(self.phi.q(), v.src.clone(), GradedSet::empty());
        for (r, c) in v.eval(self.phi.q() as i64)? {
            let dk = (degs.clone(), r);
            if !self.dict.contains_key(&dk) {
                let key = ruling_key(self.phi.ctx(), &v.src, &dk.1)?;
                self.dict.insert(dk.clone(), key);
            }
            lhs.add_term(self.dict[&dk].clone(), c);
        }
        let word = &*w;
        self.rep.record(lhs == *m, || one_line(word), || format!("{}", lhs), || format!("{}", m));
        if left == 0 {
            return Ok(());
        }
        for s in next_slices(&degs, self.lo, self.hi) {
            let v2 = nu_extend(v, &s)?;
            let m2 = self.phi.extend(m, &s)?;
            w.slices.push(s);
            self.visit(w, &v2, &m2, left - 1)?;
            w.slices.pop();
        }
        Ok(())
    }
}

/// [`compare_nu_phi`] on every grading-valid word with empty left boundary,
/// at most `max_slices` slices and strand degrees in `lo..=hi`. Words are
/// walked as a trie so ν and Φ of each prefix are extended by one slice.
pub fn compare_nu_phi_exhaustive(phi: &Phi, max_slices: usize, lo: i32, hi: i32) -> Result<Report, PhiError> {
    let mut walk = Walk { phi, lo, hi, dict: BTreeMap::new(), rep: Report::new("compare_nu_phi") };
    let mut w = TangleWord::identity(&GradedSet::empty());
    let v = nu(&w)?;
    let m = identity(phi.ctx(), &w.left);
    walk.visit(&mut w, &v, &m, max_slices)?;
    Ok(walk.rep)
}

/// ν of a move side after bending it to an empty left boundary.
pub fn bent_nu_side(side: &[(SkeinScalar, TangleWord)], left: &GradedSet, right: &GradedSet) -> Result<SkeinVector, PhiError> {
    let mut out = SkeinVector::zero(left.shift(-1).concat(right));
    for (c, w) in side {
        out.add_scaled(&nu(&bend(w)?)?, c)?;
    }
    Ok(out)
}

/// Φ of a move side at the field of `phi`.
pub fn phi_side(phi: &Phi, side: &[(SkeinScalar, TangleWord)], left: &GradedSet, right: &GradedSet) -> Result<HMorphism, PhiError> {
    let mut out = HMorphism::zero(phi.q(), right.clone(), left.clone());
    for (c, w) in side {
        let v = c.eval(phi.q() as i64)?;
        out = out.add(&phi.word(w)?.scale(&v))?;
    }
    Ok(out)
}

/// Both sides of a move agree under ν (symbolically) and, given `phi`, under Φ.
pub fn verify_move(phi: Option<&Phi>, inst: &MoveInstance) -> Result<Report, PhiError> {
    let mut rep = Report::new("moves");
    let label = || format!("{} {:?}", inst.kind, inst.labels);
    let l = bent_nu_side(&inst.lhs, &inst.left, &inst.right)?;
    let r = bent_nu_side(&inst.rhs, &inst.left, &inst.right)?;
    rep.record(l == r, || format!("nu {}", label()), || format!("{}", l), || format!("{}", r));
    if let Some(phi) = phi {
        let l = phi_side(phi, &inst.lhs, &inst.left, &inst.right)?;
        let r = phi_side(phi, &inst.rhs, &inst.left, &inst.right)?;
        rep.record(l == r, || format!("phi q={} {}", phi.q(), label()), || format!("{}", l), || format!("{}", r));
    }
    Ok(rep)
}

/// Φ(bend(w)) against the cone bending of Φ(w).
pub fn bend_square(phi: &Phi, w: &TangleWord) -> Result<Report, PhiError> {
    let lhs = phi.word(&bend(w)?)?;
    let rhs = bend_iso(&phi.word(w)?);
    let mut rep = Report::new("bend_square");
    rep.record(lhs == rhs, || one_line(w), || format!("{}", lhs), || format!("{}", rhs));
    Ok(rep)
}

/// `Φ∘D_v = D∘Φ` and `Φ∘D_h∘D_v = ∨∘Φ` on `w`.
pub fn duality_compat(phi: &Phi, w: &TangleWord) -> Result<Report, PhiError> {
    let base = phi.word(w)?;
    let mut rep = Report::new("duality_compat");
    let v = phi.word(&dual_v(w)?)?;
    let dv = dual_d(&base);
    rep.record(v == dv, || format!("D_v {}", one_line(w)), || format!("{}", v), || format!("{}", dv));
    let hv = phi.word(&dual_h(&dual_v(w)?)?)?;
    let vee = dual_vee(phi.ctx(), &base);
    rep.record(hv == vee, || format!("D_h D_v {}", one_line(w)), || format!("{}", hv), || format!("{}", vee));
    Ok(rep)
}

/// `T_1..T_n` on the degree-0 object with `n+1` strands.
pub struct HeckeContext {
    pub n: usize,
    pub v: GradedSet,
    pub one: HMorphism,
    pub gens: Vec<HMorphism>,
}

impl HeckeContext {
    pub fn new(phi: &Phi, n: usize) -> Result<Self, PhiError> {
        let v = GradedSet::new(vec![0; n + 1]);
        let one = phi.word(&TangleWord::identity(&v))?;
        let gens = (1..=n)
            .map(|i| phi.word(&TangleWord::new(v.clone(), vec![Slice::Cross { pos: i }])))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HeckeContext { n, v, one, gens })
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Braid, far-commutation and quadratic relations for `T_i`, plus the
/// count of keys of `Hom(V,V)`.
pub fn hecke_verify(phi: &Phi, n: usize) -> Result<Report, PhiError> {
    let ctx = phi.ctx();
    let h = HeckeContext::new(phi, n)?;
    let q = phi.q() as i64;
    let mut rep = Report::new("hecke");
    let keys = enumerate_full_rulings(&cone_set(&h.v, &h.v)).len();
    rep.record(keys == factorial(n + 1), || format!("|keys(V,V)|, n={}", n), || format!("{}", keys), || format!("{}", factorial(n + 1)));
    for i in 0..n {
        let t = &h.gens[i];
        let lhs = compose(ctx, t, t)?;
        let rhs = t.scale(&rat(q - 1)).add(&h.one.scale(&rat(q)))?;
        rep.record(lhs == rhs, || format!("T{}^2 = (q-1)T{} + q", i + 1, i + 1), || format!("{}", lhs), || format!("{}", rhs));
        if i + 1 < n {
            let u = &h.gens[i + 1];
            let lhs = compose(ctx, t, &compose(ctx, u, t)?)?;
            let rhs = compose(ctx, u, &compose(ctx, t, u)?)?;
            rep.record(lhs == rhs, || format!("T{0}T{1}T{0} = T{1}T{0}T{1}", i + 1, i + 2), || format!("{}", lhs), || format!("{}", rhs));
        }
        for j in (i + 2)..n {
            let u = &h.gens[j];
            let lhs = compose(ctx, t, u)?;
            let rhs = compose(ctx, u, t)?;
            rep.record(lhs == rhs, || format!("T{}T{} = T{}T{}", i + 1, j + 1, j + 1, i + 1), || format!("{}", lhs), || format!("{}", rhs));
        }
    }
    Ok(rep)
}

/// Row-reduced basis of the span of `vecs`, used as a canonical name.
fn span_key(f: &Field, vecs: &[Vec<Fq>], dim: usize) -> Vec<Vec<Fq>> {
    if vecs.is_empty() {
        return Vec::new();
    }
    let mut m = FqMatrix::from_rows(vecs);
    let piv = m.rref(f);
    debug_assert_eq!(m.cols(), dim);
    (0..piv.len()).map(|r| m.row(r).to_vec()).collect()
}

/// A complete flag as canonical bases of `V_1 ⊂ … ⊂ V_n`.
type Flag = Vec<Vec<Vec<Fq>>>;

fn all_vectors(q: u8, dim: usize) -> Vec<Vec<Fq>> {
    let mut out = Vec::new();
    let mut v = vec![0u8; dim];
    loop {
        out.push(v.clone());
        if !crate::gfq::odometer(&mut v, q) {
            return out;
        }
    }
}

fn rank_of(f: &Field, vecs: &[Vec<Fq>]) -> usize {
    if vecs.is_empty() {
        0
    } else {
        FqMatrix::from_rows(vecs).rank(f)
    }
}

/// Subspaces `U` with `lo ⊂ U ⊂ hi` and `dim U = dim lo + 1`.
fn intermediate(f: &Field, lo: &[Vec<Fq>], hi: &[Vec<Fq>], vectors: &[Vec<Fq>], dim: usize) -> Vec<Vec<Vec<Fq>>> {
    let mut seen = BTreeSet::new();
    let rlo = rank_of(f, lo);
    for v in vectors {
        let mut with = lo.to_vec();
        with.push(v.clone());
        if rank_of(f, &with) != rlo + 1 {
            continue;
        }
        let mut hv = hi.to_vec();
        hv.push(v.clone());
        if rank_of(f, &hv) != rank_of(f, hi) {
            continue;
        }
        seen.insert(span_key(f, &with, dim));
    }
    seen.into_iter().collect()
}

/// The Hecke operators on functions on complete flags of `F_q^{n+1}`,
/// built without the category: `T_i` sends a flag to the sum of the `q`
/// flags that differ from it exactly in `V_i`.
pub struct FlagOracle {
    pub flags: Vec<Flag>,
    pub ops: Vec<Vec<Vec<i64>>>,
}

impl FlagOracle {
    pub fn new(n: usize, q: u32) -> Result<Self, PhiError> {
        let f = Field::new(q).map_err(HError::from)?;
        let dim = n + 1;
        let vectors = all_vectors(f.q(), dim);
        let full: Vec<Vec<Fq>> = (0..dim).map(|i| FqMatrix::identity(dim).row(i).to_vec()).collect();
        let mut flags: Vec<Flag> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for fl in &flags {
                let lo = fl.last().cloned().unwrap_or_default();
                for u in intermediate(&f, &lo, &full, &vectors, dim) {
                    let mut g = fl.clone();
                    g.push(u);
                    next.push(g);
                }
            }
            flags = next;
        }
        flags.sort();
        let index: BTreeMap<Flag, usize> = flags.iter().cloned().enumerate().map(|(i, fl)| (fl, i)).collect();
        let mut ops = Vec::new();
        for i in 0..n {
            let mut t = vec![vec![0i64; flags.len()]; flags.len()];
            for (a, fl) in flags.iter().enumerate() {
                let lo = if i == 0 { Vec::new() } else { fl[i - 1].clone() };
                let hi = if i + 1 == n { full.clone() } else { fl[i + 1].clone() };
                for u in intermediate(&f, &lo, &hi, &vectors, dim) {
                    if u != fl[i] {
                        let mut g = fl.clone();
                        g[i] = u;
                        t[a][index[&g]] += 1;
                    }
                }
            }
            ops.push(t);
        }
        Ok(FlagOracle { flags, ops })
    }
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] != 0 {
                for j in 0..n {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

/// Hecke relations for the flag operators, by exact integer matrices.
pub fn flag_oracle_verify(n: usize, q: u32) -> Result<Report, PhiError> {
    let o = FlagOracle::new(n, q)?;
    let qi = q as i64;
    let size = o.flags.len();
    let mut rep = Report::new("flag_oracle");
    for (i, t) in o.ops.iter().enumerate() {
        let rows_ok = t.iter().all(|r| r.iter().filter(|&&x| x != 0).count() == q as usize && r.iter().all(|&x| x == 0 || x == 1));
        rep.record(rows_ok, || format!("rows of T{} have q unit entries", i + 1), || String::from("-"), || String::from("-"));
        let sq = mat_mul(t, t);
        let mut rhs = vec![vec![0i64; size]; size];
        for a in 0..size {
            for b in 0..size {
                rhs[a][b] = (qi - 1) * t[a][b] + if a == b { qi } else { 0 };
            }
        }
        rep.record(sq == rhs, || format!("T{}^2 = (q-1)T{} + q on {} flags", i + 1, i + 1, size), || String::from("differs"), || String::from("-"));
        if i + 1 < o.ops.len() {
            let u = &o.ops[i + 1];
            let l = mat_mul(t, &mat_mul(u, t));
            let r = mat_mul(u, &mat_mul(t, u));
            rep.record(l == r, || format!("braid T{} T{}", i + 1, i + 2), || String::from("differs"), || String::from("-"));
        }
        for j in (i + 2)..o.ops.len() {
            let u = &o.ops[j];
            rep.record(mat_mul(t, u) == mat_mul(u, t), || format!("T{} T{} commute", i + 1, j + 1), || String::from("differs"), || String::from("-"));
        }
    }
    Ok(rep)
}

/// Both sides of `|ω| ∏|C^{-i}|^{(-1)^{i+1}} = ∏|H^{-i}(C)|^{(-1)^{i+1}}`
/// for a graded complex, with `|ω| = |d C^0|`.
pub fn euler_identity_sides(f: &Field, c: &FlaggedComplex) -> (ExactRational, ExactRational) {
    let q = f.q() as i64;
    let x = &c.base;
    let idx = |k: i32| -> Vec<usize> { (0..x.len()).filter(|&i| x.deg(i) == k).collect() };
    let rank_from = |k: i32| -> usize {
        let (src, dst) = (idx(k), idx(k + 1));
        if src.is_empty() || dst.is_empty() {
            return 0;
        }
        let mut m = FqMatrix::zeros(dst.len(), src.len());
        for (a, &r) in dst.iter().enumerate() {
            for (b, &s) in src.iter().enumerate() {
                m.set(a, b, c.diff.get(r, s));
            }
        }
        m.rank(f)
    };
    let lo = x.degrees().iter().copied().min().unwrap_or(0).min(0);
    let mut lhs_e = rank_from(0) as i64;
    let mut rhs_e = 0i64;
    for k in lo..=0 {
        let i = -k as i64;
        let s = if i % 2 == 0 { -1 } else { 1 };
        let dim = idx(k).len() as i64;
        let h = dim - rank_from(k) as i64 - rank_from(k - 1) as i64;
        lhs_e += s * dim;
        rhs_e += s * h;
    }
    (q_power(q, lhs_e), q_power(q, rhs_e))
}
