//! The category of flagged complexes: objects are graded ordered sets, and a
//! morphism `V -> W` is a rational combination of equivalence classes of
//! triples `(d_V, f, d_W)` with `f` a quasi-isomorphism.
//!
//! A class is stored by its key: the full ruling labelling the cone
//! `[[-d_W, f], [0, d_V]]` on `W[-1] ⊗ V` (the `W` block is at the bottom).
//! All coefficients are exact rationals at a fixed prime power `q`.

use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::flags::{
    aut_count_at, aut_exponents, bruhat_reduce_unchecked, check_differential, enumerate_aut,
    enumerate_partial_rulings, hom_dim, hom_dim_strict, ruling_differential, same_degree_pairs,
    BorelIter, FlagError, FlaggedComplex, GradedSet, PartialRuling,
};
use crate::gfq::{odometer, Field, FieldError, Fq, FqMatrix};
use crate::ring::{q_power, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HError {
    #[error(transparent)]
    Flag(#[from] FlagError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("map is not of degree zero at ({0}, {1})")]
    MapDegree(usize, usize),
    #[error("map does not commute with the differentials")]
    NotChainMap,
    #[error("map is not a quasi-isomorphism")]
    NotQuasiIso,
    #[error("objects do not match: {0}")]
    ObjectMismatch(&'static str),
    #[error("morphisms live over different fields: q = {0} and q = {1}")]
    FieldMismatch(u32, u32),
}

/// Field data shared by all computations at one `q`.
#[derive(Debug, Clone)]
pub struct HContext {
    field: Field,
}

impl HContext {
    pub fn new(q: u32) -> Result<Self, HError> {
        Ok(HContext { field: Field::new(q)? })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q() as u32
    }

    fn q_pow(&self, e: i64) -> ExactRational {
        q_power(self.q() as i64, e)
    }
}

/// A triple `(d_V, f, d_W)`; `map` has `dim W` rows and `dim V` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HTriple {
    pub src: FlaggedComplex,
    pub dst: FlaggedComplex,
    pub map: FqMatrix,
}

impl HTriple {
    /// Validates degree, chain-map and quasi-isomorphism conditions.
    pub fn new(f: &Field, src: FlaggedComplex, dst: FlaggedComplex, map: FqMatrix) -> Result<Self, HError> {
        let t = HTriple { src, dst, map };
        check_triple(f, &t)?;
        if !key_unchecked(f, &t).is_full() {
            return Err(HError::NotQuasiIso);
        }
        Ok(t)
    }
}

fn check_triple(f: &Field, t: &HTriple) -> Result<(), HError> {
    check_differential(f, &t.src.base, &t.src.diff)?;
    check_differential(f, &t.dst.base, &t.dst.diff)?;
    if t.map.rows() != t.dst.dim() || t.map.cols() != t.src.dim() {
        return Err(HError::ObjectMismatch("map shape"));
    }
    for r in 0..t.map.rows() {
        for c in 0..t.map.cols() {
            if t.map.get(r, c) != 0 && t.dst.base.deg(r) != t.src.base.deg(c) {
                return Err(HError::MapDegree(r, c));
            }
        }
    }
    if t.dst.diff.mul(f, &t.map) != t.map.mul(f, &t.src.diff) {
        return Err(HError::NotChainMap);
    }
    Ok(())
}

/// Graded set of the cone: `dst[-1]` below `src`.
pub fn cone_set(src: &GradedSet, dst: &GradedSet) -> GradedSet {
    dst.shift(-1).concat(src)
}

/// The cone complex `[[-d_W, f], [0, d_V]]`.
pub fn cone(f: &Field, t: &HTriple) -> FlaggedComplex {
    let (v, w) = (t.src.dim(), t.dst.dim());
    let mut m = FqMatrix::zeros(v + w, v + w);
    m.put_block(0, 0, &t.dst.diff.neg(f));
    m.put_block(0, w, &t.map);
    m.put_block(w, w, &t.src.diff);
    FlaggedComplex { base: cone_set(&t.src.base, &t.dst.base), diff: m }
}

fn key_unchecked(f: &Field, t: &HTriple) -> PartialRuling {
    bruhat_reduce_unchecked(f, &cone(f, t).diff)
}

/// The key of a triple: the ruling of its cone.
pub fn canonical_key(f: &Field, t: &HTriple) -> Result<PartialRuling, HError> {
    check_triple(f, t)?;
    let k = key_unchecked(f, t);
    if !k.is_full() {
        return Err(HError::NotQuasiIso);
    }
    Ok(k)
}

/// The quintuple `(D₁, δ₁, D₂, δ₂, σ)` carried by a key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quintuple {
    pub src_ruling: PartialRuling,
    pub dst_ruling: PartialRuling,
    /// `(i, σ(i))` from unpaired source indices to unpaired target indices.
    pub sigma: Vec<(usize, usize)>,
}

pub fn key_to_quintuple(src: &GradedSet, dst: &GradedSet, key: &PartialRuling) -> Quintuple {
    let w = dst.len();
    let mut sp = Vec::new();
    let mut dp = Vec::new();
    let mut sigma = Vec::new();
    for &(o, c) in key.pairs() {
        if c < w {
            dp.push((o, c));
        } else if o >= w {
            sp.push((o - w, c - w));
        } else {
            sigma.push((c - w, o));
        }
    }
    sigma.sort();
    Quintuple {
        src_ruling: PartialRuling::new(src, sp).expect("source block of a key"),
        dst_ruling: PartialRuling::new(dst, dp).expect("target block of a key"),
        sigma,
    }
}

pub fn quintuple_to_key(src: &GradedSet, dst: &GradedSet, q5: &Quintuple) -> Result<PartialRuling, HError> {
    let w = dst.len();
    let mut pairs: Vec<(usize, usize)> = q5.dst_ruling.pairs().to_vec();
    pairs.extend(q5.src_ruling.pairs().iter().map(|&(o, c)| (o + w, c + w)));
    pairs.extend(q5.sigma.iter().map(|&(i, j)| (j, i + w)));
    let k = PartialRuling::new(&cone_set(src, dst), pairs)?;
    if !k.is_full() {
        return Err(HError::NotQuasiIso);
    }
    Ok(k)
}

/// Normal-form representative: ruling differentials and a 0/1 partial permutation.
pub fn key_to_representative(src: &GradedSet, dst: &GradedSet, key: &PartialRuling) -> HTriple {
    let q5 = key_to_quintuple(src, dst, key);
    let mut map = FqMatrix::zeros(dst.len(), src.len());
    for &(i, j) in &q5.sigma {
        map.set(j, i, 1);
    }
    HTriple {
        src: FlaggedComplex::normal_form(src, &q5.src_ruling),
        dst: FlaggedComplex::normal_form(dst, &q5.dst_ruling),
        map,
    }
}

/// A finite rational combination of keys between two fixed objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HMorphism {
    q: u32,
    src: GradedSet,
    dst: GradedSet,
    terms: BTreeMap<PartialRuling, ExactRational>,
}

/// Terms as `c * key`, joined by ` + `; keys print 1-based.
impl core::fmt::Display for HMorphism {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} * {}", c, k)?;
        }
        Ok(())
    }
}

impl HMorphism {
    pub fn zero(q: u32, src: GradedSet, dst: GradedSet) -> Self {
        HMorphism { q, src, dst, terms: BTreeMap::new() }
    }

    pub fn single(q: u32, src: GradedSet, dst: GradedSet, key: PartialRuling, coeff: ExactRational) -> Self {
        let mut m = Self::zero(q, src, dst);
        m.add_term(key, coeff);
        m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn src(&self) -> &GradedSet {
        &self.src
    }

    pub fn dst(&self) -> &GradedSet {
        &self.dst
    }

    pub fn terms(&self) -> &BTreeMap<PartialRuling, ExactRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: PartialRuling, coeff: ExactRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Builds a morphism from keys, checking each is a full ruling of the cone set.
    pub fn from_terms(
        q: u32,
        src: GradedSet,
        dst: GradedSet,
        terms: Vec<(PartialRuling, ExactRational)>,
    ) -> Result<Self, HError> {
        let cs = cone_set(&src, &dst);
        let mut out = Self::zero(q, src, dst);
        for (k, c) in terms {
            let checked = PartialRuling::new(&cs, k.pairs().to_vec())?;
            if !checked.is_full() {
                return Err(HError::NotQuasiIso);
            }
            out.add_term(checked, c);
        }
        Ok(out)
    }

    fn check_same_hom(&self, other: &HMorphism) -> Result<(), HError> {
        if self.q != other.q {
            return Err(HError::FieldMismatch(self.q, other.q));
        }
        if self.src != other.src || self.dst != other.dst {
            return Err(HError::ObjectMismatch("sum of morphisms with different boundaries"));
        }
        Ok(())
    }

    pub fn add(&self, other: &HMorphism) -> Result<HMorphism, HError> {
        self.check_same_hom(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &HMorphism) -> Result<HMorphism, HError> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &ExactRational) -> HMorphism {
        let mut out = HMorphism::zero(self.q, self.src.clone(), self.dst.clone());
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }
}

/// `Σ_{i≥1} (-1)^i dim Hom^{-i}_{<0}(V, V)`.
fn compose_exponent(v: &GradedSet) -> i64 {
    let spread = degree_spread(v);
    (1..=spread).map(|i| sign(i) * hom_dim_strict(v, -(i as i32)) as i64).sum()
}

fn degree_spread(v: &GradedSet) -> i64 {
    let d = v.degrees();
    match (d.iter().min(), d.iter().max()) {
        (Some(a), Some(b)) => (b - a) as i64,
        _ => 0,
    }
}

#[inline]
fn sign(i: i64) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

fn check_composable(g: &HMorphism, f: &HMorphism) -> Result<(), HError> {
    if g.q != f.q {
        return Err(HError::FieldMismatch(g.q, f.q));
    }
    if g.src != f.dst {
        return Err(HError::ObjectMismatch("composition: target of f differs from source of g"));
    }
    Ok(())
}

/// `g ∘ f`.
///
/// The sum over `b ∈ Aut(V, d_V)` only sees `b` through its action on
/// cohomology, which is the upper-triangular block on the unpaired indices.
/// The sum therefore runs over that Borel subgroup and is scaled by the
/// order of the kernel.
pub fn compose(ctx: &HContext, g: &HMorphism, f: &HMorphism) -> Result<HMorphism, HError> {
    check_composable(g, f)?;
    let field = ctx.field();
    let (u, v, w) = (&f.src, &f.dst, &g.dst);
    let mut out = HMorphism::zero(f.q, u.clone(), w.clone());
    if f.is_zero() || g.is_zero() {
        return Ok(out);
    }
    let e_v = compose_exponent(v);
    let mut by_mid: BTreeMap<PartialRuling, Vec<(Quintuple, &ExactRational)>> = BTreeMap::new();
    for (k, c) in &f.terms {
        let q5 = key_to_quintuple(u, v, k);
        by_mid.entry(q5.dst_ruling.clone()).or_default().push((q5, c));
    }
    for (kg, cg) in &g.terms {
        let qg = key_to_quintuple(v, w, kg);
        let Some(fs) = by_mid.get(&qg.src_ruling) else { continue };
        let mid = &qg.src_ruling;
        let unpaired = mid.unpaired();
        let sub = v.select(&unpaired);
        let (torus, free) = aut_exponents(v, mid);
        let kernel_t = torus as i64 - unpaired.len() as i64;
        let kernel_u = free as i64 - same_degree_pairs(&sub) as i64;
        debug_assert!(kernel_t >= 0 && kernel_u >= 0);
        let kernel = ctx.q_pow(kernel_u) * BigRational::from_integer(BigInt::from(ctx.q() as i64 - 1).pow(kernel_t as u32));
        let scale = ctx.q_pow(e_v) * kernel;
        let pos_in_u: BTreeMap<usize, usize> = unpaired.iter().enumerate().map(|(j, &x)| (x, j)).collect();
        let g_of: BTreeMap<usize, usize> = qg.sigma.iter().copied().collect();
        let d_w = ruling_differential(&qg.dst_ruling);
        for (qf, cf) in fs {
            let d_u = ruling_differential(&qf.src_ruling);
            let mut counts: BTreeMap<PartialRuling, u64> = BTreeMap::new();
            for beta in BorelIter::new(field, &sub) {
                let mut h = FqMatrix::zeros(w.len(), u.len());
                for &(src_i, mid_j) in &qf.sigma {
                    let col = pos_in_u[&mid_j];
                    for (row, &mid_i) in unpaired.iter().enumerate() {
                        let b = beta.get(row, col);
                        if b != 0 {
                            h.set(g_of[&mid_i], src_i, b);
                        }
                    }
                }
                let t = HTriple {
                    src: FlaggedComplex { base: u.clone(), diff: d_u.clone() },
                    dst: FlaggedComplex { base: w.clone(), diff: d_w.clone() },
                    map: h,
                };
                *counts.entry(key_unchecked(field, &t)).or_insert(0) += 1;
            }
            let c = &scale * *cf * cg;
            for (k, n) in counts {
                debug_assert!(k.is_full());
                out.add_term(k, &c * BigRational::from_integer(BigInt::from(n)));
            }
        }
    }
    Ok(out)
}

/// `g ∘ f` summing over every automorphism of the middle normal form.
pub fn compose_naive(ctx: &HContext, g: &HMorphism, f: &HMorphism) -> Result<HMorphism, HError> {
    check_composable(g, f)?;
    let field = ctx.field();
    let (u, v, w) = (&f.src, &f.dst, &g.dst);
    let mut out = HMorphism::zero(f.q, u.clone(), w.clone());
    let pre = ctx.q_pow(compose_exponent(v));
    for (kf, cf) in &f.terms {
        let tf = key_to_representative(u, v, kf);
        for (kg, cg) in &g.terms {
            let tg = key_to_representative(v, w, kg);
            if tf.dst.diff != tg.src.diff {
                continue;
            }
            for b in enumerate_aut(field, v, &tf.dst.diff) {
                let h = tg.map.mul(field, &b).mul(field, &tf.map);
                let t = HTriple { src: tf.src.clone(), dst: tg.dst.clone(), map: h };
                out.add_term(canonical_key(field, &t)?, &pre * cf * cg);
            }
        }
    }
    Ok(out)
}

/// `Σ_{i≥1} (-1)^{i+1} dim Hom^{-i}_{<0}(x, x)`: the `q`-exponent of each
/// identity coefficient before dividing by the automorphism count.
fn identity_exponent(x: &GradedSet) -> i64 {
    -compose_exponent(x)
}

/// Key of the cone of `(d, 1, d)`, i.e. of `[[-d, 1], [0, d]]`.
fn identity_key(f: &Field, x: &GradedSet, r: &PartialRuling) -> PartialRuling {
    let d = FlaggedComplex::normal_form(x, r);
    let t = HTriple { src: d.clone(), dst: d, map: FqMatrix::identity(x.len()) };
    key_unchecked(f, &t)
}

/// The identity `1_x`, one term per conjugacy class of differentials.
pub fn identity(ctx: &HContext, x: &GradedSet) -> HMorphism {
    let q = ctx.q() as i64;
    let base = ctx.q_pow(identity_exponent(x));
    let mut out = HMorphism::zero(ctx.q(), x.clone(), x.clone());
    for r in enumerate_partial_rulings(x) {
        let coeff = &base / BigRational::from_integer(aut_count_at(x, &r, q));
        out.add_term(identity_key(ctx.field(), x, &r), coeff);
    }
    out
}

/// Basis of `Hom^k(src, dst)`: entries `(row in dst, col in src)`.
#[derive(Debug, Clone)]
struct HomBasis {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize)>,
}

impl HomBasis {
    fn new(src: &GradedSet, dst: &GradedSet, k: i32) -> Self {
        let mut entries = Vec::new();
        for c in 0..src.len() {
            for r in 0..dst.len() {
                if dst.deg(r) == src.deg(c) + k {
                    entries.push((r, c));
                }
            }
        }
        HomBasis { rows: dst.len(), cols: src.len(), entries }
    }

    fn len(&self) -> usize {
        self.entries.len()
    }

    fn to_matrix(&self, v: &[Fq]) -> FqMatrix {
        let mut m = FqMatrix::zeros(self.rows, self.cols);
        for (&(r, c), &x) in self.entries.iter().zip(v) {
            m.set(r, c, x);
        }
        m
    }

    fn entries_of(&self, m: &FqMatrix) -> Vec<Fq> {
        self.entries.iter().map(|&(r, c)| m.get(r, c)).collect()
    }
}

/// A bounded cochain complex of `F_q` vector spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomComplex {
    /// Lowest degree stored.
    pub lo: i32,
    /// `dims[i]` is the dimension in degree `lo + i`.
    pub dims: Vec<usize>,
    /// `diffs[i]` maps degree `lo + i` to `lo + i + 1`.
    pub diffs: Vec<FqMatrix>,
}

impl HomComplex {
    pub fn dim(&self, k: i32) -> usize {
        let i = k - self.lo;
        if i < 0 || i as usize >= self.dims.len() {
            0
        } else {
            self.dims[i as usize]
        }
    }

    fn rank_out(&self, f: &Field, k: i32) -> usize {
        let i = k - self.lo;
        if i < 0 || i as usize >= self.diffs.len() {
            0
        } else {
            self.diffs[i as usize].rank(f)
        }
    }

    /// `dim H^k`.
    pub fn cohomology_dim(&self, f: &Field, k: i32) -> usize {
        self.dim(k) - self.rank_out(f, k) - self.rank_out(f, k - 1)
    }

    /// `d^{k+1} ∘ d^k = 0` for all stored degrees.
    pub fn is_complex(&self, f: &Field) -> bool {
        self.diffs.windows(2).all(|w| w[1].mul(f, &w[0]).is_zero())
    }
}

fn degree_window(sets: &[(&GradedSet, &GradedSet)]) -> (i32, i32) {
    let mut lo = 0;
    let mut hi = 0;
    for (src, dst) in sets {
        for &a in src.degrees() {
            for &b in dst.degrees() {
                lo = lo.min(b - a);
                hi = hi.max(b - a);
            }
        }
    }
    (lo - 1, hi + 2)
}

/// `Hom((X, d_X), (U, d_U))` with `d φ = d_U φ - (-1)^k φ d_X`.
pub fn hom_complex(f: &Field, x: &FlaggedComplex, u: &FlaggedComplex) -> HomComplex {
    let (lo, hi) = degree_window(&[(&x.base, &u.base)]);
    let bases: Vec<HomBasis> = (lo..=hi).map(|k| HomBasis::new(&x.base, &u.base, k)).collect();
    let mut diffs = Vec::new();
    for k in lo..hi {
        let (from, to) = (&bases[(k - lo) as usize], &bases[(k - lo + 1) as usize]);
        let mut m = FqMatrix::zeros(to.len(), from.len());
        for j in 0..from.len() {
            let mut e = vec![0; from.len()];
            e[j] = 1;
            let phi = from.to_matrix(&e);
            let a = u.diff.mul(f, &phi);
            let b = phi.mul(f, &x.diff);
            let img = if k % 2 == 0 { a.sub(f, &b) } else { a.add(f, &b) };
            for (i, x) in to.entries_of(&img).into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        diffs.push(m);
    }
    HomComplex { lo, dims: bases.iter().map(|b| b.len()).collect(), diffs }
}

/// Degree-`k` piece of the `A_2` Hom complex from `X -> Y` to `U -> V`.
struct A2Degree {
    h11: HomBasis,
    h22: HomBasis,
    h12: HomBasis,
}

impl A2Degree {
    fn new(t1: &HTriple, t2: &HTriple, k: i32) -> Self {
        A2Degree {
            h11: HomBasis::new(&t1.src.base, &t2.src.base, k),
            h22: HomBasis::new(&t1.dst.base, &t2.dst.base, k),
            h12: HomBasis::new(&t1.src.base, &t2.dst.base, k - 1),
        }
    }

    fn len(&self) -> usize {
        self.h11.len() + self.h22.len() + self.h12.len()
    }

    fn split(&self, v: &[Fq]) -> (FqMatrix, FqMatrix, FqMatrix) {
        let (a, rest) = v.split_at(self.h11.len());
        let (b, c) = rest.split_at(self.h22.len());
        (self.h11.to_matrix(a), self.h22.to_matrix(b), self.h12.to_matrix(c))
    }

    fn join(&self, a: &FqMatrix, b: &FqMatrix, c: &FqMatrix) -> Vec<Fq> {
        let mut v = self.h11.entries_of(a);
        v.extend(self.h22.entries_of(b));
        v.extend(self.h12.entries_of(c));
        v
    }
}

/// Applies the `A_2` differential in degree `k` to `(a, b, c)`.
fn a2_apply(
    f: &Field,
    t1: &HTriple,
    t2: &HTriple,
    k: i32,
    (a, b, c): (&FqMatrix, &FqMatrix, &FqMatrix),
) -> (FqMatrix, FqMatrix, FqMatrix) {
    let (dx, dy, g) = (&t1.src.diff, &t1.dst.diff, &t1.map);
    let (du, dv, fm) = (&t2.src.diff, &t2.dst.diff, &t2.map);
    let even = k % 2 == 0;
    let pm = |x: FqMatrix, y: FqMatrix| if even { x.sub(f, &y) } else { x.add(f, &y) };
    let na = pm(du.mul(f, a), a.mul(f, dx));
    let nb = pm(dv.mul(f, b), b.mul(f, dy));
    // (-1)^k (f a - b g + c d_X) + d_V c
    let mut s = fm.mul(f, a).sub(f, &b.mul(f, g)).add(f, &c.mul(f, dx));
    if !even {
        s = s.neg(f);
    }
    let nc = s.add(f, &dv.mul(f, c));
    (na, nb, nc)
}

fn a2_matrix(f: &Field, t1: &HTriple, t2: &HTriple, k: i32) -> (A2Degree, A2Degree, FqMatrix) {
    let from = A2Degree::new(t1, t2, k);
    let to = A2Degree::new(t1, t2, k + 1);
    let mut m = FqMatrix::zeros(to.len(), from.len());
    for j in 0..from.len() {
        let mut e = vec![0; from.len()];
        e[j] = 1;
        let (a, b, c) = from.split(&e);
        let (na, nb, nc) = a2_apply(f, t1, t2, k, (&a, &b, &c));
        for (i, x) in to.join(&na, &nb, &nc).into_iter().enumerate() {
            m.set(i, j, x);
        }
    }
    (from, to, m)
}

/// The `A_2` Hom complex from the diagram `t1 = (X -> Y)` to `t2 = (U -> V)`.
pub fn a2_hom_complex(f: &Field, t1: &HTriple, t2: &HTriple) -> HomComplex {
    let (lo, hi) = degree_window(&[
        (&t1.src.base, &t2.src.base),
        (&t1.dst.base, &t2.dst.base),
        (&t1.src.base, &t2.dst.base),
    ]);
    let (lo, hi) = (lo, hi + 1);
    let mut dims = Vec::new();
    let mut diffs = Vec::new();
    for k in lo..=hi {
        dims.push(A2Degree::new(t1, t2, k).len());
        if k < hi {
            diffs.push(a2_matrix(f, t1, t2, k).2);
        }
    }
    HomComplex { lo, dims, diffs }
}

/// The extension `T(δ)` of `a ⊗ b` by `δ = (δ11, δ22, δ12)`.
fn extension_triple(a: &HTriple, b: &HTriple, d11: &FqMatrix, d22: &FqMatrix, d12: &FqMatrix) -> HTriple {
    let (nu, nx, nv, ny) = (a.src.dim(), b.src.dim(), a.dst.dim(), b.dst.dim());
    let mut ds = FqMatrix::zeros(nu + nx, nu + nx);
    ds.put_block(0, 0, &a.src.diff);
    ds.put_block(0, nu, d11);
    ds.put_block(nu, nu, &b.src.diff);
    let mut dd = FqMatrix::zeros(nv + ny, nv + ny);
    dd.put_block(0, 0, &a.dst.diff);
    dd.put_block(0, nv, d22);
    dd.put_block(nv, nv, &b.dst.diff);
    let mut m = FqMatrix::zeros(nv + ny, nu + nx);
    m.put_block(0, 0, &a.map);
    m.put_block(0, nu, d12);
    m.put_block(nv, nu, &b.map);
    HTriple {
        src: FlaggedComplex { base: a.src.base.concat(&b.src.base), diff: ds },
        dst: FlaggedComplex { base: a.dst.base.concat(&b.dst.base), diff: dd },
        map: m,
    }
}

/// Which formula to use for the monoidal product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorMode {
    /// Sum over all degree-one cocycles of the `A_2` Hom complex.
    Full,
    /// Sum over `Ext¹` classes with the Euler-characteristic prefactor.
    Ext,
}

/// Keys with multiplicities and a `q`-exponent for `a ⊗ b` on representatives.
fn tensor_triples(f: &Field, a: &HTriple, b: &HTriple, mode: TensorMode) -> (i64, BTreeMap<PartialRuling, u64>) {
    let (_, _, d1) = a2_matrix(f, b, a, 1);
    let deg1 = A2Degree::new(b, a, 1);
    let cocycles = d1.kernel(f);
    let (exponent, reps) = match mode {
        TensorMode::Full => {
            let (lo, _) = degree_window(&[
                (&b.src.base, &a.src.base),
                (&b.dst.base, &a.dst.base),
                (&b.src.base, &a.dst.base),
            ]);
            let mut e = 0i64;
            for i in 0..=(-lo + 1).max(0) {
                let k = -i;
                let dims = hom_dim(&b.src.base, &a.src.base, k)
                    + hom_dim(&b.dst.base, &a.dst.base, k)
                    + hom_dim(&b.src.base, &a.dst.base, k - 1);
                e += sign(i as i64 + 1) * dims as i64;
            }
            (e, cocycles)
        }
        TensorMode::Ext => {
            let hx = hom_complex(f, &b.src, &a.src);
            let mut e = 0i64;
            for i in 0..=(-hx.lo).max(0) {
                e += sign(i as i64 + 1) * hx.cohomology_dim(f, -i) as i64;
            }
            let (_, _, d0) = a2_matrix(f, b, a, 0);
            (e, ext_complement(f, &d0, &cocycles, deg1.len()))
        }
    };
    let mut counts = BTreeMap::new();
    let mut coords = vec![0u8; reps.len()];
    loop {
        let mut v = vec![0u8; deg1.len()];
        for (c, r) in coords.iter().zip(&reps) {
            if *c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = f.add(*x, f.mul(*c, *y));
                }
            }
        }
        let (d11, d22, d12) = deg1.split(&v);
        let t = extension_triple(a, b, &d11, &d22, &d12);
        let k = key_unchecked(f, &t);
        debug_assert!(k.is_full(), "extension of quasi-isomorphisms must be one");
        *counts.entry(k).or_insert(0u64) += 1;
        if !odometer(&mut coords, f.q()) {
            break;
        }
    }
    (exponent, counts)
}

/// Basis of a complement of the coboundaries inside the cocycles.
fn ext_complement(f: &Field, d0: &FqMatrix, cocycles: &[Vec<Fq>], n: usize) -> Vec<Vec<Fq>> {
    let mut bnd = d0.transpose();
    let pivots = bnd.rref(f);
    let bnd_rows: Vec<Vec<Fq>> = (0..pivots.len()).map(|i| bnd.row(i).to_vec()).collect();
    let mut reduced = Vec::new();
    for z in cocycles {
        let mut v = z.clone();
        for (row, &p) in bnd_rows.iter().zip(&pivots) {
            let c = v[p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        reduced.push(v);
    }
    if reduced.is_empty() {
        return reduced;
    }
    let mut m = FqMatrix::from_rows(&reduced);
    let r = m.rref(f).len();
    debug_assert_eq!(m.cols(), n);
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

fn tensor_with(ctx: &HContext, a: &HMorphism, b: &HMorphism, mode: TensorMode) -> Result<HMorphism, HError> {
    if a.q != b.q {
        return Err(HError::FieldMismatch(a.q, b.q));
    }
    let field = ctx.field();
    let mut out = HMorphism::zero(a.q, a.src.concat(&b.src), a.dst.concat(&b.dst));
    for (ka, ca) in &a.terms {
        let ta = key_to_representative(&a.src, &a.dst, ka);
        for (kb, cb) in &b.terms {
            let tb = key_to_representative(&b.src, &b.dst, kb);
            let (e, counts) = tensor_triples(field, &ta, &tb, mode);
            let c = ctx.q_pow(e) * ca * cb;
            for (k, n) in counts {
                out.add_term(k, &c * BigRational::from_integer(BigInt::from(n)));
            }
        }
    }
    Ok(out)
}

/// `a ⊗ b` summing over every cocycle `δ`.
pub fn tensor_full(ctx: &HContext, a: &HMorphism, b: &HMorphism) -> Result<HMorphism, HError> {
    tensor_with(ctx, a, b, TensorMode::Full)
}

/// `a ⊗ b` summing over `Ext¹` classes only.
pub fn tensor_ext(ctx: &HContext, a: &HMorphism, b: &HMorphism) -> Result<HMorphism, HError> {
    tensor_with(ctx, a, b, TensorMode::Ext)
}

/// The duality `D`: reverses a morphism by inverting its quasi-isomorphisms.
pub fn dual_d(m: &HMorphism) -> HMorphism {
    let mut out = HMorphism::zero(m.q, m.dst.clone(), m.src.clone());
    for (k, c) in &m.terms {
        let q5 = key_to_quintuple(&m.src, &m.dst, k);
        let mut sigma: Vec<(usize, usize)> = q5.sigma.iter().map(|&(i, j)| (j, i)).collect();
        sigma.sort();
        let flipped = Quintuple { src_ruling: q5.dst_ruling, dst_ruling: q5.src_ruling, sigma };
        let key = quintuple_to_key(&m.dst, &m.src, &flipped).expect("dual of a key is a key");
        out.add_term(key, c.clone());
    }
    out
}

/// `(P A^T P)` with `P` the order-reversing permutations.
fn anti_transpose(a: &FqMatrix) -> FqMatrix {
    let (r, c) = (a.rows(), a.cols());
    let mut out = FqMatrix::zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            out.set(c - 1 - j, r - 1 - i, a.get(i, j));
        }
    }
    out
}

/// The duality `∨` induced by linear duals: `V -> W` becomes `W^∨ -> V^∨`.
pub fn dual_vee(ctx: &HContext, m: &HMorphism) -> HMorphism {
    let field = ctx.field();
    let (src, dst) = (m.dst.dual(), m.src.dual());
    let mut out = HMorphism::zero(m.q, src.clone(), dst.clone());
    for (k, c) in &m.terms {
        let t = key_to_representative(&m.src, &m.dst, k);
        let d = HTriple {
            src: FlaggedComplex { base: src.clone(), diff: anti_transpose(&t.dst.diff) },
            dst: FlaggedComplex { base: dst.clone(), diff: anti_transpose(&t.src.diff) },
            map: anti_transpose(&t.map),
        };
        out.add_term(key_unchecked(field, &d), c.clone());
    }
    out
}

/// `β_W : W[-1] ⊗ W -> 0`, summing `([[-d, 1], [0, d]], 0, 0)` over all `d`.
pub fn beta_morphism(ctx: &HContext, w: &GradedSet) -> HMorphism {
    let field = ctx.field();
    let q = ctx.q() as i64;
    let n = w.len();
    let src = w.shift(-1).concat(w);
    let base = ctx.q_pow(identity_exponent(w));
    let mut out = HMorphism::zero(ctx.q(), src.clone(), GradedSet::empty());
    for r in enumerate_partial_rulings(w) {
        let d = ruling_differential(&r);
        let mut c = FqMatrix::zeros(2 * n, 2 * n);
        c.put_block(0, 0, &d.neg(field));
        c.put_block(0, n, &FqMatrix::identity(n));
        c.put_block(n, n, &d);
        let key = bruhat_reduce_unchecked(field, &c);
        out.add_term(key, &base / BigRational::from_integer(aut_count_at(w, &r, q)));
    }
    out
}

/// `Hom(X, Y) -> Hom(Y[-1] ⊗ X, 0)`: the same cone rulings, re-typed.
pub fn bend_iso(m: &HMorphism) -> HMorphism {
    HMorphism {
        q: m.q,
        src: cone_set(&m.src, &m.dst),
        dst: GradedSet::empty(),
        terms: m.terms.clone(),
    }
}

/// Inverse of [`bend_iso`] given the split `Y[-1] ⊗ X` of the source.
pub fn unbend_iso(m: &HMorphism, x: &GradedSet, y: &GradedSet) -> Result<HMorphism, HError> {
    if !m.dst.is_empty() || m.src != cone_set(x, y) {
        return Err(HError::ObjectMismatch("unbend: source is not Y[-1] ⊗ X"));
    }
    Ok(HMorphism { q: m.q, src: x.clone(), dst: y.clone(), terms: m.terms.clone() })
}

/// Builds a morphism from explicit triples with coefficients.
pub fn from_triples(ctx: &HContext, terms: &[(ExactRational, HTriple)]) -> Result<HMorphism, HError> {
    let Some((_, first)) = terms.first() else {
        return Err(HError::ObjectMismatch("empty list of triples"));
    };
    let mut out = HMorphism::zero(ctx.q(), first.src.base.clone(), first.dst.base.clone());
    for (c, t) in terms {
        if t.src.base != out.src || t.dst.base != out.dst {
            return Err(HError::ObjectMismatch("triples with different boundaries"));
        }
        out.add_term(canonical_key(ctx.field(), t)?, c.clone());
    }
    Ok(out)
}
