//! Seeded random objects, morphisms and words.

use flagtangle_core::flags::{enumerate_full_rulings, GradedSet};
use flagtangle_core::hcat::{cone_set, HMorphism};
use flagtangle_core::ring::ExactRational;
use flagtangle_core::tangle::{Slice, TangleWord};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_set<R: Rng>(rng: &mut R, max_len: usize, lo: i32, hi: i32) -> GradedSet {
    let n = rng.gen_range(0..=max_len);
    GradedSet::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// The degrees of `x` in a random order.
pub fn shuffled<R: Rng>(rng: &mut R, x: &GradedSet) -> GradedSet {
    let mut d = x.degrees().to_vec();
    d.shuffle(rng);
    GradedSet::new(d)
}

/// Up to three keys with small nonzero coefficients, or `None` when the
/// Hom space has no keys or the terms cancel.
pub fn random_morphism<R: Rng>(rng: &mut R, q: u32, src: &GradedSet, dst: &GradedSet) -> Option<HMorphism> {
    let keys = enumerate_full_rulings(&cone_set(src, dst));
    if keys.is_empty() {
        return None;
    }
    let mut m = HMorphism::zero(q, src.clone(), dst.clone());
    for _ in 0..rng.gen_range(1..=3) {
        let k = keys[rng.gen_range(0..keys.len())].clone();
        let num = loop {
            let c: i64 = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        let den: i64 = rng.gen_range(1..=3);
        m.add_term(k, ExactRational::new(num.into(), den.into()));
    }
    (!m.is_zero()).then_some(m)
}

/// A grading-valid word on `left` with at most `max_len` slices; births
/// take degree parameters in `lo..=hi`.
pub fn random_word<R: Rng>(rng: &mut R, left: &GradedSet, max_len: usize, lo: i32, hi: i32) -> TangleWord {
    let mut w = TangleWord::identity(left);
    let mut cur = left.degrees().to_vec();
    for _ in 0..rng.gen_range(0..=max_len) {
        let k = cur.len();
        let deaths: Vec<usize> = (1..k).filter(|&p| cur[p - 1] == cur[p] + 1).collect();
        let mut kinds = vec![0];
        if !deaths.is_empty() {
            kinds.push(1);
        }
        if k >= 2 {
            kinds.push(2);
        }
        let s = match kinds[rng.gen_range(0..kinds.len())] {
            0 => Slice::Birth { deg: rng.gen_range(lo..=hi), pos: rng.gen_range(1..=k + 1) },
            1 => Slice::Death { pos: deaths[rng.gen_range(0..deaths.len())] },
            _ => Slice::Cross { pos: rng.gen_range(1..k) },
        };
        w.slices.push(s);
        cur = w.right().expect("slices are chosen to be grading-valid").degrees().to_vec();
    }
    w
}
