#![allow(dead_code)]

use flagtangle_core::flags::GradedSet;
use flagtangle_core::gfq::{Field, FqMatrix};

/// Every degree tuple of length `n` with entries in `lo..=hi`.
pub fn degree_tuples(n: usize, lo: i32, hi: i32) -> Vec<GradedSet> {
    let mut out = Vec::new();
    let width = (hi - lo + 1) as usize;
    let total = width.pow(n as u32);
    for mut code in 0..total {
        let mut d = Vec::with_capacity(n);
        for _ in 0..n {
            d.push(lo + (code % width) as i32);
            code /= width;
        }
        out.push(GradedSet::new(d));
    }
    out
}

/// Inverse of an invertible matrix by Gauss-Jordan, independent of the library's rref.
pub fn invert(f: &Field, a: &FqMatrix) -> FqMatrix {
    let n = a.rows();
    let mut m: Vec<Vec<u8>> = (0..n)
        .map(|i| {
            let mut row: Vec<u8> = (0..n).map(|j| a.get(i, j)).collect();
            row.extend((0..n).map(|j| u8::from(i == j)));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| m[r][c] != 0).expect("singular");
        m.swap(p, c);
        let inv = f.inv(m[c][c]);
        for x in m[c].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for r in 0..n {
            if r != c && m[r][c] != 0 {
                let k = m[r][c];
                for j in 0..2 * n {
                    m[r][j] = f.sub(m[r][j], f.mul(k, m[c][j]));
                }
            }
        }
    }
    FqMatrix::from_rows(&m.iter().map(|r| r[n..].to_vec()).collect::<Vec<_>>())
}

use flagtangle_core::flags::enumerate_full_rulings;
use flagtangle_core::hcat::{cone_set, HMorphism};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_set<R: Rng>(rng: &mut R, max_len: usize, lo: i32, hi: i32) -> GradedSet {
    let n = rng.gen_range(0..=max_len);
    GradedSet::new((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// A random morphism `src -> dst` with up to three keys, or `None` if the
/// Hom space is zero.
pub fn random_morphism<R: Rng>(rng: &mut R, q: u32, src: &GradedSet, dst: &GradedSet) -> Option<HMorphism> {
    let keys = enumerate_full_rulings(&cone_set(src, dst));
    if keys.is_empty() {
        return None;
    }
    let mut m = HMorphism::zero(q, src.clone(), dst.clone());
    for _ in 0..rng.gen_range(1..=3) {
        let k = keys[rng.gen_range(0..keys.len())].clone();
        let c = loop {
            let c = rng.gen_range(-3..=3);
            if c != 0 {
                break c;
            }
        };
        m.add_term(k, rat(c, rng.gen_range(1..=3)));
    }
    if m.is_zero() {
        return None;
    }
    Some(m)
}

/// A random object of size `n` that admits a morphism to `v` (same size, shuffled degrees).
pub fn random_hom_pair<R: Rng>(rng: &mut R, max_len: usize) -> (GradedSet, GradedSet) {
    let a = random_set(rng, max_len, 0, 1);
    let mut d = a.degrees().to_vec();
    for i in (1..d.len()).rev() {
        d.swap(i, rng.gen_range(0..=i));
    }
    (a, GradedSet::new(d))
}

use flagtangle_core::tangle::{Slice, TangleWord};

/// A random grading-valid word with empty left boundary.
pub fn random_one_sided_word<R: Rng>(rng: &mut R, len: usize, lo: i32, hi: i32) -> TangleWord {
    let mut w = TangleWord::new(GradedSet::empty(), Vec::new());
    let mut cur: Vec<i32> = Vec::new();
    for _ in 0..rng.gen_range(0..=len) {
        let k = cur.len();
        let deaths: Vec<usize> = (0..k.saturating_sub(1)).filter(|&i| cur[i] == cur[i + 1] + 1).collect();
        let choice = rng.gen_range(0..3);
        let s = if choice == 0 || k < 2 {
            Slice::Birth { deg: rng.gen_range(lo..=hi), pos: rng.gen_range(1..=k + 1) }
        } else if choice == 1 && !deaths.is_empty() {
            Slice::Death { pos: deaths[rng.gen_range(0..deaths.len())] + 1 }
        } else {
            Slice::Cross { pos: rng.gen_range(1..k) }
        };
        w.slices.push(s);
        cur = w.right().unwrap().degrees().to_vec();
    }
    w
}

