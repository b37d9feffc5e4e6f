mod common;

use common::{degree_tuples, random_one_sided_word, rat};
use flagtangle_core::flags::GradedSet;
use flagtangle_core::functor::*;
use flagtangle_core::hcat::*;
use flagtangle_core::ring::SkeinScalar;
use flagtangle_core::tangle::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn gs(d: &[i32]) -> GradedSet {
    GradedSet::new(d.to_vec())
}

#[test]
fn slice_routes_agree() {
    let ctx = HContext::new(2).unwrap();
    for total in 0..=3usize {
        for left in degree_tuples(total, -1, 1) {
            let l = left.degrees();
            let mut slices = Vec::new();
            for p in 1..=total + 1 {
                for d in -1..=1 {
                    slices.push(Slice::Birth { deg: d, pos: p });
                }
            }
            for p in 1..total {
                slices.push(Slice::Cross { pos: p });
                if l[p - 1] == l[p] + 1 {
                    slices.push(Slice::Death { pos: p });
                }
            }
            for s in slices {
                if matches!(s, Slice::Birth { .. }) && total > 1 {
                    continue;
                }
                let a = phi_slice_tensor(&ctx, &s, l).unwrap();
                let b = phi_slice_closed(&ctx, &s, l).unwrap();
                let c = phi_slice_tensor_full(&ctx, &s, l).unwrap();
                assert_eq!(a, b, "{} on {}", s, left);
                assert_eq!(a, c, "{} on {}", s, left);
            }
        }
    }
}

fn all_slices(l: &[i32], lo: i32, hi: i32) -> Vec<Slice> {
    let k = l.len();
    let mut out = Vec::new();
    for p in 1..=k + 1 {
        for d in lo..=hi {
            out.push(Slice::Birth { deg: d, pos: p });
        }
    }
    for p in 1..k {
        out.push(Slice::Cross { pos: p });
        if l[p - 1] == l[p] + 1 {
            out.push(Slice::Death { pos: p });
        }
    }
    out
}

#[test]
fn class_columns_match_tensor_images() {
    for q in [2u32, 3] {
        let ctx = HContext::new(q).unwrap();
        for total in 0..=4usize {
            for left in degree_tuples(total, -1, 1) {
                let l = left.degrees();
                for s in all_slices(l, -1, 0) {
                    let full = phi_slice_tensor(&ctx, &s, l).unwrap();
                    let mut by_ruling: std::collections::BTreeMap<_, HMorphism> = Default::default();
                    for (k, c) in full.terms() {
                        let r = key_to_quintuple(full.src(), full.dst(), k).dst_ruling;
                        by_ruling
                            .entry(r)
                            .or_insert_with(|| HMorphism::zero(q, full.src().clone(), full.dst().clone()))
                            .add_term(k.clone(), c.clone());
                    }
                    for r in flagtangle_core::flags::enumerate_partial_rulings(&left) {
                        let col = phi_slice_column(&ctx, &s, l, &r).unwrap();
                        let want = by_ruling.remove(&r).unwrap_or_else(|| HMorphism::zero(q, full.src().clone(), full.dst().clone()));
                        assert_eq!(col, want, "q={} {} on {} ruling {}", q, s, left, r);
                    }
                    assert!(by_ruling.is_empty());
                }
            }
        }
    }
}

#[test]
fn elementary_images() {
    let ctx = HContext::new(3).unwrap();
    let b = phi_elementary(&ctx, &Slice::Birth { deg: 0, pos: 1 }, &[]).unwrap();
    assert_eq!(b.terms().len(), 1);
    assert_eq!(b.terms().values().next().unwrap(), &rat(1, 2));
    let x = phi_elementary(&ctx, &Slice::Cross { pos: 1 }, &[0, 2]).unwrap();
    assert_eq!(x.src(), &gs(&[2, 0]));
    assert_eq!(x.terms().values().next().unwrap(), &rat(1, 4));
    assert_eq!(format!("{}", x.terms().keys().next().unwrap()), "[(2,3),(1,4)]");
}

#[test]
fn folds_agree_and_empty_word_is_identity() {
    for q in [2u32, 3] {
        let phi = Phi::new(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64 + 10);
        for _ in 0..30 {
            let w = random_one_sided_word(&mut rng, 6, -1, 1);
            assert_eq!(phi.word(&w).unwrap(), phi.word_right_fold(&w).unwrap(), "q={} {}", q, w);
        }
        let x = gs(&[0, 1]);
        assert_eq!(phi.word(&TangleWord::identity(&x)).unwrap(), identity(phi.ctx(), &x));
    }
}

#[test]
fn trie_walk_matches_per_word_comparison() {
    for q in [2u32, 3] {
        let phi = Phi::new(q).unwrap();
        let rep = compare_nu_phi_exhaustive(&phi, 3, -1, 1).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.instances, 1 + 2 + 16 + 196);
        let mut words = vec![TangleWord::identity(&GradedSet::empty())];
        let mut count = 0;
        while let Some(w) = words.pop() {
            count += 1;
            assert!(compare_nu_phi(&phi, &w).unwrap().passed());
            if w.slices.len() < 3 {
                let right = w.right().unwrap();
                for s in next_slices(right.degrees(), -1, 1) {
                    let mut w2 = w.clone();
                    w2.slices.push(s);
                    words.push(w2);
                }
            }
        }
        assert_eq!(count, rep.instances);
    }
}

#[test]
fn class_sizes_match_orbit_counts() {
    use flagtangle_core::flags::{bruhat_reduce, enumerate_differentials, enumerate_partial_rulings};
    use flagtangle_core::gfq::Field;
    for q in [2u32, 3] {
        let f = Field::new(q).unwrap();
        for n in 0..=4 {
            for x in degree_tuples(n, -1, 1) {
                let mut counts = std::collections::BTreeMap::new();
                for d in enumerate_differentials(&f, &x) {
                    *counts.entry(bruhat_reduce(&f, &x, &d).unwrap()).or_insert(0u64) += 1;
                }
                for r in enumerate_partial_rulings(&x) {
                    assert_eq!(class_size(&x, &r, q as i64), counts[&r].into(), "{} {}", x, r);
                }
            }
        }
    }
}

#[test]
fn nu_matches_phi_on_random_words() {
    for q in [2u32, 3] {
        let phi = Phi::new(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        for _ in 0..60 {
            let w = random_one_sided_word(&mut rng, 8, -1, 1);
            let rep = compare_nu_phi(&phi, &w).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }
}

#[test]
fn circle_and_beta_images() {
    let phi = Phi::new(3).unwrap();
    let circle = TangleWord::new(gs(&[]), vec![Slice::Birth { deg: 0, pos: 1 }, Slice::Death { pos: 1 }]);
    let m = phi.word(&circle).unwrap();
    assert_eq!(m, identity(phi.ctx(), &gs(&[])).scale(&rat(1, 2)));
    for y in [gs(&[0]), gs(&[1, 0]), gs(&[0, 0, 1])] {
        assert_eq!(phi.word(&beta_word(&y)).unwrap(), beta_morphism(phi.ctx(), &y));
    }
}

#[test]
fn ruling_dictionary_is_identity_on_rulings() {
    let ctx = HContext::new(2).unwrap();
    for n in 0..=6 {
        for x in degree_tuples(n, 0, 1) {
            for (r, k) in ruling_dictionary(&ctx, &x).unwrap() {
                assert_eq!(r, k);
            }
        }
    }
}

fn phi_side(phi: &Phi, side: &[(SkeinScalar, TangleWord)], left: &GradedSet, right: &GradedSet) -> HMorphism {
    let mut out = HMorphism::zero(phi.q(), right.clone(), left.clone());
    for (c, w) in side {
        let v = c.eval(phi.q() as i64).unwrap();
        out = out.add(&phi.word(w).unwrap().scale(&v)).unwrap();
    }
    out
}

#[test]
fn moves_hold_under_phi() {
    for q in [2u32, 3] {
        let phi = Phi::new(q).unwrap();
        for kind in MoveKind::ALL {
            for inst in move_instances(kind, -2, 2) {
                let l = phi_side(&phi, &inst.lhs, &inst.left, &inst.right);
                let r = phi_side(&phi, &inst.rhs, &inst.left, &inst.right);
                assert_eq!(l, r, "{} {:?}", kind, inst.labels);
            }
        }
    }
}

#[test]
fn hecke_relations_and_flag_oracle() {
    for q in [2u32, 3] {
        let phi = Phi::new(q).unwrap();
        for n in 1..=2 {
            let rep = hecke_verify(&phi, n).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
        for n in 1..=2 {
            let rep = flag_oracle_verify(n, q).unwrap();
            assert!(rep.passed(), "{:?}", rep.failures);
        }
    }
    assert_eq!(FlagOracle::new(1, 2).unwrap().flags.len(), 3);
    assert_eq!(FlagOracle::new(2, 2).unwrap().flags.len(), 21);
}

#[test]
fn dualities_and_bending_on_words() {
    let phi = Phi::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..30 {
        let w = random_one_sided_word(&mut rng, 5, -1, 1);
        assert!(duality_compat(&phi, &w).unwrap().passed());
        let dv = dual_v(&w).unwrap();
        assert!(bend_square(&phi, &dv).unwrap().passed(), "{}", dv);
    }
}
