mod common;

use common::*;
use flagtangle_core::flags::*;
use flagtangle_core::gfq::FqMatrix;
use flagtangle_core::hcat::*;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gs(d: &[i32]) -> GradedSet {
    GradedSet::new(d.to_vec())
}

#[test]
fn key_roundtrip_small_sets() {
    let ctx = HContext::new(2).unwrap();
    for n in 0..=3 {
        for m in 0..=3 {
            for src in degree_tuples(n, 0, 1) {
                for dst in degree_tuples(m, 0, 1) {
                    for key in enumerate_full_rulings(&cone_set(&src, &dst)) {
                        let t = key_to_representative(&src, &dst, &key);
                        assert_eq!(canonical_key(ctx.field(), &t).unwrap(), key);
                        let q5 = key_to_quintuple(&src, &dst, &key);
                        assert_eq!(quintuple_to_key(&src, &dst, &q5).unwrap(), key);
                    }
                }
            }
        }
    }
}

#[test]
fn identity_on_a_point() {
    let ctx = HContext::new(3).unwrap();
    let id = identity(&ctx, &gs(&[4]));
    let key = PartialRuling::new(&gs(&[5, 4]), vec![(0, 1)]).unwrap();
    assert_eq!(id, HMorphism::single(3, gs(&[4]), gs(&[4]), key, rat(1, 2)));
    let unit = identity(&ctx, &GradedSet::empty());
    assert_eq!(unit.terms().values().next().unwrap(), &rat(1, 1));
}

#[test]
fn identity_matches_direct_sum_over_differentials() {
    // (q-1)^{-n} prod |Hom^{-i}_{<0}|^{(-1)^{i+1}} sum_d key(d, 1, d), by brute force
    for q in [2u32, 3] {
        let ctx = HContext::new(q).unwrap();
        let f = ctx.field();
        for n in 0..=3 {
            for x in degree_tuples(n, 0, 2) {
                let mut e: i64 = 0;
                for i in 0..=3i64 {
                    let s = if i % 2 == 0 { -1 } else { 1 };
                    e += s * hom_dim_strict(&x, -(i as i32)) as i64;
                }
                let pre = flagtangle_core::ring::q_power(q as i64, e) / rat((q as i64 - 1).pow(n as u32), 1);
                let mut m = HMorphism::zero(q, x.clone(), x.clone());
                for d in enumerate_differentials(f, &x) {
                    let c = FlaggedComplex::new(f, x.clone(), d).unwrap();
                    let t = HTriple { src: c.clone(), dst: c, map: FqMatrix::identity(n) };
                    m.add_term(canonical_key(f, &t).unwrap(), pre.clone());
                }
                assert_eq!(m, identity(&ctx, &x), "{}", x);
            }
        }
    }
}

#[test]
fn fast_composition_matches_naive() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for q in [2u32, 3] {
        let ctx = HContext::new(q).unwrap();
        let mut done = 0;
        while done < 40 {
            let u = random_set(&mut rng, 3, 0, 1);
            let v = random_set(&mut rng, 3, 0, 1);
            let w = random_set(&mut rng, 3, 0, 1);
            let (Some(f), Some(g)) = (random_morphism(&mut rng, q, &u, &v), random_morphism(&mut rng, q, &v, &w)) else {
                continue;
            };
            assert_eq!(compose(&ctx, &g, &f).unwrap(), compose_naive(&ctx, &g, &f).unwrap());
            done += 1;
        }
    }
}

#[test]
fn unit_laws_and_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in [2u32, 3] {
        let ctx = HContext::new(q).unwrap();
        let mut done = 0;
        while done < 30 {
            let u = random_set(&mut rng, 3, 0, 1);
            let v = random_set(&mut rng, 3, 0, 1);
            let w = random_set(&mut rng, 3, 0, 1);
            let z = random_set(&mut rng, 3, 0, 1);
            let (Some(f), Some(g), Some(h)) = (
                random_morphism(&mut rng, q, &u, &v),
                random_morphism(&mut rng, q, &v, &w),
                random_morphism(&mut rng, q, &w, &z),
            ) else {
                continue;
            };
            assert_eq!(compose(&ctx, &identity(&ctx, &v), &f).unwrap(), f);
            assert_eq!(compose(&ctx, &f, &identity(&ctx, &u)).unwrap(), f);
            let a = compose(&ctx, &compose(&ctx, &h, &g).unwrap(), &f).unwrap();
            let b = compose(&ctx, &h, &compose(&ctx, &g, &f).unwrap()).unwrap();
            assert_eq!(a, b);
            done += 1;
        }
    }
}

#[test]
fn tensor_routes_agree_and_units() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ctx = HContext::new(2).unwrap();
    let mut done = 0;
    while done < 60 {
        let (a0, a1) = random_hom_pair(&mut rng, 3);
        let (b0, b1) = random_hom_pair(&mut rng, 2);
        let (Some(a), Some(b)) = (random_morphism(&mut rng, 2, &a0, &a1), random_morphism(&mut rng, 2, &b0, &b1)) else {
            continue;
        };
        assert_eq!(tensor_full(&ctx, &a, &b).unwrap(), tensor_ext(&ctx, &a, &b).unwrap());
        done += 1;
    }
    for n in 0..=3 {
        for x in degree_tuples(n, 0, 1) {
            for y in degree_tuples(2, 0, 1) {
                let lhs = tensor_ext(&ctx, &identity(&ctx, &x), &identity(&ctx, &y)).unwrap();
                assert_eq!(lhs, identity(&ctx, &x.concat(&y)));
            }
        }
    }
}

#[test]
fn exchange_law() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ctx = HContext::new(2).unwrap();
    let mut done = 0;
    while done < 30 {
        let (a0, a1) = random_hom_pair(&mut rng, 2);
        let a2 = if rng.gen_bool(0.5) { a1.clone() } else { GradedSet::new(a1.degrees().iter().rev().copied().collect()) };
        let (b0, b1) = random_hom_pair(&mut rng, 2);
        let b2 = GradedSet::new(b1.degrees().iter().rev().copied().collect());
        let (Some(alpha), Some(beta), Some(gamma), Some(delta)) = (
            random_morphism(&mut rng, 2, &a0, &a1),
            random_morphism(&mut rng, 2, &a1, &a2),
            random_morphism(&mut rng, 2, &b0, &b1),
            random_morphism(&mut rng, 2, &b1, &b2),
        ) else {
            continue;
        };
        let lhs = compose(&ctx, &tensor_ext(&ctx, &beta, &delta).unwrap(), &tensor_ext(&ctx, &alpha, &gamma).unwrap()).unwrap();
        let rhs = tensor_ext(&ctx, &compose(&ctx, &beta, &alpha).unwrap(), &compose(&ctx, &delta, &gamma).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        done += 1;
    }
}

#[test]
fn a2_complex_is_a_complex_with_expected_cohomology() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ctx = HContext::new(3).unwrap();
    let f = ctx.field();
    for _ in 0..60 {
        let (x, y) = random_hom_pair(&mut rng, 3);
        let (u, v) = random_hom_pair(&mut rng, 3);
        let (Some(m1), Some(m2)) = (random_morphism(&mut rng, 3, &x, &y), random_morphism(&mut rng, 3, &u, &v)) else {
            continue;
        };
        let t1 = key_to_representative(&x, &y, m1.terms().keys().next().unwrap());
        let t2 = key_to_representative(&u, &v, m2.terms().keys().next().unwrap());
        let c = a2_hom_complex(f, &t1, &t2);
        assert!(c.is_complex(f));
        let h = hom_complex(f, &t1.src, &t2.src);
        assert!(h.is_complex(f));
        for k in -4..=4 {
            assert_eq!(c.cohomology_dim(f, k), h.cohomology_dim(f, k), "degree {}", k);
        }
    }
}

#[test]
fn identity_diagram_on_a_point_has_one_dimensional_h0() {
    let ctx = HContext::new(2).unwrap();
    let f = ctx.field();
    let p = FlaggedComplex::new(f, gs(&[0]), FqMatrix::zeros(1, 1)).unwrap();
    let t = HTriple::new(f, p.clone(), p, FqMatrix::identity(1)).unwrap();
    let c = a2_hom_complex(f, &t, &t);
    for k in -3..=3 {
        assert_eq!(c.cohomology_dim(f, k), usize::from(k == 0));
    }
}

#[test]
fn dualities_are_involutive_and_contravariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ctx = HContext::new(2).unwrap();
    let mut done = 0;
    while done < 30 {
        let u = random_set(&mut rng, 3, 0, 1);
        let v = random_set(&mut rng, 3, 0, 1);
        let w = random_set(&mut rng, 3, 0, 1);
        let (Some(f), Some(g)) = (random_morphism(&mut rng, 2, &u, &v), random_morphism(&mut rng, 2, &v, &w)) else {
            continue;
        };
        assert_eq!(dual_d(&dual_d(&f)), f);
        assert_eq!(dual_vee(&ctx, &dual_vee(&ctx, &f)), f);
        let gf = compose(&ctx, &g, &f).unwrap();
        assert_eq!(dual_d(&gf), compose(&ctx, &dual_d(&f), &dual_d(&g)).unwrap());
        assert_eq!(dual_vee(&ctx, &gf), compose(&ctx, &dual_vee(&ctx, &f), &dual_vee(&ctx, &g)).unwrap());
        done += 1;
    }
    for x in degree_tuples(3, 0, 1) {
        assert_eq!(dual_d(&identity(&ctx, &x)), identity(&ctx, &x));
        assert_eq!(dual_vee(&ctx, &identity(&ctx, &x)), identity(&ctx, &x.dual()));
    }
}

#[test]
fn bend_matches_beta_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let ctx = HContext::new(2).unwrap();
    let mut done = 0;
    while done < 30 {
        let (x, y) = (random_set(&mut rng, 2, 0, 1), random_set(&mut rng, 2, 0, 1));
        let Some(m) = random_morphism(&mut rng, 2, &x, &y) else { continue };
        let rhs = compose(
            &ctx,
            &beta_morphism(&ctx, &y),
            &tensor_ext(&ctx, &identity(&ctx, &y.shift(-1)), &m).unwrap(),
        )
        .unwrap();
        assert_eq!(bend_iso(&m), rhs);
        assert_eq!(unbend_iso(&bend_iso(&m), &x, &y).unwrap(), m);
        done += 1;
    }
    for n in 0..=3 {
        for w in degree_tuples(n, 0, 1) {
            assert_eq!(beta_morphism(&ctx, &w), bend_iso(&identity(&ctx, &w)));
        }
    }
}

#[test]
fn crossing_squared() {
    // Φ(σ_{n,n})² = q Φ(1⊗1) + (q-1) Φ(σ_{n,n}) with Φ(σ) = (q-1)^{-2} key(0, T, 0)
    for q in [2u32, 3] {
        let ctx = HContext::new(q).unwrap();
        let f = ctx.field();
        let x = gs(&[1, 1]);
        let z = FlaggedComplex::new(f, x.clone(), FqMatrix::zeros(2, 2)).unwrap();
        let t = HTriple::new(f, z.clone(), z, FqMatrix::from_rows(&[vec![0, 1], vec![1, 0]])).unwrap();
        let qm1 = q as i64 - 1;
        let sigma = from_triples(&ctx, &[(rat(1, qm1 * qm1), t)]).unwrap();
        let lhs = compose(&ctx, &sigma, &sigma).unwrap();
        let rhs = identity(&ctx, &x).scale(&rat(q as i64, 1)).add(&sigma.scale(&rat(qm1, 1))).unwrap();
        assert_eq!(lhs, rhs);
        assert!(!lhs.sub(&rhs).unwrap().terms().values().any(|c| !c.is_zero()));
    }
}

fn random_flag_aut<R: Rng>(rng: &mut R, f: &flagtangle_core::gfq::Field, x: &GradedSet) -> FqMatrix {
    let n = x.len();
    let mut g = FqMatrix::zeros(n, n);
    for c in 0..n {
        g.set(c, c, rng.gen_range(1..f.q()));
        for r in 0..c {
            if x.deg(r) == x.deg(c) {
                g.set(r, c, rng.gen_range(0..f.q()));
            }
        }
    }
    g
}

#[test]
fn canonical_key_is_invariant_under_flag_automorphisms_and_homotopy() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for q in [2u32, 3, 4] {
        let ctx = HContext::new(q).unwrap();
        let f = ctx.field();
        for _ in 0..200 {
            let src = random_set(&mut rng, 3, 0, 1);
            let dst = random_set(&mut rng, 3, 0, 1);
            let keys = enumerate_full_rulings(&cone_set(&src, &dst));
            if keys.is_empty() {
                continue;
            }
            let key = &keys[rng.gen_range(0..keys.len())];
            let t = key_to_representative(&src, &dst, key);
            let g = random_flag_aut(&mut rng, f, &src);
            let h = random_flag_aut(&mut rng, f, &dst);
            let gi = invert(f, &g);
            let hi = invert(f, &h);
            let mut hom = FqMatrix::zeros(dst.len(), src.len());
            for j in 0..dst.len() {
                for i in 0..src.len() {
                    if dst.deg(j) == src.deg(i) - 1 {
                        hom.set(j, i, rng.gen_range(0..f.q()));
                    }
                }
            }
            let map = t
                .map
                .add(f, &t.dst.diff.mul(f, &hom))
                .add(f, &hom.mul(f, &t.src.diff));
            let sd = g.mul(f, &t.src.diff).mul(f, &gi);
            let dd = h.mul(f, &t.dst.diff).mul(f, &hi);
            let map = h.mul(f, &map).mul(f, &gi);
            let t2 = HTriple::new(
                f,
                FlaggedComplex::new(f, src.clone(), sd).unwrap(),
                FlaggedComplex::new(f, dst.clone(), dd).unwrap(),
                map,
            )
            .unwrap();
            assert_eq!(&canonical_key(f, &t2).unwrap(), key);
        }
    }
}
