//! Property suites behind `verify`.

use flagtangle_core::flags::{aut_count_at, enumerate_aut, enumerate_partial_rulings, ruling_differential, GradedSet};
use flagtangle_core::functor::{bend_square, duality_compat, verify_move, Phi, PhiError, Report};
use flagtangle_core::hcat::{beta_morphism, compose, dual_d, dual_vee, identity, tensor_ext, tensor_full, HContext, HMorphism};
use flagtangle_core::tangle::{beta_rulings_formula, beta_word, dual_h, dual_v, move_instances, nu, MoveInstance, MoveKind};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::pool::map_ordered;
use crate::random::{random_morphism, random_set, random_word, shuffled};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Moves,
    Category,
    Dualities,
    Beta,
    Aut,
    All,
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub q: u32,
    pub lo: i32,
    pub hi: i32,
    pub seed: u64,
    /// Random configurations per randomized suite.
    pub count: usize,
}

fn item_rng(cfg: &SuiteConfig, i: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(i as u64))
}

fn merged(check: &str, parts: Vec<Result<Report, PhiError>>) -> Result<Report, PhiError> {
    let mut rep = Report::new(check);
    for p in parts {
        let p = p?;
        rep.instances += p.instances;
        rep.failures.extend(p.failures);
    }
    Ok(rep)
}

fn degree_tuples(n: usize, lo: i32, hi: i32) -> Vec<GradedSet> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|d: Vec<i32>| (lo..=hi).map(move |k| [d.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().map(GradedSet::new).collect()
}

/// Move instances with labels in range, together with their dual variants.
pub fn moves(cfg: &SuiteConfig) -> Result<Report, PhiError> {
    let mut items: Vec<MoveInstance> = Vec::new();
    for kind in MoveKind::ALL {
        for inst in move_instances(kind, cfg.lo, cfg.hi) {
            items.push(inst.map_words(dual_v)?);
            items.push(inst.map_words(dual_h)?);
            items.push(inst.map_words(|w| dual_h(&dual_v(w)?))?);
            items.push(inst);
        }
    }
    let q = cfg.q;
    let parts = map_ordered(items, || Phi::new(q), |phi, inst| verify_move(Some(phi.as_ref().map_err(Clone::clone)?), &inst));
    merged("moves", parts)
}

fn category_item(ctx: &HContext, cfg: &SuiteConfig, i: usize) -> Report {
    let mut rng = item_rng(cfg, i);
    let q = cfg.q;
    let mut rep = Report::new("category");
    let pick = |rng: &mut ChaCha8Rng, a: &GradedSet, b: &GradedSet| -> HMorphism {
        random_morphism(rng, q, a, b).unwrap_or_else(|| identity(ctx, a))
    };
    let base = random_set(&mut rng, 3, cfg.lo, cfg.hi);
    let objs: Vec<GradedSet> = (0..4).map(|_| shuffled(&mut rng, &base)).collect();
    let f = pick(&mut rng, &objs[0], &objs[1]);
    let g = pick(&mut rng, f.dst(), &objs[2]);
    let h = pick(&mut rng, g.dst(), &objs[3]);
    let c = |a: &HMorphism, b: &HMorphism| compose(ctx, a, b).expect("composable by construction");
    let show = |m: &HMorphism| format!("{}", m);
    let input = || format!("config {} q={} f={} g={} h={}", i, q, f, g, h);
    let l = c(&identity(ctx, f.dst()), &f);
    rep.record(l == f, || format!("left unit, {}", input()), || show(&l), || show(&f));
    let r = c(&f, &identity(ctx, f.src()));
    rep.record(r == f, || format!("right unit, {}", input()), || show(&r), || show(&f));
    let a = c(&c(&h, &g), &f);
    let b = c(&h, &c(&g, &f));
    rep.record(a == b, || format!("associativity, {}", input()), || show(&a), || show(&b));
    let base2 = random_set(&mut rng, 2, cfg.lo, cfg.hi);
    let (mid, top) = (shuffled(&mut rng, &base2), shuffled(&mut rng, &base2));
    let gamma = pick(&mut rng, &base2, &mid);
    let delta = pick(&mut rng, gamma.dst(), &top);
    let t = |a: &HMorphism, b: &HMorphism| tensor_ext(ctx, a, b).expect("same field");
    let lhs = c(&t(&g, &delta), &t(&f, &gamma));
    let rhs = t(&c(&g, &f), &c(&delta, &gamma));
    rep.record(lhs == rhs, || format!("exchange, {} gamma={} delta={}", input(), gamma, delta), || show(&lhs), || show(&rhs));
    let full = tensor_full(ctx, &f, &gamma).expect("same field");
    let ext = t(&f, &gamma);
    rep.record(full == ext, || format!("tensor routes, f={} gamma={}", f, gamma), || show(&full), || show(&ext));
    rep
}

/// Unit, associativity, exchange and tensor-route checks on random morphisms.
pub fn category(cfg: &SuiteConfig) -> Result<Report, PhiError> {
    let ctx = HContext::new(cfg.q)?;
    let parts = map_ordered((0..cfg.count).collect(), || (), |_, i| Ok(category_item(&ctx, cfg, i)));
    merged("category", parts)
}

fn dualities_item(phi: &Phi, cfg: &SuiteConfig, i: usize) -> Result<Report, PhiError> {
    let mut rng = item_rng(cfg, i);
    let ctx = phi.ctx();
    let left = random_set(&mut rng, 2, cfg.lo, cfg.hi);
    let w = random_word(&mut rng, &left, 5, cfg.lo, cfg.hi);
    let mut rep = Report::new("dualities");
    rep.merge(duality_compat(phi, &w)?);
    rep.merge(bend_square(phi, &w)?);
    let m = phi.word(&w)?;
    let input = || format!("{}", w).replace('\n', " ");
    let dd = dual_d(&dual_d(&m));
    rep.record(dd == m, || format!("D D = id on Phi({})", input()), || format!("{}", dd), || format!("{}", m));
    let vv = dual_vee(ctx, &dual_vee(ctx, &m));
    rep.record(vv == m, || format!("vee vee = id on Phi({})", input()), || format!("{}", vv), || format!("{}", m));
    let base = random_set(&mut rng, 3, cfg.lo, cfg.hi);
    let (a, b, c) = (base.clone(), shuffled(&mut rng, &base), shuffled(&mut rng, &base));
    if let (Some(f), Some(g)) = (random_morphism(&mut rng, cfg.q, &a, &b), random_morphism(&mut rng, cfg.q, &b, &c)) {
        let gf = compose(ctx, &g, &f)?;
        let l = dual_d(&gf);
        let r = compose(ctx, &dual_d(&f), &dual_d(&g))?;
        rep.record(l == r, || format!("D contravariant, f={} g={}", f, g), || format!("{}", l), || format!("{}", r));
        let l = dual_vee(ctx, &gf);
        let r = compose(ctx, &dual_vee(ctx, &f), &dual_vee(ctx, &g))?;
        rep.record(l == r, || format!("vee contravariant, f={} g={}", f, g), || format!("{}", l), || format!("{}", r));
    }
    Ok(rep)
}

/// Duality and bending compatibilities on random words and morphisms.
pub fn dualities(cfg: &SuiteConfig) -> Result<Report, PhiError> {
    let q = cfg.q;
    let parts = map_ordered((0..cfg.count).collect(), || Phi::new(q), |phi, i| dualities_item(phi.as_ref().map_err(Clone::clone)?, cfg, i));
    merged("dualities", parts)
}

/// ν(β_Y) against the closed formula and Φ(β_Y) against `β_Y` in 𝓗, for
/// every `Y` of size at most 3.
pub fn beta(cfg: &SuiteConfig) -> Result<Report, PhiError> {
    let items: Vec<GradedSet> = (0..=3).flat_map(|n| degree_tuples(n, cfg.lo, cfg.hi)).collect();
    let q = cfg.q;
    let parts = map_ordered(items, || Phi::new(q), |phi, y| {
        let phi = phi.as_ref().map_err(Clone::clone)?;
        let mut rep = Report::new("beta");
        let w = beta_word(&y);
        let l = nu(&w)?;
        let r = beta_rulings_formula(&y);
        rep.record(l == r, || format!("nu(beta) on {}", y), || format!("{}", l), || format!("{}", r));
        let l = phi.word(&w)?;
        let r = beta_morphism(phi.ctx(), &y);
        rep.record(l == r, || format!("Phi(beta) on {}", y), || format!("{}", l), || format!("{}", r));
        Ok(rep)
    });
    merged("beta", parts)
}

/// Automorphism counts of normal forms against enumeration, size at most 3.
pub fn aut(cfg: &SuiteConfig) -> Result<Report, PhiError> {
    let ctx = HContext::new(cfg.q)?;
    let f = ctx.field();
    let mut rep = Report::new("aut");
    for n in 0..=3 {
        for x in degree_tuples(n, cfg.lo, cfg.hi) {
            for r in enumerate_partial_rulings(&x) {
                let brute = enumerate_aut(f, &x, &ruling_differential(&r)).len();
                let closed = aut_count_at(&x, &r, cfg.q as i64);
                rep.record(closed == brute.into(), || format!("{} {}", x, r), || closed.to_string(), || brute.to_string());
            }
        }
    }
    Ok(rep)
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<Report>, PhiError> {
    Ok(match suite {
        Suite::Moves => vec![moves(cfg)?],
        Suite::Category => vec![category(cfg)?],
        Suite::Dualities => vec![dualities(cfg)?],
        Suite::Beta => vec![beta(cfg)?],
        Suite::Aut => vec![aut(cfg)?],
        Suite::All => vec![moves(cfg)?, category(cfg)?, dualities(cfg)?, beta(cfg)?, aut(cfg)?],
    })
}
