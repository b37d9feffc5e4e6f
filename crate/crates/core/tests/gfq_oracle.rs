use flagtangle_core::gfq::*;
use proptest::prelude::*;

fn all_vectors(q: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut v = vec![0u8; n];
    loop {
        out.push(v.clone());
        if !odometer(&mut v, q) {
            break;
        }
    }
    out
}

#[test]
fn multiplicative_group_is_cyclic() {
    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let f = Field::new(q).unwrap();
        let has_generator = (1..q as u8).any(|g| {
            let mut x = 1u8;
            let mut seen = std::collections::BTreeSet::new();
            for _ in 0..q - 1 {
                x = f.mul(x, g);
                seen.insert(x);
            }
            seen.len() == q as usize - 1
        });
        assert!(has_generator, "q = {}", q);
    }
}

#[test]
fn characteristic() {
    for (q, p) in [(4u32, 2usize), (8, 2), (9, 3)] {
        let f = Field::new(q).unwrap();
        for a in f.elements() {
            let mut s = 0;
            for _ in 0..p {
                s = f.add(s, a);
            }
            assert_eq!(s, 0);
        }
    }
}

proptest! {
    #[test]
    fn solve_matches_brute_force(
        q in prop::sample::select(vec![2u32, 3, 4]),
        rows in 1usize..4,
        cols in 1usize..4,
        seed in prop::collection::vec(0u8..=255, 20),
    ) {
        let f = Field::new(q).unwrap();
        let qq = f.q();
        let mut it = seed.into_iter().map(|x| x % qq);
        let a = FqMatrix::from_rows(&(0..rows).map(|_| (0..cols).map(|_| it.next().unwrap()).collect()).collect::<Vec<_>>());
        let b: Vec<u8> = (0..rows).map(|_| it.next().unwrap()).collect();
        let brute: Vec<Vec<u8>> = all_vectors(qq, cols).into_iter().filter(|x| a.apply(&f, x) == b).collect();
        match solve_affine(&f, &a, &b).unwrap() {
            None => prop_assert!(brute.is_empty()),
            Some(sol) => {
                let pts: Vec<_> = enumerate_affine(&f, &sol).collect();
                let mut sorted = pts.clone();
                sorted.sort();
                prop_assert_eq!(sorted, brute);
                prop_assert_eq!(a.rank(&f) + sol.dim(), cols);
            }
        }
    }
}
