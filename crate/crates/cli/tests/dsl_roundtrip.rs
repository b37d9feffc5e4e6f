use flagtangle_cli::dsl::{format_word, parse_word};
use flagtangle_cli::random::{random_set, random_word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn format_then_parse(seed in any::<u64>(), len in 0usize..12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left = random_set(&mut rng, 3, -3, 3);
        let w = random_word(&mut rng, &left, len, -3, 3);
        prop_assert_eq!(parse_word(&format_word(&w)).unwrap(), w);
    }

    #[test]
    fn comments_and_spacing_are_ignored(seed in any::<u64>(), pad in "[ \t]{0,3}") {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = random_word(&mut rng, &Default::default(), 6, -1, 1);
        let text = format_word(&w)
            .lines()
            .map(|l| format!("{pad}{}{pad} # note", l.replace(';', &format!("{pad};{pad}"))))
            .collect::<Vec<_>>()
            .join("\n\n");
        prop_assert_eq!(parse_word(&text).unwrap(), w);
    }

    #[test]
    fn garbage_never_panics(s in "\\PC{0,40}") {
        let _ = parse_word(&s);
    }
}
