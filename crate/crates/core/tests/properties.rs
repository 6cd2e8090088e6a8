//! Property tests over random phrases and moves.

mod common;

use std::collections::HashMap;

use nanophrase::invariants::{direct_invariants, invariant_battery, t_alpha0_with, u_l};
use nanophrase::text::serialize_nanophrase;
use nanophrase::*;
use proptest::prelude::*;

fn oracle_desing_size(p: &EtalePhrase) -> usize {
    let mut m: HashMap<usize, usize> = HashMap::new();
    for &l in p.words().iter().flatten() {
        *m.entry(l).or_default() += 1;
    }
    m.values().map(|&c| c * (c - 1)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn desingularization_size(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 4);
        let p = common::etale(&mut r, &alpha, 4, 8);
        let d = desingularize(&p);
        prop_assert_eq!(d.letter_count() * 2, oracle_desing_size(&p));
        prop_assert_eq!(d.len(), p.len());
    }

    #[test]
    fn desingularization_fixes_nanophrases(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 3);
        let n = common::nanophrase(&mut r, &alpha, 3, 6);
        prop_assert_eq!(canonicalize(&desingularize(&n.to_etale())), canonicalize(&n));
    }

    #[test]
    fn moves_preserve_battery(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 3);
        let n = common::stirred(&mut r, &alpha, 3, 4);
        let m = common::random_move(&mut r, &n);
        let after = apply_move(&n, &m).unwrap();
        let w = invariant_battery(&n, &after);
        prop_assert!(w.is_none(), "{} changed under {:?}: {:?}", n.words_text(), m, w);
    }

    #[test]
    fn moves_are_reversible(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 3);
        let n = common::stirred(&mut r, &alpha, 3, 4);
        let m = common::random_move(&mut r, &n);
        let after = apply_move(&n, &m).unwrap();
        let back = apply_move(&after, &inverse_move(n.code(), &m)).unwrap();
        prop_assert_eq!(back.canonical(), n.canonical());
    }

    #[test]
    fn renaming_keeps_canonical_key(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 3);
        let n = common::nanophrase(&mut r, &alpha, 3, 5);
        let text = serialize_nanophrase(&n).replace('L', "Q");
        let renamed = Nanophrase::try_from(parse_document(&text).unwrap()).unwrap();
        prop_assert!(isomorphic(&n, &renamed).unwrap());
    }

    #[test]
    fn document_round_trip(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 4);
        let p = common::etale(&mut r, &alpha, 4, 8);
        let text = serialize_document(&p);
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(serialize_document(&back), text);
    }

    #[test]
    fn t_ignores_designated_symbol(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = std::sync::Arc::new(InvolutiveAlphabet::alpha0());
        let n = common::stirred(&mut r, &alpha, 3, 5);
        prop_assert_eq!(t_alpha0_with(&n, Sym(0)), t_alpha0_with(&n, Sym(1)));
    }

    #[test]
    fn restriction_commutes_with_moves(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 4);
        let n = common::stirred(&mut r, &alpha, 2, 4);
        let m = common::random_move(&mut r, &n);
        let after = apply_move(&n, &m).unwrap();
        for l in nanophrase::invariants::restriction_sets(&alpha) {
            let (x, y) = (u_l(&n, &l).unwrap(), u_l(&after, &l).unwrap());
            let same: Vec<_> = direct_invariants(&x).into_iter().zip(direct_invariants(&y)).filter(|(p, q)| p != q).collect();
            prop_assert!(same.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn search_finds_paths_that_replay(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        let alpha = common::alphabet(&mut r, 2);
        let n = common::nanophrase(&mut r, &alpha, 2, 2);
        let mut m = n.clone();
        for _ in 0..2 {
            let mv = common::random_move(&mut r, &m);
            m = apply_move(&m, &mv).unwrap();
        }
        let budget = SearchBudget::for_entries(2 * n.letter_count().max(m.letter_count()));
        match nanophrase::search::homotopic_nanophrases(&n, &m, &budget).unwrap() {
            Verdict::Homotopic { path } => {
                let end = nanophrase::search::replay(&n, &path).unwrap();
                prop_assert_eq!(end.canonical(), m.canonical());
            }
            other => prop_assert!(false, "no path: {:?}", other),
        }
    }
}
