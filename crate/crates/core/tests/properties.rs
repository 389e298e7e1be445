use antisim_core::generate::{generate_random_fa, generate_random_ta, random_preorder};
use antisim_core::{normalize_aba, relation_ae, Aba, RankedSymbol, StateSet};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;

fn to_set(n: usize, bits: &[bool]) -> StateSet {
    let mut s = FixedBitSet::with_capacity(n);
    for (i, &b) in bits.iter().enumerate().take(n) {
        s.set(i, b);
    }
    s
}

proptest! {
    #[test]
    fn lifting_is_reflexive_for_reflexive_relations(seed in 0u64..1000, bits in prop::collection::vec(any::<bool>(), 6)) {
        let rel = random_preorder(6, 0.15, seed);
        let p = to_set(6, &bits);
        prop_assert!(relation_ae(&rel, &p, &p));
    }

    #[test]
    fn lifting_is_transitive_for_transitive_relations(
        seed in 0u64..1000,
        a in prop::collection::vec(any::<bool>(), 6),
        b in prop::collection::vec(any::<bool>(), 6),
        c in prop::collection::vec(any::<bool>(), 6),
    ) {
        let rel = random_preorder(6, 0.2, seed);
        let (p, q, r) = (to_set(6, &a), to_set(6, &b), to_set(6, &c));
        if relation_ae(&rel, &p, &q) && relation_ae(&rel, &q, &r) {
            prop_assert!(relation_ae(&rel, &p, &r));
        }
    }

    #[test]
    fn generators_are_pure(seed in any::<u64>(), n in 1usize..8, td in 0.0f64..2.0, fd in 0.0f64..1.0) {
        prop_assert_eq!(generate_random_fa(n, 2, td, fd, seed), generate_random_fa(n, 2, td, fd, seed));
        let syms = [RankedSymbol::new("a", 0), RankedSymbol::new("f", 2)];
        prop_assert_eq!(generate_random_ta(n, &syms, td, fd, seed), generate_random_ta(n, &syms, td, fd, seed));
    }

    #[test]
    fn normalization_removes_empty_conjuncts(
        edges in prop::collection::vec((0usize..4, 0usize..2, prop::collection::vec(0usize..4, 0..3)), 0..12),
    ) {
        let names: Vec<String> = (0..4).map(|i| format!("s{i}")).collect();
        let aba = Aba::new(names, vec!["a".into(), "b".into()], 0, [1], edges).unwrap();
        let norm = normalize_aba(&aba);
        prop_assert!(!norm.has_empty_conjunct());
        prop_assert_eq!(norm.num_transitions() >= aba.num_transitions(), true);
        if !aba.has_empty_conjunct() {
            prop_assert_eq!(norm, aba);
        }
    }
}
