use antisim_core::format::{parse_aba, parse_fa, parse_timbuk, serialize_aba, serialize_fa, serialize_timbuk};
use antisim_core::generate::{generate_random_aba, generate_random_fa, generate_random_ta, AbaParams};
use antisim_core::RankedSymbol;

#[test]
fn fa_text_round_trips() {
    for seed in 0..100 {
        let fa = generate_random_fa(2 + (seed as usize % 6), 2, 1.5, 0.4, seed).unwrap();
        let once = parse_fa(&serialize_fa(&fa)).unwrap();
        assert_eq!(once, fa, "seed {seed}");
        assert_eq!(parse_fa(&serialize_fa(&once)).unwrap(), once);
    }
}

#[test]
fn timbuk_round_trips() {
    let syms =
        [RankedSymbol::new("a", 0), RankedSymbol::new("b", 0), RankedSymbol::new("g", 1), RankedSymbol::new("f", 2)];
    for seed in 0..100 {
        let ta = generate_random_ta(1 + (seed as usize % 5), &syms, 1.2, 0.5, seed).unwrap();
        let once = parse_timbuk(&serialize_timbuk(&ta)).unwrap();
        assert_eq!(once, ta, "seed {seed}");
        assert_eq!(parse_timbuk(&serialize_timbuk(&once)).unwrap(), once);
    }
}

#[test]
fn aba_text_round_trips() {
    for seed in 0..100 {
        let params = AbaParams {
            states: 2 + (seed as usize % 5),
            symbols: 2,
            td: 1.0,
            fd: 0.5,
            max_conjunct: 2,
            empty_conjunct: 0.1,
        };
        let aba = generate_random_aba(&params, seed).unwrap();
        let once = parse_aba(&serialize_aba(&aba)).unwrap();
        assert_eq!(once, aba, "seed {seed}");
    }
}
