use std::fmt::Write;

use super::{index_names, join, lookup_state, lookup_symbol, require, split_sections};
use crate::{Aba, ParseError};

const KEYS: [&str; 5] = ["alphabet", "states", "initial", "accepting", "trans"];

/// Parses the ABA format. Each transition line `p a -> q1 q2 …` adds one
/// alternative (a conjunct set) to `δ(p, a)`; an empty right-hand side
/// denotes the empty conjunct.
pub fn parse_aba(text: &str) -> Result<Aba, ParseError> {
    let sections = split_sections(text, &KEYS)?;
    let last = text.lines().count().max(1);
    let (alphabet, sym_index) = index_names(require(&sections, "alphabet", last)?);
    let (states, state_index) = index_names(require(&sections, "states", last)?);
    let init_section = require(&sections, "initial", last)?;
    let init_tokens: Vec<_> = init_section.tokens().collect();
    let [(line, name)] = init_tokens[..] else {
        return Err(ParseError::syntax(init_section.line, "`initial:` must name exactly one state"));
    };
    let initial = lookup_state(&state_index, name, line)?;
    let mut accepting = Vec::new();
    for (line, name) in require(&sections, "accepting", last)?.tokens() {
        accepting.push(lookup_state(&state_index, name, line)?);
    }
    let mut transitions = Vec::new();
    if let Some(trans) = sections.get("trans") {
        for (line, toks) in &trans.lines {
            let (p, a, rhs) = match toks[..] {
                [p, a, "->", ref rhs @ ..] => (p, a, rhs),
                _ => return Err(ParseError::syntax(*line, "expected `source symbol -> targets…`")),
            };
            let conj = rhs.iter().map(|q| lookup_state(&state_index, q, *line)).collect::<Result<Vec<_>, _>>()?;
            transitions.push((lookup_state(&state_index, p, *line)?, lookup_symbol(&sym_index, a, *line)?, conj));
        }
    }
    Ok(Aba::new(states, alphabet, initial, accepting, transitions)?)
}

pub fn serialize_aba(aba: &Aba) -> String {
    let names = aba.state_names();
    let mut out = String::new();
    writeln!(out, "alphabet: {}", join(aba.alphabet())).unwrap();
    writeln!(out, "states: {}", join(names)).unwrap();
    writeln!(out, "initial: {}", names[aba.initial()]).unwrap();
    writeln!(out, "accepting: {}", join(aba.accepting().ones().map(|q| &names[q]))).unwrap();
    writeln!(out, "trans:").unwrap();
    for (p, a, conj) in aba.transitions() {
        let rhs = join(conj.iter().map(|&q| &names[q]));
        writeln!(out, "{} {} -> {}", names[p], aba.alphabet()[a], rhs).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEVEN: &str = "\
alphabet: a b
states: s0 s1 s2 s3 s4 s5 s6
initial: s0
accepting: s0 s1 s2 s3 s4 s5 s6
trans:
s0 a -> s4
s0 a -> s1
s0 b -> s0
s1 b -> s2 s5
s1 b -> s1 s3
s2 b -> s2 s3
s3 a -> s0
s4 b -> s4 s6
s5 b -> s0
s6 a -> s0
";

    #[test]
    fn parses_alternatives() {
        let aba = parse_aba(SEVEN).unwrap();
        assert_eq!(aba.num_states(), 7);
        assert_eq!(aba.delta(0, 0), &[vec![1], vec![4]]);
        assert_eq!(aba.delta(1, 1), &[vec![1, 3], vec![2, 5]]);
        assert!(aba.delta(2, 0).is_empty());
        assert_eq!(aba.num_transitions(), 10);
    }

    #[test]
    fn round_trip_with_empty_conjunct() {
        let text = "alphabet: a\nstates: p q\ninitial: p\naccepting:\ntrans:\np a ->\np a -> q p\n";
        let aba = parse_aba(text).unwrap();
        assert!(aba.has_empty_conjunct());
        assert_eq!(parse_aba(&serialize_aba(&aba)).unwrap(), aba);
        let seven = parse_aba(SEVEN).unwrap();
        assert_eq!(parse_aba(&serialize_aba(&seven)).unwrap(), seven);
    }

    #[test]
    fn single_initial_state_required() {
        let err = parse_aba("alphabet: a\nstates: p q\ninitial: p q\naccepting:\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
        let err = parse_aba("alphabet: a\nstates: p\ninitial: p\naccepting:\ntrans:\np a q\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 6, .. }));
    }
}
