use std::fmt::Write;

use super::{index_names, join, lookup_state, lookup_symbol, require, split_sections};
use crate::{Nfa, ParseError};

const KEYS: [&str; 5] = ["alphabet", "states", "initial", "final", "trans"];

/// Parses the section-based FA format:
///
/// ```text
/// alphabet: a b
/// states: p q
/// initial: p
/// final: q
/// trans:
/// p a q
/// ```
pub fn parse_fa(text: &str) -> Result<Nfa, ParseError> {
    let sections = split_sections(text, &KEYS)?;
    let last = text.lines().count().max(1);
    let (alphabet, sym_index) = index_names(require(&sections, "alphabet", last)?);
    let (states, state_index) = index_names(require(&sections, "states", last)?);
    let mut initial = Vec::new();
    for (line, name) in require(&sections, "initial", last)?.tokens() {
        initial.push(lookup_state(&state_index, name, line)?);
    }
    let mut finals = Vec::new();
    for (line, name) in require(&sections, "final", last)?.tokens() {
        finals.push(lookup_state(&state_index, name, line)?);
    }
    let mut transitions = Vec::new();
    if let Some(trans) = sections.get("trans") {
        for (line, toks) in &trans.lines {
            let [p, a, q] = toks[..] else {
                return Err(ParseError::syntax(*line, "expected `source symbol target`"));
            };
            transitions.push((
                lookup_state(&state_index, p, *line)?,
                lookup_symbol(&sym_index, a, *line)?,
                lookup_state(&state_index, q, *line)?,
            ));
        }
    }
    Ok(Nfa::new(states, alphabet, transitions, initial, finals)?)
}

pub fn serialize_fa(nfa: &Nfa) -> String {
    let names = nfa.state_names();
    let pick = |set: &crate::StateSet| join(set.ones().map(|q| &names[q]));
    let mut out = String::new();
    writeln!(out, "alphabet: {}", join(nfa.alphabet())).unwrap();
    writeln!(out, "states: {}", join(names)).unwrap();
    writeln!(out, "initial: {}", pick(nfa.initial())).unwrap();
    writeln!(out, "final: {}", pick(nfa.final_states())).unwrap();
    writeln!(out, "trans:").unwrap();
    for &(p, a, q) in nfa.transitions() {
        writeln!(out, "{} {} {}", names[p], nfa.alphabet()[a], names[q]).unwrap();
    }
    out
}
