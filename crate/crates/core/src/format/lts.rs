use std::fmt::Write;

use super::{index_names, join, lookup_state, lookup_symbol, require, split_sections};
use crate::{Lts, ParseError};

const KEYS: [&str; 3] = ["alphabet", "states", "trans"];

/// Parses an LTS: the FA format without `initial:` and `final:`.
pub fn parse_lts(text: &str) -> Result<Lts, ParseError> {
    let sections = split_sections(text, &KEYS)?;
    let last = text.lines().count().max(1);
    let (alphabet, sym_index) = index_names(require(&sections, "alphabet", last)?);
    let (states, state_index) = index_names(require(&sections, "states", last)?);
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
    Ok(Lts::new(states, alphabet, transitions)?)
}

pub fn serialize_lts(lts: &Lts) -> String {
    let names = lts.state_names();
    let mut out = String::new();
    writeln!(out, "alphabet: {}", join(lts.alphabet())).unwrap();
    writeln!(out, "states: {}", join(names)).unwrap();
    writeln!(out, "trans:").unwrap();
    for &(p, a, q) in lts.transitions() {
        writeln!(out, "{} {} {}", names[p], lts.alphabet()[a], names[q]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let lts = parse_lts("alphabet: a b\nstates: x y\ntrans:\nx a y\ny b y\n").unwrap();
        assert_eq!(lts.transitions(), &[(0, 0, 1), (1, 1, 1)]);
        assert_eq!(parse_lts(&serialize_lts(&lts)).unwrap(), lts);
    }

    #[test]
    fn finals_are_rejected() {
        assert!(parse_lts("alphabet: a\nstates: x\nfinal: x\n").is_err());
    }
}
