use std::collections::HashMap;
use std::fmt::Write;

use crate::{ParseError, RankedSymbol, Rule, TreeAutomaton};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    LParen,
    RParen,
    Comma,
    Colon,
    Arrow,
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = super::strip_comment(raw);
        let bytes = line.as_bytes();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos];
            let punct = match c {
                b'(' => Some(Tok::LParen),
                b')' => Some(Tok::RParen),
                b',' => Some(Tok::Comma),
                b':' => Some(Tok::Colon),
                b'-' if bytes.get(pos + 1) == Some(&b'>') => Some(Tok::Arrow),
                _ => None,
            };
            if c.is_ascii_whitespace() {
                pos += 1;
            } else if let Some(tok) = punct {
                pos += if tok == Tok::Arrow { 2 } else { 1 };
                out.push((i + 1, tok));
            } else {
                let start = pos;
                while pos < bytes.len() {
                    let c = bytes[pos];
                    let stop = c.is_ascii_whitespace()
                        || matches!(c, b'(' | b')' | b',' | b':')
                        || (c == b'-' && bytes.get(pos + 1) == Some(&b'>'));
                    if stop {
                        break;
                    }
                    pos += 1;
                }
                out.push((i + 1, Tok::Ident(&line[start..pos])));
            }
        }
    }
    out
}

struct Cursor<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&Tok<'a>> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn line(&self) -> usize {
        self.toks.get(self.pos).map_or(self.last_line, |(l, _)| *l)
    }

    fn next(&mut self) -> Option<(usize, Tok<'a>)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn keyword(&mut self, word: &str) -> Result<(), ParseError> {
        let line = self.line();
        match self.next() {
            Some((_, Tok::Ident(w))) if w == word => Ok(()),
            _ => Err(ParseError::syntax(line, format!("expected `{word}`"))),
        }
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        let line = self.line();
        match self.next() {
            Some((l, Tok::Ident(w))) => Ok((l, w)),
            _ => Err(ParseError::syntax(line, "expected a name")),
        }
    }

    fn expect(&mut self, tok: Tok<'_>, what: &str) -> Result<(), ParseError> {
        let line = self.line();
        match self.next() {
            Some((_, t)) if t == tok => Ok(()),
            _ => Err(ParseError::syntax(line, format!("expected `{what}`"))),
        }
    }

    fn at_ident(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Tok::Ident(w)) if *w == word)
    }
}

fn number(line: usize, text: &str) -> Result<usize, ParseError> {
    text.parse().map_err(|_| ParseError::syntax(line, format!("expected an arity, found `{text}`")))
}

/// Parses a tree automaton in Timbuk format.
pub fn parse_timbuk(text: &str) -> Result<TreeAutomaton, ParseError> {
    let mut cur = Cursor { toks: tokenize(text), pos: 0, last_line: text.lines().count().max(1) };
    cur.keyword("Ops")?;
    let mut symbols = Vec::new();
    let mut sym_index = HashMap::new();
    while !cur.at_ident("Automaton") {
        let (line, name) = cur.ident()?;
        cur.expect(Tok::Colon, ":")?;
        let (_, arity) = cur.ident()?;
        let arity = number(line, arity)?;
        if sym_index.insert(name.to_string(), symbols.len()).is_some() {
            return Err(ParseError::syntax(line, format!("symbol `{name}` declared twice")));
        }
        symbols.push(RankedSymbol::new(name, arity));
    }
    cur.keyword("Automaton")?;
    cur.ident()?;
    cur.keyword("States")?;
    let mut states = Vec::new();
    let mut state_index = HashMap::new();
    while !cur.at_ident("Final") {
        let (line, name) = cur.ident()?;
        if cur.peek() == Some(&Tok::Colon) {
            cur.next();
            cur.ident()?;
        }
        if state_index.insert(name.to_string(), states.len()).is_some() {
            return Err(ParseError::syntax(line, format!("state `{name}` declared twice")));
        }
        states.push(name.to_string());
    }
    cur.keyword("Final")?;
    cur.keyword("States")?;
    let mut finals = Vec::new();
    while !cur.at_ident("Transitions") {
        let (line, name) = cur.ident()?;
        finals.push(super::lookup_state(&state_index, name, line)?);
    }
    cur.keyword("Transitions")?;
    let mut rules = Vec::new();
    while cur.peek().is_some() {
        let (line, name) = cur.ident()?;
        let symbol = super::lookup_symbol(&sym_index, name, line)?;
        let mut lhs = Vec::new();
        if cur.peek() == Some(&Tok::LParen) {
            cur.next();
            if cur.peek() != Some(&Tok::RParen) {
                loop {
                    let (l, q) = cur.ident()?;
                    lhs.push(super::lookup_state(&state_index, q, l)?);
                    if cur.peek() == Some(&Tok::Comma) {
                        cur.next();
                    } else {
                        break;
                    }
                }
            }
            cur.expect(Tok::RParen, ")")?;
        }
        cur.expect(Tok::Arrow, "->")?;
        let (l, q) = cur.ident()?;
        let rhs = super::lookup_state(&state_index, q, l)?;
        let declared = symbols[symbol].arity;
        if declared != lhs.len() {
            return Err(ParseError::Arity { line, symbol: name.to_string(), declared, used: lhs.len() });
        }
        rules.push(Rule { symbol, lhs, rhs });
    }
    Ok(TreeAutomaton::new(states, symbols, rules, finals)?)
}

pub fn serialize_timbuk(ta: &TreeAutomaton) -> String {
    let names = ta.state_names();
    let mut out = String::from("Ops");
    for s in ta.symbols() {
        write!(out, " {}:{}", s.name, s.arity).unwrap();
    }
    out.push_str("\n\nAutomaton A\nStates");
    for s in names {
        write!(out, " {s}").unwrap();
    }
    out.push_str("\nFinal States");
    for q in ta.final_states().ones() {
        write!(out, " {}", names[q]).unwrap();
    }
    out.push_str("\nTransitions\n");
    for rule in ta.rules() {
        let args: Vec<&str> = rule.lhs.iter().map(|&q| names[q].as_str()).collect();
        writeln!(out, "{}({}) -> {}", ta.symbols()[rule.symbol].name, args.join(","), names[rule.rhs]).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str =
        "Ops a:0 f:2\nAutomaton A\nStates q0 q1\nFinal States q1\nTransitions\na() -> q0\nf(q0,q0) -> q1";

    #[test]
    fn parses_small_automaton() {
        let ta = parse_timbuk(SMALL).unwrap();
        assert_eq!(ta.num_states(), 2);
        assert_eq!(ta.rules().len(), 2);
        assert_eq!(ta.final_states().ones().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn arity_mismatch_is_reported() {
        let text = SMALL.replace("f(q0,q0)", "f(q0)");
        let err = parse_timbuk(&text).unwrap_err();
        assert!(matches!(err, ParseError::Arity { line: 7, declared: 2, used: 1, .. }));
    }

    #[test]
    fn accepts_loose_syntax() {
        let text = "Ops a:0 f:2 # ops\n\nAutomaton  X\nStates q0:0 q1:0\nFinal States q1\nTransitions\na -> q0\n f ( q0 , q0 )->q1\n";
        let ta = parse_timbuk(text).unwrap();
        assert_eq!(ta, parse_timbuk(SMALL).unwrap());
    }

    #[test]
    fn undeclared_names() {
        let err = parse_timbuk(&SMALL.replace("f(q0,q0) -> q1", "f(q0,q2) -> q1")).unwrap_err();
        assert_eq!(err, ParseError::UndeclaredState { line: 7, name: "q2".into() });
        let err = parse_timbuk(&SMALL.replace("a() -> q0", "b() -> q0")).unwrap_err();
        assert_eq!(err, ParseError::UndeclaredSymbol { line: 6, name: "b".into() });
    }

    #[test]
    fn round_trip() {
        let ta = parse_timbuk(SMALL).unwrap();
        assert_eq!(parse_timbuk(&serialize_timbuk(&ta)).unwrap(), ta);
    }
}
