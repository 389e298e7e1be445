//! Plain-text formats: Timbuk for tree automata and two section-based
//! formats for word and alternating automata.

mod aba;
mod fa;
mod lts;
mod timbuk;

pub use aba::{parse_aba, serialize_aba};
pub use fa::{parse_fa, serialize_fa};
pub use lts::{parse_lts, serialize_lts};
pub use timbuk::{parse_timbuk, serialize_timbuk};

use std::collections::HashMap;

use crate::ParseError;

/// One `key:` section of a section-based file. Header tokens may continue
/// on following lines; `lines` keeps each body line with its number.
#[derive(Default)]
struct Section<'a> {
    line: usize,
    lines: Vec<(usize, Vec<&'a str>)>,
}

impl Section<'_> {
    fn tokens(&self) -> impl Iterator<Item = (usize, &str)> {
        self.lines.iter().flat_map(|(l, toks)| toks.iter().map(move |t| (*l, *t)))
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

fn split_sections<'a>(text: &'a str, keys: &[&str]) -> Result<HashMap<String, Section<'a>>, ParseError> {
    let mut sections: HashMap<String, Section<'a>> = HashMap::new();
    let mut current: Option<String> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = strip_comment(raw).trim();
        if line.is_empty() {
            continue;
        }
        let rest = match line.split_once(':').filter(|(k, _)| keys.contains(&k.trim())) {
            Some((key, tail)) => {
                let key = key.trim();
                if sections.contains_key(key) {
                    return Err(ParseError::syntax(line_no, format!("duplicate section `{key}:`")));
                }
                sections.insert(key.to_string(), Section { line: line_no, lines: Vec::new() });
                current = Some(key.to_string());
                tail
            }
            None => line,
        };
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        match &current {
            Some(key) => sections.get_mut(key).expect("current section exists").lines.push((line_no, toks)),
            None => return Err(ParseError::syntax(line_no, "expected a section header")),
        }
    }
    Ok(sections)
}

fn require<'s, 'a>(
    sections: &'s HashMap<String, Section<'a>>,
    key: &str,
    last_line: usize,
) -> Result<&'s Section<'a>, ParseError> {
    sections.get(key).ok_or_else(|| ParseError::syntax(last_line, format!("missing section `{key}:`")))
}

/// Name-to-index table for a declared list.
fn index_names(section: &Section<'_>) -> (Vec<String>, HashMap<String, usize>) {
    let names: Vec<String> = section.tokens().map(|(_, t)| t.to_string()).collect();
    let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    (names, index)
}

fn lookup_state(index: &HashMap<String, usize>, name: &str, line: usize) -> Result<usize, ParseError> {
    index.get(name).copied().ok_or_else(|| ParseError::UndeclaredState { line, name: name.to_string() })
}

fn lookup_symbol(index: &HashMap<String, usize>, name: &str, line: usize) -> Result<usize, ParseError> {
    index.get(name).copied().ok_or_else(|| ParseError::UndeclaredSymbol { line, name: name.to_string() })
}

fn join<'a>(names: impl IntoIterator<Item = &'a String>) -> String {
    names.into_iter().map(String::as_str).collect::<Vec<_>>().join(" ")
}
