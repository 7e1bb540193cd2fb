//! Plain-text automaton dump.
//!
//! ```text
//! alphabet 2
//! states 3
//! initial 0
//! accepting 1 2
//! 0 0 1
//! 1 1 2
//! ```
//!
//! Header lines come first; every other non-empty line is a transition
//! `state symbol state`. Lines starting with `#` are comments.

use std::fmt::Write as _;

use super::{AutomataError, Dfa, Nfa, Result};

pub trait DumpFormat {
    fn to_dump(&self) -> String;
}

impl DumpFormat for Nfa {
    fn to_dump(&self) -> String {
        let mut out = String::new();
        writeln!(out, "alphabet {}", self.alphabet_size()).unwrap();
        writeln!(out, "states {}", self.num_states()).unwrap();
        write_list(&mut out, "initial", self.initial().iter().copied());
        write_list(&mut out, "accepting", self.accepting_states());
        for (q, a, r) in self.transitions() {
            writeln!(out, "{q} {a} {r}").unwrap();
        }
        out
    }
}

impl DumpFormat for Dfa {
    fn to_dump(&self) -> String {
        self.to_nfa().to_dump()
    }
}

fn write_list(out: &mut String, key: &str, items: impl Iterator<Item = usize>) {
    out.push_str(key);
    for q in items {
        write!(out, " {q}").unwrap();
    }
    out.push('\n');
}

fn parse_err(line: usize, message: impl Into<String>) -> AutomataError {
    AutomataError::Parse { line, message: message.into() }
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields
        .iter()
        .map(|f| f.parse::<usize>().map_err(|_| parse_err(line, format!("not a number: {f:?}"))))
        .collect()
}

/// Parses the dump format back into an [`Nfa`].
pub fn parse_dump(text: &str) -> Result<Nfa> {
    let mut alphabet = None;
    let mut states = None;
    let mut initial = Vec::new();
    let mut accepting = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "alphabet" => alphabet = Some(single(line_no, &fields)?),
            "states" => states = Some(single(line_no, &fields)?),
            "initial" => initial = numbers(line_no, &fields[1..])?,
            "accepting" => accepting = numbers(line_no, &fields[1..])?,
            _ => {
                let nums = numbers(line_no, &fields)?;
                if nums.len() != 3 {
                    return Err(parse_err(line_no, "transition needs `state symbol state`"));
                }
                edges.push((nums[0], nums[1], nums[2]));
            }
        }
    }
    let alphabet = alphabet.ok_or_else(|| parse_err(0, "missing `alphabet` header"))?;
    let states = states.ok_or_else(|| parse_err(0, "missing `states` header"))?;
    Nfa::from_parts(alphabet, states, edges, initial, accepting)
}

fn single(line: usize, fields: &[&str]) -> Result<usize> {
    if fields.len() != 2 {
        return Err(parse_err(line, format!("`{}` takes one value", fields[0])));
    }
    Ok(numbers(line, &fields[1..])?[0])
}
