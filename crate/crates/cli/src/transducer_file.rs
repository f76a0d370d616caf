//! The transducer file format.
//!
//! ```text
//! states q0 q1
//! input "a" "b"
//! output "a"
//! initial q0
//! final q1
//! trans q0 "a" -> q1 "a" "a"   ; writes two symbols
//! trans q1 "" -> q1 ""         ; reads and writes nothing
//! ```
//!
//! Alphabet symbols may also be written bare when they are single words.

use std::collections::BTreeSet;
use std::fmt::Write;

use thfsg_core::algebra::{Transducer, Transition};
use thfsg_core::Symbol;

use crate::scan::{lines, quote, Line, SyntaxError};

pub fn parse_transducer(text: &str) -> Result<Transducer, SyntaxError> {
    let mut states: Option<BTreeSet<Symbol>> = None;
    let mut input = BTreeSet::new();
    let mut output = BTreeSet::new();
    let mut initial: Option<Symbol> = None;
    let mut finals = BTreeSet::new();
    let mut transitions = BTreeSet::new();

    for mut line in lines(text) {
        let keyword = line.word("keyword", &[])?;
        match keyword {
            "states" => {
                let set = states.get_or_insert_with(BTreeSet::new);
                while !line.at_end() {
                    set.insert(Symbol::new(line.word("state", &[])?));
                }
            }
            "input" | "output" => {
                let set = if keyword == "input" { &mut input } else { &mut output };
                while !line.at_end() {
                    let a = line.item("symbol")?;
                    if a.is_empty() {
                        return Err(line.error("alphabet symbols may not be empty"));
                    }
                    set.insert(Symbol::from(a));
                }
            }
            "initial" => {
                initial = Some(state(&mut line, &states)?);
                line.finish()?;
            }
            "final" => {
                while !line.at_end() {
                    finals.insert(state(&mut line, &states)?);
                }
            }
            "trans" => {
                let from = state(&mut line, &states)?;
                let read = line.quoted("input")?;
                line.expect("->")?;
                let to = state(&mut line, &states)?;
                let mut written = Vec::new();
                loop {
                    let b = line.quoted("output")?;
                    if !b.is_empty() {
                        written.push(Symbol::from(b));
                    }
                    if line.at_end() {
                        break;
                    }
                }
                transitions.insert(Transition {
                    from,
                    input: (!read.is_empty()).then(|| Symbol::from(read)),
                    to,
                    output: written,
                });
            }
            _ => {
                return Err(SyntaxError::new(
                    line.number,
                    1,
                    format!("unknown keyword `{keyword}`"),
                ))
            }
        }
    }

    let initial = initial.ok_or_else(|| SyntaxError::new(1, 1, "missing initial line"))?;
    let mut m = Transducer::new(initial, input, output);
    m.states.extend(states.unwrap_or_default());
    m.finals = finals;
    for t in &transitions {
        m.states.insert(t.from.clone());
        m.states.insert(t.to.clone());
    }
    m.states.extend(m.finals.iter().cloned());
    m.transitions = transitions;
    Ok(m)
}

/// A state name, checked against the `states` line when there is one.
fn state(line: &mut Line<'_>, declared: &Option<BTreeSet<Symbol>>) -> Result<Symbol, SyntaxError> {
    line.peek();
    let column = line.column();
    let q = Symbol::new(line.word("state", &[])?);
    match declared {
        Some(set) if !set.contains(&q) => Err(SyntaxError::new(line.number, column, format!("undeclared state `{q}`"))),
        _ => Ok(q),
    }
}

pub fn write_transducer(m: &Transducer) -> String {
    let mut out = String::from("states");
    for q in &m.states {
        let _ = write!(out, " {q}");
    }
    out.push_str("\ninput");
    for a in &m.input {
        let _ = write!(out, " {}", quote(a));
    }
    out.push_str("\noutput");
    for a in &m.output {
        let _ = write!(out, " {}", quote(a));
    }
    let _ = write!(out, "\ninitial {}\nfinal", m.initial);
    for q in &m.finals {
        let _ = write!(out, " {q}");
    }
    out.push('\n');
    for t in &m.transitions {
        let read = t.input.as_ref().map_or("", |a| a.as_str());
        let _ = write!(out, "trans {} {} -> {}", t.from, quote(read), t.to);
        if t.output.is_empty() {
            out.push_str(" \"\"");
        }
        for b in &t.output {
            let _ = write!(out, " {}", quote(b));
        }
        out.push('\n');
    }
    out
}
