//! The grammar file format.
//!
//! ```text
//! start S                 ; required, once
//! categories S A B        ; optional: otherwise every category used
//! terminals "a" "b"       ; optional: otherwise every terminal used
//! S -> A:{^ = _} B:{^ f = _, ^ g = #v}
//! A => "a" {^ g = #u}
//! B => "" {}              ; the empty string
//! ```

use std::collections::BTreeSet;
use std::fmt::Write;

use thfsg_core::grammar::{AnnotationSet, Daughter, Grammar, LexiconRule, Production, Schema};
use thfsg_core::Symbol;

use crate::scan::{lines, quote, Line, SyntaxError};

const CATEGORY_STOPS: &[char] = &[':', '{', '}', ','];
const ATTRIBUTE_STOPS: &[char] = &['=', '{', '}', ','];

pub fn parse_grammar(text: &str) -> Result<Grammar, SyntaxError> {
    let mut start: Option<Symbol> = None;
    let mut categories: Option<BTreeSet<Symbol>> = None;
    let mut terminals: Option<BTreeSet<Symbol>> = None;
    let mut productions = Vec::new();
    let mut lexicon = Vec::new();

    for mut line in lines(text) {
        let head = line.word("category or header", CATEGORY_STOPS)?;
        if line.eat("->") {
            let mut rhs = Vec::new();
            while !line.at_end() {
                let category = Symbol::new(line.word("daughter category", CATEGORY_STOPS)?);
                line.expect(":")?;
                rhs.push(Daughter {
                    category,
                    annotations: annotation_set(&mut line)?,
                });
            }
            productions.push(Production {
                lhs: Symbol::new(head),
                rhs,
            });
            continue;
        }
        if line.eat("=>") {
            let t = line.quoted("terminal")?;
            let annotations = if line.at_end() {
                AnnotationSet::new()
            } else {
                annotation_set(&mut line)?
            };
            line.finish()?;
            lexicon.push(LexiconRule {
                lhs: Symbol::new(head),
                terminal: (!t.is_empty()).then(|| Symbol::from(t)),
                annotations,
            });
            continue;
        }
        match head {
            "start" => {
                if start.is_some() {
                    return Err(SyntaxError::new(line.number, 1, "second start line"));
                }
                start = Some(Symbol::new(line.word("start category", CATEGORY_STOPS)?));
                line.finish()?;
            }
            "categories" => {
                let set = categories.get_or_insert_with(BTreeSet::new);
                while !line.at_end() {
                    set.insert(Symbol::new(line.word("category", CATEGORY_STOPS)?));
                }
            }
            "terminals" => {
                let set = terminals.get_or_insert_with(BTreeSet::new);
                while !line.at_end() {
                    set.insert(Symbol::from(line.item("terminal")?));
                }
            }
            _ => return Err(line.error("expected `->` or `=>`")),
        }
    }

    let start = start.ok_or_else(|| SyntaxError::new(1, 1, "missing start line"))?;
    let categories = categories.unwrap_or_else(|| {
        let mut used = BTreeSet::from([start.clone()]);
        for p in &productions {
            used.insert(p.lhs.clone());
            used.extend(p.rhs.iter().map(|d| d.category.clone()));
        }
        used.extend(lexicon.iter().map(|l| l.lhs.clone()));
        used
    });
    let terminals = terminals.unwrap_or_else(|| lexicon.iter().filter_map(|l| l.terminal.clone()).collect());
    Ok(Grammar {
        categories,
        start,
        terminals,
        productions,
        lexicon,
    })
}

fn annotation_set(line: &mut Line<'_>) -> Result<AnnotationSet, SyntaxError> {
    line.expect("{")?;
    let mut set = AnnotationSet::new();
    if line.eat("}") {
        return Ok(set);
    }
    loop {
        set.insert(schema(line)?);
        if line.eat(",") {
            continue;
        }
        line.expect("}")?;
        return Ok(set);
    }
}

fn schema(line: &mut Line<'_>) -> Result<Schema, SyntaxError> {
    line.expect("^")?;
    let mut path = Vec::new();
    while line.peek() != Some('=') {
        path.push(Symbol::new(line.word("attribute or `=`", ATTRIBUTE_STOPS)?));
    }
    line.expect("=")?;
    if line.eat("#") {
        let v = line.word("value", ATTRIBUTE_STOPS)?;
        return Ok(Schema::Value(path, Symbol::new(v)));
    }
    let column = line.column();
    match line.word("`_` or `#value`", ATTRIBUTE_STOPS)? {
        "_" => Ok(Schema::Arrow(path)),
        _ => Err(SyntaxError::new(line.number, column, "expected `_` or `#value`")),
    }
}

/// The file text for `g`, with explicit `categories` and `terminals`
/// headers so that `parse_grammar` gives back exactly `g`.
pub fn write_grammar(g: &Grammar) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "start {}", g.start);
    out.push_str("categories");
    for c in &g.categories {
        let _ = write!(out, " {c}");
    }
    out.push_str("\nterminals");
    for t in &g.terminals {
        let _ = write!(out, " {}", quote(t));
    }
    out.push_str("\n\n");
    for p in &g.productions {
        let _ = writeln!(out, "{p}");
    }
    for l in &g.lexicon {
        let t = l.terminal.as_ref().map_or("", |t| t.as_str());
        let _ = writeln!(out, "{} => {} {}", l.lhs, quote(t), l.annotations);
    }
    out
}
