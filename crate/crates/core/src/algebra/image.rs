use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::nft::{Transducer, Transition};
use super::AlgebraError;
use crate::cstructure::Label;
use crate::grammar::{is_normal_form, AnnotationSet, Daughter, FreshNames, Grammar, LexiconRule, Production, Schema};
use crate::Symbol;

fn quoted(t: &str) -> String {
    let mut out = String::from("\"");
    for c in t.chars() {
        if matches!(c, '"' | '\\') {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// The spelling of the triple category `(q1, β, q2)`: `(q1|K|q2)` for a
/// category, `(q1|"t"|q2)` for a terminal and `(q1|""|q2)` for ε.
pub fn triple_category(q1: &Symbol, middle: &Label, q2: &Symbol) -> Symbol {
    let middle = match middle {
        Label::Category(k) => String::from(k.as_str()),
        Label::Terminal(t) => quoted(t),
        Label::Empty => String::from("\"\""),
    };
    Symbol::from(format!("({q1}|{middle}|{q2})"))
}

/// The spelling of `ã`: `~a` for identifiers, `~"a"` otherwise, `~eps`
/// for the empty string.
pub fn tilde_category(a: Option<&Symbol>) -> Symbol {
    match a {
        None => Symbol::new("~eps"),
        Some(a) if a.is_identifier() && a.as_str() != "eps" => Symbol::from(format!("~{a}")),
        Some(a) => Symbol::from(format!("~{}", quoted(a))),
    }
}

fn identity() -> AnnotationSet {
    AnnotationSet::identity()
}

/// The grammar for the image `M(L(g))` of a normal-form grammar under a
/// transducer.
///
/// Categories are the triples `(q, β, q′)` with `β` a category, terminal or
/// ε, the tilde categories `ã` for each output symbol and ε, and a new start.
/// Rules, in order:
///
/// - the start rewrites to `(q0, S, q)` for each final `q`;
/// - every production and lexicon rule is lifted over all state triples
///   (pairs), keeping its schemata, a lexicon rule's set gaining `↑ = ↓`;
/// - `(q1, b, q3)` splits into `(q1, b, q2) (q2, ε, q3)` and
///   `(q1, ε, q2) (q2, b, q3)`;
/// - each transition `(q2, y) ∈ δ0(q1, b)` gives `(q1, b, q2) → ã1 … ãn`
///   (`ε̃` for empty `y`); every state also carries the idle step
///   `(q, ε) ∈ δ0(q, ε)` so that ε-yields of `g` have a derivation;
/// - `ã → a` for every output symbol and ε.
pub fn nft_image_grammar(g: &Grammar, m: &Transducer) -> Result<Grammar, AlgebraError> {
    if !is_normal_form(g) {
        return Err(AlgebraError::NotNormalForm);
    }
    if let Some(t) = g.terminals.iter().find(|t| !m.input.contains(*t)) {
        return Err(AlgebraError::TerminalNotInInput(t.clone()));
    }
    let states: Vec<&Symbol> = m.states.iter().collect();
    let reads: Vec<Label> = m
        .input
        .iter()
        .map(|a| Label::Terminal(a.clone()))
        .chain([Label::Empty])
        .collect();
    let writes: Vec<Option<&Symbol>> = m.output.iter().map(Some).chain([None]).collect();

    let mut categories = BTreeSet::new();
    for q1 in &states {
        for middle in g.categories.iter().map(|k| Label::Category(k.clone())).chain(reads.iter().cloned()) {
            for q2 in &states {
                categories.insert(triple_category(q1, &middle, q2));
            }
        }
    }
    categories.extend(writes.iter().map(|a| tilde_category(*a)));
    let start = FreshNames::new(categories.iter().cloned()).fresh("S0");
    categories.insert(start.clone());

    let mut out = Grammar::new(start.clone());
    out.categories = categories;
    out.terminals = m.output.clone();
    let mut seen = BTreeSet::new();
    let mut push = |out: &mut Grammar, p: Production| {
        if seen.insert(p.clone()) {
            out.productions.push(p);
        }
    };
    let cat = |k: &Symbol| Label::Category(k.clone());
    let triple = |q1: &Symbol, b: &Label, q2: &Symbol, annotations: AnnotationSet| Daughter {
        category: triple_category(q1, b, q2),
        annotations,
    };

    // a) start rules
    for q in &m.finals {
        push(
            &mut out,
            Production {
                lhs: start.clone(),
                rhs: alloc::vec![triple(&m.initial, &cat(&g.start), q, identity())],
            },
        );
    }
    // b) productions over all state triples
    for p in &g.productions {
        let [d1, d2] = p.rhs.as_slice() else {
            unreachable!("normal form");
        };
        for q1 in &states {
            for q2 in &states {
                for q3 in &states {
                    push(
                        &mut out,
                        Production {
                            lhs: triple_category(q1, &cat(&p.lhs), q3),
                            rhs: alloc::vec![
                                triple(q1, &cat(&d1.category), q2, d1.annotations.clone()),
                                triple(q2, &cat(&d2.category), q3, d2.annotations.clone()),
                            ],
                        },
                    );
                }
            }
        }
    }
    // c) lexicon rules over all state pairs
    for l in &g.lexicon {
        let read = l.terminal.clone().map_or(Label::Empty, Label::Terminal);
        let mut annotations = l.annotations.clone();
        annotations.insert(Schema::Arrow(Vec::new()));
        for q1 in &states {
            for q2 in &states {
                push(
                    &mut out,
                    Production {
                        lhs: triple_category(q1, &cat(&l.lhs), q2),
                        rhs: alloc::vec![triple(q1, &read, q2, annotations.clone())],
                    },
                );
            }
        }
    }
    // d) ε-steps before and after any read
    for b in &reads {
        for q1 in &states {
            for q2 in &states {
                for q3 in &states {
                    let lhs = triple_category(q1, b, q3);
                    for rhs in [
                        [triple(q1, b, q2, identity()), triple(q2, &Label::Empty, q3, identity())],
                        [triple(q1, &Label::Empty, q2, identity()), triple(q2, b, q3, identity())],
                    ] {
                        push(&mut out, Production { lhs: lhs.clone(), rhs: rhs.into() });
                    }
                }
            }
        }
    }
    // e) one rule per transition step
    let idle = states.iter().map(|q| Transition {
        from: (*q).clone(),
        input: None,
        to: (*q).clone(),
        output: Vec::new(),
    });
    for t in m.transitions.iter().cloned().chain(idle) {
        let read = t.input.clone().map_or(Label::Empty, Label::Terminal);
        let rhs = if t.output.is_empty() {
            alloc::vec![Daughter {
                category: tilde_category(None),
                annotations: identity(),
            }]
        } else {
            t.output
                .iter()
                .map(|a| Daughter {
                    category: tilde_category(Some(a)),
                    annotations: identity(),
                })
                .collect()
        };
        push(
            &mut out,
            Production {
                lhs: triple_category(&t.from, &read, &t.to),
                rhs,
            },
        );
    }
    // f) tilde lexicon
    for a in writes {
        out.lexicon.push(LexiconRule {
            lhs: tilde_category(a),
            terminal: a.cloned(),
            annotations: AnnotationSet::new(),
        });
    }
    Ok(out)
}
