use std::collections::BTreeSet;

use thfsg_core::cstructure::homomorphism_violations;
use thfsg_core::fixtures;
use thfsg_core::fs::InconsistencyKind;
use thfsg_core::grammar::Grammar;
use thfsg_core::parser::{enumerate, parse_all, recognize, ParseError, Parser, Recognition, SearchLimits};
use thfsg_core::Symbol;

fn toks(s: &str) -> Vec<Symbol> {
    s.split_whitespace().map(Symbol::new).collect()
}

/// Swiss-German tokens: `_` joins multiword terminals.
fn swiss_toks(s: &str) -> Vec<Symbol> {
    s.split_whitespace().map(|t| Symbol::from(t.replace('_', " "))).collect()
}

fn spelled(set: &BTreeSet<Vec<Symbol>>) -> BTreeSet<String> {
    set.iter()
        .map(|w| w.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(" "))
        .collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// Members of the counting language up to `max_len`, built from its
/// closed form rather than from the grammar.
fn counting_language(max_len: usize) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let mut n = 1;
    while 2 * n + (1 << n) <= max_len {
        for bits in 0..(1u32 << n) {
            let w: Vec<&str> = (0..n).map(|i| if bits >> (n - 1 - i) & 1 == 1 { "b" } else { "a" }).collect();
            let c = vec!["c"; 1 << n];
            out.insert([w.clone(), c, w].concat().join(" "));
        }
        n += 1;
    }
    out
}

fn accepts(g: &Grammar, s: &str) -> bool {
    recognize(g, &toks(s), &SearchLimits::default()).unwrap().is_accept()
}

#[test]
fn counting_grammar_enumeration_matches_the_closed_form() {
    let g = fixtures::g1();
    let limits = SearchLimits::default();
    assert!(enumerate(&g, 3, &limits).unwrap().is_empty());
    assert_eq!(spelled(&enumerate(&g, 4, &limits).unwrap()), set(&["a c c a", "b c c b"]));
    for len in [8, 10, 12] {
        let got = spelled(&enumerate(&g, len, &limits).unwrap());
        assert_eq!(got, counting_language(len), "max_len {len}");
    }
    assert_eq!(counting_language(10).len(), 6);
}

#[test]
fn counting_grammar_recognition() {
    let g = fixtures::g1();
    assert!(accepts(&g, "b a c c c c b a"));
    assert!(accepts(&g, "a c c a"));
    assert!(!accepts(&g, "a c a"));
    assert!(!accepts(&g, "b a c c c b a"));
    assert!(!accepts(&g, "a b c c c c b a"));
    assert!(!accepts(&g, ""));
}

#[test]
fn counting_witness_is_the_forced_tree() {
    let g = fixtures::g1();
    let limits = SearchLimits {
        max_parses: 10,
        ..SearchLimits::default()
    };
    let parses = parse_all(&g, &toks("b a c c c c b a"), &limits).unwrap();
    assert_eq!(parses.len(), 1);
    let p = &parses[0];
    assert!(p.tree.validate(&g).is_empty());
    assert_eq!(p.tree.terminal_string(), toks("b a c c c c b a"));
    assert!(homomorphism_violations(&p.tree, &p.fs).is_empty());
    // the structure is the two-link chain of the example: five nodes
    assert_eq!(p.fs.len(), 5);
    assert!(parse_all(&g, &toks("a b"), &limits).unwrap().is_empty());
}

#[test]
fn recognize_returns_the_first_parse() {
    let g = fixtures::g1();
    let limits = SearchLimits {
        max_parses: 3,
        ..SearchLimits::default()
    };
    let w = toks("a c c a");
    let Recognition::Accept(first) = recognize(&g, &w, &limits).unwrap() else {
        panic!("rejected");
    };
    assert_eq!(parse_all(&g, &w, &limits).unwrap()[0], first);
}

#[test]
fn cross_serial_examples() {
    let g = fixtures::swiss();
    let limits = SearchLimits::default();
    let ok = recognize(&g, &swiss_toks("x d'chind em_Hans y laa hälfe z"), &limits).unwrap();
    let Recognition::Accept(parse) = ok else {
        panic!("crossed clause rejected");
    };
    assert!(homomorphism_violations(&parse.tree, &parse.fs).is_empty());

    let bad = recognize(&g, &swiss_toks("x es_Hans d'chind y hälfe laa z"), &limits).unwrap();
    let Recognition::Reject(Some(clash)) = bad else {
        panic!("expected a clash witness, got {bad:?}");
    };
    assert_eq!(clash.inconsistency.kind(), InconsistencyKind::ValueClash);
    let shown = clash.inconsistency.to_string();
    assert!(shown.contains("DAT") && shown.contains("ACC"), "{shown}");
    assert!(clash.tree.validate(&g).is_empty());
}

#[test]
fn unknown_tokens_and_invalid_grammars_are_errors() {
    let g = fixtures::g1();
    assert_eq!(
        recognize(&g, &toks("a d"), &SearchLimits::default()),
        Err(ParseError::UnknownToken(Symbol::new("d")))
    );
    let bad = Grammar::new("S").production("S", []);
    assert!(matches!(Parser::new(&bad), Err(ParseError::InvalidGrammar(_))));
}

#[test]
fn empty_language_and_empty_string() {
    let limits = SearchLimits::default();
    assert!(enumerate(&fixtures::empty_language("S"), 5, &limits).unwrap().is_empty());
    assert_eq!(enumerate(&fixtures::empty_string("S"), 5, &limits).unwrap(), BTreeSet::from([vec![]]));
    assert!(recognize(&fixtures::empty_string("S"), &[], &limits).unwrap().is_accept());
}

/// `S → S:{↑a=↓} E:{↑=↓}`, `S → ε`, `E → ε`: every tree for ε is
/// consistent, and the feature tree grows with every unary step.
fn growing() -> Grammar {
    use thfsg_core::grammar::{Daughter, Schema};
    Grammar::new("S")
        .production(
            "S",
            [Daughter::new("S", [Schema::arrow(["a"])]), Daughter::new("E", [Schema::arrow::<_, &str>([])])],
        )
        .lexical("S", None, [])
        .lexical("E", None, [])
        .lexical("T", Some("t"), [])
}

#[test]
fn node_cap_is_limit_exceeded() {
    let limits = SearchLimits {
        max_nodes: 3,
        max_chain: Some(50),
        ..SearchLimits::default()
    };
    assert_eq!(enumerate(&growing(), 2, &limits), Err(ParseError::LimitExceeded));
}

#[test]
fn chain_cap_bounds_growing_empty_derivations() {
    let g = growing();
    let limits = SearchLimits {
        max_chain: Some(4),
        max_parses: 10,
        ..SearchLimits::default()
    };
    let parses = parse_all(&g, &[], &limits).unwrap();
    assert!(!parses.is_empty());
    let sizes: Vec<usize> = parses.iter().map(|p| p.tree.len()).collect();
    let mut sorted = sizes.clone();
    sorted.sort();
    assert_eq!(sizes, sorted);
}

#[test]
fn agreement_between_enumeration_and_recognition() {
    let limits = SearchLimits::default();
    for g in [fixtures::g1(), fixtures::swiss()] {
        let parser = Parser::new(&g).unwrap();
        let max_len = 8;
        let language = parser.enumerate(max_len, &limits).unwrap();
        let terminals: Vec<Symbol> = g.terminals.iter().cloned().collect();
        // every string over the terminals up to length 4, plus the language
        let mut candidates: BTreeSet<Vec<Symbol>> = language.clone();
        let mut layer = vec![vec![]];
        for _ in 0..4 {
            let mut next = Vec::new();
            for w in &layer {
                for t in &terminals {
                    let mut v: Vec<Symbol> = w.clone();
                    v.push(t.clone());
                    next.push(v);
                }
            }
            candidates.extend(next.iter().cloned());
            layer = next;
        }
        for w in candidates.iter().filter(|w| w.len() <= max_len) {
            let accepted = parser.recognize(w, &limits).unwrap().is_accept();
            assert_eq!(accepted, language.contains(w), "{w:?}");
            if let Recognition::Accept(p) = parser.recognize(w, &limits).unwrap() {
                assert!(p.tree.validate(&g).is_empty());
                assert_eq!(&p.tree.terminal_string(), w);
            }
        }
    }
}

#[test]
fn cut_off_rejection_is_limit_exceeded() {
    // `t` is a terminal no derivation of S yields, while the empty
    // derivations of S keep growing past any chain bound
    let g = growing();
    assert_eq!(
        recognize(&g, &toks("t"), &SearchLimits::default()),
        Err(ParseError::LimitExceeded)
    );
}

#[test]
fn larger_limits_keep_accepted_strings() {
    let g = fixtures::swiss();
    let parser = Parser::new(&g).unwrap();
    let small = SearchLimits {
        max_chain: Some(1),
        ..SearchLimits::default()
    };
    let large = SearchLimits {
        max_chain: Some(40),
        ..SearchLimits::default()
    };
    let a = parser.enumerate(7, &small).unwrap();
    let b = parser.enumerate(7, &large).unwrap();
    assert!(a.is_subset(&b));
}
