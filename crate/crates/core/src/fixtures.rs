//! Grammars and transducers used as worked examples and test fixtures.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::Transducer;
use crate::grammar::{Daughter, Grammar, Schema};
use crate::Symbol;

fn up() -> Schema {
    Schema::arrow::<_, &str>([])
}

fn up_at(attr: &str) -> Schema {
    Schema::arrow([attr])
}

/// The counting grammar whose language is `{ w c^(2^n) w : w ∈ {a,b}^n, n ≥ 1 }`.
///
/// `next` counts the length of `w` and `lex` carries its letters; both `B`
/// subtrees and both `C` subtrees unify into one chain.
pub fn g1() -> Grammar {
    Grammar::new("S")
        .production(
            "S",
            [
                Daughter::new("B", [up()]),
                Daughter::new("C", [up()]),
                Daughter::new("C", [up()]),
                Daughter::new("B", [up()]),
            ],
        )
        .production("C", [Daughter::new("C", [up_at("next")]), Daughter::new("C", [up_at("next")])])
        .production("C", [Daughter::new("C'", [up(), Schema::value(["next"], "$")])])
        .production("B", [Daughter::new("B'", [up()]), Daughter::new("B", [up_at("next")])])
        .production("B", [Daughter::new("B'", [up(), Schema::value(["next"], "$")])])
        .lexical("B'", Some("a"), [Schema::value(["lex"], "a")])
        .lexical("B'", Some("b"), [Schema::value(["lex"], "b")])
        .lexical("C'", Some("c"), [])
}

/// Cross-serial clause skeletons `x N1 … Nn y V1 … Vn z` where `Vi` is
/// `hälfe` exactly when `Ni` is `em Hans`.
///
/// Nouns stack along `vcomp` under `obj`; each verb sits on the clause
/// level of its position and constrains `obj case` there.
pub fn swiss() -> Grammar {
    Grammar::new("S")
        .production(
            "S",
            [
                Daughter::new("X", [up()]),
                Daughter::new("NP", [up()]),
                Daughter::new("Y", [up()]),
                Daughter::new("VP", [up()]),
                Daughter::new("Z", [up()]),
            ],
        )
        .production("NP", [Daughter::new("N", [up_at("obj")]), Daughter::new("NP", [up_at("vcomp")])])
        .production("NP", [Daughter::new("N", [up_at("obj"), Schema::value(["vcomp"], "null")])])
        .production("VP", [Daughter::new("V", [up()]), Daughter::new("VP", [up_at("vcomp")])])
        .production("VP", [Daughter::new("V", [up(), Schema::value(["vcomp"], "null")])])
        .lexical("N", Some("em Hans"), [Schema::value(["case"], "DAT")])
        .lexical("N", Some("es Hans"), [Schema::value(["case"], "ACC")])
        .lexical("N", Some("d'chind"), [Schema::value(["case"], "ACC")])
        .lexical("V", Some("laa"), [Schema::value(["obj", "case"], "ACC")])
        .lexical("V", Some("hälfe"), [Schema::value(["obj", "case"], "DAT")])
        .lexical("X", Some("x"), [])
        .lexical("Y", Some("y"), [])
        .lexical("Z", Some("z"), [])
}

/// The nouns of [`swiss`] paired with the verb that agrees with them.
pub const SWISS_PAIRS: [(&str, &str); 3] = [("em Hans", "hälfe"), ("es Hans", "laa"), ("d'chind", "laa")];

/// A grammar for the single string `t`.
pub fn singleton(start: &str, t: &str) -> Grammar {
    Grammar::new(start).lexical(start, Some(t), [])
}

/// A grammar for `{ε}`.
pub fn empty_string(start: &str) -> Grammar {
    Grammar::new(start).lexical(start, None, [])
}

/// A grammar with no strings at all: its only category has no rules.
pub fn empty_language(start: &str) -> Grammar {
    Grammar::new(start)
}

fn syms(tokens: &[&str]) -> Vec<Symbol> {
    tokens.iter().map(|t| Symbol::new(t)).collect()
}

/// The echo machine for `a* c* a*` over input/output alphabet `{a, b, c}`.
pub fn echo_aca() -> Transducer {
    let mut m = Transducer::new("q0", syms(&["a", "b", "c"]), syms(&["a", "b", "c"]));
    for q in ["q0", "q1", "q2"] {
        m.add_final(q);
    }
    for (from, input, to) in [("q0", "a", "q0"), ("q0", "c", "q1"), ("q1", "c", "q1"), ("q1", "a", "q2"), ("q2", "a", "q2")] {
        m.add_transition(from, Some(input), to, vec![Symbol::new(input)]);
    }
    m
}

/// The homomorphism `a ↦ a, b ↦ a, c ↦ c` as a one-state transducer.
pub fn merge_ab() -> Transducer {
    let h: BTreeMap<Symbol, Vec<Symbol>> = [("a", "a"), ("b", "a"), ("c", "c")]
        .into_iter()
        .map(|(k, v)| (Symbol::new(k), vec![Symbol::new(v)]))
        .collect();
    crate::algebra::from_homomorphism(&h, syms(&["a", "b", "c"]), syms(&["a", "c"]))
        .expect("total on the input alphabet")
}

/// The machine with the single transition `q0 --a/aa--> q0`.
pub fn doubling() -> Transducer {
    let mut m = Transducer::new("q0", syms(&["a"]), syms(&["a"]));
    m.add_final("q0");
    m.add_transition("q0", Some("a"), "q0", syms(&["a", "a"]));
    m
}
